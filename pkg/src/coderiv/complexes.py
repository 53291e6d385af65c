"""Free bimodule complexes, tensor powers, Hom-complex calculus, solver.

Grading and sign conventions (fixed once, used everywhere)
----------------------------------------------------------

* A complex P is a *shifted* free bimodule resolution: the top homological
  degree is 1 (the augmentation-degree piece), degrees decrease downward,
  and the differential d raises homological degree by 1 (P_i -> P_{i+1}).
  When generators are written e_i, the subscript is the resolution step and
  the homological degree is 1 - i.
* A homogeneous map f: X -> Y of degree n sends X_i into Y_{i+n}.  So d has
  degree +1, the augmentation mu: P -> A (A in degree 0) has degree -1, and
  all co-operations delta_n: P -> P^{(x)n} have degree +1.
* Koszul sign rule: (f (x) g)(x (x) y) = (-1)^{|g||x|} f(x) (x) g(y), with
  |x| the homological degree of the element in the shifted grading.  Hence
  (1 (x) g)(f (x) 1) = (-1)^{|f||g|} (f (x) g), and evaluating
  1^{(x)r} (x) f (x) 1^{(x)t} on a tensor inserts the sign
  (-1)^{|f| * (sum of degrees of the first r factors)}.
* Hom differential: del(f) = d_Y f - (-1)^{|f|} f d_X, of degree |f|+1.
* A cohomological degree-n Hochschild class is a map P -> A of homological
  degree n-1, concentrated on P_{1-n}.

Free bimodules make the tensor calculus combinatorial: P_i = A (x) V_i (x) A
on a generator space V_i, so P^{(x)_A n} is the free bimodule on interleaved
words (a_0, g_1, a_1, ..., g_n, a_n) with a_j algebra basis indices and g_j
generators.  A TensorElement is a sparse sum of such words; generators are
identified as (degree, index) pairs so degree lookups are free.
"""

from .errors import (DegreeMismatch, NotACoboundary, NotAugmented, NotExact,
                     ShapeMismatch)
from .linalg import LinearSystem, SubspaceReducer


class TensorElement:
    """Sparse element of P^{(x)_A n} (n = 0 means an element of A)."""

    __slots__ = ("complex", "power", "degree", "terms")

    def __init__(self, complex_, power, degree, terms=None):
        self.complex = complex_
        self.power = power
        self.degree = degree
        self.terms = terms if terms is not None else {}

    def copy(self):
        return TensorElement(self.complex, self.power, self.degree,
                             dict(self.terms))

    def is_zero(self):
        return not self.terms

    def add_term(self, key, coeff):
        field = self.complex.algebra.field
        w = field.add(self.terms.get(key, field.zero), coeff)
        if w == field.zero:
            self.terms.pop(key, None)
        else:
            self.terms[key] = w

    def add_into(self, other, scalar=None):
        """self += scalar * other (in place)."""
        field = self.complex.algebra.field
        if other.power != self.power:
            raise ShapeMismatch("tensor powers differ")
        if scalar is None:
            scalar = field.one
        for key, c in other.terms.items():
            self.add_term(key, field.mul(scalar, c))
        return self

    def scaled(self, scalar):
        field = self.complex.algebra.field
        if scalar == field.zero:
            return TensorElement(self.complex, self.power, self.degree)
        return TensorElement(
            self.complex, self.power, self.degree,
            {k: field.mul(scalar, c) for k, c in self.terms.items()})

    def __add__(self, other):
        out = self.copy()
        return out.add_into(other)

    def __sub__(self, other):
        field = self.complex.algebra.field
        out = self.copy()
        return out.add_into(other, field.neg(field.one))

    def __eq__(self, other):
        return (isinstance(other, TensorElement)
                and self.power == other.power and self.terms == other.terms)

    def internal_degree(self):
        """Internal degree of a homogeneous element (None when zero)."""
        P = self.complex
        degs = set()
        for key in self.terms:
            d = 0
            for pos, entry in enumerate(key):
                if pos % 2 == 0:
                    d += P.algebra.degree_of(entry)
                else:
                    d += P.internal_degree_of(entry)
            degs.add(d)
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("tensor element not internally homogeneous")
        return degs.pop()

    def render(self):
        """Signed monomial string, e.g. 'e0(x)e1 - e1(x)e0'."""
        P = self.complex
        alg = P.algebra
        field = alg.field
        if not self.terms:
            return "0"
        unit = alg.unit_index

        def render_order(key):
            # top-degree factors first, then basis order
            return tuple((-e[0], e[1]) if pos % 2 else e
                         for pos, e in enumerate(key))

        parts = []
        for key in sorted(self.terms, key=render_order):
            c = self.terms[key]
            if len(key) == 1:
                body = alg.basis[key[0]]
            else:
                # split the word into blocks, one generator per block
                blocks = []
                cur = []
                gi = 0
                for pos, entry in enumerate(key):
                    if pos % 2 == 0:
                        if entry != unit:
                            cur.append(alg.basis[entry])
                    else:
                        gi += 1
                        cur.append(P.gen_label(entry))
                        if gi < self.power:
                            blocks.append("*".join(cur))
                            cur = []
                blocks.append("*".join(cur) if cur else "1")
                body = "(x)".join(blocks)
            if c == field.one:
                parts.append(("+", body))
            elif c == field.neg(field.one) and field.characteristic != 2:
                parts.append(("-", body))
            else:
                parts.append(("+", f"{field.to_str(c)}*{body}"))
        out = ""
        for sign, body in parts:
            if not out:
                out = body if sign == "+" else f"-{body}"
            else:
                out += f" {sign} {body}"
        return out


class GradedBimoduleMap:
    """Homogeneous bimodule map P -> P^{(x)_A n} (n = 0: P -> A).

    Stored by its values on generators; bimodule-linearity determines the
    rest.  Absent generators map to zero.
    """

    __slots__ = ("complex", "power", "degree", "values", "source_complex")

    def __init__(self, complex_, power, degree, values=None):
        self.complex = complex_
        self.power = power
        self.degree = degree
        self.values = values if values is not None else {}
        # differs from ``complex`` only for cross-complex comparison maps
        self.source_complex = complex_

    def set_value(self, gid, element):
        if element.degree != gid[0] + self.degree:
            raise DegreeMismatch(
                f"value for {gid} has degree {element.degree}, "
                f"expected {gid[0] + self.degree}")
        if not element.is_zero():
            self.values[gid] = element

    def on_gen(self, gid):
        v = self.values.get(gid)
        if v is None:
            return TensorElement(self.complex, self.power,
                                 gid[0] + self.degree)
        return v

    def __call__(self, x):
        return amplify_apply(self, 0, 0, x)

    def is_zero(self):
        return all(v.is_zero() for v in self.values.values())

    def support_degrees(self):
        return sorted({g[0] for g, v in self.values.items()
                       if not v.is_zero()})

    def __add__(self, other):
        return self._combine(other, None)

    def __sub__(self, other):
        field = self.complex.algebra.field
        return self._combine(other, field.neg(field.one))

    def _combine(self, other, scalar):
        if (other.power, other.degree) != (self.power, self.degree):
            raise ShapeMismatch("map shapes differ")
        out = GradedBimoduleMap(self.complex, self.power, self.degree)
        for gid in set(self.values) | set(other.values):
            v = self.on_gen(gid).copy()
            v.add_into(other.on_gen(gid), scalar)
            if not v.is_zero():
                out.values[gid] = v
        return out

    def scaled(self, scalar):
        out = GradedBimoduleMap(self.complex, self.power, self.degree)
        for gid, v in self.values.items():
            w = v.scaled(scalar)
            if not w.is_zero():
                out.values[gid] = w
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedBimoduleMap):
            return NotImplemented
        if (other.power, other.degree) != (self.power, self.degree):
            return False
        return (self - other).is_zero()

    def restricted(self, degrees):
        out = GradedBimoduleMap(self.complex, self.power, self.degree)
        for gid, v in self.values.items():
            if gid[0] in degrees:
                out.values[gid] = v
        return out


def zero_map(P, power, degree):
    return GradedBimoduleMap(P, power, degree)


def identity_map(P):
    out = GradedBimoduleMap(P, 1, 0)
    unit = P.algebra.unit_index
    for gid in P.all_gens():
        out.values[gid] = TensorElement(P, 1, gid[0],
                                        {(unit, gid, unit): P.algebra.field.one})
    return out


def amplify_apply(f, r, t, x):
    """Evaluate 1^{(x)r} (x) f (x) 1^{(x)t} on x, with the Koszul sign.

    Sliding f of degree |f| past the first r tensor factors multiplies each
    word by (-1)^{|f| * (degree of those factors)}.
    """
    P = f.complex
    alg = P.algebra
    field = alg.field
    if x.power != r + 1 + t:
        raise ShapeMismatch(f"amplify expects power {r + 1 + t}, "
                            f"got {x.power}")
    out = TensorElement(P, r + f.power + t, x.degree + f.degree)
    fdeg_odd = f.degree % 2 != 0
    for key, coeff in x.terms.items():
        g = key[2 * r + 1]
        v = f.values.get(g)
        if v is None:
            continue
        if fdeg_odd:
            left_deg = sum(key[2 * i + 1][0] for i in range(r))
            if left_deg % 2 != 0:
                coeff = field.neg(coeff)
        a_l = key[2 * r]
        prefix = key[:2 * r]
        if f.power == 0:
            suffix = key[2 * r + 3:]
            for vkey, c2 in v.terms.items():
                c = field.mul(coeff, c2)
                for m1, c3 in alg.mul_basis(a_l, vkey[0]):
                    for m2, c4 in alg.mul_basis(m1, key[2 * r + 2]):
                        out.add_term(prefix + (m2,) + suffix,
                                     field.mul(field.mul(c, c3), c4))
        else:
            suffix = key[2 * r + 3:]
            for vkey, c2 in v.terms.items():
                c = field.mul(coeff, c2)
                middle = vkey[1:-1]
                for bl, c3 in alg.mul_basis(a_l, vkey[0]):
                    cl = field.mul(c, c3)
                    for br, c4 in alg.mul_basis(vkey[-1], key[2 * r + 2]):
                        out.add_term(
                            prefix + (bl,) + middle + (br,) + suffix,
                            field.mul(cl, c4))
    return out


def compose(f, g):
    """f after g, for g with target power 1."""
    if g.power != 1:
        raise ShapeMismatch("compose needs inner map with target power 1")
    if g.complex is not f.complex:
        raise ShapeMismatch("maps live on different complexes")
    out = GradedBimoduleMap(f.complex, f.power, f.degree + g.degree)
    for gid, v in g.values.items():
        w = f(v)
        if not w.is_zero():
            out.values[gid] = w
    return out


def amplified_compose(f, r, t, g):
    """(1^r (x) f (x) 1^t) after g, stored on generators of g's source."""
    out = GradedBimoduleMap(f.complex, r + f.power + t, f.degree + g.degree)
    for gid, v in g.values.items():
        w = amplify_apply(f, r, t, v)
        if not w.is_zero():
            out.values[gid] = w
    return out


class FreeBimoduleComplex:
    """Shifted free bimodule resolution within a homological window [lo, 1].

    generators: {homological degree: [labels]}; the differential is given on
    generators as power-1 TensorElements one degree up; the optional
    augmentation gives the weak counit mu on top-degree generators.
    """

    def __init__(self, algebra, generators, lo=None, internal_degrees=None):
        self.algebra = algebra
        self.gens = {h: list(labels) for h, labels in generators.items()}
        self.lo = lo if lo is not None else min(self.gens)
        self.hi = max(self.gens) if self.gens else 1
        self.diff = {}
        self.aug = {}
        self._internal = internal_degrees or {}
        self._label_of = {}
        self._gid_of = {}
        for h, labels in self.gens.items():
            for idx, label in enumerate(labels):
                gid = (h, idx)
                self._label_of[gid] = label
                if label in self._gid_of:
                    raise ShapeMismatch(f"duplicate generator label {label}")
                self._gid_of[label] = gid
        self._tensor_basis_cache = {}
        self._diff_system_cache = {}

    # -- structure --------------------------------------------------------

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def gens_at(self, h):
        return [(h, i) for i in range(len(self.gens.get(h, ())))]

    def all_gens(self):
        out = []
        for h in sorted(self.gens, reverse=True):
            out.extend(self.gens_at(h))
        return out

    def gen_label(self, gid):
        return self._label_of[gid]

    def gen_by_label(self, label):
        return self._gid_of[label]

    def internal_degree_of(self, gid):
        return self._internal.get(gid, 0)

    def set_differential(self, gid, element):
        if element.degree != gid[0] + 1:
            raise DegreeMismatch("differential must raise degree by 1")
        self.diff[gid] = element

    def set_augmentation(self, gid, alg_elt):
        if gid[0] != self.hi:
            raise DegreeMismatch("augmentation lives on top generators")
        self.aug[gid] = alg_elt

    def d_of(self, gid):
        v = self.diff.get(gid)
        if v is None:
            return TensorElement(self, 1, gid[0] + 1)
        return v

    def differential_map(self):
        out = GradedBimoduleMap(self, 1, 1)
        for gid, v in self.diff.items():
            if not v.is_zero():
                out.values[gid] = v
        return out

    def mu_map(self):
        if not self.aug:
            raise NotAugmented("complex has no augmentation")
        out = GradedBimoduleMap(self, 0, -1)
        for gid, elt in self.aug.items():
            out.values[gid] = TensorElement(
                self, 0, gid[0] - 1,
                {(i,): c for i, c in elt.items()})
        return out

    def element(self, power, degree, terms=None):
        return TensorElement(self, power, degree, terms)

    def gen_element(self, gid):
        unit = self.algebra.unit_index
        return TensorElement(self, 1, gid[0],
                             {(unit, gid, unit): self.algebra.field.one})

    def tensor_differential(self, x):
        """Differential of P^{(x)n}: sum of amplified copies of d."""
        d = self.differential_map()
        out = TensorElement(self, x.power, x.degree + 1)
        for i in range(x.power):
            out.add_into(amplify_apply(d, i, x.power - 1 - i, x))
        return out

    # -- tensor space bases -------------------------------------------------

    def tensor_space_basis(self, power, degree):
        """All basis words of (P^{(x)power})_degree inside the window."""
        key = (power, degree)
        cached = self._tensor_basis_cache.get(key)
        if cached is not None:
            return cached
        alg_range = range(self.algebra.dim)
        if power == 0:
            basis = [(i,) for i in alg_range] if degree == 0 else []
        else:
            basis = []

            def rec(prefix, remaining, deg_left):
                if remaining == 0:
                    if deg_left == 0:
                        for a in alg_range:
                            basis.append(prefix + (a,))
                    return
                min_rest = self.lo * (remaining - 1)
                max_rest = self.hi * (remaining - 1)
                for h in range(self.lo, self.hi + 1):
                    if not (min_rest <= deg_left - h <= max_rest):
                        continue
                    for gid in self.gens_at(h):
                        for a in alg_range:
                            rec(prefix + (a, gid), remaining - 1,
                                deg_left - h)

            rec((), power, degree)
        basis.sort()
        self._tensor_basis_cache[key] = basis
        return basis

    def _tensor_diff_system(self, power, degree, column_filter=None,
                            internal_degree=None):
        """LinearSystem for d: (P^{(x)power})_degree -> degree+1.

        ``internal_degree`` restricts the columns to one internal degree
        (graded mode); ``column_filter`` applies an arbitrary extra key
        predicate (not cached).
        """
        cache_key = (power, degree, internal_degree)
        if column_filter is None:
            cached = self._diff_system_cache.get(cache_key)
            if cached is not None:
                return cached
        field = self.algebra.field
        cols = {}
        for key in self.tensor_space_basis(power, degree):
            if internal_degree is not None and \
               self._key_internal_degree(key) != internal_degree:
                continue
            if column_filter is not None and not column_filter(key):
                continue
            x = TensorElement(self, power, degree, {key: field.one})
            cols[key] = self.tensor_differential(x).terms
        system = LinearSystem(field, cols)
        if column_filter is None:
            self._diff_system_cache[cache_key] = system
        return system

    # -- validation ---------------------------------------------------------

    def validate_differential(self):
        """d after d vanishes on every generator inside the window."""
        for gid in self.all_gens():
            if gid[0] + 2 > self.hi:
                continue
            dd = self.tensor_differential(self.d_of(gid))
            if not dd.is_zero():
                raise NotExact(gid[0], -1)

    def validate_augmentation(self):
        if not self.aug:
            raise NotAugmented("no augmentation supplied")
        mu = self.mu_map()
        for gid in self.gens_at(self.hi - 1):
            if not mu(self.d_of(gid)).is_zero():
                raise NotAugmented(f"mu d != 0 on {self.gen_label(gid)}")

    def validate_exactness(self):
        """Degreewise rank check of the augmented complex.

        ker(d: P_h -> P_{h+1}) must equal im(d: P_{h-1} -> P_h) for
        h < top; at the top, ker(mu) = im(d) and mu is onto.  The bottom
        window degree has no incoming differential to compare against and
        is skipped.
        """
        field = self.algebra.field
        self.validate_augmentation()
        images = {}
        for h in range(self.lo, self.hi + 1):
            red = SubspaceReducer(field)
            if h > self.lo:
                for key in self.tensor_space_basis(1, h - 1):
                    x = TensorElement(self, 1, h - 1, {key: field.one})
                    red.add(self.tensor_differential(x).terms)
            images[h] = red
        for h in range(self.lo + 1, self.hi + 1):
            if h < self.hi:
                system = self._tensor_diff_system(1, h)
                kernel = system.kernel_basis()
            else:
                mu = self.mu_map()
                cols = {}
                for key in self.tensor_space_basis(1, h):
                    x = TensorElement(self, 1, h, {key: field.one})
                    cols[key] = mu(x).terms
                top = LinearSystem(field, cols)
                if top.rank != self.algebra.dim:
                    raise NotAugmented("augmentation is not surjective")
                kernel = top.kernel_basis()
            extra = 0
            for vec in kernel:
                if not images[h].contains(vec):
                    extra += 1
            if extra:
                raise NotExact(h, extra)

    # -- Hom complex ----------------------------------------------------------

    def hom_differential(self, f):
        """del(f) = d_Y f - (-1)^{|f|} f d_X."""
        field = self.algebra.field
        sign = field.one if f.degree % 2 == 0 else field.neg(field.one)
        out = GradedBimoduleMap(self, f.power, f.degree + 1)
        for gid in self.all_gens():
            v = TensorElement(self, f.power, gid[0] + f.degree + 1)
            if f.power >= 1:
                fv = f.on_gen(gid)
                if not fv.is_zero():
                    v.add_into(self.tensor_differential(fv))
            dg = self.diff.get(gid)
            if dg is not None and not dg.is_zero():
                v.add_into(f(dg), field.neg(sign))
            if not v.is_zero():
                out.values[gid] = v
        return out

    # -- the boundary solver ---------------------------------------------------

    def solve_boundary(self, psi, internal_homogeneous=False,
                       column_filter=None):
        """Deterministic phi with del(phi) = psi, degree by degree.

        Works from the top of the window downward; in each homological
        degree the matrix of the tensor differential is put in reduced row
        echelon form once and the particular solution takes all free
        variables zero.  Raises NotACoboundary with the first failing
        degree and a residual witness.  With ``internal_homogeneous`` the
        unknowns are restricted to the internal degree forced by each
        generator (graded algebras only).
        """
        field = self.algebra.field
        if psi.power == 0:
            return self._solve_boundary_to_A(psi)
        deg_phi = psi.degree - 1
        phi = GradedBimoduleMap(self, psi.power, deg_phi)
        sign = field.one if deg_phi % 2 == 0 else field.neg(field.one)
        for h in range(self.hi, self.lo - 1, -1):
            gens = self.gens_at(h)
            if not gens:
                continue
            target_deg = h + deg_phi
            for gid in gens:
                rhs = psi.on_gen(gid).copy()
                dg = self.diff.get(gid)
                if dg is not None:
                    rhs.add_into(phi(dg), sign)
                if rhs.is_zero():
                    continue
                internal = None
                if internal_homogeneous:
                    internal = rhs.internal_degree()
                system = self._tensor_diff_system(
                    psi.power, target_deg, column_filter=column_filter,
                    internal_degree=internal)
                sol = system.solve(rhs.terms)
                if sol is None:
                    raise NotACoboundary(h, self.gen_label(gid),
                                         system.last_residual)
                if sol:
                    phi.values[gid] = TensorElement(self, psi.power,
                                                    target_deg, sol)
        return phi

    def _key_internal_degree(self, key):
        d = 0
        for pos, entry in enumerate(key):
            if pos % 2 == 0:
                d += self.algebra.degree_of(entry)
            else:
                d += self.internal_degree_of(entry)
        return d

    def _solve_boundary_to_A(self, psi):
        """Solve del(phi) = psi for maps into A (no target differential).

        Here del(phi)(g) = -(-1)^{|phi|} phi(d g), so the unknown values of
        phi one degree above are determined by a single linear system per
        homological degree.
        """
        field = self.algebra.field
        deg_phi = psi.degree - 1
        phi = GradedBimoduleMap(self, 0, deg_phi)
        sign = field.neg(field.one) if deg_phi % 2 == 0 else field.one
        # top-degree consistency: there psi must vanish outright
        for gid in self.gens_at(self.hi):
            if not psi.on_gen(gid).is_zero():
                raise NotACoboundary(self.hi, self.gen_label(gid),
                                     psi.on_gen(gid).terms)
        for h in range(self.hi - 1, self.lo - 1, -1):
            gens = self.gens_at(h)
            uppers = self.gens_at(h + 1)
            if not gens:
                continue
            nonzero = [g for g in gens if not psi.on_gen(g).is_zero()]
            if not nonzero:
                continue
            cols = {}
            for up in uppers:
                for (a,) in self.tensor_space_basis(0, 0):
                    col = {}
                    for gid in gens:
                        dg = self.diff.get(gid)
                        if dg is None:
                            continue
                        for (al, g1, ar), c in dg.terms.items():
                            if g1 != up:
                                continue
                            prod = self.algebra.mul_elements(
                                self.algebra.mul_elements({al: c}, {a: field.one}),
                                {ar: field.one})
                            for b, cb in prod.items():
                                ck = (gid, b)
                                w = field.add(col.get(ck, field.zero),
                                              field.mul(sign, cb))
                                if w == field.zero:
                                    col.pop(ck, None)
                                else:
                                    col[ck] = w
                    cols[(up, a)] = col
            rhs = {}
            for gid in gens:
                for (b,), c in psi.on_gen(gid).terms.items():
                    rhs[(gid, b)] = c
            system = LinearSystem(field, cols)
            sol = system.solve(rhs)
            if sol is None:
                witness = nonzero[0]
                raise NotACoboundary(h, self.gen_label(witness),
                                     system.last_residual)
            for up in uppers:
                terms = {}
                for (u, a), c in sol.items():
                    if u == up:
                        terms[(a,)] = c
                if terms:
                    prev = phi.values.get(up)
                    elt = TensorElement(self, 0, up[0] + deg_phi, terms)
                    if prev is None:
                        phi.values[up] = elt
                    else:
                        prev.add_into(elt)
        return phi

    def homotopic(self, f, g):
        """Decide f ~ g; returns (True, h) with del(h) = f - g, or
        (False, (degree, generator, residual))."""
        diff = f - g
        if diff.is_zero():
            return True, zero_map(self, f.power, f.degree - 1)
        try:
            h = self.solve_boundary(diff)
            return True, h
        except NotACoboundary as exc:
            return False, (exc.degree, exc.generator, exc.residual)

    # -- serialization -----------------------------------------------------

    def descriptor(self):
        field = self.algebra.field
        gens = {str(h): list(labels) for h, labels in sorted(self.gens.items())}
        diff = {}
        for gid in self.all_gens():
            v = self.diff.get(gid)
            if v is None or v.is_zero():
                continue
            diff[self.gen_label(gid)] = [
                [field.to_str(c), self.algebra.basis[key[0]],
                 self.gen_label(key[1]), self.algebra.basis[key[2]]]
                for key, c in sorted(v.terms.items())]
        aug = {self.gen_label(gid): {self.algebra.basis[i]: field.to_str(c)
                                     for i, c in sorted(elt.items())}
               for gid, elt in self.aug.items()}
        return {"algebra": self.algebra.descriptor(),
                "generators": gens, "differential": diff,
                "augmentation": aug}
