"""Coderivations of a higher-coalgebra structure and their operations.

A *tuple* of degree l on a structure (P, {delta_n}) is a family of degree-l
bimodule maps f_n: P -> P^{(x)n} (f_0 lands in A).  It is a coderivation
when for every N

    sum_{r+s+t=N} (1^r (x) delta_s (x) 1^t) f_{N-s+1}
        = (-1)^l sum_{r+s+t=N} (1^r (x) f_s (x) 1^t) delta_{N-s+1}.

The bracket, composition circle, and the convolution products m_l are the
componentwise operations

    (f o g)_i      = sum_{r+s+t=i} (1^r (x) f_s (x) 1^t) g_{r+t+1}
    [f, g]_N       = (f o g)_N - (-1)^{lp} (g o f)_N
    m_l(f_1..f_l)_n = (-1)^{sum (i-1) p_i} sum (1^{i_0} (x) (f_1)_{j_1}
                      (x) ... (x) (f_l)_{j_l} (x) 1^{i_l}) delta_{sum i_k + l}

with m_l^h the same sum against the components of an arbitrary tuple h in
place of delta, and the cup product f ⌣ g = m_2(f, g).

Tuples with finitely many nonzero components are exact objects here: all
identities tested in this package are componentwise equalities of maps, not
statements up to homotopy, except where a homotopy is explicitly solved.
"""

from .complexes import (GradedBimoduleMap, amplified_compose, amplify_apply,
                        compose, identity_map, zero_map)
from .errors import NotACoboundary, NotACocycle, ShapeMismatch


class MapTuple:
    """A degree-homogeneous family {f_n} of maps P -> P^{(x)n}.

    ``components`` maps n >= 0 to GradedBimoduleMap; missing components are
    zero.  ``top`` is the largest index that may be nonzero (so the family
    is genuinely finite, not truncated).
    """

    def __init__(self, structure, degree, components=None):
        self.structure = structure
        self.degree = degree
        self.components = {}
        if components:
            for n, f in components.items():
                self.set_component(n, f)

    @property
    def complex(self):
        return self.structure.complex

    def set_component(self, n, f):
        if f.degree != self.degree:
            raise ShapeMismatch(
                f"component {n} has degree {f.degree}, tuple has {self.degree}")
        if f.power != n:
            raise ShapeMismatch("component index must match target power")
        if not f.is_zero():
            self.components[n] = f

    def component(self, n):
        f = self.components.get(n)
        if f is None:
            return zero_map(self.complex, n, self.degree)
        return f

    @property
    def top(self):
        return max(self.components) if self.components else 0

    def is_zero(self):
        return all(f.is_zero() for f in self.components.values())

    def __add__(self, other):
        return self._combine(other, None)

    def __sub__(self, other):
        field = self.complex.algebra.field
        return self._combine(other, field.neg(field.one))

    def _combine(self, other, scalar):
        if other.degree != self.degree:
            raise ShapeMismatch("tuple degrees differ")
        out = MapTuple(self.structure, self.degree)
        for n in set(self.components) | set(other.components):
            g = other.component(n)
            if scalar is not None:
                g = g.scaled(scalar)
            v = self.component(n) + g
            if not v.is_zero():
                out.components[n] = v
        return out

    def scaled(self, scalar):
        out = MapTuple(self.structure, self.degree)
        for n, f in self.components.items():
            g = f.scaled(scalar)
            if not g.is_zero():
                out.components[n] = g
        return out

    def __eq__(self, other):
        if not isinstance(other, MapTuple):
            return NotImplemented
        if other.degree != self.degree:
            return False
        return (self - other).is_zero()

    def equal_up_to(self, other, N):
        """Componentwise equality for all indices <= N."""
        for n in range(N + 1):
            if self.component(n) != other.component(n):
                return False
        return True

    def descriptor(self):
        from .serialize import map_descriptor
        return {"degree": self.degree,
                "components": {str(n): map_descriptor(f)
                               for n, f in sorted(self.components.items())}}


def delta_tuple(structure):
    """The structure family itself, as a degree-1 tuple."""
    out = MapTuple(structure, 1)
    for n in range(1, structure.max_n + 1):
        if structure.known(n):
            f = structure.delta(n)
            if not f.is_zero():
                out.components[n] = f
    return out


def coderivation_defect(f, N):
    """Left minus right side of the coderivation equations, per N' <= N."""
    S = f.structure
    field = f.complex.algebra.field
    sign = field.one if f.degree % 2 == 0 else field.neg(field.one)
    out = {}
    for Np in range(0, N + 1):
        res = zero_map(f.complex, Np, f.degree + 1)
        for s in range(1, Np + 1):
            inner = f.component(Np - s + 1)
            if inner.is_zero():
                continue
            for r in range(0, Np - s + 1):
                res = res + amplified_compose(S.delta(s), r, Np - s - r,
                                              inner)
        for s in range(0, Np + 1):
            fs = f.component(s)
            if fs.is_zero():
                continue
            inner = S.delta(Np - s + 1)
            for r in range(0, Np - s + 1):
                res = res + amplified_compose(
                    fs, r, Np - s - r, inner).scaled(field.neg(sign))
        out[Np] = res
    return out


def is_coderivation(f, N):
    return all(r.is_zero() for r in coderivation_defect(f, N).values())


def circ(f, g, top=None):
    """Componentwise composition (f o g)."""
    if f.structure is not g.structure:
        raise ShapeMismatch("tuples live on different structures")
    out = MapTuple(f.structure, f.degree + g.degree)
    if top is None:
        top = f.top + g.top - 1 if (f.components and g.components) else 0
        top = max(top, 0)
    for i in range(0, top + 1):
        acc = zero_map(f.complex, i, out.degree)
        for s in range(0, i + 1):
            fs = f.component(s)
            if fs.is_zero():
                continue
            for r in range(0, i - s + 1):
                t = i - s - r
                inner = g.component(r + t + 1)
                if inner.is_zero():
                    continue
                acc = acc + amplified_compose(fs, r, t, inner)
        if not acc.is_zero():
            out.components[i] = acc
    return out


def bracket(f, g, top=None):
    """[f, g] = f o g - (-1)^{|f||g|} g o f, componentwise."""
    field = f.complex.algebra.field
    fg = circ(f, g, top=top)
    gf = circ(g, f, top=top)
    sign = field.one if (f.degree * g.degree) % 2 == 0 else \
        field.neg(field.one)
    return fg - gf.scaled(sign)


def m_l(fs, top=None):
    """Convolution product m_l(f_1, ..., f_l) against the structure family."""
    if len(fs) < 2:
        raise ShapeMismatch("m_l needs at least two arguments")
    return _m_l_against(fs, None, with_sign=True, top=top)


def m_l_h(fs, h, top=None):
    """Like m_l but against the components of the tuple h, with no sign."""
    return _m_l_against(fs, h, with_sign=False, top=top)


def _m_l_against(fs, h, with_sign, top=None):
    S = fs[0].structure
    field = S.complex.algebra.field
    l = len(fs)
    degs = [f.degree for f in fs]
    out_degree = sum(degs) + (1 if h is None else h.degree)
    out = MapTuple(S, out_degree)
    if top is None:
        top = sum(max(f.top, 0) for f in fs) + (
            (S.max_n if S.complete else S.max_n) - l)
        top = max(top, 0)
    sign = field.one
    if with_sign:
        e = sum(i * degs[i] for i in range(l))  # (i-1)p_i, i counted from 1
        if e % 2 != 0:
            sign = field.neg(sign)
    for n in range(0, top + 1):
        acc = zero_map(S.complex, n, out_degree)
        for shape in _shapes(l, n):
            i_blocks, j_blocks = shape
            K = sum(i_blocks) + l
            if h is None:
                if K > S.max_n and not S.complete:
                    continue
                inner = S.delta(K)
            else:
                inner = h.component(K)
            if inner.is_zero():
                continue
            term = inner
            # apply the f_k right to left so slot arithmetic stays fixed
            pos = []
            p = 0
            for k in range(l):
                p += i_blocks[k]
                pos.append(p)
                p += 1
            ok = True
            for k in range(l - 1, -1, -1):
                fk = fs[k].component(j_blocks[k])
                if fk.is_zero():
                    ok = False
                    break
                r = pos[k]
                t_now = term.power - r - 1
                term = amplified_compose(fk, r, t_now, term)
            if not ok:
                continue
            acc = acc + term
        if with_sign and sign != field.one:
            acc = acc.scaled(sign)
        if not acc.is_zero():
            out.components[n] = acc
    return out


def _shapes(l, n):
    """All (i_0..i_l, j_1..j_l) of nonnegative ints with sum i + sum j = n."""
    from .resolutions import _compositions
    for total_i in range(0, n + 1):
        for i_blocks in _compositions(total_i, l + 1):
            for j_blocks in _compositions(n - total_i, l):
                yield i_blocks, j_blocks


def cup(f, g, top=None):
    return m_l([f, g], top=top)


# ---------------------------------------------------------------------------
# lifting cocycles to coderivations


def lift_cocycle(S, f0, max_n, internal_homogeneous=None):
    """Extend a cocycle f0: P -> A to a coderivation with 0-component f0.

    Follows the inductive construction: at step i the part Phi of the
    defect not involving the unknown component alpha_i is computed; for odd
    i the equation del(alpha_i) = -Phi is solved outright, while for even i
    the previous component is first corrected by (1^{(x)(i-1)} (x) mu) Phi,
    which makes the right side bound.  All solves use the deterministic
    boundary solver, so the lift is a function of the structure, the
    cocycle and the window.
    """
    P = S.complex
    field = P.algebra.field
    if f0.power != 0:
        raise ShapeMismatch("cocycle must map to A")
    bd = P.hom_differential(f0)
    if not bd.is_zero():
        raise NotACocycle("0-component is not a chain map")
    if internal_homogeneous is None:
        internal_homogeneous = P.algebra.grading is not None
    alpha = MapTuple(S, f0.degree, {0: f0})
    for i in range(1, max_n + 1):
        phi = _defect_component_without_top(alpha, i)
        if i % 2 == 0:
            u = amplified_compose(S.counit, i - 1, 0, phi)
            if not u.is_zero():
                corrected = alpha.component(i - 1) + u
                alpha.components[i - 1] = corrected
                phi = _defect_component_without_top(alpha, i)
        rhs = phi.scaled(field.neg(field.one))
        ai = P.solve_boundary(rhs, internal_homogeneous=internal_homogeneous)
        if not ai.is_zero():
            alpha.components[i] = ai
    return alpha


def _defect_component_without_top(alpha, i):
    """Component i of the defect with alpha_i treated as zero."""
    saved = alpha.components.pop(i, None)
    try:
        return coderivation_defect(alpha, i)[i]
    finally:
        if saved is not None:
            alpha.components[i] = saved


def is_inner(alpha, max_n=None):
    """Decide whether a valid coderivation is a bracket [delta, beta].

    Tests whether the 0-component bounds; if so, builds the bounding tuple
    beta step by step (for even steps the explicit chain-map correction
    -(1^{(x)(m-1)} (x) mu) alpha_m is inserted first) and verifies
    [delta, beta] = alpha componentwise up to max_n.  Returns
    (True, beta) or (False, witness).
    """
    S = alpha.structure
    P = S.complex
    field = P.algebra.field
    if max_n is None:
        max_n = alpha.top + 1
    delta = delta_tuple(S)
    try:
        beta0 = P.solve_boundary(alpha.component(0))
    except NotACoboundary as exc:
        return False, (exc.degree, exc.generator, exc.residual)
    beta = MapTuple(S, alpha.degree - 1, {0: beta0} if not beta0.is_zero()
                    else {})
    for m in range(1, max_n + 1):
        residual = alpha - bracket(delta, beta, top=max_n)
        am = residual.component(m)
        if m % 2 == 0 and not am.is_zero():
            corr = amplified_compose(S.counit, m - 1, 0, am)
            corr = corr.scaled(field.neg(field.one))
            if not corr.is_zero():
                beta.components[m - 1] = beta.component(m - 1) + corr
                residual = alpha - bracket(delta, beta, top=max_n)
                am = residual.component(m)
        if am.is_zero():
            continue
        try:
            bm = P.solve_boundary(am)
        except NotACoboundary as exc:
            return False, (exc.degree, exc.generator, exc.residual)
        beta.components[m] = beta.component(m) + bm
    check = alpha - bracket(delta, beta, top=max_n)
    for n in range(0, max_n + 1):
        if not check.component(n).is_zero():
            return False, ("verification", n)
    return True, beta


# ---------------------------------------------------------------------------
# the psi / phi helper families and homotopy liftings


def psi(S, t, r):
    """The degree (1-t) endomorphism psi_t^r of P.

    psi_t^r = sum_u (-1)^{ru} (mu^{(x)u} (x) 1 (x) mu^{(x)(t-u)}) delta_{t+1}
    for t > 1 or even r; for odd r, psi_1^r = (1 (x) mu - mu (x) 1) delta_2
    minus the identity.
    """
    P = S.complex
    field = P.algebra.field
    mu = S.counit
    if t == 1 and r % 2 != 0:
        d2 = S.delta(2)
        one_mu = amplified_compose(mu, 1, 0, d2)
        mu_one = amplified_compose(mu, 0, 1, d2)
        return one_mu - mu_one - identity_map(P)
    acc = zero_map(P, 1, 1 - t)
    dtp1 = S.delta(t + 1)
    for u in range(0, t + 1):
        term = dtp1
        # collapse every slot except slot u, rightmost application first
        for i in range(t, u, -1):
            term = amplified_compose(mu, i, term.power - i - 1, term)
        for i in range(u - 1, -1, -1):
            term = amplified_compose(mu, i, term.power - i - 1, term)
        if (r * u) % 2 != 0:
            term = term.scaled(field.neg(field.one))
        acc = acc + term
    return acc


def phi_family(S, t):
    """Maps phi_1..phi_t with del(phi_t) = psi_t^{t-1} - sum psi_s^{t-1}
    phi_{t-s}, built inductively with the deterministic solver."""
    P = S.complex
    phis = {}
    for k in range(1, t + 1):
        rhs = psi(S, k, k - 1)
        for s in range(1, k):
            rhs = rhs - compose(psi(S, s, k - 1), phis[k - s])
        phis[k] = P.solve_boundary(rhs)
    return phis


def homotopy_lifting_check(S, f0, phi_f):
    """Check the two homotopy-lifting conditions for the pair (f0, delta_2).

    (1) del(phi_f) = (f0 (x) 1 + 1 (x) f0) delta_2 exactly;
    (2) mu phi_f + f0 phi ~ 0 for a solved phi with
        del(phi) = (mu (x) 1 + 1 (x) mu) delta_2.
    Returns a report; "ok" requires both.
    """
    P = S.complex
    mu = S.counit
    d2 = S.delta(2)
    report = {}
    want = amplified_compose(f0, 0, 1, d2) + amplified_compose(f0, 1, 0, d2)
    got = P.hom_differential(phi_f)
    report["boundary_condition"] = (got == want)
    psi10 = amplified_compose(mu, 0, 1, d2) + amplified_compose(mu, 1, 0, d2)
    phi = P.solve_boundary(psi10)
    test = compose(mu, phi_f) + compose(f0, phi)
    ok, data = P.homotopic(test, zero_map(P, 0, test.degree))
    report["counit_condition"] = ok
    if not ok:
        report["witness"] = data
    report["ok"] = report["boundary_condition"] and report["counit_condition"]
    return report


def lifted_homotopy(S, alpha):
    """(-1)^n alpha_1, the homotopy lifting carried by a coderivation."""
    field = S.complex.algebra.field
    a1 = alpha.component(1)
    if alpha.degree % 2 == 0:
        return a1
    return a1.scaled(field.neg(field.one))
