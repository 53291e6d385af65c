"""Preset and user-supplied shifted resolutions, and comparison maps.

Presets
-------

* ``bar_resolution``: generators in homological degree 1-s are the basis
  words of A^{(x)s} (interior tensor factors), with the alternating-sum
  differential and the strictly coassociative signed diagonal.
* ``xn_resolution``: the periodic rank-one resolution of k[x]/(x^n), with
  generators e_i in degree 1-i, differentials alternating between right
  multiplication by u = x(x)1 - 1(x)x and v = sum_a x^a (x) x^{n-1-a},
  and the attached closed-form higher-coalgebra family (nonzero delta_m up
  to m = n when n > 2).

The weak counit on every preset is the *negative* of the multiplication
map.  With the sign conventions of this package (see complexes module) the
signed diagonal satisfies (mu (x) mu) delta_2 = mu exactly for that choice,
and (1 (x) mu) delta_2 = -(mu (x) 1) delta_2 = identity on the nose.
"""

from itertools import product

from .ainfinity import AinftyStructure
from .algebra import truncated_polynomial_algebra
from .complexes import FreeBimoduleComplex, GradedBimoduleMap, TensorElement
from .errors import NotACoboundary, ShapeMismatch, WindowExhausted
from .linalg import LinearSystem


def _neg_mult_augmentation(P):
    """mu(top generators) = -(product of the word's letters)."""
    alg = P.algebra
    field = alg.field
    for gid in P.gens_at(1):
        P.set_augmentation(gid, {alg.unit_index: field.neg(field.one)})


def bar_resolution(A, window):
    """Shifted bar resolution of A down to homological degree 1 - window.

    Degree 1-s holds one generator per basis word of length s; the word
    label lists the letters, e.g. "[x|x]".
    """
    field = A.field
    if A.truncation_degree is not None and window > A.truncation_degree:
        raise WindowExhausted("bar resolution of a truncated algebra",
                              1 - window)
    lo = 1 - window
    gens = {}
    words = {}
    for s in range(0, window + 1):
        ws = sorted(product(range(A.dim), repeat=s))
        words[1 - s] = ws
        gens[1 - s] = ["[" + "|".join(A.basis[i] for i in w) + "]"
                       for w in ws]
    P = FreeBimoduleComplex(A, gens, lo=lo)
    index_of = {h: {w: i for i, w in enumerate(ws)}
                for h, ws in words.items()}
    if A.grading is not None:
        for h, ws in words.items():
            for i, w in enumerate(ws):
                P._internal[(h, i)] = sum(A.degree_of(x) for x in w)
    one = field.one
    unit = A.unit_index
    for h, ws in words.items():
        if h == 1:
            continue
        s = 1 - h
        for i, w in enumerate(ws):
            gid = (h, i)
            val = TensorElement(P, 1, h + 1)
            up = index_of[h + 1]
            # leftmost letter moves into the coefficient slot
            val.add_term((w[0], (h + 1, up[w[1:]]), unit), one)
            # interior multiplications, with alternating signs
            for j in range(s - 1):
                c = one if (j + 1) % 2 == 0 else field.neg(one)
                for k, ck in A.mul_basis(w[j], w[j + 1]):
                    nw = w[:j] + (k,) + w[j + 2:]
                    val.add_term((unit, (h + 1, up[nw]), unit),
                                 field.mul(c, ck))
            # rightmost letter moves out on the right
            c = one if s % 2 == 0 else field.neg(one)
            val.add_term((unit, (h + 1, up[w[:-1]]), w[-1]), c)
            P.set_differential(gid, val)
    _neg_mult_augmentation(P)
    P._bar_words = words
    P._bar_index = index_of
    return P


def bar_structure(P):
    """The strictly coassociative signed diagonal on a bar resolution."""
    A = P.algebra
    field = A.field
    unit = A.unit_index
    words = P._bar_words
    index_of = P._bar_index
    d2 = GradedBimoduleMap(P, 2, 1)
    for h, ws in words.items():
        s = 1 - h
        for i, w in enumerate(ws):
            val = TensorElement(P, 2, h + 1)
            for j in range(s + 1):
                c = field.one if j % 2 == 0 else field.neg(field.one)
                lg = (1 - j, index_of[1 - j][w[:j]])
                rg = (1 - (s - j), index_of[1 - (s - j)][w[j:]])
                val.add_term((unit, lg, unit, rg, unit), c)
            d2.values[(h, i)] = val
    return AinftyStructure(P, {2: d2}, P.mu_map(), 2, complete=True)


def xn_resolution(field, n, window):
    """Periodic resolution of k[x]/(x^n) plus its closed-form structure.

    Returns (complex, structure).  For n = 2 the diagonal is strictly
    coassociative, delta_2(e_i) = sum_{j+l=i} (-1)^j e_j (x) e_l; for
    n > 2 the family has nonzero components delta_m for m up to n.
    """
    if n < 2:
        raise ShapeMismatch("need n >= 2")
    A = truncated_polynomial_algebra(field, n)
    lo = 1 - window
    gens = {1 - i: [f"e{i}"] for i in range(window + 1)}
    P = FreeBimoduleComplex(A, gens, lo=lo)
    for i in range(window + 1):
        P._internal[(1 - i, 0)] = (i // 2) * n + (i % 2)
    one = field.one
    for i in range(1, window + 1):
        gid = (1 - i, 0)
        up = (2 - i, 0)
        val = TensorElement(P, 1, 2 - i)
        if i % 2 == 1:
            # right multiplication by u = x (x) 1 - 1 (x) x
            val.add_term((1, up, 0), one)
            val.add_term((0, up, 1), field.neg(one))
        else:
            # right multiplication by v = sum_{a+b=n-1} x^a (x) x^b
            for a in range(n):
                val.add_term((a, up, n - 1 - a), one)
        P.set_differential(gid, val)
    _neg_mult_augmentation(P)

    e = {i: (1 - i, 0) for i in range(window + 1)}

    def gen_ok(i):
        return 0 <= i <= window

    d2 = GradedBimoduleMap(P, 2, 1)
    unit = 0
    for i in range(window + 1):
        val = TensorElement(P, 2, (1 - i) + 1)
        if n == 2:
            for j in range(i + 1):
                c = one if j % 2 == 0 else field.neg(one)
                val.add_term((unit, e[j], unit, e[i - j], unit), c)
        elif i % 2 == 0:
            half = i // 2
            for j in range(half + 1):
                l = half - j
                val.add_term((unit, e[2 * j], unit, e[2 * l], unit), one)
            for j in range(half + 1):
                l = half - j
                if not gen_ok(2 * j + 1) or 2 * l - 1 < 0:
                    continue
                for a in range(n - 1):
                    for b in range(n - 1 - a):
                        c = n - 2 - a - b
                        val.add_term((a, e[2 * j + 1], b, e[2 * l - 1], c),
                                     field.neg(one))
        else:
            half = (i - 1) // 2
            for j in range(half + 1):
                l = half - j
                val.add_term((unit, e[2 * j], unit, e[2 * l + 1], unit), one)
                val.add_term((unit, e[2 * j + 1], unit, e[2 * l], unit),
                             field.neg(one))
        d2.values[(1 - i, 0)] = val
    deltas = {2: d2}
    if n > 2:
        for m in range(3, n + 1):
            dm = GradedBimoduleMap(P, m, 1)
            sign = one if (m + 1) % 2 == 0 else field.neg(one)
            for i in range(0, window + 1, 2):
                half = i // 2
                val = TensorElement(P, m, (1 - i) + 1)
                # j_1 + ... + j_m = i/2 - 1 over odd-index generators,
                # with n - m powers of x spread across m + 1 slots
                for js in _compositions(half - 1, m):
                    if any(not gen_ok(2 * j + 1) for j in js):
                        continue
                    for asplit in _compositions(n - m, m + 1):
                        key = []
                        key.append(asplit[0])
                        for idx, j in enumerate(js):
                            key.append(e[2 * j + 1])
                            key.append(asplit[idx + 1])
                        val.add_term(tuple(key), sign)
                if not val.is_zero():
                    dm.values[(1 - i, 0)] = val
            deltas[m] = dm
    return P, AinftyStructure(P, deltas, P.mu_map(), max(deltas), complete=True)


def _compositions(total, parts):
    """All tuples of ``parts`` nonnegative ints summing to ``total``."""
    if total < 0:
        return
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def custom_resolution(descriptor, validate_exact=True):
    """Build a complex from its descriptor and validate it fully."""
    from .serialize import complex_from_descriptor
    P = complex_from_descriptor(descriptor)
    P.validate_differential()
    P.validate_augmentation()
    if validate_exact:
        P.validate_exactness()
    return P


def comparison_map(P, Q):
    """Degree-0 chain map F: P -> Q with mu_Q F = mu_P.

    Built degreewise from the top with the deterministic solver; exists on
    any pair of augmented exact complexes over the same algebra (within the
    overlapping window).  The returned map is keyed by P-generators with
    values in Q; ``F.source_complex`` records P.
    """
    if P.algebra is not Q.algebra and \
       P.algebra.descriptor() != Q.algebra.descriptor():
        raise ShapeMismatch("comparison map needs a shared algebra")
    field = P.algebra.field
    muP = P.mu_map()
    muQ = Q.mu_map()
    F = GradedBimoduleMap(Q, 1, 0)  # values in Q, keyed by P-generators
    F.source_complex = P
    lo = max(P.lo, Q.lo)
    for h in range(P.hi, lo - 1, -1):
        gens = P.gens_at(h)
        if not gens:
            continue
        basis = Q.tensor_space_basis(1, h)
        at_top = (h == P.hi)
        cols = {}
        for key in basis:
            x = TensorElement(Q, 1, h, {key: field.one})
            col = {("d", k): c
                   for k, c in Q.tensor_differential(x).terms.items()}
            if at_top:
                for k, c in muQ(x).terms.items():
                    col[("mu", k)] = c
            cols[key] = col
        system = LinearSystem(field, cols)
        for gid in gens:
            rhs = {}
            dg = P.diff.get(gid)
            if dg is not None:
                img = _push_through(F, Q, dg)
                for k, c in img.terms.items():
                    rhs[("d", k)] = c
            if at_top:
                for k, c in muP.on_gen(gid).terms.items():
                    rhs[("mu", k)] = c
            sol = system.solve(rhs)
            if sol is None:
                raise NotACoboundary(h, P.gen_label(gid),
                                     system.last_residual)
            if sol:
                F.values[gid] = TensorElement(Q, 1, h, sol)
    return F


def _push_through(F, Q, x):
    """Evaluate a cross-complex map (values in Q) on a P-element."""
    field = Q.algebra.field
    out = TensorElement(Q, 1, x.degree + F.degree)
    for (al, g, ar), c in x.terms.items():
        v = F.values.get(g)
        if v is None:
            continue
        for (bl, h, br), c2 in v.terms.items():
            cc = field.mul(c, c2)
            for m1, c3 in Q.algebra.mul_basis(al, bl):
                for m2, c4 in Q.algebra.mul_basis(br, ar):
                    out.add_term((m1, h, m2),
                                 field.mul(field.mul(cc, c3), c4))
    return out


def transported_map(f, F):
    """Pull a map f: Q -> A (or Q -> Q^{(x)n}) back along F: P -> Q.

    The result is keyed by P-generators; for cohomology representatives
    this is the transport of classes between resolutions.
    """
    out = GradedBimoduleMap(f.complex, f.power, f.degree)
    out.source_complex = F.source_complex
    for gid, v in F.values.items():
        w = f(v)
        if not w.is_zero():
            out.values[gid] = w
    return out


def compose_comparisons(G, F):
    """G after F for comparison maps F: P -> Q, G: Q -> R.

    When R = P the result is an ordinary endomorphism of P, suitable for
    the homotopy test against the identity.
    """
    P = F.source_complex
    R = G.complex
    out = GradedBimoduleMap(R, 1, 0)
    out.source_complex = P
    for gid, v in F.values.items():
        w = _push_through(G, R, v)
        if not w.is_zero():
            out.values[gid] = w
    return out
