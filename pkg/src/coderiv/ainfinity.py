"""Weakly counital higher-coalgebra structures {delta_n} on a resolution.

A structure is a family of degree-1 bimodule maps delta_n: P -> P^{(x)n}
with delta_1 the differential, satisfying for every N >= 1

    sum_{r+s+t=N} (1^{(x)r} (x) delta_s (x) 1^{(x)t}) delta_{N-s+1} = 0,

together with a weak counit mu: P -> A obeying (mu (x) mu) delta_2 = mu and
mu^{(x)n} delta_n = 0 for n > 2.  ``construct_delta`` builds such a family
on any augmented exact complex by solving the relations degreewise with the
deterministic boundary solver; presets attach closed-form families instead.
"""

from .complexes import (GradedBimoduleMap, TensorElement, amplified_compose,
                        amplify_apply, zero_map)
from .errors import (InternalInconsistency, NotACoboundary, NotAugmented,
                     WindowExhausted)
from .linalg import LinearSystem


class AinftyStructure:
    """A family {delta_n} with weak counit on a free bimodule complex.

    ``complete`` records that delta_n = 0 identically for n > max_n (true
    for the closed-form presets); otherwise components beyond max_n are
    simply not certified.
    """

    def __init__(self, complex_, deltas, counit, max_n, complete=False):
        self.complex = complex_
        self.deltas = dict(deltas)
        self.counit = counit
        self.max_n = max_n
        self.complete = complete
        if 1 not in self.deltas:
            self.deltas[1] = complex_.differential_map()

    def delta(self, n):
        f = self.deltas.get(n)
        if f is not None:
            return f
        if n > self.max_n and not self.complete:
            raise WindowExhausted("delta component not certified", n)
        return zero_map(self.complex, n, 1)

    def known(self, n):
        return n in self.deltas or self.complete

    def mu_power(self, n, x):
        """Apply mu^{(x)n} to a power-n tensor element (rightmost first)."""
        out = x
        for i in range(n - 1, -1, -1):
            out = amplify_apply(self.counit, i, 0, out)
        return out

    def descriptor(self):
        from .serialize import map_descriptor
        return {
            "complex": self.complex.descriptor(),
            "deltas": {str(n): map_descriptor(f)
                       for n, f in sorted(self.deltas.items()) if n > 1},
            "max_n": self.max_n,
            "complete": self.complete,
        }


def ainfty_defect(structure, N):
    """Residual of the componentwise coassociativity relations up to N.

    Returns {N': GradedBimoduleMap}; the structure is valid up to N inside
    the window exactly when every residual is the zero map.
    """
    S = structure
    out = {}
    for Np in range(1, N + 1):
        res = zero_map(S.complex, Np, 2)
        for s in range(1, Np + 1):
            inner = S.delta(Np - s + 1)
            for r in range(0, Np - s + 1):
                t = Np - s - r
                res = res + amplified_compose(S.delta(s), r, t, inner)
        out[Np] = res
    return out


def check_weak_counit(structure):
    """Verify (mu (x) mu) delta_2 = mu and mu^{(x)n} delta_n = 0, n > 2.

    Returns a report dict; ``report["ok"]`` is the overall verdict and the
    failures list one witness per offending generator.
    """
    S = structure
    P = S.complex
    mu = S.counit
    failures = []
    d2 = S.delta(2)
    for gid in P.all_gens():
        got = S.mu_power(2, d2.on_gen(gid))
        want = mu.on_gen(gid)
        if got != want:
            failures.append({"component": 2, "generator": P.gen_label(gid),
                             "got": got.render(), "want": want.render()})
    for n in range(3, S.max_n + 1):
        if not S.known(n):
            continue
        dn = S.delta(n)
        for gid, v in dn.values.items():
            got = S.mu_power(n, v)
            if not got.is_zero():
                failures.append({"component": n,
                                 "generator": P.gen_label(gid),
                                 "got": got.render(), "want": "0"})
    return {"ok": not failures, "failures": failures}


def construct_delta(P, max_n, internal_homogeneous=None):
    """Build a weakly counital structure on an augmented exact complex.

    delta_2 is solved directly as a chain map normalized against the counit,
    one inhomogeneous linear problem per homological degree; each higher
    delta_n bounds the defect of the previous components, whose closedness
    is verified before solving.  On graded complexes every component is
    solved homogeneously per internal degree, so the output preserves the
    internal grading.
    """
    if not P.aug:
        raise NotAugmented("construct_delta needs an augmentation")
    if internal_homogeneous is None:
        internal_homogeneous = P.algebra.grading is not None
    mu = P.mu_map()
    deltas = {1: P.differential_map()}
    deltas[2] = _solve_delta2(P, mu, internal_homogeneous)
    S = AinftyStructure(P, deltas, mu, 2)
    field = P.algebra.field
    for n in range(3, max_n + 1):
        rhs = zero_map(P, n, 2)
        for s in range(2, n):
            inner = S.delta(n - s + 1)
            for r in range(0, n - s + 1):
                t = n - s - r
                rhs = rhs + amplified_compose(S.delta(s), r, t, inner)
        rhs = rhs.scaled(field.neg(field.one))
        _check_cocycle(P, rhs, n)
        try:
            dn = P.solve_boundary(rhs,
                                  internal_homogeneous=internal_homogeneous)
        except NotACoboundary as exc:
            if exc.degree <= P.lo + n - 2:
                raise WindowExhausted(f"delta_{n}", exc.degree) from exc
            raise InternalInconsistency(
                f"delta_{n} defect is not a coboundary: {exc}") from exc
        S.deltas[n] = dn
        S.max_n = n
    return S


def _check_cocycle(P, rhs, n):
    """The inductive right side must be closed where the window certifies."""
    bd = P.hom_differential(rhs)
    floor = P.lo + n - 1
    for gid, v in bd.values.items():
        if gid[0] >= floor and not v.is_zero():
            raise InternalInconsistency(
                f"defect feeding delta_{n} is not closed at {P.gen_label(gid)}")


def _solve_delta2(P, mu, internal_homogeneous):
    """Chain map delta_2 with (mu (x) mu) delta_2 = mu, free variables zero."""
    field = P.algebra.field
    d2 = GradedBimoduleMap(P, 2, 1)
    for h in range(P.hi, P.lo - 1, -1):
        gens = P.gens_at(h)
        if not gens:
            continue
        target_deg = h + 1
        basis = P.tensor_space_basis(2, target_deg)
        at_top = (h == P.hi)
        for gid in gens:
            if internal_homogeneous:
                want = P.internal_degree_of(gid)
                keys = [k for k in basis
                        if P._key_internal_degree(k) == want]
            else:
                keys = basis
            cols = {}
            for key in keys:
                x = TensorElement(P, 2, target_deg, {key: field.one})
                col = {("d", k): c
                       for k, c in P.tensor_differential(x).terms.items()}
                if at_top:
                    mux = amplify_apply(mu, 0, 0,
                                        amplify_apply(mu, 1, 0, x))
                    for k, c in mux.terms.items():
                        col[("mu", k)] = c
                cols[key] = col
            rhs = {}
            dg = P.diff.get(gid)
            if dg is not None:
                # chain map: D(delta_2 g) = -delta_2(d g)
                v = d2(dg)
                for k, c in v.terms.items():
                    rhs[("d", k)] = field.neg(c)
            if at_top:
                for k, c in mu.on_gen(gid).terms.items():
                    rhs[("mu", k)] = c
            system = LinearSystem(field, cols)
            sol = system.solve(rhs)
            if sol is None:
                if h <= P.lo + 1:
                    raise WindowExhausted("delta_2", h)
                raise InternalInconsistency(
                    f"no counital diagonal at degree {h}")
            if sol:
                d2.values[gid] = TensorElement(P, 2, target_deg, sol)
    return d2
