"""Deterministic exact sparse linear algebra over a field.

Vectors are dicts mapping a hashable coordinate key to a nonzero scalar.
``LinearSystem`` factors a matrix once (reduced row echelon form with a
recorded left transform) and then answers many solve/membership queries
against the same matrix.  Pivoting is deterministic: columns are taken in
sorted key order, and among candidate rows the earliest wins, so every
solution (free variables set to zero) is reproducible across runs.
"""


def vec_add_scaled(field, target, src, c):
    """target += c * src, in place, dropping zeros."""
    if c == field.zero:
        return
    for k, v in src.items():
        w = field.add(target.get(k, field.zero), field.mul(c, v))
        if w == field.zero:
            target.pop(k, None)
        else:
            target[k] = w


def vec_scale(field, v, c):
    if c == field.zero:
        return {}
    return {k: field.mul(c, x) for k, x in v.items()}


class LinearSystem:
    """RREF factorization of a sparse matrix given by columns.

    Columns map column-key -> {row-key: scalar}.  Row and column keys only
    need to be sortable within themselves.
    """

    def __init__(self, field, columns):
        self.field = field
        self.columns = columns
        self._factor()

    def _factor(self):
        field = self.field
        col_keys = sorted(self.columns.keys())
        # rows of the matrix, assembled from the columns
        rows = {}
        for ck in col_keys:
            for rk, c in self.columns[ck].items():
                rows.setdefault(rk, {})[ck] = c
        row_keys = sorted(rows.keys())
        # working rows carry their left-transform combination
        work = [(dict(rows[rk]), {rk: field.one}) for rk in row_keys]
        pivots = []  # (column key, working-row index)
        pivot_of_col = {}
        used = set()
        for ck in col_keys:
            pivot_row = None
            for idx in range(len(work)):
                if idx in used:
                    continue
                if ck in work[idx][0]:
                    pivot_row = idx
                    break
            if pivot_row is None:
                continue
            vec, comb = work[pivot_row]
            inv = field.inv(vec[ck])
            if inv != field.one:
                work[pivot_row] = (
                    {k: field.mul(inv, v) for k, v in vec.items()},
                    {k: field.mul(inv, v) for k, v in comb.items()},
                )
                vec, comb = work[pivot_row]
            for idx in range(len(work)):
                if idx == pivot_row:
                    continue
                ovec, ocomb = work[idx]
                c = ovec.get(ck)
                if c is None:
                    continue
                nc = field.neg(c)
                vec_add_scaled(field, ovec, vec, nc)
                vec_add_scaled(field, ocomb, comb, nc)
            used.add(pivot_row)
            pivots.append((ck, pivot_row))
            pivot_of_col[ck] = pivot_row
        self.work = work
        self.pivots = pivots
        self.pivot_of_col = pivot_of_col
        self.col_keys = col_keys
        self.free_cols = [ck for ck in col_keys if ck not in pivot_of_col]
        self.rank = len(pivots)

    def solve(self, rhs):
        """Particular solution x of M x = rhs with free variables zero.

        Returns the sparse solution dict, or None (with ``self.last_residual``
        set) when rhs is not in the column span.
        """
        field = self.field
        x = {}
        for ck, idx in self.pivots:
            comb = self.work[idx][1]
            y = field.zero
            for rk, c in comb.items():
                b = rhs.get(rk)
                if b is not None:
                    y = field.add(y, field.mul(c, b))
            if y != field.zero:
                x[ck] = y
        # exact residual check certifies consistency
        residual = dict(rhs)
        for ck, v in x.items():
            vec_add_scaled(field, residual, self.columns[ck], field.neg(v))
        if residual:
            self.last_residual = residual
            return None
        self.last_residual = None
        return x

    def in_image(self, rhs):
        return self.solve(rhs) is not None

    def kernel_basis(self):
        """Echelonized kernel basis, one vector per free column."""
        field = self.field
        basis = []
        for fc in self.free_cols:
            vec = {fc: field.one}
            for ck, idx in self.pivots:
                c = self.work[idx][0].get(fc)
                if c is not None:
                    vec[ck] = field.neg(c)
            basis.append(vec)
        return basis


class SubspaceReducer:
    """Incremental echelon basis of a subspace, for membership and quotients.

    ``reduce(v)`` returns the canonical remainder of v modulo the subspace;
    the remainder is zero exactly when v lies in it.
    """

    def __init__(self, field):
        self.field = field
        self.echelon = {}  # lead key -> vector with unit lead

    def reduce(self, vec):
        field = self.field
        v = dict(vec)
        changed = True
        while changed:
            changed = False
            for lead in sorted(v.keys()):
                if lead in self.echelon:
                    vec_add_scaled(field, v, self.echelon[lead],
                                   field.neg(v[lead]))
                    changed = True
                    break
        return v

    def add(self, vec):
        """Insert vec's span; returns True if the subspace grew."""
        field = self.field
        v = self.reduce(vec)
        if not v:
            return False
        lead = sorted(v.keys())[0]
        inv = field.inv(v[lead])
        v = {k: field.mul(inv, c) for k, c in v.items()}
        # keep full reduction: clear this lead from stored vectors
        for k, w in self.echelon.items():
            c = w.get(lead)
            if c is not None:
                vec_add_scaled(field, w, v, field.neg(c))
        self.echelon[lead] = v
        return True

    @property
    def dim(self):
        return len(self.echelon)

    def contains(self, vec):
        return not self.reduce(vec)
