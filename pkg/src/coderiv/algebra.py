"""Finite-dimensional (or graded, degreewise-finite, truncated) algebras.

An algebra is given by an ordered basis, the index of the unit, and a sparse
structure-constant table.  Elements are sparse dicts {basis index: scalar}.
Optionally the basis carries an internal grading; infinite-dimensional graded
algebras (like a polynomial ring) are handled by hard truncation at a chosen
internal degree D: products above D are dropped, so any computation whose
internal degrees stay at or below D is exact.
"""

import json

from .errors import (BadUnit, GradingViolation, MissingTruncation,
                     NonAssociative)
from .fields import Rationals, field_from_descriptor


class Algebra:
    """Associative unital algebra over an exact field.

    mul[i][j] is a tuple of (k, coeff) pairs for b_i * b_j.  All invariants
    (associativity on basis triples, two-sided unit, grading additivity) are
    verified exhaustively at construction.
    """

    def __init__(self, field, basis, unit_index, mul, grading=None,
                 truncation_degree=None, validate=True):
        self.field = field
        self.basis = list(basis)
        self.unit_index = unit_index
        self.mul = mul
        self.grading = list(grading) if grading is not None else None
        self.truncation_degree = truncation_degree
        if self.grading is None and truncation_degree is not None:
            raise MissingTruncation("truncation requires a grading")
        if validate:
            self.validate()

    @property
    def dim(self):
        return len(self.basis)

    def degree_of(self, i):
        return self.grading[i] if self.grading is not None else 0

    def element_degree(self, elt):
        """Internal degree of a homogeneous element (None for 0)."""
        degs = {self.degree_of(i) for i in elt}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    # -- raw basis/element arithmetic ------------------------------------

    def mul_basis(self, i, j):
        return self.mul[i][j]

    def mul_elements(self, a, b):
        """Bilinear extension of the structure constants, canonical form."""
        field = self.field
        out = {}
        for i, ca in a.items():
            row = self.mul[i]
            for j, cb in b.items():
                c = field.mul(ca, cb)
                for k, ck in row[j]:
                    w = field.add(out.get(k, field.zero), field.mul(c, ck))
                    if w == field.zero:
                        out.pop(k, None)
                    else:
                        out[k] = w
        return out

    def add_elements(self, a, b):
        field = self.field
        out = dict(a)
        for k, v in b.items():
            w = field.add(out.get(k, field.zero), v)
            if w == field.zero:
                out.pop(k, None)
            else:
                out[k] = w
        return out

    def scale_element(self, c, a):
        field = self.field
        if c == field.zero:
            return {}
        return {k: field.mul(c, v) for k, v in a.items()}

    def unit_element(self):
        return {self.unit_index: self.field.one}

    def basis_element(self, label_or_index):
        if isinstance(label_or_index, str):
            return {self.basis.index(label_or_index): self.field.one}
        return {label_or_index: self.field.one}

    def element_to_str(self, elt):
        if not elt:
            return "0"
        parts = []
        for i in sorted(elt):
            c = elt[i]
            label = self.basis[i]
            s = label if c == self.field.one else \
                f"{self.field.to_str(c)}*{label}"
            parts.append(s)
        return " + ".join(parts)

    # -- validation -------------------------------------------------------

    def validate(self):
        field = self.field
        u = self.unit_index
        for i in range(self.dim):
            if dict(self.mul[u][i]) != {i: field.one} or \
               dict(self.mul[i][u]) != {i: field.one}:
                raise BadUnit(i)
        if self.grading is not None:
            if self.degree_of(u) != 0:
                raise GradingViolation(u, u)
            for i in range(self.dim):
                for j in range(self.dim):
                    d = self.degree_of(i) + self.degree_of(j)
                    for k, _c in self.mul[i][j]:
                        if self.degree_of(k) != d:
                            raise GradingViolation(i, j)
                    if self.truncation_degree is not None and \
                       d > self.truncation_degree and self.mul[i][j]:
                        raise GradingViolation(i, j)
        for i in range(self.dim):
            ei = {i: field.one}
            for j in range(self.dim):
                ej = {j: field.one}
                ij = self.mul_elements(ei, ej)
                for k in range(self.dim):
                    ek = {k: field.one}
                    left = self.mul_elements(ij, ek)
                    right = self.mul_elements(ei, self.mul_elements(ej, ek))
                    if left != right:
                        raise NonAssociative(i, j, k, left, right)

    # -- serialization ----------------------------------------------------

    def descriptor(self):
        mul = []
        for i in range(self.dim):
            for j in range(self.dim):
                if self.mul[i][j]:
                    mul.append([i, j, [[k, self.field.to_str(c)]
                                       for k, c in self.mul[i][j]]])
        desc = {
            "field": self.field.descriptor(),
            "basis": list(self.basis),
            "unit": self.basis[self.unit_index],
            "mul": mul,
        }
        if self.grading is not None:
            desc["grading"] = list(self.grading)
        if self.truncation_degree is not None:
            desc["truncation"] = self.truncation_degree
        return desc

    def __repr__(self):
        return (f"Algebra(dim={self.dim}, field={self.field!r}, "
                f"basis={self.basis})")


class AlgebraElement:
    """Convenience wrapper with operator syntax around sparse elements."""

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = {k: v for k, v in coeffs.items()
                       if v != algebra.field.zero}

    def __add__(self, other):
        return AlgebraElement(
            self.algebra, self.algebra.add_elements(self.coeffs, other.coeffs))

    def __sub__(self, other):
        neg = self.algebra.scale_element(self.algebra.field.neg(
            self.algebra.field.one), other.coeffs)
        return AlgebraElement(
            self.algebra, self.algebra.add_elements(self.coeffs, neg))

    def __mul__(self, other):
        return AlgebraElement(
            self.algebra, self.algebra.mul_elements(self.coeffs, other.coeffs))

    def __eq__(self, other):
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def is_zero(self):
        return not self.coeffs

    def __repr__(self):
        return self.algebra.element_to_str(self.coeffs)


def make_algebra(descriptor):
    """Build and validate an Algebra from its JSON-style descriptor."""
    if isinstance(descriptor, str):
        descriptor = json.loads(descriptor)
    field = field_from_descriptor(descriptor["field"])
    basis = descriptor["basis"]
    unit_index = basis.index(descriptor["unit"])
    dim = len(basis)
    mul = [[() for _ in range(dim)] for _ in range(dim)]
    for i, j, terms in descriptor["mul"]:
        mul[i][j] = tuple((k, field.parse(c)) for k, c in terms)
    return Algebra(field, basis, unit_index, mul,
                   grading=descriptor.get("grading"),
                   truncation_degree=descriptor.get("truncation"))


def multiply(algebra, a, b):
    if isinstance(a, AlgebraElement):
        return AlgebraElement(algebra,
                              algebra.mul_elements(a.coeffs, b.coeffs))
    return algebra.mul_elements(a, b)


def truncated_polynomial_algebra(field=None, n=2, truncation=None):
    """k[x]/(x^n) with deg x = 1; n=None means k[x] truncated at degree D.

    For the infinite case a truncation degree is required: the basis is
    1, x, ..., x^D and products above degree D are dropped.
    """
    if field is None:
        field = Rationals()
    if n is None or n == "infinity":
        if truncation is None:
            raise MissingTruncation("k[x] needs a truncation degree")
        top = truncation
        cutoff = None
    else:
        if n < 2:
            raise ValueError("need n >= 2")
        top = n - 1
        cutoff = n
    basis = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, top + 1)]
    dim = top + 1
    mul = [[() for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            d = i + j
            if cutoff is not None and d >= cutoff:
                continue
            if d > top:
                continue
            mul[i][j] = ((d, field.one),)
    return Algebra(field, basis, 0, mul, grading=list(range(dim)),
                   truncation_degree=truncation if cutoff is None else None)
