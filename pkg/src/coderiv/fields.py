"""Exact scalar arithmetic: the rationals and prime fields.

Scalars are plain Python values (``fractions.Fraction`` for Q, canonical
residues ``0..p-1`` for F_p).  A field object supplies the operations, so
the linear algebra and all higher layers stay field-agnostic.  There is no
floating point anywhere in the package.
"""

from fractions import Fraction

from .errors import NonPrimeCharacteristic


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Rationals:
    """The field Q with Fraction scalars (always in lowest terms)."""

    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def of(self, n, d=1):
        return Fraction(n, d)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return Fraction(1) / a

    def div(self, a, b):
        return a / b

    def parse(self, s):
        return Fraction(s)

    def to_str(self, a):
        return str(a)

    def random(self, rng, nonzero=False):
        while True:
            a = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            if a != 0 or not nonzero:
                return a

    def descriptor(self):
        return "Q"

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


class PrimeField:
    """The field F_p; scalars are ints reduced to 0..p-1."""

    def __init__(self, p):
        if not _is_prime(p):
            raise NonPrimeCharacteristic(p)
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def of(self, n, d=1):
        return (n * self.inv(d % self.p)) % self.p if d != 1 else n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def parse(self, s):
        if "/" in str(s):
            n, d = str(s).split("/")
            return self.div(int(n) % self.p, int(d) % self.p)
        return int(s) % self.p

    def to_str(self, a):
        return str(a % self.p)

    def random(self, rng, nonzero=False):
        lo = 1 if nonzero else 0
        return rng.randint(lo, self.p - 1)

    def descriptor(self):
        return {"Fp": self.p}

    def __repr__(self):
        return f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


def field_from_descriptor(desc):
    """Inverse of ``Field.descriptor()``; also accepts "Fp:<p>" strings."""
    if desc == "Q":
        return Rationals()
    if isinstance(desc, dict) and "Fp" in desc:
        return PrimeField(int(desc["Fp"]))
    if isinstance(desc, str) and desc.startswith("Fp:"):
        return PrimeField(int(desc.split(":", 1)[1]))
    raise ValueError(f"unknown field descriptor {desc!r}")
