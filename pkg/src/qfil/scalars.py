"""Exact coefficient fields: rationals (default) and prime fields.

No floating point is used anywhere in the package.  The rational field is
backed by gmpy2.mpq when available (a large speedup for elimination-heavy
instances) and falls back to fractions.Fraction otherwise.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpq = Fraction
    _HAVE_GMPY2 = False


class RationalField:
    """Field of exact rational numbers (characteristic 0)."""

    characteristic = 0

    def from_int(self, n):
        return _mpq(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a == 0

    def to_rational(self, a) -> Fraction:
        return Fraction(a.numerator, a.denominator)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """Field Z/pZ for prime p; elements are plain ints in [0, p)."""

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("characteristic must be a prime >= 2")
        for d in range(2, int(p**0.5) + 1):
            if p % d == 0:
                raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        return (a * pow(b, -1, self.p)) % self.p

    def neg(self, a):
        return (-a) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def to_rational(self, a) -> Fraction:
        # Only meaningful for small lifts; used in reports.
        return Fraction(a)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


def field_for_characteristic(char: int):
    return QQ if char == 0 else PrimeField(char)
