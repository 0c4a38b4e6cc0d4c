"""Integer polynomials, rational Hilbert series and coefficient extraction.

A Hilbert series is stored as h(z) / (1-z)^r with h an integer polynomial
normalized so that h(1) != 0 (unless h = 0).  Coefficients e_0..e_r are read
off the numerator through binomial sums; no fitting of any kind happens here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, List, Sequence, Tuple

from .errors import InputError, WindowExceeded


def _strip(coeffs: Sequence[int]) -> Tuple[int, ...]:
    last = -1
    for i, c in enumerate(coeffs):
        if c != 0:
            last = i
    return tuple(int(c) for c in coeffs[: last + 1])


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial; degree of 0 is the sentinel -1."""

    coeffs: Tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _strip(list(coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(
            [self.coeff(k) + other.coeff(k) for k in range(n)]
        )

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(
            [self.coeff(k) - other.coeff(k) for k in range(n)]
        )

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by z^k."""
        if self.is_zero():
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def mul_one_minus_z(self, times: int = 1) -> "IntPolynomial":
        p = self
        for _ in range(times):
            n = len(p.coeffs)
            p = IntPolynomial([p.coeff(k) - p.coeff(k - 1) for k in range(n + 1)])
        return p

    def div_one_minus_z(self) -> "IntPolynomial":
        """Exact division by (1-z); raises if not divisible (h(1) != 0)."""
        if self.is_zero():
            return self
        if self(1) != 0:
            raise InputError("polynomial is not divisible by (1-z)")
        out: List[int] = []
        acc = 0
        for c in self.coeffs[:-1]:
            acc += c
            out.append(acc)
        return IntPolynomial(out)

    def expand_series(self, denom_exponent: int, n_terms: int) -> List[int]:
        """First n_terms coefficients of self / (1-z)^denom_exponent."""
        vals = [self.coeff(k) for k in range(n_terms)]
        for _ in range(denom_exponent):
            acc = 0
            for k in range(n_terms):
                acc += vals[k]
                vals[k] = acc
        return vals

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = "z" if k == 1 else f"z^{k}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out


@dataclass(frozen=True)
class Certification:
    """Evidence level of a derived quantity.

    PROVEN means a finite theorem-backed certificate; WINDOW(k) means the
    defining property was observed on a k-step window past stabilization.
    """

    proven: bool
    window: int = 0

    @staticmethod
    def proven_cert() -> "Certification":
        return Certification(True, 0)

    @staticmethod
    def window_cert(k: int) -> "Certification":
        return Certification(False, k)

    def combine(self, other: "Certification") -> "Certification":
        if self.proven and other.proven:
            return self
        if self.proven:
            return other
        if other.proven:
            return self
        return Certification(False, min(self.window, other.window))

    def label(self) -> str:
        return "PROVEN" if self.proven else f"WINDOW({self.window})"

    def __str__(self) -> str:
        return self.label()


PROVEN = Certification.proven_cert()


@dataclass(frozen=True)
class RationalSeries:
    """Normalized series numerator / (1-z)^denom_exponent."""

    numerator: IntPolynomial
    denom_exponent: int

    def __init__(self, numerator: IntPolynomial, denom_exponent: int):
        # Divide out (1-z) factors so that numerator(1) != 0 unless zero.
        if numerator.is_zero():
            denom_exponent = 0
        while not numerator.is_zero() and numerator(1) == 0 and denom_exponent > 0:
            numerator = numerator.div_one_minus_z()
            denom_exponent -= 1
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denom_exponent", denom_exponent)

    def coefficients(self, n_terms: int) -> List[int]:
        return self.numerator.expand_series(self.denom_exponent, n_terms)

    def coefficient(self, n: int) -> int:
        return self.coefficients(n + 1)[n]

    def mul_z(self) -> "RationalSeries":
        return RationalSeries(self.numerator.shift(1), self.denom_exponent)

    def to_samuel(self) -> "RationalSeries":
        """P^1 = P / (1-z)."""
        return RationalSeries(self.numerator, self.denom_exponent + 1)

    def add(self, other: "RationalSeries") -> "RationalSeries":
        r = max(self.denom_exponent, other.denom_exponent)
        a = self.numerator.mul_one_minus_z(r - self.denom_exponent)
        b = other.numerator.mul_one_minus_z(r - other.denom_exponent)
        return RationalSeries(a + b, r)

    def sub(self, other: "RationalSeries") -> "RationalSeries":
        r = max(self.denom_exponent, other.denom_exponent)
        a = self.numerator.mul_one_minus_z(r - self.denom_exponent)
        b = other.numerator.mul_one_minus_z(r - other.denom_exponent)
        return RationalSeries(a - b, r)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return (
            self.numerator.coeffs == other.numerator.coeffs
            and self.denom_exponent == other.denom_exponent
        )

    def __hash__(self):
        return hash((self.numerator.coeffs, self.denom_exponent))

    def __str__(self) -> str:
        if self.denom_exponent == 0:
            return str(self.numerator)
        return f"({self.numerator})/(1-z)^{self.denom_exponent}"


@dataclass(frozen=True)
class CoefficientVector:
    """Hilbert coefficients e_0..e_r with their certification level."""

    values: Tuple[int, ...]
    certification: Certification

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)


def binomial(n: int, k: int) -> int:
    """C(n, k) in the polynomial sense: n(n-1)...(n-k+1)/k!, any integer n."""
    if k < 0:
        return 0
    return _falling(n, k)


def _falling(n: int, k: int) -> int:
    num = 1
    for i in range(k):
        num *= n - i
    den = 1
    for i in range(1, k + 1):
        den *= i
    assert num % den == 0
    return num // den


def series_coefficients(series: RationalSeries, r: int) -> CoefficientVector:
    """e_0..e_r with e_i = sum_{k>=i} C(k, i) h_k on the normalized numerator.

    The coefficients are the Taylor data of h at z = 1, so they are read off
    the normalized h-polynomial no matter which denominator exponent the
    caller works at; r only fixes how many are returned.
    """
    if r < series.denom_exponent:
        raise InputError("requested dimension below the series denominator exponent")
    h = series.numerator
    vals = []
    for i in range(r + 1):
        e = sum(comb(k, i) * c for k, c in enumerate(h.coeffs) if k >= i)
        vals.append(e)
    return CoefficientVector(tuple(vals), PROVEN)


def hilbert_polynomial_value(coeffs: Sequence[int], r: int, n: int) -> int:
    """p(n) = sum_{i<r} (-1)^i e_i C(n+r-i-1, r-i-1)."""
    total = 0
    for i in range(r):
        total += (-1) ** i * coeffs[i] * _falling(n + r - i - 1, r - i - 1)
    return total


def samuel_polynomial_value(coeffs: Sequence[int], r: int, n: int) -> int:
    """p^1(n) = sum_{i<=r} (-1)^i e_i C(n+r-i, r-i)."""
    total = 0
    for i in range(r + 1):
        total += (-1) ** i * coeffs[i] * _falling(n + r - i, r - i)
    return total


def series_from_window(
    values: Sequence[int],
    r: int,
    window: int,
    tail_certified: bool = False,
) -> Tuple[RationalSeries, Certification]:
    """Extract h(z) = (1-z)^r * sum values[j] z^j, demanding a clean window.

    values must be the exact Hilbert function H(0..jmax).  The last `window`
    computed coefficients of the product must vanish; otherwise jmax was too
    small and WindowExceeded is raised.
    """
    if window < 1:
        raise InputError("window must be >= 1")
    if len(values) <= window:
        raise WindowExceeded("window larger than the computed range")
    prod = IntPolynomial(values).mul_one_minus_z(r)
    # Indices len(values)..len(values)+r-1 of the product involve H values
    # beyond jmax and are meaningless; only inspect 0..len(values)-1.
    tail = [prod.coeff(k) for k in range(len(values) - window, len(values))]
    if any(tail):
        raise WindowExceeded(
            f"h-coefficients do not vanish on the last {window} computed degrees"
        )
    h = IntPolynomial([prod.coeff(k) for k in range(len(values) - window)])
    cert = PROVEN if tail_certified else Certification.window_cert(window)
    return RationalSeries(h, r), cert


def infer_denominator_exponent(values: Sequence[int], window: int, max_r: int = 12) -> int:
    """Smallest r for which (1-z)^r * (sum values z^j) has a clean zero window."""
    for r in range(max_r + 1):
        prod = IntPolynomial(values).mul_one_minus_z(r)
        tail = [prod.coeff(k) for k in range(len(values) - window, len(values))]
        if len(values) > window and not any(tail):
            return r
    raise WindowExceeded("no denominator exponent yields a clean window")
