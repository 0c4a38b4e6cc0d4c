"""Sparse multivariate polynomials over an exact coefficient field.

Monomials are exponent tuples.  The expression grammar for instance files is
deliberately small: integer coefficients, `^` powers, `*` products, `+`/`-`.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import InputError

Monomial = Tuple[int, ...]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))

def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


class Polynomial:
    """Sparse polynomial: mapping monomial -> nonzero coefficient.

    Treated as immutable after construction; all operations return new values.
    """

    __slots__ = ("terms", "nvars", "_key")

    def __init__(self, nvars: int, terms: Dict[Monomial, object], field):
        self.terms = {m: c for m, c in terms.items() if not field.is_zero(c)}
        self.nvars = nvars
        self._key = None

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def monomial(self) -> Monomial:
        (m,) = self.terms.keys()
        return m

    def order(self) -> int:
        """Minimal total degree of a term (order at the origin); -1 if zero."""
        if not self.terms:
            return -1
        return min(mono_degree(m) for m in self.terms)

    def max_degree(self) -> int:
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def key(self) -> Tuple:
        if self._key is None:
            self._key = tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))
        return self._key

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.key() == other.key()

    def mul(self, other: "Polynomial", field) -> "Polynomial":
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = field.mul(c1, c2)
                if m in out:
                    out[m] = field.add(out[m], c)
                else:
                    out[m] = c
        return Polynomial(self.nvars, out, field)

    def mul_mono(self, m: Monomial, field) -> "Polynomial":
        return Polynomial(
            self.nvars, {mono_mul(m, mm): c for mm, c in self.terms.items()}, field
        )

    def add(self, other: "Polynomial", field) -> "Polynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                out[m] = field.add(out[m], c)
            else:
                out[m] = c
        return Polynomial(self.nvars, out, field)

    def scale(self, c, field) -> "Polynomial":
        return Polynomial(
            self.nvars, {m: field.mul(cc, c) for m, cc in self.terms.items()}, field
        )

    def to_string(self, variables: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda mm: (mono_degree(mm), mm)):
            c = self.terms[m]
            factors = []
            for v, e in zip(variables, m):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            cs = str(c)
            if factors and cs == "1":
                parts.append("*".join(factors))
            elif factors and cs == "-1":
                parts.append("-" + "*".join(factors))
            elif factors:
                parts.append("*".join([cs] + factors))
            else:
                parts.append(cs)
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out


def monomial_poly(nvars: int, m: Monomial, field) -> Polynomial:
    return Polynomial(nvars, {m: field.from_int(1)}, field)


_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|-)")


def parse_polynomial(text: str, variables: Sequence[str], field) -> Polynomial:
    """Parse the instance-file grammar into a Polynomial.

    Grammar:  poly := term (('+'|'-') term)* ;  term := factor ('*' factor)* ;
    factor := INT | VAR ('^' INT)? ;  a leading '-' negates the first term.
    """
    tokens: List[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise InputError(f"bad character in polynomial: {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise InputError("empty polynomial")
    var_index = {v: i for i, v in enumerate(variables)}
    nvars = len(variables)

    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else None

    def take():
        nonlocal idx
        t = tokens[idx]
        idx += 1
        return t

    def parse_factor() -> Polynomial:
        t = take()
        if t.isdigit():
            return Polynomial(nvars, {(0,) * nvars: field.from_int(int(t))}, field)
        if t not in var_index:
            raise InputError(f"unknown variable {t!r}")
        exp = 1
        if peek() == "^":
            take()
            e = take()
            if not e.isdigit():
                raise InputError("exponent must be a nonnegative integer")
            exp = int(e)
        mono = tuple(exp if i == var_index[t] else 0 for i in range(nvars))
        return monomial_poly(nvars, mono, field)

    def parse_term() -> Polynomial:
        p = parse_factor()
        while peek() == "*":
            take()
            p = p.mul(parse_factor(), field)
        return p

    sign = 1
    if peek() == "-":
        take()
        sign = -1
    elif peek() == "+":
        take()
    result = parse_term().scale(field.from_int(sign), field)
    while peek() in ("+", "-"):
        s = 1 if take() == "+" else -1
        result = result.add(parse_term().scale(field.from_int(s), field), field)
    if idx != len(tokens):
        raise InputError(f"trailing tokens in polynomial: {tokens[idx:]}")
    return result
