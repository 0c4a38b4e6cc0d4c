"""Shared vocabulary for the two ideal-arithmetic backends.

A backend supplies exact ideal arithmetic over one ambient local ring; the
filtration engine only talks through this surface, so power-series quotients
and affine semigroup rings are interchangeable wherever both apply.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class InfiniteLength:
    """Marker returned by length computations of non-finite-colength ideals.

    caveat is set when infiniteness was inferred from truncation growth
    rather than a combinatorial certificate.
    """

    caveat: bool = False

    def __repr__(self):
        return "INFINITE(caveat)" if self.caveat else "INFINITE"


def is_finite(value) -> bool:
    return isinstance(value, int)


def expect_finite(value, what: str = "length") -> int:
    from .errors import NotComputable

    if not isinstance(value, int):
        raise NotComputable(f"{what} is not finite: {value!r}")
    return value
