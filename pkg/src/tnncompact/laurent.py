"""Single-variable Laurent polynomials over the rationals.

Used for exact one-parameter torus curves: limits into boundary strata are
taken by dividing by the minimal valuation and evaluating at 0, with no
numerical thresholds anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .linalg import frac


@dataclass(frozen=True)
class Laurent:
    """Finite Laurent polynomial sum_e coeffs[e] * s^e."""

    coeffs: tuple[tuple[int, Fraction], ...] = field(default_factory=tuple)

    @staticmethod
    def of(data: Mapping[int, Fraction] | int | Fraction | str) -> "Laurent":
        if isinstance(data, Mapping):
            items = {int(e): frac(c) for e, c in data.items() if frac(c) != 0}
        else:
            c = frac(data)
            items = {0: c} if c != 0 else {}
        return Laurent(tuple(sorted(items.items())))

    @staticmethod
    def monomial(e: int, c=1) -> "Laurent":
        return Laurent.of({e: frac(c)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> int:
        if self.is_zero():
            raise ValueError("valuation of zero")
        return self.coeffs[0][0]

    def coeff(self, e: int) -> Fraction:
        for ee, c in self.coeffs:
            if ee == e:
                return c
        return Fraction(0)

    def __add__(self, other: "Laurent") -> "Laurent":
        d = dict(self.coeffs)
        for e, c in other.coeffs:
            d[e] = d.get(e, Fraction(0)) + c
        return Laurent.of(d)

    def __neg__(self) -> "Laurent":
        return Laurent(tuple((e, -c) for e, c in self.coeffs))

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other: "Laurent") -> "Laurent":
        d: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = e1 + e2
                d[e] = d.get(e, Fraction(0)) + c1 * c2
        return Laurent.of(d)

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(f"{c}*s^{e}" for e, c in self.coeffs)


LMatrix = tuple[tuple[Laurent, ...], ...]


def lmat_from_rational(m) -> LMatrix:
    return tuple(tuple(Laurent.of(x) for x in row) for row in m)


def lmat_mul(a: LMatrix, b: LMatrix) -> LMatrix:
    bt = tuple(zip(*b))
    return tuple(
        tuple(
            sum((x * y for x, y in zip(row, col)), Laurent.of(0)) for col in bt
        )
        for row in a
    )


def lmat_det(m: LMatrix) -> Laurent:
    n = len(m)
    if n == 0:
        return Laurent.of(1)
    if n == 1:
        return m[0][0]
    total = Laurent.of(0)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        sub = tuple(
            tuple(m[i][jj] for jj in range(n) if jj != j) for i in range(1, n)
        )
        term = m[0][j] * lmat_det(sub)
        total = total + (term if j % 2 == 0 else -term)
    return total


def lmat_compound(m: LMatrix, k: int) -> LMatrix:
    from .exterior import subsets_colex

    n = len(m)
    subs = subsets_colex(n, k)
    return tuple(
        tuple(
            lmat_det(tuple(tuple(m[i - 1][j - 1] for j in t) for i in s))
            for t in subs
        )
        for s in subs
    )


def lmat_limit(m: LMatrix):
    """Divide by s^(min valuation) and evaluate at s = 0: the projective limit."""
    vals = [x.valuation() for row in m for x in row if not x.is_zero()]
    if not vals:
        raise ValueError("limit of the zero matrix")
    v = min(vals)
    return tuple(tuple(x.coeff(v) for x in row) for row in m)
