"""Forward-mode dual numbers over the rationals.

Each value carries an exact gradient vector; matrix products and minors
propagate derivatives by the product rule, so Jacobians of chart maps are
exact rational matrices whose rank is decided with zero tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import frac


@dataclass(frozen=True)
class Dual:
    val: Fraction
    grad: tuple[Fraction, ...]

    @staticmethod
    def const(x, nvars: int) -> "Dual":
        return Dual(frac(x), (Fraction(0),) * nvars)

    @staticmethod
    def var(x, index: int, nvars: int) -> "Dual":
        g = [Fraction(0)] * nvars
        g[index] = Fraction(1)
        return Dual(frac(x), tuple(g))

    def __add__(self, o: "Dual") -> "Dual":
        return Dual(self.val + o.val, tuple(a + b for a, b in zip(self.grad, o.grad)))

    def __sub__(self, o: "Dual") -> "Dual":
        return Dual(self.val - o.val, tuple(a - b for a, b in zip(self.grad, o.grad)))

    def __neg__(self) -> "Dual":
        return Dual(-self.val, tuple(-a for a in self.grad))

    def __mul__(self, o: "Dual") -> "Dual":
        return Dual(
            self.val * o.val,
            tuple(self.val * b + o.val * a for a, b in zip(self.grad, o.grad)),
        )

    def __truediv__(self, o: "Dual") -> "Dual":
        if o.val == 0:
            raise ZeroDivisionError("dual division by zero value")
        v = self.val / o.val
        return Dual(
            v,
            tuple(
                (a - v * b) / o.val for a, b in zip(self.grad, o.grad)
            ),
        )

    def is_zero(self) -> bool:
        return self.val == 0 and all(g == 0 for g in self.grad)


DMatrix = tuple[tuple[Dual, ...], ...]


def dmat_const(m, nvars: int) -> DMatrix:
    return tuple(tuple(Dual.const(x, nvars) for x in row) for row in m)


def dmat_identity(n: int, nvars: int) -> DMatrix:
    return tuple(
        tuple(Dual.const(int(i == j), nvars) for j in range(n)) for i in range(n)
    )


def dmat_mul(a: DMatrix, b: DMatrix) -> DMatrix:
    bt = tuple(zip(*b))
    nvars = len(a[0][0].grad)
    zero = Dual.const(0, nvars)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = zero
            for x, y in zip(row, col):
                acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def dmat_transpose(m: DMatrix) -> DMatrix:
    return tuple(zip(*m))


def dmat_det(m: DMatrix) -> Dual:
    n = len(m)
    nvars = len(m[0][0].grad) if n else 0
    if n == 0:
        return Dual.const(1, nvars)
    if n == 1:
        return m[0][0]
    total = Dual.const(0, nvars)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        sub = tuple(
            tuple(m[i][jj] for jj in range(n) if jj != j) for i in range(1, n)
        )
        term = m[0][j] * dmat_det(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def dmat_compound(m: DMatrix, k: int) -> DMatrix:
    from .exterior import subsets_colex

    n = len(m)
    subs = subsets_colex(n, k)
    return tuple(
        tuple(
            dmat_det(tuple(tuple(m[i - 1][j - 1] for j in t) for i in s))
            for t in subs
        )
        for s in subs
    )
