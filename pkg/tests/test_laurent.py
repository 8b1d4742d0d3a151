from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tnncompact import linalg as la
from tnncompact.laurent import (
    Laurent,
    lmat_compound,
    lmat_det,
    lmat_from_rational,
    lmat_limit,
    lmat_mul,
)

coeff_dicts = st.dictionaries(
    st.integers(-3, 3),
    st.fractions(min_value=Fraction(-5), max_value=Fraction(5), max_denominator=4),
    max_size=4,
)


@given(coeff_dicts, coeff_dicts, coeff_dicts)
def test_ring_axioms(a, b, c):
    x, y, z = Laurent.of(a), Laurent.of(b), Laurent.of(c)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x + (-x) == Laurent.of(0)


def test_valuation_and_limit():
    x = Laurent.of({-2: Fraction(3), 1: Fraction(5)})
    assert x.valuation() == -2 and x.coeff(-2) == 3
    m = (
        (Laurent.monomial(-1), Laurent.of(1)),
        (Laurent.of(0), Laurent.monomial(-1, 2)),
    )
    assert lmat_limit(m) == la.mat([[1, 0], [0, 2]])
    with pytest.raises(ValueError):
        Laurent.of(0).valuation()


def test_det_and_compound_vs_rational():
    m = la.mat([[1, 2, 0], [3, 4, 1], [0, 1, 5]])
    lm = lmat_from_rational(m)
    assert lmat_det(lm) == Laurent.of(la.det(m))
    from tnncompact.exterior import compound

    got = lmat_compound(lm, 2)
    expect = compound(m, 2)
    assert all(
        got[i][j] == Laurent.of(expect[i][j])
        for i in range(3)
        for j in range(3)
    )


def test_torus_curve_det_is_monomial():
    curve = (
        (Laurent.monomial(-3), Laurent.of(0)),
        (Laurent.of(0), Laurent.monomial(-1)),
    )
    g = lmat_from_rational(la.mat([[1, 1], [1, 2]]))
    x = lmat_mul(lmat_mul(g, curve), g)
    d = lmat_det(x)
    assert not d.is_zero()
    assert d == Laurent.monomial(-4)
