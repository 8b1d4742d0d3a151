import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tnncompact import linalg as la


def rand_matrix(n, rng, bound=5):
    return la.mat(
        [
            [Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(n)]
            for _ in range(n)
        ]
    )


def rand_invertible(n, rng):
    while True:
        m = rand_matrix(n, rng)
        if la.det(m) != 0:
            return m


small = st.integers(-6, 6)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_leibniz(rows):
    m = la.mat(rows)
    from itertools import permutations

    def sign(p):
        s = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if p[i] > p[j]:
                    s = -s
        return s

    leibniz = sum(
        sign(p) * m[0][p[0]] * m[1][p[1]] * m[2][p[2]]
        for p in permutations(range(3))
    )
    assert la.det(m) == leibniz


def test_inverse_and_rank():
    rng = random.Random(1)
    for n in (2, 3, 4):
        m = rand_invertible(n, rng)
        assert la.matmul(m, la.inverse(m)) == la.identity(n)
        assert la.rank(m) == n
    with pytest.raises(la.SingularMatrixError):
        la.inverse(la.mat([[1, 2], [2, 4]]))
    assert la.rank(la.mat([[1, 2], [2, 4]])) == 1
    assert la.rank(la.zeros(3, 2)) == 0


def test_rank_matches_minor_rank():
    rng = random.Random(2)
    for _ in range(40):
        n = rng.choice([2, 3, 4])
        m = rand_matrix(n, rng, bound=2)
        by_minors = 0
        for k in range(1, n + 1):
            if any(x != 0 for x in la.all_minors(m, k)):
                by_minors = k
        assert la.rank(m) == by_minors


def test_ldu_reassembly_and_failure():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.choice([2, 3, 4])
        m = rand_invertible(n, rng)
        try:
            l, d, u = la.ldu(m)
        except la.FactorizationError:
            assert any(
                la.minor(m, range(k), range(k)) == 0 for k in range(1, n + 1)
            )
            continue
        assert la.matmul(la.matmul(l, d), u) == m
        assert la.is_lower_triangular(l) and la.is_upper_triangular(u)
        assert la.is_diagonal(d)
        assert all(l[i][i] == 1 and u[i][i] == 1 for i in range(n))


def test_block_ldu_reassembly():
    rng = random.Random(4)
    blocks = [[0, 1], [2, 3]]
    for _ in range(30):
        m = rand_invertible(4, rng)
        try:
            l, d, u = la.block_ldu(m, blocks)
        except la.FactorizationError:
            assert la.det(la.submatrix(m, [0, 1], [0, 1])) == 0
            continue
        assert la.matmul(la.matmul(l, d), u) == m
        assert la.is_block_lower(l, blocks) and la.is_block_upper(u, blocks)
        assert la.is_block_lower(d, blocks) and la.is_block_upper(d, blocks)


def test_block_anti_ldu_unique_middle():
    """The two-sided reduction exists iff trailing block minors are nonzero,
    and its middle factor is unique."""
    rng = random.Random(5)
    blocks = [[0, 1], [2]]
    hits = 0
    for _ in range(40):
        m = rand_invertible(3, rng)
        trailing_ok = m[2][2] != 0 and la.det(m) != 0
        try:
            up, l, uq = la.block_anti_ldu(m, blocks)
        except la.FactorizationError:
            assert not trailing_ok
            continue
        hits += 1
        assert trailing_ok
        assert la.matmul(la.matmul(up, l), uq) == m
        assert la.is_block_upper(up, blocks) and la.is_block_lower(uq, blocks)
        # unipotent outer factors: identity diagonal blocks
        for blk in blocks:
            for i in blk:
                for j in blk:
                    want = Fraction(int(i == j))
                    assert up[i][j] == want and uq[i][j] == want
    assert hits > 10


def test_kernel_and_spans():
    m = la.mat([[1, 2, 3], [2, 4, 6]])
    k = la.kernel(m)
    assert la.dims(k) == (3, 2)
    for col in la.transpose(k):
        assert all(x == 0 for x in la.matvec(m, tuple(col)))

    a = la.mat([[1, 0], [0, 1], [0, 0]])
    b = la.mat([[0, 0], [1, 0], [0, 1]])
    inter = la.span_intersection(a, b)
    assert la.span_dim(inter) == 1
    assert la.in_span([tuple(col) for col in la.transpose(a)], (0, 1, 0))
    assert not la.in_span([tuple(col) for col in la.transpose(a)], (0, 0, 1))
    s = la.span_sum(a, b)
    assert la.span_dim(s) == 3


def test_reversal_involution():
    r = la.reversal(4)
    assert la.matmul(r, r) == la.identity(4)
    m = la.mat([[i * 4 + j for j in range(4)] for i in range(4)])
    rr = la.matmul(la.matmul(r, m), r)
    assert rr[0][0] == m[3][3] and rr[0][3] == m[3][0]
