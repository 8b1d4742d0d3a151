import random
from itertools import combinations

import pytest

from tnncompact.cells import (
    CellError,
    CellLabel,
    EmptyCellError,
    classify,
    dimension_of,
    enumerate_cells,
    jacobian_rank_check,
    sample_cell,
    top_label,
)
from tnncompact.strata import act, base_point, membership_Zgt0, psibar
from tnncompact.tnn import sample_G_gt0
from tnncompact.weyl import (
    ParabolicSubset,
    WeylElement,
    all_weyl,
    bruhat_leq,
    identity_w,
    longest_w,
    simple_reflection,
)


def L(n, js, v, w, vp, wp, y, yp):
    return CellLabel(
        ParabolicSubset.of(n, js),
        WeylElement(v),
        WeylElement(w),
        WeylElement(vp),
        WeylElement(wp),
        WeylElement(y),
        WeylElement(yp),
    )


def test_label_validity():
    with pytest.raises(CellError):  # w not a minimal coset rep
        L(3, [1], (1, 2, 3), (2, 1, 3), (1, 2, 3), (1, 2, 3), (1, 2, 3), (1, 2, 3))
    with pytest.raises(CellError):  # y outside W_J
        L(3, [1], (1, 2, 3), (1, 2, 3), (1, 2, 3), (1, 2, 3), (1, 3, 2), (1, 2, 3))
    lbl = L(3, [1], (1, 3, 2), (2, 3, 1), (1, 2, 3), (1, 3, 2), (2, 1, 3), (1, 2, 3))
    assert lbl.is_valid() and lbl.is_nonempty()


def test_dimension_spec_cases():
    # open stratum, torus cell: d = |I|
    d = dimension_of(L(2, [1], (1, 2), (1, 2), (1, 2), (1, 2), (2, 1), (2, 1)))
    assert d == 1
    # open cell of the closed stratum at n=2
    assert dimension_of(L(2, [], (1, 2), (2, 1), (1, 2), (2, 1), (1, 2), (1, 2))) == 2
    # a vertex
    assert dimension_of(L(2, [], (2, 1), (2, 1), (2, 1), (2, 1), (1, 2), (1, 2))) == 0
    # top cell of the open stratum at n=2: d = 2 l(w0) + |I| = 3
    assert dimension_of(top_label(ParabolicSubset.of(2, [1]))) == 3
    # codimension-one boundary top cell at n=3
    assert dimension_of(top_label(ParabolicSubset.of(3, [1]))) == 7
    # empty label refuses
    empty = L(3, [1], (2, 1, 3), (2, 3, 1), (1, 2, 3), (1, 3, 2), (1, 2, 3), (1, 2, 3))
    assert not empty.is_nonempty()
    with pytest.raises(EmptyCellError):
        dimension_of(empty)


def test_top_cell_dimension_matches_open_part():
    """The open cell of each stratum has dimension 2·l(w0) + |J|."""
    from itertools import combinations

    for n in (2, 3):
        w0_len = longest_w(n).length
        for r in range(n):
            for js in combinations(range(1, n), r):
                J = ParabolicSubset.of(n, js)
                assert dimension_of(top_label(J)) == 2 * w0_len + len(js)


def test_census_n2():
    cells = enumerate_cells(2)
    assert len(cells) == 13
    by_j = {}
    for label, d in cells:
        by_j.setdefault(len(label.J.J), []).append(d)
    assert len(by_j[0]) == 9 and len(by_j[1]) == 4
    assert sorted(d for _, d in cells) == [0, 0, 0, 0, 1, 1, 1, 1, 1, 2, 2, 2, 3]
    assert sum((-1) ** d for _, d in cells) == 1


def test_census_n3_regression():
    cells = enumerate_cells(3)
    assert len(cells) == 685
    assert sum((-1) ** d for _, d in cells) == 1
    per_j = {}
    for label, _ in cells:
        per_j[tuple(sorted(label.J.J))] = per_j.get(tuple(sorted(label.J.J)), 0) + 1
    assert per_j == {(): 361, (1,): 144, (2,): 144, (1, 2): 36}


def test_census_single_stratum():
    cells = enumerate_cells(3, ParabolicSubset.of(3, [1, 2]))
    assert len(cells) == 36  # y, y' free over W


def test_census_deterministic_order():
    a = enumerate_cells(3)
    b = enumerate_cells(3)
    assert [(l.sort_key(), d) for l, d in a] == [(l.sort_key(), d) for l, d in b]


def test_enumerate_bounds():
    with pytest.raises(CellError):
        enumerate_cells(1)
    with pytest.raises(CellError):
        enumerate_cells(6)


def test_sample_cell_refuses_empty():
    empty = L(3, [1], (2, 1, 3), (2, 3, 1), (1, 2, 3), (1, 3, 2), (1, 2, 3), (1, 2, 3))
    with pytest.raises(EmptyCellError):
        sample_cell(empty, 1)


def test_sample_top_cell_open_stratum_is_strictly_positive():
    from tnncompact.tnn import is_totally_positive
    from tnncompact.strata import group_point

    J = ParabolicSubset.of(2, [1])
    _, z = sample_cell(top_label(J), 3)
    # the open stratum point is a group element: its gamma rep is the matrix
    assert is_totally_positive(z.a @ z.levi @ z.b.inverse())
    assert membership_Zgt0(z)


def test_sample_closed_stratum_flags_positive():
    J = ParabolicSubset.of(2, [])
    _, z = sample_cell(top_label(J), 5)
    assert membership_Zgt0(z)


def test_classify_base_point():
    for n, js in [(2, []), (2, [1]), (3, [1]), (3, []), (3, [1, 2])]:
        J = ParabolicSubset.of(n, js)
        label = classify(base_point(J))
        e = identity_w(n)
        w0j = J.longest_element()
        assert (label.v, label.w, label.vp, label.wp) == (e, e, e, e)
        assert label.y == w0j and label.yp == w0j
        assert dimension_of(label) == len(J.J)


def test_classify_group_element_double_cell():
    from tnncompact.strata import group_point

    rng = random.Random(31)
    J = ParabolicSubset.of(3, [1, 2])
    g = sample_G_gt0(3, rng)
    label = classify(group_point(J, g))
    # strictly positive elements sit in the big double cell: y = y' = e
    assert label == top_label(J)


def test_roundtrip_all_labels_n2():
    for label, _ in enumerate_cells(2):
        for seed in range(3):
            _, z = sample_cell(label, seed)
            assert classify(z) == label


def test_roundtrip_random_labels_n3():
    rng = random.Random(8)
    labels = enumerate_cells(3)
    for label, _ in rng.sample(labels, 60):
        _, z = sample_cell(label, 11)
        assert classify(z) == label


def test_classify_commutes_with_psibar_swap():
    """ψ̄ swaps the flag labels and swap-inverts the coset labels (the
    transpose of a double-cell chart reverses its words)."""
    rng = random.Random(9)
    labels = enumerate_cells(3)
    for label, _ in rng.sample(labels, 20):
        _, z = sample_cell(label, 21)
        got = classify(psibar(z))
        assert (got.v, got.w, got.vp, got.wp) == (label.vp, label.wp, label.v, label.w)
        assert (got.y, got.yp) == (label.yp.inverse(), label.y.inverse())


def test_jacobian_n2_all():
    for label, _ in enumerate_cells(2):
        assert jacobian_rank_check(label, 300)


def test_jacobian_zero_dimensional():
    lbl = L(2, [], (2, 1), (2, 1), (2, 1), (2, 1), (1, 2), (1, 2))
    assert dimension_of(lbl) == 0
    assert jacobian_rank_check(lbl, 1)


def _random_nonempty_label(n, rng):
    gens = list(range(1, n))
    js = rng.choice([c for r in range(n) for c in combinations(gens, r)])
    J = ParabolicSubset.of(n, js)
    reps = J.min_coset_reps()
    wj = [w for w in all_weyl(n) if J.contains_w(w)]
    while True:
        v, w = rng.choice(reps), rng.choice(reps)
        vp, wp = rng.choice(reps), rng.choice(reps)
        if bruhat_leq(v, w) and bruhat_leq(vp, wp):
            return CellLabel(J, v, w, vp, wp, rng.choice(wj), rng.choice(wj))


@pytest.mark.slow
def test_jacobian_n4_random_subset():
    rng = random.Random(12)
    for _ in range(25):
        label = _random_nonempty_label(4, rng)
        assert jacobian_rank_check(label, 13), label


@pytest.mark.slow
def test_roundtrip_n4_random_labels():
    rng = random.Random(12345)
    for k in range(12):
        label = _random_nonempty_label(4, rng)
        _, z = sample_cell(label, 1000 + k)
        assert classify(z) == label


@pytest.mark.slow
def test_limits_and_membership_n4():
    import tnncompact.linalg as la
    from tnncompact.matgroup import GroupMatrix
    from tnncompact.strata import torus_limit

    rng = random.Random(7)
    one = GroupMatrix(la.identity(4))
    for c in [(1, 0, 1), (0, 1, 0), (2, 1, 3), (0, 0, 1)]:
        J = ParabolicSubset.of(4, [i + 1 for i, x in enumerate(c) if x == 0])
        assert torus_limit(one, c, one) == base_point(J)
    g1, g2 = sample_G_gt0(4, rng), sample_G_gt0(4, rng)
    z = torus_limit(g1, (1, 1, 1), g2)
    assert membership_Zgt0(z)


def test_no_positive_point_classifies_empty():
    rng = random.Random(10)
    labels = enumerate_cells(3)
    for k in range(15):
        label, _ = rng.choice(labels)
        _, z = sample_cell(label, 100 + k)
        g1, g2 = sample_G_gt0(3, rng), sample_G_gt0(3, rng)
        got = classify(act(g1, g2.inverse(), z))
        assert got.is_nonempty()
