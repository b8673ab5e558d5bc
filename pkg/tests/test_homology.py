import itertools
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from pencil_trisection.homology import (
    IntMatrix,
    cokernel_divisors,
    determinant,
    elementary_divisors,
    fiber_basis,
    fiber_intersection_form,
    pairing,
    smith_normal_form,
    transvection_matrix,
)


def minors_divisors(m: IntMatrix) -> list[int]:
    """Elementary divisors from gcds of k x k minors: d_k = D_k / D_{k-1}."""
    out, prev = [], 1
    for k in range(1, min(m.rows, m.cols) + 1):
        dk = 0
        for rows in itertools.combinations(range(m.rows), k):
            for cols in itertools.combinations(range(m.cols), k):
                sub = IntMatrix.from_rows([[m[i, j] for j in cols] for i in rows], k)
                dk = gcd(dk, determinant(sub))
        if dk == 0:
            break
        out.append(dk // prev)
        prev = dk
    return out


def matrices(max_dim=12, bound=1000):
    return st.integers(0, max_dim).flatmap(
        lambda r: st.integers(0, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                min_size=r, max_size=r,
            ).map(lambda rows: IntMatrix.from_rows(rows, c))
        )
    )


# -- fiber basis and form ---------------------------------------------------

def test_fiber_basis_examples():
    assert fiber_basis(0, 1).rank == 0
    assert fiber_basis(0, 1).labels == ()
    assert fiber_basis(1, 1).labels == ("a1", "b1")
    assert fiber_basis(0, 4).labels == ("delta1", "delta2", "delta3")
    assert fiber_basis(0, 4).rank == 3


def test_fiber_basis_needs_boundary():
    with pytest.raises(ValueError, match="pencil fiber must have boundary"):
        fiber_basis(1, 0)


@pytest.mark.parametrize("h,b", [(0, 1), (1, 1), (0, 4), (2, 3), (3, 1)])
def test_rank_matches_euler_characteristic(h, b):
    # one-vertex spine: rank = 1 - chi(F_{h,b}) = 1 - (2 - 2h - b)
    assert fiber_basis(h, b).rank == 1 - (2 - 2 * h - b)


def test_fiber_form_examples():
    assert fiber_intersection_form(fiber_basis(1, 1)).tolist() == [[0, 1], [-1, 0]]
    assert fiber_intersection_form(fiber_basis(0, 4)).tolist() == [[0] * 3] * 3
    assert fiber_intersection_form(fiber_basis(2, 1)).tolist() == [
        [0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0],
    ]


@pytest.mark.parametrize("h,b", [(0, 1), (1, 2), (2, 1), (3, 4)])
def test_fiber_form_skew_with_rank_2h(h, b):
    f = fiber_intersection_form(fiber_basis(h, b))
    assert f.transpose().tolist() == [[-x for x in r] for r in f.tolist()]
    assert len(elementary_divisors(f)) == 2 * h
    # boundary classes are in the radical
    for j in range(2 * h, f.rows):
        assert all(f[j, i] == 0 for i in range(f.cols))


# -- transvections ----------------------------------------------------------

def test_transvection_about_zero_is_identity():
    f = fiber_intersection_form(fiber_basis(2, 2))
    assert transvection_matrix(f, (0,) * 5, 1).is_identity()


def test_transvection_examples():
    f = fiber_intersection_form(fiber_basis(1, 1))
    t = transvection_matrix(f, (1, 0), 1)
    assert t.column(0) == (1, 0)
    assert t.column(1) == (-1, 1)
    assert transvection_matrix(f, (1, 0), -1).column(1) == (1, 1)


def test_transvection_matches_formula_on_basis():
    f = fiber_intersection_form(fiber_basis(2, 2))
    c = (1, -2, 0, 3, 1)
    t = transvection_matrix(f, c, -1)
    for j in range(5):
        x = [int(i == j) for i in range(5)]
        expected = tuple(xi - pairing(f, x, c) * ci for xi, ci in zip(x, c))
        assert t.column(j) == expected


def test_transvection_dimension_mismatch():
    f = fiber_intersection_form(fiber_basis(1, 1))
    with pytest.raises(ValueError):
        transvection_matrix(f, (1, 0, 0), 1)
    with pytest.raises(ValueError):
        transvection_matrix(f, (1, 0), 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3), st.integers(1, 4), st.data())
def test_transvection_properties(h, b, data):
    f = fiber_intersection_form(fiber_basis(h, b))
    n = f.rows
    c = data.draw(st.lists(st.integers(-50, 50), min_size=n, max_size=n))
    tp, tm = transvection_matrix(f, c, 1), transvection_matrix(f, c, -1)
    assert (tp @ tm).is_identity()
    assert tp.transpose() @ f @ tp == f
    assert determinant(tp) == 1


# -- Smith normal form ------------------------------------------------------

def test_snf_examples():
    u, d, v = smith_normal_form(IntMatrix.identity(3))
    assert d.is_identity()
    u, d, v = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert [d[0, 0], d[1, 1]] == [1, 6] == minors_divisors(IntMatrix.from_rows([[2, 0], [0, 3]]))
    u, d, v = smith_normal_form(IntMatrix.from_rows([[0, 1], [-1, 0]]))
    assert d.is_identity()


def test_snf_empty_shapes():
    for r, c in [(0, 0), (0, 3), (3, 0)]:
        u, d, v = smith_normal_form(IntMatrix.zeros(r, c))
        assert (u.rows, d.rows, d.cols, v.cols) == (r, r, c, c)


def test_snf_handles_big_integers():
    m = IntMatrix.from_rows([[2**80, 3**60], [5**40, 7**30]])
    u, d, v = smith_normal_form(m)
    assert u @ m @ v == d
    assert [d[0, 0], d[1, 1]] == minors_divisors(m)


def check_snf(m: IntMatrix):
    u, d, v = smith_normal_form(m)
    assert u @ m @ v == d
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
    diag = [d[i, i] for i in range(min(m.rows, m.cols))]
    assert all(d[i, j] == 0 for i in range(d.rows) for j in range(d.cols) if i != j)
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b % a == 0) if a else b == 0
    return diag


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_snf_properties(m):
    check_snf(m)


@settings(max_examples=100, deadline=None)
@given(matrices(max_dim=4, bound=30))
def test_snf_divisors_match_minors_oracle(m):
    diag = check_snf(m)
    assert [x for x in diag if x] == minors_divisors(m)


# -- cokernels --------------------------------------------------------------

def test_cokernel_examples():
    assert cokernel_divisors(2, []) == (2, [])
    assert cokernel_divisors(2, [(1, 0), (0, 1)]) == (0, [])
    assert cokernel_divisors(2, [(2, 0)]) == (1, [2])


def test_cokernel_length_mismatch():
    with pytest.raises(ValueError):
        cokernel_divisors(3, [(1, 0)])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6), st.data())
def test_cokernel_invariant_under_permutation_and_sign(n, data):
    cols = data.draw(
        st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), max_size=7)
    )
    perm = data.draw(st.permutations(cols))
    signs = data.draw(st.lists(st.sampled_from([1, -1]), min_size=len(cols), max_size=len(cols)))
    flipped = [[s * x for x in c] for s, c in zip(signs, perm)]
    assert cokernel_divisors(n, cols) == cokernel_divisors(n, flipped)
