from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from modcat.linalg import (QQ, Field, Matrix, Residue, inverse, kernel, kron, quotient, rank, rref, solve,
                           span, intertwiner_space, unflatten)

small = st.integers(-4, 4)


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix(QQ, r, c, rows)


def to_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(m[i, j].numerator, m[i, j].denominator))


def test_rref_known_example():
    m = Matrix.from_rows(QQ, [[1, 2, 3], [4, 5, 6]])
    r, piv = rref(m)
    assert piv == [0, 1]
    assert r.data == ((1, 0, -1), (0, 1, 2))
    assert kernel(m).vectors() == [(1, -2, 1)]


def test_fp_rref():
    F2 = Field(2)
    r, piv = rref(Matrix.from_rows(F2, [[1, 1], [1, 2]]))
    assert piv == [0, 1] and r.is_identity()


def test_solve_free_variables_zero_and_inconsistent():
    assert solve(Matrix.from_rows(QQ, [[1, 1]]), [2]) == (2, 0)
    assert solve(Matrix.from_rows(QQ, [[1, 1], [1, 1]]), [1, 2]) is None


def test_field_parsing_and_formatting():
    assert QQ.parse("-3/6") == Fraction(-1, 2)
    assert QQ.format(Fraction(5, 1)) == "5"
    F7 = Field.from_spec("fp:7")
    assert F7.format(F7(10)) == "3"
    assert F7.spec == "fp:7"
    with pytest.raises(ValueError):
        Field(4)


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == to_sympy(m).rank()


@given(matrices())
def test_rref_matches_sympy(m):
    ours, piv = rref(m)
    theirs, tpiv = to_sympy(m).rref()
    assert tuple(piv) == tuple(tpiv)
    for i in range(len(piv)):
        assert [Fraction(int(x.p), int(x.q)) for x in theirs.row(i)] == list(ours.row(i))


@given(matrices())
def test_rank_nullity(m):
    K = kernel(m)
    assert rank(m) + K.dim == m.cols
    for v in K.vectors():
        assert all(x == 0 for x in m @ v)


@given(matrices(4, 4), st.lists(small, min_size=4, max_size=4))
def test_solve_is_a_solution(m, x):
    x = tuple(QQ(v) for v in x[:m.cols])
    b = m @ x
    y = solve(m, b)
    assert y is not None and m @ y == b


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_agrees_with_sympy(rows):
    m = Matrix.from_rows(QQ, rows)
    inv = inverse(m)
    if to_sympy(m).det() == 0:
        assert inv is None
    else:
        assert (m @ inv).is_identity() and (inv @ m).is_identity()


@given(matrices(3, 5))
def test_quotient_projection_section(m):
    rel = span(QQ, m.cols, m.data)
    q = quotient(m.cols, rel)
    assert q.dim == m.cols - rel.dim
    assert (q.projection @ q.section).is_identity()
    for v in rel.vectors():
        assert not any(q.project(v))


@given(matrices(2, 2), matrices(2, 2))
def test_kron_matches_sympy(a, b):
    k = kron(a, b)
    ref = sympy.kronecker_product(to_sympy(a), to_sympy(b))
    assert to_sympy(k) == ref


@given(st.sampled_from([2, 3, 5, 7]), st.integers(-20, 20), st.integers(-20, 20))
def test_residue_field_axioms(p, a, b):
    F = Field(p)
    x, y = F(a), F(b)
    assert (x + y) - y == x
    assert x * y == F(a * b)
    if y:
        assert (x / y) * y == x
    assert isinstance(x, Residue) and 0 <= x.value < p


def test_subspace_coordinates():
    S = span(QQ, 3, [(1, 1, 0), (0, 1, 1)])
    assert S.vectors() == [(1, 0, -1), (0, 1, 1)]
    assert S.coordinates((1, 2, 1)) == (1, 2)
    assert S.coordinates((1, 0, 0)) is None


def test_intertwiners_of_a_swap():
    swap = Matrix.from_rows(QQ, [[0, 1], [1, 0]])
    shapes = {"x": (2, 2)}
    H = intertwiner_space(QQ, shapes, [(swap, "x", "x", swap)])
    mats = [unflatten(QQ, shapes, v)["x"] for v in H.vectors()]
    assert H.dim == 2
    assert all(m @ swap == swap @ m for m in mats)
