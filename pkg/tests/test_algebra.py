import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from modcat.algebra import (AlgebraHom, BimoduleMap, action_pairing, balanced_pairing_to_map,
                            direct_sum, dual_numbers, gaussian_extension, generated_submodule, ground_algebra,
                            hom_basis, make_algebra, make_bimodule, module_hom_space, product_algebra,
                            quotient_bimodule, regular_bimodule, tensor_over,
                            validate_algebra, validate_algebra_hom, validate_bimodule, validate_bimodule_map,
                            zero_bimodule)
from modcat.errors import NotAlgebraHom, NotBalanced, UnitLawViolation, NonAssociativeAlgebra
from modcat.linalg import QQ, Field, Matrix, inverse

D = dual_numbers(QQ)
K = gaussian_extension(QQ)
k = ground_algebra(QQ)


def test_small_algebras_validate():
    validate_algebra(k)
    validate_algebra(D)
    assert D.product((0, 1), (0, 1)) == (0, 0)
    assert K.product((0, 1), (0, 1)) == (-1, 0)


def test_unit_failure():
    # e2 e2 = e2, e1 e1 = e1, mixed products zero, but claimed unit e2
    A = make_algebra(QQ, [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], [0, 1])
    with pytest.raises(UnitLawViolation):
        validate_algebra(A)


def test_non_associative_table():
    # e1 e1 = e2, e1 e2 = e1, e2 e1 = 0 breaks (e1 e1) e1 = e1 (e1 e1) with unit omitted
    A = make_algebra(QQ, [[[0, 1], [1, 0]], [[0, 0], [0, 1]]], [0, 1])
    with pytest.raises((NonAssociativeAlgebra, UnitLawViolation)):
        validate_algebra(A)


def test_bimodule_examples():
    validate_bimodule(regular_bimodule(D))
    validate_bimodule(regular_bimodule(k))
    B = make_bimodule(k, K, 2, [Matrix.identity(QQ, 2)], [K.right_mult(K.element(j)) for j in range(2)])
    assert validate_bimodule(B).dim == 2


def test_tensor_examples():
    assert tensor_over(regular_bimodule(k), regular_bimodule(k)).dim == 1
    assert tensor_over(regular_bimodule(D), regular_bimodule(D)).dim == 2
    P = product_algebra(QQ, 2)
    M = make_bimodule(k, P, 2, [Matrix.identity(QQ, 2)],
                      [Matrix.from_rows(QQ, [[1, 0], [0, 0]]), Matrix.from_rows(QQ, [[0, 0], [0, 1]])])
    N = make_bimodule(P, k, 1, [Matrix.from_rows(QQ, [[1]]), Matrix.from_rows(QQ, [[0]])],
                      [Matrix.identity(QQ, 1)])
    T = tensor_over(validate_bimodule(M), validate_bimodule(N))
    assert T.dim == 1
    assert not any(T.pure(1, 0))
    bad = (((QQ(1),),), ((QQ(1),),))
    with pytest.raises(NotBalanced):
        balanced_pairing_to_map(M, N, bad, regular_bimodule(k))


def test_unit_absorption_iso():
    M = validate_bimodule(make_bimodule(k, D, 2, [Matrix.identity(QQ, 2)],
                                        [Matrix.identity(QQ, 2), Matrix.from_rows(QQ, [[0, 0], [1, 0]])]))
    T = tensor_over(M, regular_bimodule(D))
    assert T.dim == M.dim
    phi = balanced_pairing_to_map(M, regular_bimodule(D), action_pairing(M, "right"), M, T)
    assert inverse(phi.matrix) is not None
    for i in range(M.dim):
        assert phi(T.pure(i, 0)) == QQ.unit_vector(M.dim, i)


def test_multiplication_pairing_iso():
    reg = regular_bimodule(D)
    phi = balanced_pairing_to_map(reg, reg, D.mult, reg)
    assert inverse(phi.matrix) is not None


def test_hom_spaces():
    assert module_hom_space(regular_bimodule(D), regular_bimodule(D)).dim == 2
    assert module_hom_space(regular_bimodule(k), regular_bimodule(k)).dim == 1
    assert module_hom_space(regular_bimodule(D), zero_bimodule(D, D)).dim == 0


def test_algebra_hom_checks():
    conj = AlgebraHom(K, K, Matrix.from_rows(QQ, [[1, 0], [0, -1]]))
    validate_algebra_hom(conj)
    with pytest.raises(NotAlgebraHom):
        validate_algebra_hom(AlgebraHom(K, K, Matrix.from_rows(QQ, [[1, 0], [0, 2]])))


# -- properties against an independent sympy oracle --------------------------------

def _sympy_tensor_dim(M, N) -> int:
    # rank of the balancing relations, computed independently
    m, n = M.dim, N.dim
    rows = []
    for t in range(M.right.dim):
        R, L = M.right_action[t], N.left_action[t]
        for i in range(m):
            for j in range(n):
                v = [0] * (m * n)
                for a in range(m):
                    v[a * n + j] += R[a, i]
                for b in range(n):
                    v[i * n + b] -= L[b, j]
                rows.append(v)
    if not rows:
        return m * n
    return m * n - sympy.Matrix(rows).rank()


@st.composite
def dual_modules(draw):
    """Right D-modules: t acts by a nilpotent matrix (sum of Jordan blocks of size ≤ 2)."""
    blocks = draw(st.lists(st.sampled_from([1, 2]), min_size=1, max_size=3))
    n = sum(blocks)
    T = [[0] * n for _ in range(n)]
    pos = 0
    for b in blocks:
        if b == 2:
            T[pos + 1][pos] = 1
        pos += b
    P = draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=n, max_size=n))
    Pm = Matrix.from_rows(QQ, P)
    if inverse(Pm) is None:
        Pm = Matrix.identity(QQ, n)
    t = Pm @ Matrix.from_rows(QQ, T) @ inverse(Pm)
    return validate_bimodule(make_bimodule(k, D, n, [Matrix.identity(QQ, n)], [Matrix.identity(QQ, n), t]))


def _left(M):
    """Same module seen as a left D-module (D is commutative)."""
    return make_bimodule(D, k, M.dim, list(M.right_action), [Matrix.identity(QQ, M.dim)])


@given(dual_modules(), dual_modules())
def test_tensor_dim_matches_oracle(M, N):
    assert tensor_over(M, _left(N)).dim == _sympy_tensor_dim(M, _left(N))


@given(dual_modules())
def test_tensor_with_regular_is_identity(M):
    T = tensor_over(M, regular_bimodule(D))
    assert T.dim == M.dim
    Mb = make_bimodule(k, D, M.dim, list(M.left_action), list(M.right_action))
    phi = balanced_pairing_to_map(Mb, regular_bimodule(D), action_pairing(M, "right"), Mb, T)
    assert inverse(phi.matrix) is not None


@given(dual_modules(), dual_modules())
def test_hom_space_elements_are_module_maps(M, N):
    for phi in hom_basis(M, N):
        validate_bimodule_map(phi)


@given(dual_modules())
def test_quotient_by_generated_submodule(M):
    sub = generated_submodule(M, [QQ.unit_vector(M.dim, 0)])
    Q, q = quotient_bimodule(M, sub)
    assert Q.dim == M.dim - sub.dim
    validate_bimodule(Q)
    validate_bimodule_map(BimoduleMap(M, Q, q.projection))


def test_fp_tensor():
    F = Field(3)
    A = dual_numbers(F)
    assert tensor_over(regular_bimodule(A), regular_bimodule(A)).dim == 2
    S = direct_sum(regular_bimodule(A), regular_bimodule(A))
    assert module_hom_space(S, S).dim == 8


@given(dual_modules(), dual_modules(), dual_modules())
def test_tensor_associativity_dimensions(M, N, P):
    # (M ⊗ N) ⊗ P and M ⊗ (N ⊗ P) over the commutative D, as D-D-bimodules
    def as_bimodule(X):
        return make_bimodule(D, D, X.dim, list(X.right_action), list(X.right_action))
    Mb, Nb, Pb = as_bimodule(M), as_bimodule(N), as_bimodule(P)
    left = tensor_over(tensor_over(Mb, Nb).result, Pb)
    right = tensor_over(Mb, tensor_over(Nb, Pb).result)
    assert left.dim == right.dim


@given(dual_modules())
def test_left_unit_absorption(M):
    N = _left(M)
    T = tensor_over(regular_bimodule(D), N)
    assert T.dim == N.dim
    phi = balanced_pairing_to_map(regular_bimodule(D), N, action_pairing(N, "left"), N, T)
    assert inverse(phi.matrix) is not None
