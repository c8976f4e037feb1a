"""Finite-dimensional algebras, bimodules, and the tensor product over an algebra.

Conventions: an algebra stores structure constants ``mult[i][j]`` (the
coefficient vector of ``e_i e_j``); a bimodule stores one matrix per basis
element for each side, acting on coordinate column vectors, so that
``a_i · m = left_action[i] @ m`` and ``m · b_j = right_action[j] @ m``.
A right module is a bimodule whose left algebra is the ground field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (ActionsDoNotCommute, AlgebraMismatch, LeftActionNotRepresentation,
                     NonAssociativeAlgebra, NotAlgebraHom, NotBalanced, NotBimoduleMap,
                     RightActionNotRepresentation, UnitLawViolation)
from .linalg import (Field, Matrix, QuotientSpace, Subspace, Vector, block_diag, inverse, kernel,
                     kron, lin_comb, quotient, span)

Table = tuple  # table[i][j] -> vector; images of pure tensors e_i ⊗ e_j


@dataclass(frozen=True)
class Algebra:
    field: Field
    basis: tuple[str, ...]
    mult: tuple[tuple[Vector, ...], ...]
    unit: Vector

    @property
    def dim(self) -> int:
        return len(self.basis)

    def product(self, u: Sequence, v: Sequence) -> Vector:
        f, n = self.field, self.dim
        out = [f.zero] * n
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.mult[i][j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def element(self, i: int) -> Vector:
        return self.field.unit_vector(self.dim, i)

    def left_mult(self, u: Sequence) -> Matrix:
        """Matrix of v ↦ u·v."""
        return Matrix.from_columns(self.field, [self.product(u, self.element(j)) for j in range(self.dim)],
                                   rows=self.dim)

    def right_mult(self, u: Sequence) -> Matrix:
        """Matrix of v ↦ v·u."""
        return Matrix.from_columns(self.field, [self.product(self.element(j), u) for j in range(self.dim)],
                                   rows=self.dim)

    def describe(self) -> dict:
        fmt = self.field.format
        return {
            "dim": self.dim,
            "basis": list(self.basis),
            "unit": [fmt(x) for x in self.unit],
            "mult": [[[fmt(x) for x in self.mult[i][j]] for j in range(self.dim)] for i in range(self.dim)],
        }


def make_algebra(field: Field, mult, unit, basis: Sequence[str] | None = None) -> Algebra:
    n = len(unit)
    basis = tuple(basis) if basis is not None else tuple(f"e{i}" for i in range(n))
    if len(basis) != n or len(mult) != n or any(len(r) != n for r in mult):
        raise ValueError("structure constants do not match the basis size")
    table = tuple(tuple(field.vector(mult[i][j]) for j in range(n)) for i in range(n))
    if any(len(v) != n for r in table for v in r):
        raise ValueError("structure constant vectors have the wrong length")
    return Algebra(field, basis, table, field.vector(unit))


def validate_algebra(A: Algebra) -> Algebra:
    """Check associativity on all basis triples and the two-sided unit."""
    n = A.dim
    for i in range(n):
        e = A.element(i)
        if A.product(A.unit, e) != e or A.product(e, A.unit) != e:
            raise UnitLawViolation(f"unit fails on basis element {A.basis[i]}", basis=A.basis[i])
    for i in range(n):
        for j in range(n):
            ij = A.mult[i][j]
            for k in range(n):
                left = A.product(ij, A.element(k))
                right = A.product(A.element(i), A.mult[j][k])
                if left != right:
                    raise NonAssociativeAlgebra(
                        f"(e{i} e{j}) e{k} ≠ e{i} (e{j} e{k})",
                        triple=[A.basis[i], A.basis[j], A.basis[k]])
    return A


def ground_algebra(field: Field) -> Algebra:
    return make_algebra(field, [[[1]]], [1], ["1"])


def polynomial_quotient(field: Field, modulus: Sequence, var: str = "t") -> Algebra:
    """``k[t]/(f)`` for monic ``f``; ``modulus`` lists f's lower coefficients c0..c_{n-1}.

    Example: ``[0, 0]`` gives the dual numbers k[t]/(t²), ``[1, 0]`` gives k[t]/(t²+1).
    """
    n = len(modulus)
    c = field.vector(modulus)

    def reduce(powers: list) -> list:
        # powers[d] is the coefficient of t^d; fold t^n = -(c0 + ... + c_{n-1} t^{n-1})
        powers = list(powers)
        for d in range(len(powers) - 1, n - 1, -1):
            a = powers[d]
            if a:
                powers[d] = field.zero
                for i in range(n):
                    powers[d - n + i] -= a * c[i]
        return powers[:n]

    mult = []
    for i in range(n):
        row = []
        for j in range(n):
            p = [field.zero] * (2 * n)
            p[i + j] = field.one
            row.append(reduce(p))
        mult.append(row)
    basis = ["1"] + [var if d == 1 else f"{var}^{d}" for d in range(1, n)]
    return make_algebra(field, mult, field.unit_vector(n, 0), basis)


def dual_numbers(field: Field) -> Algebra:
    return polynomial_quotient(field, [0, 0])


def gaussian_extension(field: Field) -> Algebra:
    """``k[t]/(t²+1)``; a field when -1 is not a square in k."""
    return polynomial_quotient(field, [1, 0], var="i")


def product_algebra(field: Field, n: int) -> Algebra:
    """k × ... × k with orthogonal idempotent basis."""
    mult = [[field.unit_vector(n, i) if i == j else field.zeros(n) for j in range(n)] for i in range(n)]
    return make_algebra(field, mult, [1] * n, [f"p{i}" for i in range(n)])


# -- homomorphisms ----------------------------------------------------------

@dataclass(frozen=True)
class AlgebraHom:
    source: Algebra
    target: Algebra
    matrix: Matrix     # target.dim x source.dim

    def __call__(self, u: Sequence) -> Vector:
        return self.matrix @ u


def validate_algebra_hom(h: AlgebraHom) -> AlgebraHom:
    S, T = h.source, h.target
    if h.matrix.shape != (T.dim, S.dim):
        raise NotAlgebraHom("matrix shape does not match the algebras", shape=list(h.matrix.shape))
    if h(S.unit) != T.unit:
        raise NotAlgebraHom("unit is not preserved")
    for i in range(S.dim):
        for j in range(S.dim):
            if h(S.mult[i][j]) != T.product(h.matrix.column(i), h.matrix.column(j)):
                raise NotAlgebraHom("multiplication is not preserved", pair=[S.basis[i], S.basis[j]])
    return h


def identity_hom(A: Algebra) -> AlgebraHom:
    return AlgebraHom(A, A, Matrix.identity(A.field, A.dim))


def compose_homs(g: AlgebraHom, f: AlgebraHom) -> AlgebraHom:
    """g ∘ f."""
    return AlgebraHom(f.source, g.target, g.matrix @ f.matrix)


def unit_inclusion(A: Algebra) -> AlgebraHom:
    """k → A, 1 ↦ 1_A."""
    k = ground_algebra(A.field)
    return AlgebraHom(k, A, Matrix.from_columns(A.field, [A.unit], rows=A.dim))


# -- bimodules --------------------------------------------------------------

@dataclass(frozen=True)
class Bimodule:
    left: Algebra
    right: Algebra
    dim: int
    left_action: tuple[Matrix, ...]
    right_action: tuple[Matrix, ...]

    @property
    def field(self) -> Field:
        return self.left.field

    def left_op(self, a: Sequence) -> Matrix:
        """Matrix of m ↦ a·m for an algebra element given by coefficients."""
        return _combine(self.field, a, self.left_action, self.dim)

    def right_op(self, b: Sequence) -> Matrix:
        """Matrix of m ↦ m·b."""
        return _combine(self.field, b, self.right_action, self.dim)

    def act_right(self, v: Sequence, b: Sequence) -> Vector:
        return self.right_op(b) @ v

    def act_left(self, a: Sequence, v: Sequence) -> Vector:
        return self.left_op(a) @ v

    def describe(self, left_name: str = "", right_name: str = "") -> dict:
        return {
            "left": left_name,
            "right": right_name,
            "dim": self.dim,
            "left_action": [m.to_text() for m in self.left_action],
            "right_action": [m.to_text() for m in self.right_action],
        }


def _combine(field: Field, coeffs: Sequence, mats: Sequence[Matrix], n: int) -> Matrix:
    out = Matrix.zeros(field, n, n)
    for c, m in zip(coeffs, mats):
        if c:
            out = out + m.scale(c)
    return out


def make_bimodule(left: Algebra, right: Algebra, dim: int, left_action, right_action) -> Bimodule:
    f = left.field
    la = tuple(m if isinstance(m, Matrix) else Matrix(f, dim, dim, m) for m in left_action)
    ra = tuple(m if isinstance(m, Matrix) else Matrix(f, dim, dim, m) for m in right_action)
    if len(la) != left.dim or len(ra) != right.dim:
        raise ValueError("one action matrix per algebra basis element is required")
    if any(m.shape != (dim, dim) for m in la + ra):
        raise ValueError("action matrices must be dim x dim")
    return Bimodule(left, right, dim, la, ra)


def validate_bimodule(M: Bimodule) -> Bimodule:
    A, B, n = M.left, M.right, M.dim
    eye = Matrix.identity(M.field, n)
    if M.left_op(A.unit) != eye:
        raise LeftActionNotRepresentation("unit of the left algebra does not act as identity")
    for i in range(A.dim):
        for j in range(A.dim):
            if M.left_action[i] @ M.left_action[j] != M.left_op(A.mult[i][j]):
                raise LeftActionNotRepresentation("left action is not multiplicative",
                                                  pair=[A.basis[i], A.basis[j]])
    if M.right_op(B.unit) != eye:
        raise RightActionNotRepresentation("unit of the right algebra does not act as identity")
    for i in range(B.dim):
        for j in range(B.dim):
            if M.right_action[j] @ M.right_action[i] != M.right_op(B.mult[i][j]):
                raise RightActionNotRepresentation("right action is not multiplicative",
                                                   pair=[B.basis[i], B.basis[j]])
    for i in range(A.dim):
        for j in range(B.dim):
            if M.left_action[i] @ M.right_action[j] != M.right_action[j] @ M.left_action[i]:
                raise ActionsDoNotCommute("(a·m)·b ≠ a·(m·b)", pair=[A.basis[i], B.basis[j]])
    return M


def regular_bimodule(A: Algebra) -> Bimodule:
    """A as an A-A-bimodule; the identity 1-morphism on A."""
    return Bimodule(A, A, A.dim,
                    tuple(A.left_mult(A.element(i)) for i in range(A.dim)),
                    tuple(A.right_mult(A.element(j)) for j in range(A.dim)))


def regular_right_module(A: Algebra) -> Bimodule:
    k = ground_algebra(A.field)
    return Bimodule(k, A, A.dim, (Matrix.identity(A.field, A.dim),),
                    tuple(A.right_mult(A.element(j)) for j in range(A.dim)))


def right_module(A: Algebra, dim: int, right_action) -> Bimodule:
    k = ground_algebra(A.field)
    return make_bimodule(k, A, dim, [Matrix.identity(A.field, dim)], right_action)


def zero_bimodule(A: Algebra, B: Algebra) -> Bimodule:
    f = A.field
    return Bimodule(A, B, 0, tuple(Matrix(f, 0, 0) for _ in range(A.dim)),
                    tuple(Matrix(f, 0, 0) for _ in range(B.dim)))


def twist_right(M: Bimodule, h: AlgebraHom) -> Bimodule:
    """Restrict the right action along h: B' → M.right."""
    if h.target != M.right:
        raise AlgebraMismatch("homomorphism does not land in the right algebra")
    return Bimodule(M.left, h.source, M.dim, M.left_action,
                    tuple(M.right_op(h.matrix.column(j)) for j in range(h.source.dim)))


def twist_left(M: Bimodule, h: AlgebraHom) -> Bimodule:
    """Restrict the left action along h: A' → M.left."""
    if h.target != M.left:
        raise AlgebraMismatch("homomorphism does not land in the left algebra")
    return Bimodule(h.source, M.right, M.dim,
                    tuple(M.left_op(h.matrix.column(i)) for i in range(h.source.dim)), M.right_action)


def direct_sum(*mods: Bimodule) -> Bimodule:
    first = mods[0]
    for M in mods[1:]:
        if M.left != first.left or M.right != first.right:
            raise AlgebraMismatch("direct summands over different algebras")
    f = first.field
    return Bimodule(first.left, first.right, sum(M.dim for M in mods),
                    tuple(block_diag(f, [M.left_action[i] for M in mods]) for i in range(first.left.dim)),
                    tuple(block_diag(f, [M.right_action[j] for M in mods]) for j in range(first.right.dim)))


def restrict_operator(op: Matrix, sub: Subspace) -> Matrix:
    """Matrix of ``op`` on an invariant subspace, in the subspace's RREF basis."""
    cols = []
    for v in sub.vectors():
        c = sub.coordinates(op @ v)
        if c is None:
            raise ValueError("subspace is not invariant under the operator")
        cols.append(c)
    return Matrix.from_columns(op.field, cols, rows=sub.dim)


def sub_bimodule(M: Bimodule, sub: Subspace) -> Bimodule:
    """Restriction of M to an invariant subspace (basis = RREF basis of ``sub``)."""
    return Bimodule(M.left, M.right, sub.dim,
                    tuple(restrict_operator(m, sub) for m in M.left_action),
                    tuple(restrict_operator(m, sub) for m in M.right_action))


def induced_operator(op: Matrix, q: QuotientSpace) -> Matrix:
    return q.projection @ op @ q.section


def quotient_bimodule(M: Bimodule, sub: Subspace) -> tuple[Bimodule, QuotientSpace]:
    q = quotient(M.dim, sub)
    for m in M.left_action + M.right_action:
        for v in sub.vectors():
            if any(q.project(m @ v)):
                raise ValueError("subspace is not a sub-bimodule")
    return (Bimodule(M.left, M.right, q.dim,
                     tuple(induced_operator(m, q) for m in M.left_action),
                     tuple(induced_operator(m, q) for m in M.right_action)), q)


def generated_submodule(M: Bimodule, gens: Sequence[Sequence]) -> Subspace:
    """Smallest sub-bimodule containing ``gens``."""
    f = M.field
    cur = span(f, M.dim, gens)
    ops = list(M.left_action) + list(M.right_action)
    while True:
        nxt = span(f, M.dim, cur.vectors() + [op @ v for op in ops for v in cur.vectors()])
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


# -- bimodule maps ----------------------------------------------------------

@dataclass(frozen=True)
class BimoduleMap:
    source: Bimodule
    target: Bimodule
    matrix: Matrix   # target.dim x source.dim

    def __call__(self, v: Sequence) -> Vector:
        return self.matrix @ v


def validate_bimodule_map(phi: BimoduleMap) -> BimoduleMap:
    S, T = phi.source, phi.target
    if S.left != T.left or S.right != T.right:
        raise AlgebraMismatch("bimodule map between bimodules over different algebras")
    if phi.matrix.shape != (T.dim, S.dim):
        raise NotBimoduleMap("matrix shape mismatch", shape=list(phi.matrix.shape))
    X = phi.matrix
    for i in range(S.left.dim):
        if X @ S.left_action[i] != T.left_action[i] @ X:
            raise NotBimoduleMap("left action not intertwined", basis=S.left.basis[i], side="left")
    for j in range(S.right.dim):
        if X @ S.right_action[j] != T.right_action[j] @ X:
            raise NotBimoduleMap("right action not intertwined", basis=S.right.basis[j], side="right")
    return phi


def identity_map(M: Bimodule) -> BimoduleMap:
    return BimoduleMap(M, M, Matrix.identity(M.field, M.dim))


def compose_maps(g: BimoduleMap, f: BimoduleMap) -> BimoduleMap:
    return BimoduleMap(f.source, g.target, g.matrix @ f.matrix)


def is_isomorphism(phi: BimoduleMap) -> bool:
    return phi.source.dim == phi.target.dim and inverse(phi.matrix) is not None


def module_hom_space(M: Bimodule, N: Bimodule) -> Subspace:
    """All bimodule maps M → N, as row-major flattened ``N.dim x M.dim`` matrices."""
    if M.left != N.left or M.right != N.right:
        raise AlgebraMismatch("hom space between bimodules over different algebras")
    f = M.field
    m, n = M.dim, N.dim
    nvars = n * m
    rows = []
    pairs = list(zip(M.left_action, N.left_action)) + list(zip(M.right_action, N.right_action))
    for P, Q in pairs:
        # X P - Q X = 0 entrywise
        for r in range(n):
            for c in range(m):
                row = [f.zero] * nvars
                for k in range(m):
                    if P.data[k][c]:
                        row[r * m + k] += P.data[k][c]
                for k in range(n):
                    if Q.data[r][k]:
                        row[k * m + c] -= Q.data[r][k]
                rows.append(row)
    return kernel(Matrix(f, len(rows), nvars, rows))


def hom_basis(M: Bimodule, N: Bimodule) -> list[BimoduleMap]:
    H = module_hom_space(M, N)
    return [BimoduleMap(M, N, Matrix.from_flat(M.field, N.dim, M.dim, v)) for v in H.vectors()]


# -- tensor over an algebra -------------------------------------------------

def pair_eval(field: Field, table: Table, u: Sequence, v: Sequence, out_dim: int) -> Vector:
    """Bilinear extension of a pure-tensor table: Σ u_i v_j table[i][j]."""
    out = [field.zero] * out_dim
    for i, a in enumerate(u):
        if not a:
            continue
        row = table[i]
        for j, b in enumerate(v):
            if not b:
                continue
            ab = a * b
            for k, c in enumerate(row[j]):
                if c:
                    out[k] += ab * c
    return tuple(out)


@dataclass(frozen=True)
class TensorOverAlgebra:
    """``left ⊗_B right`` as a quotient of the k-tensor product."""

    left: Bimodule
    right: Bimodule
    carrier: QuotientSpace
    result: Bimodule

    def pure(self, i: int, j: int) -> Vector:
        """Coordinates of e_i ⊗ e_j in the result."""
        return self.carrier.projection.column(i * self.right.dim + j)

    @property
    def dim(self) -> int:
        return self.result.dim


def balancing_relations(M: Bimodule, N: Bimodule) -> list[Vector]:
    f = M.field
    m, n = M.dim, N.dim
    rels = []
    for t in range(M.right.dim):
        R, L = M.right_action[t], N.left_action[t]
        for i in range(m):
            for j in range(n):
                v = [f.zero] * (m * n)
                for k in range(m):
                    if R.data[k][i]:
                        v[k * n + j] += R.data[k][i]
                for l in range(n):
                    if L.data[l][j]:
                        v[i * n + l] -= L.data[l][j]
                rels.append(v)
    return rels


def tensor_over(M: Bimodule, N: Bimodule) -> TensorOverAlgebra:
    if M.right != N.left:
        raise AlgebraMismatch("right algebra of the first factor differs from left algebra of the second")
    f = M.field
    m, n = M.dim, N.dim
    rel = span(f, m * n, balancing_relations(M, N))
    q = quotient(m * n, rel)
    In, Im = Matrix.identity(f, n), Matrix.identity(f, m)
    result = Bimodule(M.left, N.right, q.dim,
                      tuple(q.projection @ kron(L, In) @ q.section for L in M.left_action),
                      tuple(q.projection @ kron(Im, R) @ q.section for R in N.right_action))
    return TensorOverAlgebra(M, N, q, result)


def balanced_pairing_to_map(M: Bimodule, N: Bimodule, table: Table, target: Bimodule,
                            tensor: TensorOverAlgebra | None = None) -> BimoduleMap:
    """Factor a balanced bimodule pairing ``M × N → target`` through ``M ⊗_B N``."""
    if tensor is None:
        tensor = tensor_over(M, N)
    if target.left != M.left or target.right != N.right:
        raise AlgebraMismatch("target bimodule is over the wrong algebras")
    f, m, n, p = M.field, M.dim, N.dim, target.dim
    if len(table) != m or any(len(r) != n for r in table) or any(len(v) != p for r in table for v in r):
        raise ValueError("pairing table has the wrong shape")
    B = M.right
    for t in range(B.dim):
        R, L = M.right_action[t], N.left_action[t]
        for i in range(m):
            for j in range(n):
                lhs = lin_comb(f, R.column(i), [table[k][j] for k in range(m)], p)
                rhs = lin_comb(f, L.column(j), table[i], p)
                if lhs != rhs:
                    raise NotBalanced("(m·b, n) and (m, b·n) differ", triple=[i, B.basis[t], j])
    for a in range(M.left.dim):
        L, LP = M.left_action[a], target.left_action[a]
        for i in range(m):
            for j in range(n):
                if lin_comb(f, L.column(i), [table[k][j] for k in range(m)], p) != LP @ table[i][j]:
                    raise NotBimoduleMap("pairing is not left linear", basis=M.left.basis[a], pair=[i, j])
    for c in range(N.right.dim):
        R, RP = N.right_action[c], target.right_action[c]
        for i in range(m):
            for j in range(n):
                if lin_comb(f, R.column(j), table[i], p) != RP @ table[i][j]:
                    raise NotBimoduleMap("pairing is not right linear", basis=N.right.basis[c], pair=[i, j])
    F = Matrix.from_columns(f, [table[i][j] for i in range(m) for j in range(n)], rows=p)
    return BimoduleMap(tensor.result, target, F @ tensor.carrier.section)


def action_pairing(M: Bimodule, side: str) -> Table:
    """Canonical pairings ``A × M → M`` (side='left') or ``M × B → M`` (side='right')."""
    if side == "left":
        return tuple(tuple(M.left_action[i].column(j) for j in range(M.dim)) for i in range(M.left.dim))
    return tuple(tuple(M.right_action[j].column(i) for j in range(M.right.dim)) for i in range(M.dim))
