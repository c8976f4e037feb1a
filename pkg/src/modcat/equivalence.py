"""Representations as lax transformations, modifications, and the functors π*, ι*.

A ``LaxTransformation`` over a modulation M with coefficient algebra A has
A-M(x)-bimodules V(x) and, for α: x → y, a table
``maps[α][v][m]`` = V(α)(v ⊗ m) ∈ V(y). Over a comodulation W the table for
α: x → y reads V(α)(v ⊗ w) ∈ V(x) with v ∈ V(y), w ∈ W(α); this is the same
data over ``W.op``, so every check below runs on ``mod.cov``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .algebra import (Algebra, Bimodule, BimoduleMap, Table, action_pairing, balanced_pairing_to_map,
                      direct_sum, ground_algebra, pair_eval, quotient_bimodule, restrict_operator, sub_bimodule,
                      validate_bimodule, validate_bimodule_map)
from .errors import (AlgebraMismatch, IncompatiblePair, LaxSquareFailure, LaxUnityViolation,
                     ModulationMismatch, NotBalanced, NotBimoduleMap, RoundtripMismatch, SquareFailure)
from .linalg import (Matrix, Subspace, block_diag, column_space, intertwiner_space, inverse, kernel,
                     unflatten)
from .mcalgebra import ModCatAlgebra
from .modulation import Comodulation, Modulation, compositor_key


@dataclass(frozen=True)
class LaxTransformation:
    modulation: Modulation | Comodulation
    coeff: Algebra
    components: dict[str, Bimodule]
    maps: dict[str, Table]

    @property
    def field(self):
        return self.coeff.field

    @property
    def cov(self) -> Modulation:
        return self.modulation.cov

    @property
    def is_comodular(self) -> bool:
        return isinstance(self.modulation, Comodulation)

    def dims(self) -> dict[str, int]:
        return {x: V.dim for x, V in self.components.items()}

    def map_matrix(self, alpha: str, j: int) -> Matrix:
        """Linear map v ↦ V(α)(v ⊗ e_j) between the covariant source and target components."""
        C = self.cov.base
        src, tgt = self.components[C.dom[alpha]], self.components[C.cod[alpha]]
        return Matrix.from_columns(self.field, [self.maps[alpha][v][j] for v in range(src.dim)], rows=tgt.dim)


ComodLaxTransformation = LaxTransformation


def _pair_name(V: LaxTransformation, g: str, f: str) -> str:
    return compositor_key(f, g) if V.is_comodular else compositor_key(g, f)


def make_lax(mod, coeff: Algebra, components: dict[str, Bimodule], maps: dict[str, Table]) -> LaxTransformation:
    """Assemble a lax transformation; identity maps are synthesized as right actions."""
    C = mod.cov.base
    full = {}
    for a in C.morphisms:
        if C.is_identity(a):
            canon = action_pairing(components[C.dom[a]], "right")
            if a in maps and tuple(map(tuple, maps[a])) != canon:
                raise LaxUnityViolation(f"map for {a} is not the right action", morphism=a)
            full[a] = canon
        elif a in maps:
            full[a] = maps[a]
        else:
            raise ValueError(f"no map for morphism {a}")
    return LaxTransformation(mod, coeff, dict(components), full)


def lax_check(V: LaxTransformation) -> LaxTransformation:
    """Verify lax unity, balance and linearity of each map, and the square for every composable pair."""
    M = V.cov
    C = M.base
    for x in C.objects:
        X = V.components[x]
        if X.left != V.coeff or X.right != M.alg[x]:
            raise ModulationMismatch(f"component at {x} is over the wrong algebras", object=x)
        validate_bimodule(X)
    for x in C.objects:
        i = C.identity[x]
        if tuple(map(tuple, V.maps[i])) != action_pairing(V.components[x], "right"):
            raise LaxUnityViolation(f"map for {i} is not the right action", morphism=i)
    for a in C.morphisms:
        src, tgt = V.components[C.dom[a]], V.components[C.cod[a]]
        try:
            balanced_pairing_to_map(src, M.bim[a], V.maps[a], tgt)
        except (NotBalanced, NotBimoduleMap) as e:
            raise type(e)(f"map for {a}: {e}", morphism=a, detail=e.witness) from e
    f = V.field
    for g, h in C.composable_pairs():
        # V(g)(V(h)(v ⊗ m) ⊗ n) = V(gh)(v ⊗ c_{g,h}(m ⊗ n))
        Vh, Vg, Vgh, c = V.maps[h], V.maps[g], V.maps[C.compose(g, h)], M.comp[(g, h)]
        out = V.components[C.cod[g]].dim
        for v in range(V.components[C.dom[h]].dim):
            for m in range(M.bim[h].dim):
                for n in range(M.bim[g].dim):
                    lhs = pair_eval(f, Vg, Vh[v][m], f.unit_vector(M.bim[g].dim, n), out)
                    rhs = pair_eval(f, Vgh, f.unit_vector(len(Vgh), v), c[m][n], out)
                    if lhs != rhs:
                        raise LaxSquareFailure("lax square fails", pair=_pair_name(V, g, h), basis=[v, m, n])
    return V


def zero_representation(mod, coeff: Algebra | None = None) -> LaxTransformation:
    coeff = coeff or ground_algebra(mod.field)
    comps = {x: Bimodule(coeff, mod.alg[x], 0, tuple(Matrix(mod.field, 0, 0) for _ in range(coeff.dim)),
                         tuple(Matrix(mod.field, 0, 0) for _ in range(mod.alg[x].dim)))
             for x in mod.base.objects}
    C = mod.cov.base
    return make_lax(mod, coeff, comps, {a: () for a in C.morphisms if not C.is_identity(a)})


# -- the functors ι* and π* ------------------------------------------------------

def _offsets(V: LaxTransformation) -> dict[str, int]:
    out, n = {}, 0
    for x in V.cov.base.objects:
        out[x] = n
        n += V.components[x].dim
    return out


def _check_same_source(V: LaxTransformation, A: ModCatAlgebra) -> None:
    if V.modulation != A.source:
        raise ModulationMismatch("representation and algebra come from different (co)modulations")


def iota_star(V: LaxTransformation, A: ModCatAlgebra) -> Bimodule:
    """The A-module ⊕_x V(x); an α-graded basis element moves V(dom) into V(cod) via V(α)."""
    _check_same_source(V, A)
    C, f = V.cov.base, V.field
    off = _offsets(V)
    n = sum(X.dim for X in V.components.values())
    left = tuple(block_diag(f, [V.components[x].left_action[i] for x in C.objects])
                 for i in range(V.coeff.dim))
    right = []
    for a, j in A.labels:
        x, y = C.dom[a], C.cod[a]
        cols = [f.zeros(n) for _ in range(n)]
        for v in range(V.components[x].dim):
            col = [f.zero] * n
            for k, c in enumerate(V.maps[a][v][j]):
                col[off[y] + k] = c
            cols[off[x] + v] = tuple(col)
        right.append(Matrix.from_columns(f, cols, rows=n))
    return validate_bimodule(Bimodule(V.coeff, A.carrier, n, left, tuple(right)))


def _pi_star(N: Bimodule, A: ModCatAlgebra) -> tuple[LaxTransformation, dict[str, Subspace]]:
    if N.right != A.carrier:
        raise AlgebraMismatch("module is not over the given category algebra")
    M = A.source.cov
    C = M.base
    subs, comps = {}, {}
    for x in C.objects:
        sub = column_space(N.right_op(A.idempotents[x]))
        subs[x] = sub
        ident = A.blocks[C.identity[x]]
        comps[x] = Bimodule(N.left, M.alg[x], sub.dim,
                            tuple(restrict_operator(L, sub) for L in N.left_action),
                            tuple(restrict_operator(N.right_action[k], sub) for k in ident))
    maps = {}
    for a in C.morphisms:
        sx, sy = subs[C.dom[a]], subs[C.cod[a]]
        rows = []
        for b in sx.vectors():
            row = []
            for k in A.blocks[a]:
                c = sy.coordinates(N.right_action[k] @ b)
                if c is None:
                    raise RoundtripMismatch("graded action leaves the idempotent image", morphism=a)
                row.append(c)
            rows.append(tuple(row))
        maps[a] = tuple(rows)
    return LaxTransformation(A.source, N.left, comps, maps), subs


def pi_star(N: Bimodule, A: ModCatAlgebra) -> LaxTransformation:
    """Components N·1_{M(x)} (RREF image bases) with the restricted graded actions."""
    return _pi_star(N, A)[0]


def iota_star_map(T: "Modification", A: ModCatAlgebra) -> BimoduleMap:
    C = T.source.cov.base
    return BimoduleMap(iota_star(T.source, A), iota_star(T.target, A),
                       block_diag(T.source.field, [T.components[x].matrix for x in C.objects]))


def pi_star_map(phi: BimoduleMap, A: ModCatAlgebra) -> "Modification":
    V, sv = _pi_star(phi.source, A)
    W, sw = _pi_star(phi.target, A)
    comps = {}
    for x in A.source.cov.base.objects:
        cols = [sw[x].coordinates(phi(b)) for b in sv[x].vectors()]
        comps[x] = BimoduleMap(V.components[x], W.components[x],
                               Matrix.from_columns(V.field, cols, rows=W.components[x].dim))
    return Modification(V, W, comps)


# -- modifications -----------------------------------------------------------------

@dataclass(frozen=True)
class Modification:
    source: LaxTransformation
    target: LaxTransformation
    components: dict[str, BimoduleMap]


def modification_check(T: Modification) -> Modification:
    V, W = T.source, T.target
    if V.modulation != W.modulation or V.coeff != W.coeff:
        raise IncompatiblePair("source and target are over different data")
    C = V.cov.base
    for x in C.objects:
        validate_bimodule_map(T.components[x])
    for a in C.morphisms:
        Tx, Ty = T.components[C.dom[a]].matrix, T.components[C.cod[a]].matrix
        for j in range(V.cov.bim[a].dim):
            if Ty @ V.map_matrix(a, j) != W.map_matrix(a, j) @ Tx:
                raise SquareFailure("modification square fails", morphism=a, basis=j)
    return T


def identity_modification(V: LaxTransformation) -> Modification:
    return Modification(V, V, {x: BimoduleMap(X, X, Matrix.identity(V.field, X.dim))
                               for x, X in V.components.items()})


def zero_modification(V: LaxTransformation, W: LaxTransformation) -> Modification:
    return Modification(V, W, {x: BimoduleMap(V.components[x], W.components[x],
                                              Matrix.zeros(V.field, W.components[x].dim, V.components[x].dim))
                               for x in V.components})


def compose_modifications(S: Modification, T: Modification) -> Modification:
    """S ∘ T."""
    return Modification(T.source, S.target, {x: BimoduleMap(T.components[x].source, S.components[x].target,
                                                            S.components[x].matrix @ T.components[x].matrix)
                                             for x in T.components})


def rep_direct_sum(V: LaxTransformation, W: LaxTransformation) -> LaxTransformation:
    C, f = V.cov.base, V.field
    comps = {x: direct_sum(V.components[x], W.components[x]) for x in C.objects}
    maps = {}
    for a in C.morphisms:
        dv, dw = V.components[C.cod[a]].dim, W.components[C.cod[a]].dim
        rows = [tuple(tuple(c) + f.zeros(dw) for c in row) for row in V.maps[a]]
        rows += [tuple(f.zeros(dv) + tuple(c) for c in row) for row in W.maps[a]]
        maps[a] = tuple(rows)
    return LaxTransformation(V.modulation, V.coeff, comps, maps)


def fold_map(V: LaxTransformation) -> Modification:
    """V ⊕ V → V, (v, w) ↦ v + w."""
    S = rep_direct_sum(V, V)
    f = V.field
    comps = {}
    for x, X in V.components.items():
        I = Matrix.identity(f, X.dim)
        comps[x] = BimoduleMap(S.components[x], X, Matrix.from_columns(f, I.columns() + I.columns(), rows=X.dim))
    return Modification(S, V, comps)


def rep_kernel(T: Modification) -> tuple[LaxTransformation, Modification]:
    """Kernel representation and its inclusion."""
    modification_check(T)
    V = T.source
    C, f = V.cov.base, V.field
    subs = {x: kernel(T.components[x].matrix) for x in C.objects}
    comps = {x: sub_bimodule(V.components[x], subs[x]) for x in C.objects}
    maps = {}
    for a in C.morphisms:
        x, y = C.dom[a], C.cod[a]
        rows = []
        for b in subs[x].vectors():
            row = []
            for j in range(V.cov.bim[a].dim):
                img = pair_eval(f, V.maps[a], b, f.unit_vector(V.cov.bim[a].dim, j), V.components[y].dim)
                c = subs[y].coordinates(img)
                if c is None:
                    raise SquareFailure("kernel is not preserved", morphism=a)
                row.append(c)
            rows.append(tuple(row))
        maps[a] = tuple(rows)
    K = lax_check(LaxTransformation(V.modulation, V.coeff, comps, maps))
    inc = Modification(K, V, {x: BimoduleMap(comps[x], V.components[x], subs[x].basis_columns())
                               for x in C.objects})
    return K, modification_check(inc)


def rep_cokernel(T: Modification) -> tuple[LaxTransformation, Modification]:
    """Cokernel representation and the projection onto it."""
    modification_check(T)
    W = T.target
    C, f = W.cov.base, W.field
    qs, comps = {}, {}
    for x in C.objects:
        comps[x], qs[x] = quotient_bimodule(W.components[x], column_space(T.components[x].matrix))
    maps = {}
    for a in C.morphisms:
        x, y = C.dom[a], C.cod[a]
        rows = []
        for s in qs[x].section.columns():
            rows.append(tuple(qs[y].project(pair_eval(f, W.maps[a], s, f.unit_vector(W.cov.bim[a].dim, j),
                                                      W.components[y].dim))
                              for j in range(W.cov.bim[a].dim)))
        maps[a] = tuple(rows)
    Q = lax_check(LaxTransformation(W.modulation, W.coeff, comps, maps))
    proj = Modification(W, Q, {x: BimoduleMap(W.components[x], comps[x], qs[x].projection) for x in C.objects})
    return Q, modification_check(proj)


# -- roundtrips -------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleRoundtrip:
    module: Bimodule
    rebuilt: Bimodule
    iso: BimoduleMap          # rebuilt → module
    permutation: bool


@dataclass(frozen=True)
class RepRoundtrip:
    rep: LaxTransformation
    rebuilt: LaxTransformation
    iso: Modification         # rebuilt → rep
    identity: bool


def _is_unit_line(vals) -> bool:
    nz = [c for c in vals if c]
    return len(nz) == 1 and nz[0] == 1


def roundtrip_module(N: Bimodule, A: ModCatAlgebra) -> ModuleRoundtrip:
    """ι*π*(N) ≅ N via the matrix whose columns are the concatenated image bases."""
    V, subs = _pi_star(N, A)
    lax_check(V)
    R = iota_star(V, A)
    cols = [v for x in A.source.cov.base.objects for v in subs[x].vectors()]
    P = Matrix.from_columns(A.field, cols, rows=N.dim)
    phi = BimoduleMap(R, N, P)
    try:
        validate_bimodule_map(phi)
    except NotBimoduleMap as e:
        raise RoundtripMismatch("ι*π* comparison map is not a module map", detail=e.witness) from e
    if R.dim != N.dim or inverse(P) is None:
        raise RoundtripMismatch("ι*π* comparison map is not invertible", dims=[R.dim, N.dim])
    perm = all(_is_unit_line(row) for row in P.data) and all(_is_unit_line(col) for col in P.columns())
    return ModuleRoundtrip(N, R, phi, perm)


def roundtrip_rep(V: LaxTransformation, A: ModCatAlgebra) -> RepRoundtrip:
    """π*ι*(V) ≅ V componentwise, with the modification square verified."""
    N = iota_star(V, A)
    W, subs = _pi_star(N, A)
    lax_check(W)
    off = _offsets(V)
    comps = {}
    for x in V.cov.base.objects:
        d = V.components[x].dim
        cols = [v[off[x]:off[x] + d] for v in subs[x].vectors()]
        if any(any(c for i, c in enumerate(v) if not off[x] <= i < off[x] + d) for v in subs[x].vectors()):
            raise RoundtripMismatch("idempotent image leaves its block", object=x)
        P = Matrix.from_columns(V.field, cols, rows=d)
        if W.components[x].dim != d or inverse(P) is None:
            raise RoundtripMismatch("component is not recovered", object=x)
        comps[x] = BimoduleMap(W.components[x], V.components[x], P)
    T = Modification(W, V, comps)
    try:
        modification_check(T)
    except (NotBimoduleMap, SquareFailure) as e:
        raise RoundtripMismatch(f"π*ι* comparison fails: {e}", detail=e.witness) from e
    return RepRoundtrip(V, W, T, all(c.matrix.is_identity() for c in comps.values()))


# -- hom spaces and isomorphism search ---------------------------------------------

def rep_hom_space(V: LaxTransformation, W: LaxTransformation) -> tuple[dict, Subspace]:
    """All modifications V → W as one joint linear system; returns (shapes, solution space)."""
    if V.modulation != W.modulation or V.coeff != W.coeff:
        raise IncompatiblePair("source and target are over different data")
    C = V.cov.base
    shapes = {x: (W.components[x].dim, V.components[x].dim) for x in C.objects}
    cons = []
    for x in C.objects:
        Vx, Wx = V.components[x], W.components[x]
        for P, Q in zip(Vx.left_action + Vx.right_action, Wx.left_action + Wx.right_action):
            cons.append((Q, x, x, P))
    for a in C.morphisms:
        x, y = C.dom[a], C.cod[a]
        for j in range(V.cov.bim[a].dim):
            cons.append((W.map_matrix(a, j), x, y, V.map_matrix(a, j)))
    return shapes, intertwiner_space(V.field, shapes, cons)


def rep_hom_basis(V: LaxTransformation, W: LaxTransformation) -> list[Modification]:
    shapes, H = rep_hom_space(V, W)
    out = []
    for vec in H.vectors():
        mats = unflatten(V.field, shapes, vec)
        out.append(Modification(V, W, {x: BimoduleMap(V.components[x], W.components[x], m)
                                        for x, m in mats.items()}))
    return out


def find_isomorphism(V: LaxTransformation, W: LaxTransformation, *, seed: int = 0,
                     tries: int = 64) -> Modification | None:
    """Search the hom space for an invertible modification.

    Over F_p small hom spaces are enumerated exhaustively; otherwise seeded
    random integer combinations are tried. ``None`` is only a heuristic
    negative over ℚ.
    """
    if V.dims() != W.dims():
        return None
    shapes, H = rep_hom_space(V, W)
    f = V.field
    basis = H.vectors()

    def attempt(coeffs):
        vec = tuple(sum((c * b[k] for c, b in zip(coeffs, basis)), f.zero) for k in range(H.ambient_dim))
        mats = unflatten(f, shapes, vec)
        if all(inverse(m) is not None for m in mats.values()):
            return Modification(V, W, {x: BimoduleMap(V.components[x], W.components[x], m)
                                       for x, m in mats.items()})
        return None

    if not basis:
        return attempt(()) if all(d == 0 for d in V.dims().values()) else None
    if f.p and f.p ** len(basis) <= 4096:
        candidates = itertools.product(range(f.p), repeat=len(basis))
    else:
        rng = random.Random(seed)
        candidates = ([rng.randint(-3, 3) for _ in basis] for _ in range(tries))
    for coeffs in candidates:
        T = attempt([f(c) for c in coeffs])
        if T is not None:
            return T
    return None
