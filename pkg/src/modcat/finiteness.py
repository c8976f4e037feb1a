"""Presheaf modules, slice restriction, finite type versus finite generation."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (Bimodule, direct_sum, generated_submodule, ground_algebra, quotient_bimodule,
                      regular_right_module, sub_bimodule, validate_bimodule)
from .equivalence import LaxTransformation, iota_star, lax_check, make_lax, pi_star
from .errors import BaseMismatch, ModulationMismatch, NotPresheafBacked, PresheafModuleError
from .fincat import SliceCategory, parallel_arrows_category, slice_category
from .linalg import Matrix, Subspace, column_space, intertwiner_space, span, unflatten
from .mcalgebra import ModCatAlgebra, skew_category_algebra
from .modulation import Comodulation, PresheafOfAlgebras, constant_presheaf, validate_presheaf


@dataclass(frozen=True)
class PresheafModule:
    """Right R(x)-modules V(x) with restrictions ρ_α: V(y) → V(x) for α: x → y."""

    presheaf: PresheafOfAlgebras
    components: dict[str, Bimodule]
    restrictions: dict[str, Matrix]

    @property
    def field(self):
        return self.presheaf.field

    def dims(self) -> dict[str, int]:
        return {x: V.dim for x, V in self.components.items()}


def validate_presheaf_module(P: PresheafModule) -> PresheafModule:
    R = P.presheaf
    C = R.base
    for x in C.objects:
        V = P.components[x]
        if V.right != R.alg[x] or V.left.dim != 1:
            raise PresheafModuleError(f"component at {x} is not a right R({x})-module", object=x)
        validate_bimodule(V)
    for a in C.morphisms:
        x, y = C.dom[a], C.cod[a]
        if P.restrictions[a].shape != (P.components[x].dim, P.components[y].dim):
            raise PresheafModuleError(f"restriction along {a} has the wrong shape", morphism=a)
    for x in C.objects:
        if not P.restrictions[C.identity[x]].is_identity():
            raise PresheafModuleError(f"restriction along the identity of {x} is not the identity", object=x)
    for b, a in C.composable_pairs():
        if P.restrictions[a] @ P.restrictions[b] != P.restrictions[C.compose(b, a)]:
            raise PresheafModuleError(f"ρ_{a} ρ_{b} ≠ ρ_({b}∘{a})", pair=[b, a])
    for a in C.morphisms:
        x, y = C.dom[a], C.cod[a]
        rho, h = P.restrictions[a], R.res[a]
        for r in range(R.alg[y].dim):
            if rho @ P.components[y].right_action[r] != P.components[x].right_op(h.matrix.column(r)) @ rho:
                raise PresheafModuleError(f"restriction along {a} is not semilinear", morphism=a,
                                          basis=R.alg[y].basis[r])
    return P


def make_presheaf_module(R: PresheafOfAlgebras, components: dict[str, Bimodule],
                         restrictions: dict[str, Matrix]) -> PresheafModule:
    """Identity restrictions may be omitted."""
    C = R.base
    full = {}
    for a in C.morphisms:
        if a in restrictions:
            full[a] = restrictions[a]
        elif C.is_identity(a):
            full[a] = Matrix.identity(R.field, components[C.dom[a]].dim)
        else:
            raise PresheafModuleError(f"no restriction along {a}", morphism=a)
    return PresheafModule(R, dict(components), full)


def regular_presheaf_module(R: PresheafOfAlgebras) -> PresheafModule:
    return PresheafModule(R, {x: regular_right_module(R.alg[x]) for x in R.base.objects},
                          {a: R.res[a].matrix for a in R.base.morphisms})


def presheaf_module_sum(*mods: PresheafModule) -> PresheafModule:
    from .linalg import block_diag
    R = mods[0].presheaf
    return PresheafModule(R, {x: direct_sum(*(P.components[x] for P in mods)) for x in R.base.objects},
                          {a: block_diag(R.field, [P.restrictions[a] for P in mods]) for a in R.base.morphisms})


def sub_presheaf_module(P: PresheafModule, gens: dict[str, list]) -> dict[str, Subspace]:
    """Smallest subpresheaf module containing the given vectors, per object."""
    R, f = P.presheaf, P.field
    C = R.base
    cur = {x: span(f, P.components[x].dim, gens.get(x, [])) for x in C.objects}
    while True:
        nxt = {}
        for x in C.objects:
            vecs = list(cur[x].vectors())
            vecs += [op @ v for op in P.components[x].right_action for v in cur[x].vectors()]
            for a in C.out_of(x):
                vecs += [P.restrictions[a] @ v for v in cur[C.cod[a]].vectors()]
            nxt[x] = span(f, P.components[x].dim, vecs)
        if all(nxt[x].dim == cur[x].dim for x in C.objects):
            return cur
        cur = nxt


def quotient_presheaf_module(P: PresheafModule, sub: dict[str, Subspace]) -> PresheafModule:
    R = P.presheaf
    comps, qs = {}, {}
    for x in R.base.objects:
        comps[x], qs[x] = quotient_bimodule(P.components[x], sub[x])
    res = {a: qs[R.base.dom[a]].projection @ P.restrictions[a] @ qs[R.base.cod[a]].section
           for a in R.base.morphisms}
    return PresheafModule(R, comps, res)


# -- comodulated representations ↔ presheaf modules ------------------------------

def comod_rep_to_presheaf_module(V: LaxTransformation) -> PresheafModule:
    """ρ_α(v) = V(α)(v ⊗ 1_{R(x)})."""
    W = V.modulation
    if not isinstance(W, Comodulation) or W.presheaf is None:
        raise NotPresheafBacked("representation is not over a presheaf-derived comodulation")
    if V.coeff.dim != 1:
        raise ModulationMismatch("coefficient algebra must be the ground field")
    R = W.presheaf
    C, f = R.base, R.field
    res = {}
    for a in C.morphisms:
        x, y = C.dom[a], C.cod[a]
        unit = R.alg[x].unit
        cols = []
        for v in range(V.components[y].dim):
            acc = [f.zero] * V.components[x].dim
            for j, c in enumerate(unit):
                if c:
                    for k, t in enumerate(V.maps[a][v][j]):
                        acc[k] += c * t
            cols.append(acc)
        res[a] = Matrix.from_columns(f, cols, rows=V.components[x].dim)
    return PresheafModule(R, dict(V.components), res)


def presheaf_module_to_comod_rep(P: PresheafModule) -> LaxTransformation:
    """V(α)(v ⊗ r) = ρ_α(v)·r."""
    R = P.presheaf
    C = R.base
    maps = {}
    for a in C.morphisms:
        x, y = C.dom[a], C.cod[a]
        rho = P.restrictions[a]
        Vx = P.components[x]
        maps[a] = tuple(tuple(Vx.right_action[r] @ rho.column(v) for r in range(R.alg[x].dim))
                        for v in range(P.components[y].dim))
    k = ground_algebra(R.field)
    comps = {x: Bimodule(k, B.right, B.dim, (Matrix.identity(R.field, B.dim),), B.right_action)
             for x, B in P.components.items()}
    return lax_check(make_lax(R.comodulation, k, comps, maps))


def presheaf_module_to_module(P: PresheafModule, A: ModCatAlgebra | None = None) -> Bimodule:
    """The corresponding right module over the skew category algebra."""
    V = presheaf_module_to_comod_rep(P)
    A = A or skew_category_algebra(P.presheaf)
    return iota_star(V, A)


def module_to_presheaf_module(N: Bimodule, A: ModCatAlgebra) -> PresheafModule:
    return comod_rep_to_presheaf_module(lax_check(pi_star(N, A)))


# -- slices ---------------------------------------------------------------------

@dataclass(frozen=True)
class RestrictedModule:
    slice: SliceCategory
    presheaf: PresheafOfAlgebras
    module: PresheafModule


def restrict_presheaf(R: PresheafOfAlgebras, S: SliceCategory) -> PresheafOfAlgebras:
    return PresheafOfAlgebras(S.category, {s: R.alg[S.points[s][0]] for s in S.category.objects},
                              {g: R.res[S.projection[g]] for g in S.category.morphisms})


def restrict(P: PresheafModule, x: str) -> RestrictedModule:
    """V|_x(w, α) = V(w), pulled back along the slice projection."""
    S = slice_category(P.presheaf.base, x)
    Rx = validate_presheaf(restrict_presheaf(P.presheaf, S))
    comps = {}
    for s in S.category.objects:
        B = P.components[S.points[s][0]]
        comps[s] = Bimodule(B.left, Rx.alg[s], B.dim, B.left_action, B.right_action)
    V = PresheafModule(Rx, comps, {g: P.restrictions[S.projection[g]] for g in S.category.morphisms})
    return RestrictedModule(S, Rx, validate_presheaf_module(V))


def presheaf_hom_space(U: PresheafModule, V: PresheafModule) -> tuple[dict, Subspace]:
    """Families φ_x: U(x) → V(x), right R(x)-linear and natural; returns (shapes, solution space)."""
    if U.presheaf != V.presheaf:
        raise BaseMismatch("presheaf modules over different presheaves")
    C = U.presheaf.base
    shapes = {x: (V.components[x].dim, U.components[x].dim) for x in C.objects}
    cons = []
    for x in C.objects:
        for P, Q in zip(U.components[x].right_action, V.components[x].right_action):
            cons.append((Q, x, x, P))
    for a in C.morphisms:
        # φ_x ρ^U_α = ρ^V_α φ_y
        cons.append((V.restrictions[a], C.cod[a], C.dom[a], U.restrictions[a]))
    return shapes, intertwiner_space(U.field, shapes, cons)


@dataclass(frozen=True)
class ObjectFiniteType:
    object: str
    hom_dim: int
    passes: bool
    failing: tuple[str, ...]

    @property
    def n(self) -> int | None:
        return self.hom_dim if self.passes else None


@dataclass(frozen=True)
class FiniteTypeReport:
    verdict: bool
    objects: tuple[ObjectFiniteType, ...]


def finite_type_at(P: PresheafModule, x: str) -> ObjectFiniteType:
    """Is V|_x a quotient of a finite power of R|_x? Uses the whole hom space as generators."""
    RM = restrict(P, x)
    Rx, Vx = RM.presheaf, RM.module
    shapes, H = presheaf_hom_space(regular_presheaf_module(Rx), Vx)
    f = P.field
    homs = [unflatten(f, shapes, v) for v in H.vectors()]
    failing = []
    for s in RM.slice.category.objects:
        A = Rx.alg[s]
        V = Vx.components[s]
        vecs = []
        for h in homs:
            g = h[s] @ A.unit
            vecs += [V.right_action[r] @ g for r in range(A.dim)]
        if span(f, V.dim, vecs).dim != V.dim:
            failing.append(s)
    return ObjectFiniteType(x, H.dim, not failing, tuple(failing))


def finite_type(P: PresheafModule) -> FiniteTypeReport:
    objs = tuple(finite_type_at(P, x) for x in P.presheaf.base.objects)
    return FiniteTypeReport(all(o.passes for o in objs), objs)


def restriction_generates(P: PresheafModule, x: str) -> bool:
    """Yoneda form of the finite-type test at x: every V(w) is generated by ρ_α(V(x)), α: w → x."""
    R, f = P.presheaf, P.field
    C = R.base
    for a in C.into(x):
        w = C.dom[a]
        V = P.components[w]
        imgs = [P.restrictions[a] @ v for v in column_space(Matrix.identity(f, P.components[x].dim)).vectors()]
        if generated_submodule(V, imgs).dim != V.dim:
            return False
    return True


# -- finite generation over the category algebra ---------------------------------

def finitely_generated(M: Bimodule, gens) -> bool:
    return generated_submodule(M, list(gens)).dim == M.dim


def minimal_generators(M: Bimodule) -> list[tuple]:
    """Greedy generating set from standard basis vectors (an upper bound, not a certified minimum)."""
    f = M.field
    chosen: list[tuple] = []
    cur = generated_submodule(M, [])
    while cur.dim < M.dim:
        best, best_dim = None, cur.dim
        for i in range(M.dim):
            e = f.unit_vector(M.dim, i)
            if cur.contains(e):
                continue
            d = generated_submodule(M, chosen + [e]).dim
            if d > best_dim:
                best, best_dim = e, d
        chosen.append(best)
        cur = generated_submodule(M, chosen)
    return chosen


def idempotent_ideal(A: ModCatAlgebra, x: str) -> Bimodule:
    """The right ideal 1_{M(x)}·A as a right A-module."""
    reg = regular_right_module(A.carrier)
    return sub_bimodule(reg, column_space(A.carrier.left_mult(A.idempotents[x])))


# -- the separating example ----------------------------------------------------------

def separating_presheaf(field=None) -> PresheafOfAlgebras:
    """Constant k on the parallel-arrows category x ⇉ y."""
    from .linalg import QQ
    return constant_presheaf(parallel_arrows_category(), ground_algebra(field or QQ))


def separation_demo(field=None) -> dict:
    """Representables P_x, P_y over the constant presheaf on x ⇉ y: finitely generated, not of finite type."""
    R = separating_presheaf(field)
    A = skew_category_algebra(R)
    out = {"algebra_dim": A.dim, "modules": {}}
    for x in R.base.objects:
        N = idempotent_ideal(A, x)
        P = module_to_presheaf_module(N, A)
        gens = minimal_generators(N)
        ft = finite_type(P)
        out["modules"][f"P_{x}"] = {
            "dims": P.dims(),
            "fg": finitely_generated(N, gens),
            "generators": len(gens),
            "ft": ft.verdict,
            "failing": {o.object: list(o.failing) for o in ft.objects if not o.passes},
        }
    Px = module_to_presheaf_module(idempotent_ideal(A, "x"), A)
    Py = module_to_presheaf_module(idempotent_ideal(A, "y"), A)
    ry = restrict(Px, "y")
    out["hom_dim"] = presheaf_hom_space(regular_presheaf_module(ry.presheaf), ry.module)[1].dim
    out["restrictions"] = {
        "P_x|_x": restrict(Px, "x").module.dims(),
        "P_x|_y": ry.module.dims(),
        "P_y|_x": restrict(Py, "x").module.dims(),
    }
    for name, P in (("R", regular_presheaf_module(R)),
                    ("R+R", presheaf_module_sum(regular_presheaf_module(R), regular_presheaf_module(R)))):
        N = presheaf_module_to_module(P, A)
        out["modules"][name] = {"dims": P.dims(), "fg": finitely_generated(N, minimal_generators(N)),
                                "generators": len(minimal_generators(N)), "ft": finite_type(P).verdict,
                                "failing": {}}
    return out
