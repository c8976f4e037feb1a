"""Modulations and comodulations: strictly unitary pseudofunctors into bimodules.

A modulation ``M`` on C stores, for α: x → y, an M(x)-M(y)-bimodule ``bim[α]``
and, for each composable pair keyed ``(β, α)`` (meaning β ∘ α), a table
``comp[(β, α)][i][j]`` = c(m_i ⊗ n_j) for m_i in M(α), n_j in M(β), landing in
M(βα).

A comodulation ``W`` stores W(y)-W(x)-bimodules and tables
``comp[(β, α)][i][j]`` = c(w_i ⊗ v_j) for w_i in W(β), v_j in W(α). That is
literally a modulation on the opposite category with the same tables, and
``Comodulation.op`` exposes it; all covariant machinery is reused through it.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable

from .algebra import (Algebra, AlgebraHom, Bimodule, Table, action_pairing, balanced_pairing_to_map,
                      compose_homs, identity_hom, regular_bimodule, twist_left, twist_right,
                      validate_algebra, validate_algebra_hom, validate_bimodule)
from .errors import (AlgebraMismatch, CoherenceFailure, CompositorNotBalanced, CompositorNotInvertible,
                     NotBalanced, NotBimoduleMap, PresheafError, StrictUnitViolation)
from .fincat import FiniteCategory
from .linalg import Matrix, rank


@dataclass(frozen=True)
class Modulation:
    base: FiniteCategory
    alg: dict[str, Algebra]
    bim: dict[str, Bimodule]
    comp: dict[tuple[str, str], Table]
    presheaf: "PresheafOfAlgebras | None" = field(default=None, compare=False, repr=False)

    variance = "covariant"

    @property
    def field(self):
        return next(iter(self.alg.values())).field

    @property
    def cov(self) -> "Modulation":
        return self


@dataclass(frozen=True)
class Comodulation:
    base: FiniteCategory
    alg: dict[str, Algebra]
    bim: dict[str, Bimodule]
    comp: dict[tuple[str, str], Table]
    presheaf: "PresheafOfAlgebras | None" = field(default=None, compare=False, repr=False)

    variance = "contravariant"

    @property
    def field(self):
        return next(iter(self.alg.values())).field

    @cached_property
    def op(self) -> Modulation:
        return Modulation(self.base.opposite(), self.alg, self.bim,
                          {(a, b): t for (b, a), t in self.comp.items()}, self.presheaf)

    @property
    def cov(self) -> Modulation:
        return self.op


def compositor_key(beta: str, alpha: str) -> str:
    return f"{beta}∘{alpha}"


# -- construction with strict-unit synthesis ---------------------------------

def _canonical_identity_data(base: FiniteCategory, alg: dict[str, Algebra],
                             bim: dict[str, Bimodule]) -> tuple[dict, dict]:
    """Identity bimodules and identity-involving compositors of a covariant modulation."""
    bims = {base.identity[x]: regular_bimodule(alg[x]) for x in base.objects}
    for m in base.morphisms:
        if m not in bims:
            bims[m] = bim[m]
    comps = {}
    for a in base.morphisms:
        x, y = base.dom[a], base.cod[a]
        comps[(a, base.identity[x])] = action_pairing(bims[a], "left")
        comps[(base.identity[y], a)] = action_pairing(bims[a], "right")
    return bims, comps


def make_modulation(base: FiniteCategory, alg: dict[str, Algebra], bim: dict[str, Bimodule],
                    comp: dict[tuple[str, str], Table], *, presheaf=None,
                    _rename: Callable | None = None) -> Modulation:
    """Assemble a modulation, synthesizing the strictly unital identity data.

    Identity bimodules and compositors involving an identity may be omitted; if
    supplied they must equal the canonical ones.
    """
    rename = _rename or (lambda pair: pair)
    missing = [m for m in base.morphisms if m not in bim and not base.is_identity(m)]
    if missing:
        raise ValueError(f"no bimodule for morphisms {missing}")
    bims, canon = _canonical_identity_data(base, alg, bim)
    for x in base.objects:
        i = base.identity[x]
        if i in bim and bim[i] != bims[i]:
            raise StrictUnitViolation(f"bimodule of {i} is not the regular bimodule", morphism=i)
    comps = {}
    for g, f in base.composable_pairs():
        if (g, f) in canon:
            if (g, f) in comp and _table_key(comp[(g, f)]) != _table_key(canon[(g, f)]):
                b, a = rename((g, f))
                raise StrictUnitViolation(f"compositor {compositor_key(b, a)} is not the canonical action",
                                          pair=compositor_key(b, a))
            comps[(g, f)] = canon[(g, f)]
        elif (g, f) in comp:
            comps[(g, f)] = comp[(g, f)]
        else:
            b, a = rename((g, f))
            raise ValueError(f"no compositor for {compositor_key(b, a)}")
    return Modulation(base, dict(alg), bims, comps, presheaf)


def _table_key(t: Table):
    return tuple(tuple(tuple(v) for v in row) for row in t)


def make_comodulation(base: FiniteCategory, alg: dict[str, Algebra], bim: dict[str, Bimodule],
                      comp: dict[tuple[str, str], Table], *, presheaf=None) -> Comodulation:
    op = make_modulation(base.opposite(), alg, bim, {(a, b): t for (b, a), t in comp.items()},
                         presheaf=presheaf, _rename=lambda p: (p[1], p[0]))
    return Comodulation(base, op.alg, op.bim, {(b, a): t for (a, b), t in op.comp.items()}, presheaf)


# -- validation ---------------------------------------------------------------

def _validate_covariant(M: Modulation, rename: Callable) -> None:
    C = M.base
    for x in C.objects:
        validate_algebra(M.alg[x])
    for m in C.morphisms:
        B = M.bim[m]
        if B.left != M.alg[C.dom[m]] or B.right != M.alg[C.cod[m]]:
            raise AlgebraMismatch(f"bimodule on {m} is over the wrong algebras", morphism=m)
        validate_bimodule(B)
    for x in C.objects:
        i = C.identity[x]
        if M.bim[i] != regular_bimodule(M.alg[x]):
            raise StrictUnitViolation(f"bimodule of {i} is not the regular bimodule", morphism=i)
    for a in C.morphisms:
        x, y = C.dom[a], C.cod[a]
        for key, side in (((a, C.identity[x]), "left"), ((C.identity[y], a), "right")):
            if _table_key(M.comp[key]) != _table_key(action_pairing(M.bim[a], side)):
                b, a2 = rename(key)
                raise StrictUnitViolation(f"compositor {compositor_key(b, a2)} is not the canonical action",
                                          pair=compositor_key(b, a2))
    for g, f in C.composable_pairs():
        b, a = rename((g, f))
        key = compositor_key(b, a)
        target = M.bim[C.compose(g, f)]
        try:
            phi = balanced_pairing_to_map(M.bim[f], M.bim[g], M.comp[(g, f)], target)
        except (NotBalanced, NotBimoduleMap) as e:
            raise CompositorNotBalanced(f"compositor {key}: {e}", pair=key, cause=e.kind,
                                        detail=e.witness) from e
        if phi.source.dim != target.dim or rank(phi.matrix) != target.dim:
            raise CompositorNotInvertible(f"compositor {key} is not an isomorphism", pair=key,
                                          tensor_dim=phi.source.dim, target_dim=target.dim)
    for h, g, f in C.composable_triples():
        # c_{hg,f}(m ⊗ c_{h,g}(n ⊗ p)) = c_{h,gf}(c_{g,f}(m ⊗ n) ⊗ p)
        outer_l, inner_l = M.comp[(C.compose(h, g), f)], M.comp[(h, g)]
        outer_r, inner_r = M.comp[(h, C.compose(g, f))], M.comp[(g, f)]
        dm, dn, dp = M.bim[f].dim, M.bim[g].dim, M.bim[h].dim
        out = M.bim[C.compose(h, C.compose(g, f))].dim
        z = M.field.zero
        for i in range(dm):
            for j in range(dn):
                mn = inner_r[i][j]
                for l in range(dp):
                    np_ = inner_l[j][l]
                    lhs = _apply_second(outer_l[i], np_, out, z)
                    rhs = _apply_first(outer_r, mn, l, out, z)
                    if lhs != rhs:
                        triple = [h, g, f] if rename((g, f)) == (g, f) else [f, g, h]
                        raise CoherenceFailure("coherence square fails", triple=triple, basis=[i, j, l])


def _apply_second(row, vec, out, zero):
    """Σ_k vec[k] row[k]: evaluate c(e_i ⊗ vec) given the table row of e_i."""
    acc = [zero] * out
    for k, c in enumerate(vec):
        if c:
            for t, x in enumerate(row[k]):
                if x:
                    acc[t] = acc[t] + c * x
    return tuple(acc)


def _apply_first(table, vec, col, out, zero):
    """Σ_k vec[k] table[k][col]: evaluate c(vec ⊗ e_col)."""
    acc = [zero] * out
    for k, c in enumerate(vec):
        if c:
            for t, x in enumerate(table[k][col]):
                if x:
                    acc[t] = acc[t] + c * x
    return tuple(acc)


def validate_modulation(M: Modulation) -> Modulation:
    """Check strict unitality, compositor balance and invertibility, and coherence."""
    _validate_covariant(M, lambda p: p)
    return M


def validate_comodulation(W: Comodulation) -> Comodulation:
    _validate_covariant(W.op, lambda p: (p[1], p[0]))
    return W


def validate(mod: Modulation | Comodulation):
    return validate_modulation(mod) if isinstance(mod, Modulation) else validate_comodulation(mod)


# -- constructions -------------------------------------------------------------

def _mult_table(A: Algebra) -> Table:
    return tuple(tuple(A.mult[i][j] for j in range(A.dim)) for i in range(A.dim))


def constant_modulation(C: FiniteCategory, A: Algebra) -> Modulation:
    reg = regular_bimodule(A)
    t = _mult_table(A)
    return make_modulation(C, {x: A for x in C.objects}, {m: reg for m in C.morphisms},
                           {p: t for p in C.composable_pairs()})


def constant_comodulation(C: FiniteCategory, A: Algebra) -> Comodulation:
    reg = regular_bimodule(A)
    t = _mult_table(A)
    return make_comodulation(C, {x: A for x in C.objects}, {m: reg for m in C.morphisms},
                             {p: t for p in C.composable_pairs()})


@dataclass(frozen=True)
class PresheafOfAlgebras:
    """Contravariant functor R: objects ↦ algebras, (α: x → y) ↦ R(α): R(y) → R(x)."""

    base: FiniteCategory
    alg: dict[str, Algebra]
    res: dict[str, AlgebraHom]

    @property
    def field(self):
        return next(iter(self.alg.values())).field

    @cached_property
    def comodulation(self) -> Comodulation:
        return presheaf_to_comodulation(self)

    @cached_property
    def modulation(self) -> Modulation:
        return presheaf_to_modulation(self)


def validate_presheaf(R: PresheafOfAlgebras) -> PresheafOfAlgebras:
    C = R.base
    for x in C.objects:
        validate_algebra(R.alg[x])
    for a in C.morphisms:
        h = R.res[a]
        if h.source != R.alg[C.cod[a]] or h.target != R.alg[C.dom[a]]:
            raise PresheafError(f"restriction along {a} has the wrong endpoints", morphism=a)
        validate_algebra_hom(h)
    for x in C.objects:
        if R.res[C.identity[x]] != identity_hom(R.alg[x]):
            raise PresheafError(f"restriction along the identity of {x} is not the identity", object=x)
    for b, a in C.composable_pairs():
        if compose_homs(R.res[a], R.res[b]).matrix != R.res[C.compose(b, a)].matrix:
            raise PresheafError(f"R({a})R({b}) ≠ R({b}∘{a})", pair=compositor_key(b, a))
    return R


def make_presheaf(base: FiniteCategory, alg: dict[str, Algebra], res: dict) -> PresheafOfAlgebras:
    """Assemble a presheaf; ``res`` values may be matrices; identities may be omitted."""
    homs = {}
    for a in base.morphisms:
        x, y = base.dom[a], base.cod[a]
        if a in res:
            m = res[a]
            homs[a] = m if isinstance(m, AlgebraHom) else AlgebraHom(
                alg[y], alg[x], m if isinstance(m, Matrix) else Matrix(alg[x].field, alg[x].dim, alg[y].dim, m))
        elif base.is_identity(a):
            homs[a] = identity_hom(alg[x])
        else:
            raise ValueError(f"no restriction map for {a}")
    return PresheafOfAlgebras(base, dict(alg), homs)


def constant_presheaf(C: FiniteCategory, A: Algebra) -> PresheafOfAlgebras:
    return PresheafOfAlgebras(C, {x: A for x in C.objects}, {m: identity_hom(A) for m in C.morphisms})


def presheaf_to_modulation(R: PresheafOfAlgebras) -> Modulation:
    """M_R(α) = R(x) with right R(y)-action through R(α); c(m ⊗ n) = m·R(α)(n)."""
    C = R.base
    bim, comp = {}, {}
    for a in C.morphisms:
        bim[a] = twist_right(regular_bimodule(R.alg[C.dom[a]]), R.res[a])
    for b, a in C.composable_pairs():
        A = R.alg[C.dom[a]]
        h = R.res[a]
        comp[(b, a)] = tuple(tuple(A.product(A.element(i), h.matrix.column(j)) for j in range(h.source.dim))
                             for i in range(A.dim))
    return make_modulation(C, dict(R.alg), bim, comp, presheaf=R)


def presheaf_to_comodulation(R: PresheafOfAlgebras) -> Comodulation:
    """W_R(α) = R(x) with left R(y)-action through R(α); c(w_β ⊗ w_α) = R(α)(w_β)·w_α."""
    C = R.base
    bim, comp = {}, {}
    for a in C.morphisms:
        bim[a] = twist_left(regular_bimodule(R.alg[C.dom[a]]), R.res[a])
    for b, a in C.composable_pairs():
        A = R.alg[C.dom[a]]
        h = R.res[a]
        comp[(b, a)] = tuple(tuple(A.product(h.matrix.column(i), A.element(j)) for j in range(A.dim))
                             for i in range(h.source.dim))
    return make_comodulation(C, dict(R.alg), bim, comp, presheaf=R)


def with_compositor_entry(mod, pair: tuple[str, str], i: int, j: int, value) -> Modulation | Comodulation:
    """Copy of ``mod`` with one pure-tensor image replaced (unvalidated)."""
    comp = dict(mod.comp)
    rows = [list(r) for r in comp[pair]]
    rows[i][j] = mod.field.vector(value)
    comp[pair] = tuple(tuple(r) for r in rows)
    return replace(mod, comp=comp)
