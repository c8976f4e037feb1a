"""The (co)modulated category algebra ⊕_α M(α) and its canonical lax transformation π."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, ground_algebra, make_algebra, validate_algebra
from .errors import ClosedFormMismatch
from .linalg import QQ, Field, Vector
from .modulation import (Comodulation, Modulation, PresheafOfAlgebras, constant_modulation,
                         presheaf_to_comodulation)


@dataclass(frozen=True)
class ModCatAlgebra:
    source: Modulation | Comodulation
    carrier: Algebra
    labels: tuple[tuple[str, int], ...]      # basis index -> (morphism, local index)
    blocks: dict[str, range]                 # morphism -> basis indices
    idempotents: dict[str, Vector]           # object -> 1_{M(x)} inside the carrier

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def field(self) -> Field:
        return self.carrier.field

    @property
    def grading(self) -> tuple[str, ...]:
        return tuple(m for m, _ in self.labels)

    def index(self, morphism: str, i: int) -> int:
        return self.blocks[morphism][i]

    def describe(self) -> dict:
        f = self.field
        A = self.carrier
        return {
            "dim": A.dim,
            "basis": [{"morphism": m, "index": i} for m, i in self.labels],
            "unit": [f.format(c) for c in A.unit],
            "mult": [[[f.format(c) for c in A.mult[i][j]] for j in range(A.dim)] for i in range(A.dim)],
            "idempotents": {x: [f.format(c) for c in v] for x, v in self.idempotents.items()},
        }


def _build(source, cov: Modulation, check: bool) -> ModCatAlgebra:
    """Carrier of a covariant modulation ``cov`` (the opposite one for comodulations).

    e_(α,i) * e_(β,j) = c_{β,α}(e_i ⊗ e_j) in block βα when β follows α, else 0.
    """
    C, f = cov.base, cov.field
    labels, blocks = [], {}
    for m in C.morphisms:
        start = len(labels)
        labels.extend((m, i) for i in range(cov.bim[m].dim))
        blocks[m] = range(start, len(labels))
    n = len(labels)
    zero = f.zeros(n)
    mult = []
    for a, i in labels:
        row = []
        for b, j in labels:
            if C.dom[b] != C.cod[a]:
                row.append(zero)
                continue
            v = [f.zero] * n
            target = blocks[C.compose(b, a)]
            for k, c in enumerate(cov.comp[(b, a)][i][j]):
                v[target[k]] = c
            row.append(tuple(v))
        mult.append(row)
    idem = {}
    unit = [f.zero] * n
    for x in C.objects:
        e = [f.zero] * n
        for k, c in enumerate(cov.alg[x].unit):
            e[blocks[C.identity[x]][k]] = c
            unit[blocks[C.identity[x]][k]] = c
        idem[x] = tuple(e)
    names = [f"{m}[{i}]" for m, i in labels]
    carrier = make_algebra(f, mult, unit, names)
    if check:
        validate_algebra(carrier)
    return ModCatAlgebra(source, carrier, tuple(labels), blocks, idem)


def build_mod_cat_algebra(M: Modulation, *, check: bool = True) -> ModCatAlgebra:
    """Modulated category algebra; associativity and unit are re-verified when ``check``."""
    return _build(M, M, check)


def build_comod_cat_algebra(W: Comodulation, *, check: bool = True) -> ModCatAlgebra:
    """Comodulated category algebra: w_β * w_α = c(w_β ⊗ w_α), graded by βα."""
    return _build(W, W.op, check)


def build_algebra(mod: Modulation | Comodulation, *, check: bool = True) -> ModCatAlgebra:
    if isinstance(mod, Comodulation):
        return build_comod_cat_algebra(mod, check=check)
    return build_mod_cat_algebra(mod, check=check)


def category_algebra(C, field: Field = QQ) -> ModCatAlgebra:
    return build_mod_cat_algebra(constant_modulation(C, ground_algebra(field)))


def skew_closed_form_mismatches(A: ModCatAlgebra) -> list[tuple[int, int]]:
    """Basis pairs where the product differs from R(α)(w_β)·w_α graded by βα."""
    R: PresheafOfAlgebras = A.source.presheaf
    C, f = R.base, R.field
    bad = []
    for p, (b, i) in enumerate(A.labels):
        for q, (a, j) in enumerate(A.labels):
            expect = [f.zero] * A.dim
            if C.dom[b] == C.cod[a]:
                Rx = R.alg[C.dom[a]]
                w = Rx.product(R.res[a].matrix.column(i), Rx.element(j))
                target = A.blocks[C.compose(b, a)]
                for k, c in enumerate(w):
                    expect[target[k]] = c
            if A.carrier.mult[p][q] != tuple(expect):
                bad.append((p, q))
    return bad


def skew_category_algebra(R: PresheafOfAlgebras) -> ModCatAlgebra:
    A = build_comod_cat_algebra(presheaf_to_comodulation(R))
    bad = skew_closed_form_mismatches(A)
    if bad:
        raise ClosedFormMismatch("skew product disagrees with the closed form",
                                 pairs=[[A.carrier.basis[p], A.carrier.basis[q]] for p, q in bad])
    return A


def build_pi(A: ModCatAlgebra):
    """π: components A·1_{M(x)}, maps given by multiplication."""
    from .algebra import regular_bimodule
    from .equivalence import lax_check, pi_star
    return lax_check(pi_star(regular_bimodule(A.carrier), A))
