"""Named example data and seeded random generators used by tests, scripts and the CLI."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import (Algebra, Bimodule, BimoduleMap, direct_sum, dual_numbers, gaussian_extension,
                      generated_submodule, ground_algebra, hom_basis, make_bimodule, quotient_bimodule,
                      regular_right_module, sub_bimodule)
from .equivalence import LaxTransformation, lax_check, make_lax
from .fincat import (FiniteCategory, Quiver, cyclic_group_category, free_category, parallel_arrows_category,
                     path_category, terminal_category)
from .finiteness import (PresheafModule, make_presheaf_module, presheaf_module_sum, quotient_presheaf_module,
                         regular_presheaf_module, separating_presheaf, sub_presheaf_module,
                         validate_presheaf_module)
from .linalg import QQ, Field, Matrix, inverse
from .modulation import (Comodulation, Modulation, PresheafOfAlgebras, constant_comodulation,
                         constant_modulation, constant_presheaf, make_modulation, make_presheaf,
                         presheaf_to_comodulation, presheaf_to_modulation, validate_presheaf)


def two_objects() -> FiniteCategory:
    """x → y with a single arrow ``alpha``."""
    return free_category(Quiver(("x", "y"), (("alpha", "x", "y"),)))


def species_a2(field: Field = QQ) -> Modulation:
    """M(x) = k, M(y) = k[t]/(t²+1), M(alpha) = k[t]/(t²+1) as a k-k[t]/(t²+1)-bimodule."""
    C = two_objects()
    k, K = ground_algebra(field), gaussian_extension(field)
    bim = make_bimodule(k, K, K.dim, [Matrix.identity(field, K.dim)],
                        [K.right_mult(K.element(j)) for j in range(K.dim)])
    return make_modulation(C, {"x": k, "y": K}, {"alpha": bim}, {})


def trivial_group_modulation(n: int = 2, field: Field = QQ) -> Modulation:
    return constant_modulation(cyclic_group_category(n), ground_algebra(field))


def dual_a2_presheaf(field: Field = QQ) -> PresheafOfAlgebras:
    """R(x) = k[t]/(t²), R(y) = k, R(alpha) the unit inclusion."""
    C = two_objects()
    D, k = dual_numbers(field), ground_algebra(field)
    return validate_presheaf(make_presheaf(C, {"x": D, "y": k},
                                           {"alpha": Matrix.from_columns(field, [D.unit], rows=D.dim)}))


def galois_c2_presheaf(field: Field = QQ) -> PresheafOfAlgebras:
    """C₂ acting on k(i) by conjugation."""
    C = cyclic_group_category(2)
    K = gaussian_extension(field)
    conj = Matrix.from_rows(field, [[1, 0], [0, -1]])
    return validate_presheaf(make_presheaf(C, {"*": K}, {"g": conj}))


def dual_a3_presheaf(field: Field = QQ) -> PresheafOfAlgebras:
    return constant_presheaf(path_category(3), dual_numbers(field))


def presheaf_corpus(field: Field = QQ) -> dict[str, PresheafOfAlgebras]:
    return {
        "separating": separating_presheaf(field),
        "dual_a2": dual_a2_presheaf(field),
        "galois_c2": galois_c2_presheaf(field),
        "dual_a3": dual_a3_presheaf(field),
        "const_c3": constant_presheaf(cyclic_group_category(3), ground_algebra(field)),
    }


def modulation_corpus(field: Field = QQ) -> dict[str, Modulation | Comodulation]:
    k, D = ground_algebra(field), dual_numbers(field)
    out: dict[str, Modulation | Comodulation] = {
        "k_terminal": constant_modulation(terminal_category(), k),
        "k_c2": constant_modulation(cyclic_group_category(2), k),
        "k_c3": constant_modulation(cyclic_group_category(3), k),
        "k_a3": constant_modulation(path_category(3), k),
        "dual_parallel": constant_modulation(parallel_arrows_category(), D),
        "dual_c2_co": constant_comodulation(cyclic_group_category(2), D),
        "species_a2": species_a2(field),
    }
    for name, R in presheaf_corpus(field).items():
        out[f"M_{name}"] = presheaf_to_modulation(R)
        out[f"W_{name}"] = presheaf_to_comodulation(R)
    return out


# -- mutation suite -------------------------------------------------------------

@dataclass(frozen=True)
class Mutation:
    source: str
    pair: tuple[str, str]
    entry: tuple[int, int, int]
    description: str
    mutant: Modulation | Comodulation


def _non_identity_pairs(mod) -> list[tuple[str, str]]:
    C = mod.base
    return [(b, a) for b, a in C.composable_pairs() if not C.is_identity(a) and not C.is_identity(b)]


def mutation_suite(field: Field = QQ) -> list[Mutation]:
    """Single-entry corruptions of compositors in categories with a non-identity composable triple."""
    from .modulation import with_compositor_entry
    A4 = path_category(4)
    k, D = ground_algebra(field), dual_numbers(field)
    sources = {
        "k_a4": constant_modulation(A4, k),
        "k_a4_co": constant_comodulation(A4, k),
        "M_dual_a4": presheaf_to_modulation(constant_presheaf(A4, D)),
        "W_dual_a4": presheaf_to_comodulation(constant_presheaf(A4, D)),
    }
    edits = {"scale2": lambda c: c * 2, "plus1": lambda c: c + 1, "zero": lambda c: c * 0,
             "negate": lambda c: -c, "scale3": lambda c: c * 3}
    out = []
    for name, mod in sources.items():
        for pair in _non_identity_pairs(mod):
            table = mod.comp[pair]
            for i in range(len(table)):
                for j in range(len(table[i])):
                    vec = table[i][j]
                    for k_ in range(len(vec)):
                        for ename, fn in edits.items():
                            if name.startswith(("M_", "W_")) and ename != "plus1":
                                continue
                            new = list(vec)
                            new[k_] = fn(field(new[k_]))
                            if tuple(new) == tuple(vec):
                                continue
                            out.append(Mutation(name, pair, (i, j, k_), ename,
                                                with_compositor_entry(mod, pair, i, j, new)))
    return out


# -- random modules and representations ------------------------------------------

def _rand(field: Field, rng: random.Random, lo: int = -2, hi: int = 2):
    return field(rng.randint(lo, hi))


def random_vector(field: Field, n: int, rng: random.Random) -> tuple:
    return tuple(_rand(field, rng) for _ in range(n))


def random_module(A: Algebra, rng: random.Random, max_dim: int = 6) -> Bimodule:
    """A sub- or quotient module of a small free module, of dimension at most ``max_dim``."""
    f = A.field
    for _ in range(50):
        copies = rng.randint(1, 2)
        free = direct_sum(*[regular_right_module(A)] * copies)
        gens = [random_vector(f, free.dim, rng) for _ in range(rng.randint(0, 2))]
        sub = generated_submodule(free, gens)
        if rng.random() < 0.5:
            N = quotient_bimodule(free, sub)[0]
        else:
            N = sub_bimodule(free, sub)
        if 0 < N.dim <= max_dim:
            return N
    return regular_right_module(A) if A.dim <= max_dim else quotient_bimodule(
        regular_right_module(A), generated_submodule(regular_right_module(A), []))[0]


def random_module_map(M: Bimodule, N: Bimodule, rng: random.Random) -> BimoduleMap:
    f = M.field
    basis = hom_basis(M, N)
    mat = Matrix.zeros(f, N.dim, M.dim)
    for b in basis:
        mat = mat + b.matrix.scale(_rand(f, rng))
    return BimoduleMap(M, N, mat)


def random_invertible(field: Field, n: int, rng: random.Random) -> Matrix:
    while True:
        m = Matrix(field, n, n, [[_rand(field, rng) for _ in range(n)] for _ in range(n)])
        if inverse(m) is not None:
            return m


def random_c2_rep(M: Modulation, rng: random.Random, max_dim: int = 3) -> LaxTransformation:
    """V(*) = k^n with V(g) a random involution."""
    f = M.field
    k = ground_algebra(f)
    n = rng.randint(1, max_dim)
    P = random_invertible(f, n, rng)
    D = Matrix(f, n, n, [[(f.one if rng.random() < 0.5 else -f.one) if i == j else f.zero for j in range(n)]
                         for i in range(n)])
    G = P @ D @ inverse(P)
    comp = make_bimodule(k, M.alg["*"], n, [Matrix.identity(f, n)], [Matrix.identity(f, n)])
    return lax_check(make_lax(M, k, {"*": comp}, {"g": tuple((G.column(v),) for v in range(n))}))


def random_species_rep(M: Modulation, rng: random.Random, max_dim: int = 3) -> LaxTransformation:
    """V(x) = k^a, V(y) = K^b; V(alpha) is determined by a random k-linear map V(x) → V(y)."""
    f = M.field
    k, K = M.alg["x"], M.alg["y"]
    a = rng.randint(0, max_dim)
    b = rng.randint(0, max_dim // K.dim)
    Vx = make_bimodule(k, k, a, [Matrix.identity(f, a)], [Matrix.identity(f, a)])
    Ky = direct_sum(*[regular_right_module(K)] * b) if b else None
    Vy = (Bimodule(k, K, 0, (Matrix(f, 0, 0),), tuple(Matrix(f, 0, 0) for _ in range(K.dim)))
          if Ky is None else Ky)
    F = Matrix(f, Vy.dim, a, [[_rand(f, rng) for _ in range(a)] for _ in range(Vy.dim)])
    table = tuple(tuple(Vy.right_action[j] @ F.column(v) for j in range(K.dim)) for v in range(a))
    return lax_check(make_lax(M, k, {"x": Vx, "y": Vy}, {"alpha": table}))


def random_presheaf_module(R: PresheafOfAlgebras, rng: random.Random, *, quotient: bool = True,
                           copies: int | None = None) -> PresheafModule:
    """Quotient (always of finite type) or subobject of a free presheaf module."""
    f = R.field
    n = copies or rng.randint(1, 2)
    free = presheaf_module_sum(*[regular_presheaf_module(R)] * n)
    gens = {}
    for x in R.base.objects:
        if rng.random() < 0.6:
            gens[x] = [random_vector(f, free.components[x].dim, rng) for _ in range(rng.randint(1, 2))]
    sub = sub_presheaf_module(free, gens)
    if quotient:
        return validate_presheaf_module(quotient_presheaf_module(free, sub))
    from .algebra import sub_bimodule as restrict_to
    comps = {x: restrict_to(free.components[x], sub[x]) for x in R.base.objects}
    res = {}
    for a in R.base.morphisms:
        x, y = R.base.dom[a], R.base.cod[a]
        cols = [sub[x].coordinates(free.restrictions[a] @ v) for v in sub[y].vectors()]
        res[a] = Matrix.from_columns(f, cols, rows=sub[x].dim)
    return validate_presheaf_module(PresheafModule(R, comps, res))


def free_k_presheaf_module(R: PresheafOfAlgebras, rng: random.Random, max_dim: int = 3) -> PresheafModule:
    """For a presheaf with all algebras equal to k: arbitrary vector spaces and restriction matrices.

    Only valid when no two non-identity morphisms compose (e.g. x ⇉ y).
    """
    f = R.field
    C = R.base
    dims = {x: rng.randint(0, max_dim) for x in C.objects}
    k = ground_algebra(f)
    comps = {x: make_bimodule(k, R.alg[x], d, [Matrix.identity(f, d)], [Matrix.identity(f, d)])
             for x, d in dims.items()}
    res = {a: Matrix(f, dims[C.dom[a]], dims[C.cod[a]],
                     [[_rand(f, rng) for _ in range(dims[C.cod[a]])] for _ in range(dims[C.dom[a]])])
           for a in C.morphisms if not C.is_identity(a)}
    return validate_presheaf_module(make_presheaf_module(R, comps, res))
