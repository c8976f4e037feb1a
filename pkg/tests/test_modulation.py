from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modcat.algebra import dual_numbers, ground_algebra, regular_bimodule
from modcat.corpus import (dual_a2_presheaf, modulation_corpus, mutation_suite, presheaf_corpus,
                           separating_presheaf, species_a2)
from modcat.errors import (CoherenceFailure, CompositorNotBalanced, CompositorNotInvertible,
                           ModulationError, PresheafError, StrictUnitViolation)
from modcat.fincat import cyclic_group_category, parallel_arrows_category, path_category, terminal_category
from modcat.linalg import QQ, Field, Matrix
from modcat.modulation import (Comodulation, Modulation, constant_comodulation, constant_modulation,
                               make_modulation, make_presheaf, presheaf_to_comodulation, presheaf_to_modulation,
                               validate, validate_comodulation, validate_modulation, validate_presheaf,
                               with_compositor_entry)


# -- independent coherence oracle -----------------------------------------------
# Bilinear evaluation written out directly from the two coherence formulas, without
# going through the opposite category.

def _pair(table, u, v):
    out = None
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            if a and b:
                w = [a * b * c for c in table[i][j]]
                out = w if out is None else [x + y for x, y in zip(out, w)]
    return out


def _unit(n, i):
    return [1 if k == i else 0 for k in range(n)]


def _same(u, v):
    return (u is None or not any(u)) and (v is None or not any(v)) or u == v


def covariant_coherent(M: Modulation) -> bool:
    C = M.base
    for beta, alpha, mu in C.composable_triples():
        # c_{βα,μ}(m ⊗ c_{β,α}(n ⊗ p)) = c_{β,αμ}(c_{α,μ}(m ⊗ n) ⊗ p)
        ba, am = C.compose(beta, alpha), C.compose(alpha, mu)
        for i in range(M.bim[mu].dim):
            for j in range(M.bim[alpha].dim):
                for k in range(M.bim[beta].dim):
                    m, n, p = _unit(M.bim[mu].dim, i), _unit(M.bim[alpha].dim, j), _unit(M.bim[beta].dim, k)
                    lhs = _pair(M.comp[(ba, mu)], m, _pair(M.comp[(beta, alpha)], n, p) or [0] * M.bim[ba].dim)
                    rhs = _pair(M.comp[(beta, am)], _pair(M.comp[(alpha, mu)], m, n) or [0] * M.bim[am].dim, p)
                    if not _same(lhs, rhs):
                        return False
    return True


def contravariant_coherent(W: Comodulation) -> bool:
    """c_{μ,βα}(c_{α,β}(p ⊗ n) ⊗ m) = c_{αμ,β}(p ⊗ c_{μ,α}(n ⊗ m)); c_{α,β} is stored under (β, α)."""
    C = W.base
    for beta, alpha, mu in C.composable_triples():
        ba, am = C.compose(beta, alpha), C.compose(alpha, mu)
        for i in range(W.bim[beta].dim):
            for j in range(W.bim[alpha].dim):
                for k in range(W.bim[mu].dim):
                    p, n, m = _unit(W.bim[beta].dim, i), _unit(W.bim[alpha].dim, j), _unit(W.bim[mu].dim, k)
                    lhs = _pair(W.comp[(ba, mu)], _pair(W.comp[(beta, alpha)], p, n) or [0] * W.bim[ba].dim, m)
                    rhs = _pair(W.comp[(beta, am)], p, _pair(W.comp[(alpha, mu)], n, m) or [0] * W.bim[am].dim)
                    if not _same(lhs, rhs):
                        return False
    return True


def oracle(mod) -> bool:
    return covariant_coherent(mod) if isinstance(mod, Modulation) else contravariant_coherent(mod)


# -- examples ---------------------------------------------------------------------

def test_constant_modulations_validate():
    k = ground_algebra(QQ)
    M = validate_modulation(constant_modulation(terminal_category(), k))
    assert list(M.alg) == ["*"] and M.alg["*"] == k
    validate_modulation(constant_modulation(cyclic_group_category(2), k))
    D = validate_modulation(constant_modulation(parallel_arrows_category(), dual_numbers(QQ)))
    assert all(B == regular_bimodule(D.alg["x"]) for B in D.bim.values())
    validate_comodulation(constant_comodulation(path_category(3), k))


def test_species_validates():
    M = validate_modulation(species_a2())
    assert M.bim["alpha"].dim == 2 and M.alg["y"].dim == 2


def test_identity_pair_scaling_rejected():
    M = species_a2()
    pair = ("alpha", M.base.identity["x"])
    bad = with_compositor_entry(M, pair, 0, 0, [QQ(2) * c for c in M.comp[pair][0][0]])
    with pytest.raises((StrictUnitViolation, CoherenceFailure)):
        validate_modulation(bad)
    with pytest.raises(StrictUnitViolation):
        make_modulation(M.base, M.alg, M.bim, {pair: bad.comp[pair]})


def test_separating_comodulation():
    R = separating_presheaf()
    W = validate_comodulation(presheaf_to_comodulation(R))
    assert all(B.dim == 1 for B in W.bim.values())
    M = validate_modulation(presheaf_to_modulation(R))
    assert M == constant_modulation(R.base, ground_algebra(QQ))


def test_constant_presheaf_gives_constant_modulation():
    from modcat.modulation import constant_presheaf
    R = constant_presheaf(path_category(3), ground_algebra(QQ))
    assert presheaf_to_modulation(R) == constant_modulation(R.base, ground_algebra(QQ))
    assert presheaf_to_comodulation(R) == constant_comodulation(R.base, ground_algebra(QQ))


def test_dual_a2_presheaf_both_ways():
    R = dual_a2_presheaf()
    validate_modulation(presheaf_to_modulation(R))
    validate_comodulation(presheaf_to_comodulation(R))


def test_bad_presheaf_rejected():
    D = dual_numbers(QQ)
    C = cyclic_group_category(2)
    with pytest.raises(PresheafError):
        validate_presheaf(make_presheaf(C, {"*": D}, {"g": Matrix.from_rows(QQ, [[1, 0], [0, 2]])}))


def test_corpus_validates_and_agrees_with_oracle():
    for name, mod in modulation_corpus().items():
        validate(mod)
        assert oracle(mod), name


def test_mutation_suite_detected():
    muts = mutation_suite()
    assert len(muts) >= 50
    kinds = Counter()
    for mu in muts:
        with pytest.raises(ModulationError) as e:
            validate(mu.mutant)
        kinds[type(e.value).__name__] += 1
        if isinstance(e.value, CoherenceFailure):
            assert not oracle(mu.mutant)
    assert kinds["CoherenceFailure"] > 0 and kinds["CompositorNotBalanced"] > 0


def test_coherence_failure_witness():
    muts = [m for m in mutation_suite() if m.source == "k_a4" and m.description == "scale2"]
    M = muts[0].mutant
    try:
        validate(M)
    except CoherenceFailure as e:
        assert len(e.witness["triple"]) == 3 and len(e.witness["basis"]) == 3
    except (CompositorNotBalanced, CompositorNotInvertible):
        pass


def test_mutant_verdicts_match_oracle_when_balanced():
    # once balance and invertibility pass, the validator's coherence verdict equals the oracle's
    for mu in mutation_suite():
        try:
            validate(mu.mutant)
        except (CompositorNotBalanced, CompositorNotInvertible):
            continue
        except CoherenceFailure:
            assert not oracle(mu.mutant)


@settings(max_examples=12)
@given(st.sampled_from([2, 3, 5, 7]), st.sampled_from(sorted(presheaf_corpus())))
def test_presheaf_constructions_validate_over_fp(p, name):
    R = presheaf_corpus(Field(p))[name]
    M, W = presheaf_to_modulation(R), presheaf_to_comodulation(R)
    validate(M)
    validate(W)
    assert oracle(M) and oracle(W)


@settings(max_examples=20)
@given(st.integers(0, 200), st.integers(-3, 3))
def test_random_single_entry_edit_never_silently_accepted(seed, delta):
    import random
    rng = random.Random(seed)
    M = constant_modulation(path_category(4), dual_numbers(QQ))
    pairs = [(b, a) for b, a in M.base.composable_pairs()
             if not M.base.is_identity(a) and not M.base.is_identity(b)]
    pair = rng.choice(pairs)
    i, j = rng.randrange(2), rng.randrange(2)
    vec = list(M.comp[pair][i][j])
    k = rng.randrange(len(vec))
    vec[k] = vec[k] + delta
    mutant = with_compositor_entry(M, pair, i, j, vec)
    if delta == 0:
        validate(mutant)
    else:
        with pytest.raises(ModulationError):
            validate(mutant)
