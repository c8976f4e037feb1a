"""Random ι*π* and π*ι* roundtrips over the group, species and skew algebras."""

import argparse
import random
import time

from modcat.algebra import compose_maps, regular_right_module
from modcat.config import SweepConfig
from modcat.corpus import (free_k_presheaf_module, random_c2_rep, random_module, random_module_map,
                           random_species_rep, separating_presheaf, species_a2)
from modcat.equivalence import compose_modifications, pi_star_map, roundtrip_module, roundtrip_rep
from modcat.errors import ModcatError
from modcat.fincat import cyclic_group_category
from modcat.finiteness import presheaf_module_to_comod_rep
from modcat.mcalgebra import build_algebra, category_algebra, skew_category_algebra


def random_rep(name, A, rng, cfg):
    if name == "c2":
        return random_c2_rep(A.source, rng, cfg.max_rep_dim)
    if name == "species":
        return random_species_rep(A.source, rng, cfg.max_rep_dim)
    return presheaf_module_to_comod_rep(free_k_presheaf_module(separating_presheaf(), rng, cfg.max_rep_dim))


def sweep(name, A, cfg: SweepConfig) -> dict:
    rng = random.Random(cfg.seed)
    out = {"modules": 0, "reps": 0, "pairs": 0, "failures": []}
    mods = [regular_right_module(A.carrier)]
    mods += [random_module(A.carrier, rng, cfg.max_module_dim) for _ in range(cfg.modules_per_algebra)]
    for N in mods:
        try:
            roundtrip_module(N, A)
            out["modules"] += 1
        except ModcatError as e:
            out["failures"].append(f"module dim {N.dim}: {e}")
    for _ in range(cfg.reps_per_algebra):
        V = random_rep(name, A, rng, cfg)
        try:
            roundtrip_rep(V, A)
            out["reps"] += 1
        except ModcatError as e:
            out["failures"].append(f"rep {V.dims()}: {e}")
    for _ in range(cfg.functor_pairs):
        N1, N2, N3 = (random_module(A.carrier, rng, cfg.max_module_dim) for _ in range(3))
        f, g = random_module_map(N1, N2, rng), random_module_map(N2, N3, rng)
        lhs = pi_star_map(compose_maps(g, f), A)
        rhs = compose_modifications(pi_star_map(g, A), pi_star_map(f, A))
        if any(lhs.components[x].matrix != rhs.components[x].matrix for x in lhs.components):
            out["failures"].append("π* does not preserve a composite")
        out["pairs"] += 1
    return out


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    SweepConfig().add_arguments(p)
    cfg = SweepConfig.from_args(p.parse_args())
    algebras = {"c2": category_algebra(cyclic_group_category(2)), "species": build_algebra(species_a2()),
                "separating": skew_category_algebra(separating_presheaf())}
    bad = 0
    for name, A in algebras.items():
        t = time.perf_counter()
        r = sweep(name, A, cfg)
        bad += len(r["failures"])
        print(f"{name:11s} dim {A.dim}: {r['modules']} modules, {r['reps']} reps, {r['pairs']} composable pairs, "
              f"{len(r['failures'])} failures ({time.perf_counter() - t:.2f}s)")
        for msg in r["failures"]:
            print("   ", msg)
    if bad:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
