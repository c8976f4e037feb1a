"""Regenerate the shipped workspace files in workspaces/.

Module and representation entries are produced by the library itself
(π*, ι*) and then frozen as JSON, so the files double as golden data.
"""

import json
from pathlib import Path

from modcat.algebra import regular_right_module
from modcat.corpus import species_a2
from modcat.equivalence import iota_star, lax_check, make_lax, pi_star
from modcat.finiteness import (idempotent_ideal, module_to_presheaf_module, regular_presheaf_module)
from modcat.linalg import QQ
from modcat.mcalgebra import build_algebra, category_algebra, skew_category_algebra
from modcat.fincat import cyclic_group_category
from modcat.finiteness import separating_presheaf
from modcat.workspace import dump_module, dump_presheaf_module, dump_representation

OUT = Path(__file__).resolve().parent.parent / "workspaces"


def separating() -> dict:
    R = separating_presheaf()
    A = skew_category_algebra(R)
    Px, Py = idempotent_ideal(A, "x"), idempotent_ideal(A, "y")
    return {
        "format_version": "1",
        "field": "q",
        "categories": {"C": {"quiver": {"vertices": ["x", "y"], "arrows": [
            {"id": "alpha", "src": "x", "tgt": "y"}, {"id": "beta", "src": "x", "tgt": "y"}]}}},
        "algebras": {"k": {"builtin": "ground"}},
        "presheaves": {"R": {"category": "C", "object_algebras": {"x": "k", "y": "k"},
                             "restriction_maps": {"alpha": [["1"]], "beta": [["1"]]}}},
        "modulations": {
            "W_R": {"kind": "presheaf", "presheaf": "R", "variance": "contravariant"},
            "M_R": {"kind": "presheaf", "presheaf": "R", "variance": "covariant"},
        },
        "representations": {"P": dump_representation(pi_star(regular_right_module(A.carrier), A), "W_R")},
        "modules": {
            "regular": dump_module(regular_right_module(A.carrier), "W_R"),
            "P_x": dump_module(Px, "W_R"),
            "P_y": dump_module(Py, "W_R"),
        },
        "presheaf_modules": {
            "R": dump_presheaf_module(regular_presheaf_module(R), "R"),
            "P_x": dump_presheaf_module(module_to_presheaf_module(Px, A), "R"),
            "P_y": dump_presheaf_module(module_to_presheaf_module(Py, A), "R"),
        },
    }


def group_c2() -> dict:
    A = category_algebra(cyclic_group_category(2))
    k = A.source.alg["*"]
    sign = lax_check(make_lax(A.source, k, {"*": regular_right_module(k)}, {"g": (((QQ(-1),),),)}))
    return {
        "format_version": "1",
        "field": "q",
        "categories": {"C2": {"builtin": "cyclic:2"}},
        "algebras": {"k": {"builtin": "ground"}},
        "modulations": {"k_C2": {"kind": "constant", "category": "C2", "algebra": "k"}},
        "representations": {"sign": dump_representation(sign, "k_C2")},
        "modules": {
            "regular": dump_module(regular_right_module(A.carrier), "k_C2"),
            "sign": dump_module(iota_star(sign, A), "k_C2"),
        },
    }


def species() -> dict:
    M = species_a2()
    A = build_algebra(M)
    K = M.alg["y"]
    V = lax_check(make_lax(M, M.alg["x"], {"x": regular_right_module(M.alg["x"]), "y": regular_right_module(K)},
                           {"alpha": (tuple(K.element(j) for j in range(K.dim)),)}))
    ident = [["1", "0"], ["0", "1"]]
    return {
        "format_version": "1",
        "field": "q",
        "categories": {"A2": {"quiver": {"vertices": ["x", "y"], "arrows": [{"id": "alpha", "src": "x", "tgt": "y"}]}}},
        "algebras": {"k": {"builtin": "ground"}, "K": {"polynomial": ["1", "0"], "var": "i"}},
        "bimodules": {"K_as_kK": {"left": "k", "right": "K", "dim": 2,
                                  "right_action": [ident, [["0", "-1"], ["1", "0"]]]}},
        "modulations": {"species": {"kind": "explicit", "category": "A2", "variance": "covariant",
                                    "object_algebras": {"x": "k", "y": "K"},
                                    "morphism_bimodules": {"alpha": "K_as_kK"}, "compositors": {}}},
        "representations": {"V": dump_representation(V, "species")},
        "modules": {"regular": dump_module(regular_right_module(A.carrier), "species"),
                    "V": dump_module(iota_star(V, A), "species")},
    }


def main() -> None:
    OUT.mkdir(exist_ok=True)
    for name, data in (("separating", separating()), ("group_c2", group_c2()), ("species_a2", species())):
        (OUT / f"{name}.json").write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        print("wrote", OUT / f"{name}.json")


if __name__ == "__main__":
    main()
