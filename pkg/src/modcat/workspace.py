"""JSON workspace files: one file, named sections, cross-referenced by name.

Scalars are written as strings ("3", "-1/2"); integers are accepted on input.
Objects are built lazily so that a failing category shows up as a check
failure of that entry rather than as an unreadable file.
"""

from __future__ import annotations

import json
from typing import Any

from .algebra import (Algebra, Bimodule, dual_numbers, gaussian_extension, ground_algebra, make_algebra,
                      make_bimodule, polynomial_quotient, validate_algebra, validate_bimodule)
from .equivalence import LaxTransformation, lax_check, make_lax
from .errors import ModcatError, ParseError, UnresolvedReference
from .fincat import (FiniteCategory, Quiver, category_from_description, cyclic_group_category, free_category,
                     parallel_arrows_category, path_category, terminal_category)
from .finiteness import PresheafModule, make_presheaf_module, validate_presheaf_module
from .linalg import Field, Matrix
from .mcalgebra import ModCatAlgebra, build_algebra
from .modulation import (Comodulation, Modulation, PresheafOfAlgebras, constant_comodulation,
                         constant_modulation, make_comodulation, make_modulation, make_presheaf,
                         presheaf_to_comodulation, presheaf_to_modulation, validate, validate_presheaf)

SECTIONS = ("categories", "algebras", "bimodules", "presheaves", "modulations", "representations", "modules",
            "presheaf_modules")

# reference fields: section -> (key, target section)
_REFS = {
    "bimodules": [("left", "algebras"), ("right", "algebras")],
    "presheaves": [("category", "categories")],
    "modulations": [("category", "categories"), ("algebra", "algebras"), ("presheaf", "presheaves")],
    "representations": [("modulation", "modulations"), ("coefficient_algebra", "algebras")],
    "modules": [("modulation", "modulations"), ("coefficient_algebra", "algebras")],
    "presheaf_modules": [("presheaf", "presheaves")],
}


class Workspace:
    def __init__(self, data: dict, field: Field | None = None):
        if not isinstance(data, dict):
            raise ParseError("workspace must be a JSON object", line=1, reason="not an object")
        if str(data.get("format_version")) != "1":
            raise ParseError("unsupported format_version", line=1, reason="format_version must be \"1\"")
        try:
            self.field = field or Field.from_spec(data.get("field", "q"))
        except ValueError as e:
            raise ParseError(str(e), line=1, reason="bad field") from None
        self.raw = {s: data.get(s, {}) for s in SECTIONS}
        for s in SECTIONS:
            if not isinstance(self.raw[s], dict):
                raise ParseError(f"section {s} must be an object", line=1, reason=s)
        self._cache: dict[tuple[str, str], Any] = {}
        self._check_refs()

    # -- references --------------------------------------------------------
    def _check_refs(self) -> None:
        for section, refs in _REFS.items():
            for name, entry in self.raw[section].items():
                for key, target in refs:
                    if key in entry and entry[key] not in self.raw[target]:
                        raise UnresolvedReference(f"{section}.{name}.{key} names unknown {target} entry",
                                                  name=entry[key], location=f"{section}.{name}")
                if section == "modulations":
                    for x, a in entry.get("object_algebras", {}).items():
                        self._need("algebras", a, section, name)
                    for a, b in entry.get("morphism_bimodules", {}).items():
                        if isinstance(b, str):
                            self._need("bimodules", b, section, name)
                if section == "presheaves":
                    for x, a in entry.get("object_algebras", {}).items():
                        self._need("algebras", a, section, name)
                if section == "representations":
                    for x, b in entry.get("components", {}).items():
                        if isinstance(b, str):
                            self._need("bimodules", b, section, name)

    def _need(self, target: str, name: str, section: str, owner: str) -> None:
        if name not in self.raw[target]:
            raise UnresolvedReference(f"{section}.{owner} names unknown {target} entry", name=name,
                                      location=f"{section}.{owner}")

    def names(self, section: str) -> list[str]:
        return list(self.raw[section])

    def get(self, section: str, name: str):
        if name not in self.raw[section]:
            raise UnresolvedReference(f"no {section} entry {name!r}", name=name, location=section)
        key = (section, name)
        if key not in self._cache:
            builder = getattr(self, "_build_" + section)
            try:
                self._cache[key] = builder(self.raw[section][name])
            except (KeyError, TypeError, IndexError, ValueError) as e:
                if isinstance(e, ModcatError):
                    raise
                raise ParseError(f"malformed {section}.{name}: {e}", line=0, reason=str(e),
                                 location=f"{section}.{name}") from None
        return self._cache[key]

    # -- scalars and matrices ----------------------------------------------
    def vec(self, values) -> tuple:
        return tuple(self.field(v) for v in values)

    def mat(self, rows, n_rows: int | None = None, n_cols: int | None = None) -> Matrix:
        rows = [self.vec(r) for r in rows]
        if n_rows is not None and len(rows) != n_rows:
            raise ValueError(f"matrix has {len(rows)} rows, expected {n_rows}")
        cols = n_cols if n_cols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return Matrix(self.field, len(rows), cols, rows)

    def table(self, rows) -> tuple:
        return tuple(tuple(self.vec(v) for v in row) for row in rows)

    # -- builders ----------------------------------------------------------
    def _build_categories(self, e: dict) -> FiniteCategory:
        if "builtin" in e:
            kind, _, arg = e["builtin"].partition(":")
            if kind == "terminal":
                return terminal_category()
            if kind == "cyclic":
                return cyclic_group_category(int(arg))
            if kind == "parallel":
                return parallel_arrows_category()
            if kind == "path":
                return path_category(int(arg))
            raise ValueError(f"unknown builtin category {e['builtin']!r}")
        if "quiver" in e:
            q = e["quiver"]
            return free_category(Quiver(tuple(q["vertices"]),
                                        tuple((a["id"], a["src"], a["tgt"]) for a in q["arrows"])))
        return category_from_description(e)

    def _build_algebras(self, e: dict) -> Algebra:
        f = self.field
        if "builtin" in e:
            b = e["builtin"]
            if b == "ground":
                A = ground_algebra(f)
            elif b == "dual":
                A = dual_numbers(f)
            elif b == "gaussian":
                A = gaussian_extension(f)
            else:
                raise ValueError(f"unknown builtin algebra {b!r}")
        elif "polynomial" in e:
            A = polynomial_quotient(f, self.vec(e["polynomial"]), e.get("var", "t"))
        else:
            A = make_algebra(f, [[self.vec(v) for v in row] for row in e["mult"]], self.vec(e["unit"]),
                             e.get("basis"))
        return validate_algebra(A)

    def _bimodule(self, e: dict, left: Algebra, right: Algebra) -> Bimodule:
        n = int(e["dim"])
        if "left_action" in e:
            la = [self.mat(m, n, n) for m in e["left_action"]]
        elif left.dim == 1:
            la = [Matrix.identity(self.field, n)]
        else:
            raise ValueError("left_action is required unless the left algebra is the ground field")
        ra = [self.mat(m, n, n) for m in e["right_action"]]
        return validate_bimodule(make_bimodule(left, right, n, la, ra))

    def _build_bimodules(self, e: dict) -> Bimodule:
        return self._bimodule(e, self.get("algebras", e["left"]), self.get("algebras", e["right"]))

    def _build_presheaves(self, e: dict) -> PresheafOfAlgebras:
        C = self.get("categories", e["category"])
        alg = {x: self.get("algebras", a) for x, a in e["object_algebras"].items()}
        res = {a: self.mat(m) for a, m in e.get("restriction_maps", {}).items()}
        return validate_presheaf(make_presheaf(C, alg, res))

    def _build_modulations(self, e: dict) -> Modulation | Comodulation:
        variance = e.get("variance", "covariant")
        if variance not in ("covariant", "contravariant"):
            raise ValueError(f"bad variance {variance!r}")
        kind = e.get("kind", "explicit")
        if kind == "presheaf":
            R = self.get("presheaves", e["presheaf"])
            mod = presheaf_to_modulation(R) if variance == "covariant" else presheaf_to_comodulation(R)
        elif kind == "constant":
            C, A = self.get("categories", e["category"]), self.get("algebras", e["algebra"])
            mod = constant_modulation(C, A) if variance == "covariant" else constant_comodulation(C, A)
        elif kind == "explicit":
            C = self.get("categories", e["category"])
            alg = {x: self.get("algebras", a) for x, a in e["object_algebras"].items()}
            bim = {}
            for a, b in e.get("morphism_bimodules", {}).items():
                if isinstance(b, str):
                    bim[a] = self.get("bimodules", b)
                else:
                    x, y = C.dom[a], C.cod[a]
                    l, r = (alg[x], alg[y]) if variance == "covariant" else (alg[y], alg[x])
                    bim[a] = self._bimodule(b, l, r)
            comp = {}
            for key, t in e.get("compositors", {}).items():
                b, _, a = key.partition("∘")
                comp[(b, a)] = self.table(t)
            build = make_modulation if variance == "covariant" else make_comodulation
            mod = build(C, alg, bim, comp)
        else:
            raise ValueError(f"unknown modulation kind {kind!r}")
        return validate(mod)

    def algebra_of(self, name: str) -> ModCatAlgebra:
        key = ("_mcalg", name)
        if key not in self._cache:
            self._cache[key] = build_algebra(self.get("modulations", name))
        return self._cache[key]

    def _coeff(self, e: dict) -> Algebra:
        return self.get("algebras", e["coefficient_algebra"]) if "coefficient_algebra" in e else ground_algebra(self.field)

    def _build_representations(self, e: dict) -> LaxTransformation:
        mod = self.get("modulations", e["modulation"])
        coeff = self._coeff(e)
        comps = {}
        for x, b in e["components"].items():
            comps[x] = self.get("bimodules", b) if isinstance(b, str) else self._bimodule(b, coeff, mod.alg[x])
        maps = {a: self.table(t) for a, t in e.get("maps", {}).items()}
        return lax_check(make_lax(mod, coeff, comps, maps))

    def _build_modules(self, e: dict) -> Bimodule:
        A = self.algebra_of(e["modulation"])
        return self._bimodule(e, self._coeff(e), A.carrier)

    def _build_presheaf_modules(self, e: dict) -> PresheafModule:
        R = self.get("presheaves", e["presheaf"])
        k = ground_algebra(self.field)
        comps = {x: self._bimodule(b, k, R.alg[x]) for x, b in e["components"].items()}
        res = {a: self.mat(m, comps[R.base.dom[a]].dim, comps[R.base.cod[a]].dim)
               for a, m in e.get("restrictions", {}).items()}
        return validate_presheaf_module(make_presheaf_module(R, comps, res))


def load_workspace(text: str, field: Field | None = None) -> Workspace:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", line=e.lineno, reason=e.msg) from None
    return Workspace(data, field)


# -- serialization -----------------------------------------------------------

def fmt_vec(field: Field, v) -> list[str]:
    return [field.format(c) for c in v]


def fmt_mat(m: Matrix) -> list[list[str]]:
    return m.to_text()


def fmt_table(field: Field, t) -> list:
    return [[fmt_vec(field, v) for v in row] for row in t]


def dump_bimodule(B: Bimodule, with_left: bool | None = None) -> dict:
    out: dict = {"dim": B.dim}
    if with_left or (with_left is None and B.left.dim > 1):
        out["left_action"] = [fmt_mat(m) for m in B.left_action]
    out["right_action"] = [fmt_mat(m) for m in B.right_action]
    return out


def dump_representation(V: LaxTransformation, modulation_name: str) -> dict:
    C = V.cov.base
    return {
        "modulation": modulation_name,
        "components": {x: dump_bimodule(V.components[x]) for x in C.objects},
        "maps": {a: fmt_table(V.field, V.maps[a]) for a in C.morphisms if not C.is_identity(a)},
    }


def dump_module(N: Bimodule, modulation_name: str) -> dict:
    return {"modulation": modulation_name, **dump_bimodule(N)}


def dump_presheaf_module(P: PresheafModule, presheaf_name: str) -> dict:
    C = P.presheaf.base
    return {
        "presheaf": presheaf_name,
        "components": {x: dump_bimodule(P.components[x]) for x in C.objects},
        "restrictions": {a: fmt_mat(P.restrictions[a]) for a in C.morphisms if not C.is_identity(a)},
    }
