"""Command-line front end. Exit codes: 0 pass, 1 check failure, 2 input error."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .algebra import regular_right_module
from .corpus import species_a2, trivial_group_modulation
from .equivalence import (find_isomorphism, iota_star, lax_check, make_lax, pi_star, roundtrip_module,
                          roundtrip_rep)
from .config import RunOptions
from .errors import InputError, ModcatError, UnknownDemo
from .finiteness import (PresheafModule, finite_type, finitely_generated, minimal_generators,
                         presheaf_module_to_module, separation_demo)
from .linalg import QQ, Field
from .mcalgebra import ModCatAlgebra, build_algebra, category_algebra, skew_category_algebra
from .workspace import (SECTIONS, Workspace, dump_module, dump_representation, fmt_mat, fmt_vec,
                        load_workspace)


@dataclass
class Report:
    command: str
    findings: list = dc_field(default_factory=list)
    artifacts: dict = dc_field(default_factory=dict)
    input_error: bool = False

    def add(self, check: str, location: str, ok: bool, witness: dict | None = None) -> bool:
        self.findings.append({"check": check, "location": location, "verdict": "pass" if ok else "fail",
                              "witness": witness or {}})
        return ok

    def add_error(self, check: str, location: str, err: ModcatError) -> None:
        self.add(check, location, False, error_witness(err))

    @property
    def status(self) -> str:
        return "pass" if not self.input_error and all(f["verdict"] == "pass" for f in self.findings) else "fail"

    @property
    def exit_code(self) -> int:
        return 2 if self.input_error else (0 if self.status == "pass" else 1)

    def to_dict(self) -> dict:
        out = {"command": self.command, "status": self.status, "findings": self.findings}
        if self.artifacts:
            out["artifacts"] = self.artifacts
        return out


def error_witness(err: ModcatError) -> dict:
    return {"error": err.kind, "message": str(err), **_plain(err.witness)}


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n"
    lines = [f"{report.command}: {report.status}"]
    for f in report.findings:
        w = " ".join(f"{k}={json.dumps(v, ensure_ascii=False)}" for k, v in f["witness"].items())
        lines.append(f"  [{f['verdict']}] {f['check']} @ {f['location']}" + (f"  {w}" if w else ""))
    for k, v in report.artifacts.items():
        lines.append(f"  artifact {k}: {json.dumps(v, ensure_ascii=False)}")
    return "\n".join(lines) + "\n"


# -- commands --------------------------------------------------------------------

def _load(args) -> Workspace:
    text = Path(args.file).read_text(encoding="utf-8")
    return load_workspace(text, RunOptions.from_args(args).field)


def cmd_validate(args, rep: Report) -> None:
    ws = _load(args)
    for section in SECTIONS:
        for name in ws.names(section):
            loc = f"{section}.{name}"
            try:
                ws.get(section, name)
                if section == "modulations":
                    ws.algebra_of(name)
                rep.add(section, loc, True)
            except InputError:
                raise
            except ModcatError as e:
                rep.add_error(section, loc, e)


def _algebra_artifact(A: ModCatAlgebra) -> dict:
    return A.describe()


def cmd_build_algebra(args, rep: Report) -> None:
    ws = _load(args)
    if args.name in ws.raw["presheaves"]:
        A = skew_category_algebra(ws.get("presheaves", args.name))
    else:
        A = ws.algebra_of(args.name)
    rep.add("algebra", args.name, True, {"dim": A.dim})
    art = _algebra_artifact(A)
    if args.out:
        Path(args.out).write_text(json.dumps(art, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        rep.artifacts["written"] = str(args.out)
    else:
        rep.artifacts["algebra"] = art


def _modulation_name_of(ws: Workspace, section: str, name: str) -> str:
    return ws.raw[section][name]["modulation"]


def _module_roundtrip_artifact(rt) -> dict:
    return {"iso": fmt_mat(rt.iso.matrix), "permutation": rt.permutation}


def _rep_roundtrip_artifact(rt) -> dict:
    return {"components": {x: fmt_mat(T.matrix) for x, T in rt.iso.components.items()},
            "identity": rt.identity}


def cmd_convert(args, rep: Report) -> None:
    ws = _load(args)
    if args.mode == "rep-to-module":
        V = ws.get("representations", args.name)
        mname = args.modulation or _modulation_name_of(ws, "representations", args.name)
        A = ws.algebra_of(mname)
        N = iota_star(V, A)
        rep.add("convert", args.name, True, {"dim": N.dim})
        rep.artifacts["module"] = dump_module(N, mname)
    elif args.mode == "module-to-rep":
        N = ws.get("modules", args.name)
        mname = args.modulation or _modulation_name_of(ws, "modules", args.name)
        V = lax_check(pi_star(N, ws.algebra_of(mname)))
        rep.add("convert", args.name, True, {"dims": V.dims()})
        rep.artifacts["representation"] = dump_representation(V, mname)
    else:
        if args.name in ws.raw["modules"]:
            N = ws.get("modules", args.name)
            mname = args.modulation or _modulation_name_of(ws, "modules", args.name)
            rt = roundtrip_module(N, ws.algebra_of(mname))
            rep.add("roundtrip", args.name, True, {"permutation": rt.permutation})
            rep.artifacts["roundtrip"] = _module_roundtrip_artifact(rt)
        else:
            V = ws.get("representations", args.name)
            mname = args.modulation or _modulation_name_of(ws, "representations", args.name)
            rt = roundtrip_rep(V, ws.algebra_of(mname))
            rep.add("roundtrip", args.name, True, {"identity": rt.identity})
            found = find_isomorphism(rt.rebuilt, V, seed=args.seed) is not None
            rep.add("iso_search", args.name, found, {"seed": args.seed, "heuristic": not V.field.p})
            rep.artifacts["roundtrip"] = _rep_roundtrip_artifact(rt)


def _finite_type_findings(rep: Report, name: str, P: PresheafModule) -> bool:
    ft = finite_type(P)
    for o in ft.objects:
        rep.add("finite_type", f"{name}@{o.object}", o.passes,
                {"hom_dim": o.hom_dim, "n": o.n, "failing": list(o.failing)})
    return ft.verdict


def cmd_finite_type(args, rep: Report) -> None:
    ws = _load(args)
    P = ws.get("presheaf_modules", args.name)
    verdict = _finite_type_findings(rep, args.name, P)
    rep.artifacts["finite_type"] = verdict


def cmd_fg(args, rep: Report) -> None:
    ws = _load(args)
    if args.name in ws.raw["modules"]:
        N = ws.get("modules", args.name)
    else:
        N = presheaf_module_to_module(ws.get("presheaf_modules", args.name))
    if args.gens is not None:
        gens = [ws.vec(g) for g in json.loads(args.gens)]
        if any(len(g) != N.dim for g in gens):
            raise InputError("generator has the wrong length", location="--gens")
    else:
        gens = minimal_generators(N)
    ok = finitely_generated(N, gens)
    rep.add("finitely_generated", args.name, ok, {"generators": len(gens)})
    rep.artifacts["generators"] = [fmt_vec(N.field, g) for g in gens]


def _demo_separating(field: Field, rep: Report) -> None:
    d = separation_demo(field)
    rep.add("algebra_dim", "R[C]", d["algebra_dim"] == 4, {"dim": d["algebra_dim"]})
    for name in ("P_x", "P_y"):
        m = d["modules"][name]
        rep.add("finitely_generated", name, m["fg"] and m["generators"] == 1, {"generators": m["generators"]})
        rep.add("not_finite_type", name, not m["ft"], {"failing": m["failing"]})
    for name in ("R", "R+R"):
        m = d["modules"][name]
        rep.add("finite_type_and_fg", name, m["ft"] and m["fg"], {"generators": m["generators"]})
    rep.add("hom_zero", "Hom(k|_y, P_x|_y)", d["hom_dim"] == 0, {"dim": d["hom_dim"]})
    r = d["restrictions"]
    rep.add("restriction", "P_x|_x", r["P_x|_x"] == {"(x,1_x)": 1}, {"dims": r["P_x|_x"]})
    rep.add("restriction", "P_x|_y", r["P_x|_y"] == {"(y,1_y)": 0, "(x,alpha)": 1, "(x,beta)": 1},
            {"dims": r["P_x|_y"]})
    rep.add("restriction", "P_y|_x", r["P_y|_x"] == {"(x,1_x)": 2}, {"dims": r["P_y|_x"]})
    rep.artifacts["separating"] = {
        "P_x": {"fg": d["modules"]["P_x"]["fg"], "ft": d["modules"]["P_x"]["ft"], "hom_dim": d["hom_dim"]},
        "P_y": {"fg": d["modules"]["P_y"]["fg"], "ft": d["modules"]["P_y"]["ft"]},
    }


def _demo_group(n: int, field: Field, rep: Report) -> None:
    A = category_algebra(trivial_group_modulation(n, field).base, field)
    C = A.source.base
    ok = all(A.carrier.mult[A.index(a, 0)][A.index(b, 0)] == field.unit_vector(A.dim, A.index(C.compose(b, a), 0))
             for a in C.morphisms for b in C.morphisms)
    rep.add("group_algebra", f"kC{n}", ok and A.dim == n, {"dim": A.dim})
    rt = roundtrip_module(regular_right_module(A.carrier), A)
    rep.add("roundtrip_module", "regular", rt.permutation, {"permutation": rt.permutation})
    k = A.source.alg["*"]
    for name, s in (("trivial", field.one), ("sign", -field.one)):
        if name == "sign" and n % 2:
            continue
        comp = regular_right_module(k)
        maps = {m: (((s ** i,),),) for i, m in enumerate(C.morphisms) if i}
        V = lax_check(make_lax(A.source, k, {"*": comp}, maps))
        rrt = roundtrip_rep(V, A)
        rep.add("roundtrip_rep", name, rrt.identity, {"module_dim": iota_star(V, A).dim})
    rep.artifacts["algebra"] = A.describe()


def _demo_species(field: Field, rep: Report) -> None:
    M = species_a2(field)
    A = build_algebra(M)
    rep.add("algebra_dim", "species-a2", A.dim == 5, {"dim": A.dim})
    K = M.alg["y"]
    comps = {"x": regular_right_module(M.alg["x"]), "y": regular_right_module(K)}
    table = ((tuple(K.element(j) for j in range(K.dim))),)
    V = lax_check(make_lax(M, M.alg["x"], {"x": comps["x"], "y": comps["y"]}, {"alpha": (table[0],)}))
    rt = roundtrip_rep(V, A)
    rep.add("roundtrip_rep", "V", rt.identity, {"module_dim": iota_star(V, A).dim})
    mrt = roundtrip_module(regular_right_module(A.carrier), A)
    rep.add("roundtrip_module", "regular", True, {"permutation": mrt.permutation})
    rep.artifacts["algebra"] = A.describe()


def cmd_demo(args, rep: Report) -> None:
    field = RunOptions.from_args(args).field or QQ
    name = args.name
    if name in ("section5", "separating"):
        _demo_separating(field, rep)
    elif name.startswith("group:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise UnknownDemo(f"bad group order in {name!r}", demo=name) from None
        if n < 1:
            raise UnknownDemo("group order must be positive", demo=name)
        _demo_group(n, field, rep)
    elif name == "species-a2":
        _demo_species(field, rep)
    else:
        raise UnknownDemo(f"unknown demo {name!r}", demo=name)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modcat", description="Exact checks for modulated category algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="q or fp:<p>; overrides the workspace field")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("validate", parents=[common])
    s.add_argument("file")
    s = sub.add_parser("build-algebra", parents=[common])
    s.add_argument("file")
    s.add_argument("name")
    s.add_argument("--out")
    s = sub.add_parser("convert", parents=[common])
    s.add_argument("file")
    s.add_argument("mode", choices=("rep-to-module", "module-to-rep", "roundtrip"))
    s.add_argument("name")
    s.add_argument("--modulation", help="use this modulation instead of the one the entry names")
    s = sub.add_parser("finite-type", parents=[common])
    s.add_argument("file")
    s.add_argument("name")
    s = sub.add_parser("fg", parents=[common])
    s.add_argument("file")
    s.add_argument("name")
    s.add_argument("--gens", help="JSON list of generator vectors; default: greedy generators")
    s = sub.add_parser("demo", parents=[common])
    s.add_argument("name", help="section5 (alias separating) | group:<n> | species-a2")
    return p


COMMANDS = {"validate": cmd_validate, "build-algebra": cmd_build_algebra, "convert": cmd_convert,
            "finite-type": cmd_finite_type, "fg": cmd_fg, "demo": cmd_demo}


def run(argv: list[str] | None = None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    rep = Report(args.command)
    try:
        COMMANDS[args.command](args, rep)
    except InputError as e:
        rep.input_error = True
        rep.add_error("input", getattr(args, "file", args.command), e)
    except OSError as e:
        rep.input_error = True
        rep.add("input", getattr(args, "file", args.command), False, {"error": "OSError", "message": e.strerror or str(e)})
    except ValueError as e:
        rep.input_error = True
        rep.add("input", getattr(args, "file", args.command), False, {"error": "ValueError", "message": str(e)})
    except ModcatError as e:
        rep.add_error(args.command, getattr(args, "name", args.command), e)
    return rep.exit_code, render(rep, args.format)


def main(argv: list[str] | None = None) -> int:
    code, out = run(argv)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
