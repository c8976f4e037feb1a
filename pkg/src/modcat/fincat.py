"""Finite categories given by explicit composition tables.

Morphisms are string labels; ``compose(g, f)`` is ``g ∘ f`` (first ``f``,
then ``g``). Canonical orders (objects, morphisms) are the construction
orders and every downstream grading keys on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import (CyclicQuiver, DomCodMismatch, IdentityLawViolation, MissingComposite,
                     NonAssociative, UnknownObject)


@dataclass(frozen=True, eq=True)
class FiniteCategory:
    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    dom: dict[str, str]
    cod: dict[str, str]
    identity: dict[str, str]
    table: dict[tuple[str, str], str] = field(repr=False)

    def compose(self, g: str, f: str) -> str:
        try:
            return self.table[(g, f)]
        except KeyError:
            raise MissingComposite(f"{g} ∘ {f} is not defined", pair=[g, f]) from None

    def composable(self, g: str, f: str) -> bool:
        return self.dom[g] == self.cod[f]

    def composable_pairs(self) -> list[tuple[str, str]]:
        """All (g, f) with dom g = cod f, ordered by f then g."""
        return [(g, f) for f in self.morphisms for g in self.morphisms if self.composable(g, f)]

    def composable_triples(self) -> list[tuple[str, str, str]]:
        """All (h, g, f) composable as h ∘ g ∘ f."""
        return [(h, g, f) for f in self.morphisms for g in self.morphisms for h in self.morphisms
                if self.composable(g, f) and self.composable(h, g)]

    def hom(self, x: str, y: str) -> list[str]:
        return [m for m in self.morphisms if self.dom[m] == x and self.cod[m] == y]

    def into(self, x: str) -> list[str]:
        return [m for m in self.morphisms if self.cod[m] == x]

    def out_of(self, x: str) -> list[str]:
        return [m for m in self.morphisms if self.dom[m] == x]

    def is_identity(self, m: str) -> bool:
        return self.identity[self.dom[m]] == m

    def index(self, m: str) -> int:
        return self.morphisms.index(m)

    def check_object(self, x: str) -> None:
        if x not in self.objects:
            raise UnknownObject(f"no object {x!r}", object=x)

    def opposite(self) -> "FiniteCategory":
        return FiniteCategory(self.objects, self.morphisms, dict(self.cod), dict(self.dom),
                              dict(self.identity),
                              {(f, g): h for (g, f), h in self.table.items()})

    def describe(self) -> dict:
        """Plain-data form matching the workspace category schema."""
        return {
            "objects": list(self.objects),
            "morphisms": [{"id": m, "dom": self.dom[m], "cod": self.cod[m]} for m in self.morphisms],
            "identities": dict(self.identity),
            "composition": [[g, f, self.table[(g, f)]] for g, f in self.composable_pairs()],
        }


def validate_category(objects: Sequence[str],
                      morphisms: Sequence[tuple[str, str, str]],
                      identities: dict[str, str],
                      composition: Iterable[tuple[str, str, str]]) -> FiniteCategory:
    """Build a category from raw tables, checking every axiom exhaustively."""
    objects = tuple(objects)
    if len(set(objects)) != len(objects):
        raise DomCodMismatch("duplicate object labels", objects=list(objects))
    labels, dom, cod = [], {}, {}
    for m, d, c in morphisms:
        if m in dom:
            raise DomCodMismatch(f"duplicate morphism label {m!r}", morphism=m)
        if d not in objects or c not in objects:
            raise DomCodMismatch(f"{m} has an unknown endpoint", morphism=m, dom=d, cod=c)
        labels.append(m)
        dom[m], cod[m] = d, c
    for x in objects:
        if x not in identities:
            raise IdentityLawViolation(f"object {x} has no identity", object=x)
        i = identities[x]
        if i not in dom or dom[i] != x or cod[i] != x:
            raise DomCodMismatch(f"identity of {x} is not an endomorphism of {x}", object=x, morphism=i)
    table = {}
    for g, f, h in composition:
        for m in (g, f, h):
            if m not in dom:
                raise DomCodMismatch(f"composition mentions unknown morphism {m!r}", morphism=m)
        if dom[g] != cod[f]:
            raise DomCodMismatch(f"{g} ∘ {f} listed but not composable", pair=[g, f])
        if dom[h] != dom[f] or cod[h] != cod[g]:
            raise DomCodMismatch(f"{g} ∘ {f} = {h} has wrong endpoints", pair=[g, f], result=h)
        if (g, f) in table and table[(g, f)] != h:
            raise DomCodMismatch(f"{g} ∘ {f} listed twice", pair=[g, f])
        table[(g, f)] = h
    cat = FiniteCategory(objects, tuple(labels), dom, cod, dict(identities), table)
    for g, f in cat.composable_pairs():
        if (g, f) not in table:
            raise MissingComposite(f"missing composite {g} ∘ {f}", pair=[g, f])
    for m in cat.morphisms:
        if table[(m, identities[dom[m]])] != m:
            raise IdentityLawViolation(f"{m} ∘ 1 ≠ {m}", morphism=m, side="right")
        if table[(identities[cod[m]], m)] != m:
            raise IdentityLawViolation(f"1 ∘ {m} ≠ {m}", morphism=m, side="left")
    for h, g, f in cat.composable_triples():
        if table[(h, table[(g, f)])] != table[(table[(h, g)], f)]:
            raise NonAssociative(f"({h} ∘ {g}) ∘ {f} ≠ {h} ∘ ({g} ∘ {f})", triple=[h, g, f])
    return cat


def category_from_description(desc: dict) -> FiniteCategory:
    return validate_category(
        desc["objects"],
        [(m["id"], m["dom"], m["cod"]) for m in desc["morphisms"]],
        desc["identities"],
        [tuple(t) for t in desc["composition"]],
    )


# -- slices -----------------------------------------------------------------

@dataclass(frozen=True)
class SliceCategory:
    """``C/x``: objects (w, α: w → x), morphisms γ with α = β ∘ γ."""

    base: FiniteCategory
    apex: str
    category: FiniteCategory
    points: dict[str, tuple[str, str]]     # slice object -> (w, α)
    projection: dict[str, str]             # slice morphism -> base morphism
    terminal: str

    def object_label(self, alpha: str) -> str:
        return slice_object_label(self.base.dom[alpha], alpha)

    def project_object(self, label: str) -> str:
        return self.points[label][0]


def slice_object_label(w: str, alpha: str) -> str:
    return f"({w},{alpha})"


def slice_category(cat: FiniteCategory, x: str) -> SliceCategory:
    cat.check_object(x)
    arrows = cat.into(x)
    points = {slice_object_label(cat.dom[a], a): (cat.dom[a], a) for a in arrows}
    objects = list(points)
    morphs, dom, cod, proj = [], {}, {}, {}
    identities = {}
    for gamma in cat.morphisms:
        for s in objects:
            for t in objects:
                (w, a), (v, b) = points[s], points[t]
                if cat.dom[gamma] == w and cat.cod[gamma] == v and cat.compose(b, gamma) == a:
                    lab = f"{gamma}:{s}->{t}"
                    morphs.append(lab)
                    dom[lab], cod[lab], proj[lab] = s, t, gamma
                    if s == t and gamma == cat.identity[w]:
                        identities[s] = lab
    by_key = {(proj[m], dom[m], cod[m]): m for m in morphs}
    comp = []
    for g in morphs:
        for f in morphs:
            if dom[g] == cod[f]:
                comp.append((g, f, by_key[(cat.compose(proj[g], proj[f]), dom[f], cod[g])]))
    sc = validate_category(objects, [(m, dom[m], cod[m]) for m in morphs], identities, comp)
    terminal = slice_object_label(x, cat.identity[x])
    for s in objects:
        if len(sc.hom(s, terminal)) != 1:
            raise AssertionError(f"{terminal} is not terminal in {x}-slice")
    return SliceCategory(cat, x, sc, points, proj, terminal)


# -- quivers and free categories --------------------------------------------

@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]  # (label, src, tgt)

    def __post_init__(self):
        out = {v: [a for a in self.arrows if a[1] == v] for v in self.vertices}
        state = {v: 0 for v in self.vertices}

        def visit(v):
            state[v] = 1
            for lab, _, t in out[v]:
                if state[t] == 1:
                    raise CyclicQuiver(f"arrow {lab} closes a directed cycle", arrow=lab)
                if state[t] == 0:
                    visit(t)
            state[v] = 2

        for a in self.arrows:
            if a[1] not in state or a[2] not in state:
                raise DomCodMismatch(f"arrow {a[0]} has an unknown endpoint", arrow=a[0])
        for v in self.vertices:
            if state[v] == 0:
                visit(v)


def path_label(arrows: Sequence[str]) -> str:
    """Label of the path a1 then a2 ... : ``an·...·a1`` (composition order)."""
    return "·".join(reversed(arrows))


def free_category(q: Quiver) -> FiniteCategory:
    """All directed paths of an acyclic quiver, composed by concatenation."""
    paths: list[tuple[str, str, tuple[str, ...]]] = []   # (src, tgt, arrows)

    def extend(src, v, arrows):
        paths.append((src, v, arrows))
        for lab, s, t in q.arrows:
            if s == v:
                extend(src, t, arrows + (lab,))

    for v in q.vertices:
        extend(v, v, ())
    paths.sort(key=lambda p: (len(p[2]), q.vertices.index(p[0]), p[2]))

    def name(src, arrows):
        return path_label(arrows) if arrows else f"1_{src}"

    index = {(s, a): name(s, a) for s, _, a in paths}
    comp = []
    for gs, _, ga in paths:
        for fs, ft, fa in paths:
            if gs == ft:
                comp.append((name(gs, ga), name(fs, fa), index[(fs, fa + ga)]))
    return validate_category(q.vertices, [(name(s, a), s, t) for s, t, a in paths],
                             {v: f"1_{v}" for v in q.vertices}, comp)


# -- standard small categories ----------------------------------------------

def terminal_category() -> FiniteCategory:
    return validate_category(["*"], [("1_*", "*", "*")], {"*": "1_*"}, [("1_*", "1_*", "1_*")])


def cyclic_group_category(n: int) -> FiniteCategory:
    """One object ``*``; morphisms ``1, g, g^2, ...`` with g^n = 1."""
    if n < 1:
        raise ValueError("group order must be positive")

    def lab(i):
        return "1" if i == 0 else ("g" if i == 1 else f"g^{i}")

    morphs = [(lab(i), "*", "*") for i in range(n)]
    comp = [(lab(i), lab(j), lab((i + j) % n)) for i, j in product(range(n), repeat=2)]
    return validate_category(["*"], morphs, {"*": "1"}, comp)


def parallel_arrows_category() -> FiniteCategory:
    """x ⇉ y with arrows ``alpha`` and ``beta``."""
    return free_category(Quiver(("x", "y"), (("alpha", "x", "y"), ("beta", "x", "y"))))


def path_category(n: int) -> FiniteCategory:
    """Free category on the linear quiver v1 → v2 → ... → vn (type A_n)."""
    verts = tuple(f"v{i}" for i in range(1, n + 1))
    arrows = tuple((f"a{i}", verts[i - 1], verts[i]) for i in range(1, n))
    return free_category(Quiver(verts, arrows))
