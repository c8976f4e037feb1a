from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modcat.errors import CyclicQuiver, IdentityLawViolation, MissingComposite, NonAssociative
from modcat.fincat import (Quiver, cyclic_group_category, free_category, parallel_arrows_category,
                           path_category, slice_category, terminal_category, validate_category)


def test_parallel_arrows():
    C = parallel_arrows_category()
    assert C.morphisms == ("1_x", "1_y", "alpha", "beta")
    assert C.hom("x", "y") == ["alpha", "beta"]


def test_c2_as_category():
    C = validate_category(["*"], [("1", "*", "*"), ("g", "*", "*")], {"*": "1"},
                          [("1", "1", "1"), ("1", "g", "g"), ("g", "1", "g"), ("g", "g", "1")])
    assert C.compose("g", "g") == "1"


def test_non_associative_rejected():
    comp = [("1", "1", "1"), ("1", "a", "a"), ("1", "b", "b"), ("a", "1", "a"), ("b", "1", "b"),
            ("a", "a", "b"), ("a", "b", "a"), ("b", "a", "b"), ("b", "b", "a")]
    with pytest.raises(NonAssociative) as e:
        validate_category(["*"], [("1", "*", "*"), ("a", "*", "*"), ("b", "*", "*")], {"*": "1"}, comp)
    assert len(e.value.witness["triple"]) == 3


def test_missing_composite_and_identity_law():
    with pytest.raises(MissingComposite):
        validate_category(["*"], [("1", "*", "*"), ("g", "*", "*")], {"*": "1"},
                          [("1", "1", "1"), ("1", "g", "g"), ("g", "1", "g")])
    with pytest.raises(IdentityLawViolation):
        validate_category(["*"], [("1", "*", "*"), ("g", "*", "*")], {"*": "1"},
                          [("1", "1", "1"), ("1", "g", "1"), ("g", "1", "g"), ("g", "g", "1")])


def test_slices_of_parallel_arrows():
    C = parallel_arrows_category()
    Sx = slice_category(C, "x")
    assert Sx.category.objects == ("(x,1_x)",) and len(Sx.category.morphisms) == 1
    Sy = slice_category(C, "y")
    assert set(Sy.category.objects) == {"(x,alpha)", "(x,beta)", "(y,1_y)"}
    assert len(Sy.category.morphisms) == 5
    assert Sy.terminal == "(y,1_y)"


def test_slice_enumeration_oracle():
    # slice morphisms (w,a) -> (v,b) are gammas with b∘gamma = a, counted directly
    C = path_category(3)
    for x in C.objects:
        S = slice_category(C, x)
        into = C.into(x)
        expected = sum(1 for a, b, g in product(into, into, C.morphisms)
                       if C.dom[g] == C.dom[a] and C.cod[g] == C.dom[b] and C.compose(b, g) == a)
        assert len(S.category.morphisms) == expected


def test_slice_at_source_is_terminal():
    S = slice_category(path_category(3), "v1")
    assert len(S.category.objects) == 1 and len(S.category.morphisms) == 1


def test_free_categories():
    assert len(free_category(Quiver(("x", "y"), (("a", "x", "y"),))).morphisms) == 3
    assert len(path_category(3).morphisms) == 6
    assert len(path_category(4).morphisms) == 10
    with pytest.raises(CyclicQuiver):
        Quiver(("x",), (("loop", "x", "x"),))


@given(st.integers(1, 6))
def test_cyclic_groups_and_opposite(n):
    C = cyclic_group_category(n)
    assert len(C.morphisms) == n
    op = C.opposite()
    for g, f in C.composable_pairs():
        assert op.compose(f, g) == C.compose(g, f)
    assert op.opposite() == C


@given(st.integers(1, 5))
def test_path_category_hom_counts(n):
    C = path_category(n)
    assert len(C.morphisms) == n * (n + 1) // 2
    for i, x in enumerate(C.objects):
        assert len(slice_category(C, x).category.objects) == i + 1


def test_describe_roundtrip():
    from modcat.fincat import category_from_description
    C = parallel_arrows_category()
    assert category_from_description(C.describe()) == C
    assert terminal_category().morphisms == ("1_*",)
