#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Árboles, sintaxis parentizada, fragmentos y forma prefija.
"""

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).resolve().parents[1]))

import random

import pytest
from hypothesis import given, settings, strategies as st

from compositor.errors import CoordinationError, FragmentError, TermSyntaxError, UndefinedCompositionError
from compositor.generators import all_bracketings, random_term
from compositor.term import (
    Atom,
    DollarTerm,
    LanguageFragment,
    Leaf,
    Node,
    PrefixBracketing,
    concat,
    depth,
    from_prefix_form,
    leaf,
    leaf_sequence,
    make_term,
    parse_infix,
    parse_polish,
    render_infix,
    render_term,
    right_nest,
    right_spine,
    subterms,
    to_prefix_form,
)

SURFACE = [
    ("(high.seas)", Node(leaf("high"), leaf("seas"))),
    ("((a.b).c)", Node(Node(leaf("a"), leaf("b")), leaf("c"))),
    ("(a.(b.c))", Node(leaf("a"), Node(leaf("b"), leaf("c")))),
    ("wall", leaf("wall")),
    ("( a . b )", Node(leaf("a"), leaf("b"))),
]

BAD_SURFACE = ["", "(a.b", "(a.b))", "a.b", "(a b)", "($.a)", "()"]

PREFIX = [
    ("a+(b&c)", PrefixBracketing.RIGHT, "(+.(a.(&.(b.c))))"),
    ("a+(b&c)", PrefixBracketing.LEFT, "((+.a).((&.b).c))"),
    ("a+b", PrefixBracketing.RIGHT, "(+.(a.b))"),
    ("(a+b)&c", PrefixBracketing.RIGHT, "(&.(+.(a.(b.c))))"),
    ("a", PrefixBracketing.RIGHT, "a"),
]


@st.composite
def terms(draw):
    seed = draw(st.integers(min_value=0, max_value=10**6))
    return random_term(random.Random(seed), max_leaves=6)


# =========================
# Sintaxis de superficie
# =========================
def test_make_term_examples():
    print("\n==============================")
    print("🌳 SINTAXIS PARENTIZADA")
    print("==============================\n")
    for text, expected in SURFACE:
        got = make_term(text)
        print(f"✅ {text!r} → {render_term(got)}")
        assert got == expected


def test_bracketing_is_not_associative():
    assert make_term("((a.b).c)") != make_term("(a.(b.c))")
    assert leaf_sequence(make_term("((a.b).c)")) == leaf_sequence(make_term("(a.(b.c))"))


@pytest.mark.parametrize("text", BAD_SURFACE)
def test_make_term_rejects_malformed(text):
    with pytest.raises(TermSyntaxError) as exc:
        make_term(text)
    assert exc.value.position is not None
    print(f"❌ {text!r}: {exc.value}")


def test_unclosed_paren_reports_end_position():
    with pytest.raises(TermSyntaxError) as exc:
        make_term("(a.b")
    assert exc.value.position == 4


@given(terms())
@settings(max_examples=200, deadline=None)
def test_render_then_parse_is_identity(t):
    assert make_term(render_term(t)) == t


@pytest.mark.parametrize("name", ["a.b", "a$", "(x", "a b", ""])
def test_atom_rejects_reserved_characters(name):
    with pytest.raises(TermSyntaxError):
        Atom(name)


def test_dollar_term_renders_with_marker():
    assert str(DollarTerm(make_term("(high.seas)"))) == "((high.seas).$)"


# =========================
# Recorridos
# =========================
def test_subterms_post_order_and_depth():
    t = make_term("((a.b).c)")
    assert [render_term(s) for s in subterms(t)] == ["a", "b", "(a.b)", "c", "((a.b).c)"]
    assert depth(t) == 2
    assert depth(leaf("a")) == 0


def test_catalan_counts_of_bracketings():
    assert len(all_bracketings(["a", "b", "c"])) == 2
    assert len(all_bracketings(["a", "b", "c", "d"])) == 5
    trees = all_bracketings(["a", "b", "c", "d", "e"])
    assert len(trees) == 14 and len(set(trees)) == 14
    assert all([x.name for x in leaf_sequence(t)] == ["a", "b", "c", "d", "e"] for t in trees)


def test_right_nest_and_spine_are_inverse():
    items = [leaf(x) for x in "wxyz"]
    t = right_nest(items)
    assert render_term(t) == "(w.(x.(y.z)))"
    assert right_spine(t) == items


# =========================
# Fragmentos
# =========================
def test_from_terms_derives_atoms_and_pairs():
    frag = LanguageFragment.from_terms([make_term(s) for s in ["wall", "seas", "high", "(high.wall)", "(high.seas)"]])
    assert [a.name for a in frag.atoms] == ["wall", "seas", "high"]
    assert len(frag) == 5 and len(frag.allowed_pairs) == 2
    assert frag.right_arguments[leaf("high")] == (leaf("wall"), leaf("seas"))
    assert frag.right_arguments[leaf("wall")] == ()


def test_closure_of_is_downward_closed():
    frag = LanguageFragment.closure_of([make_term("((a.b).(c.a))")])
    for t in frag.terms:
        for s in subterms(t):
            assert s in frag
    assert render_term(frag.terms[-1]) == "((a.b).(c.a))"


def test_fragment_rejects_pair_outside():
    a, b = leaf("a"), leaf("b")
    with pytest.raises(FragmentError):
        LanguageFragment((Atom("a"), Atom("b")), (a, b), ((a, b),))


def test_fragment_rejects_missing_subterm():
    with pytest.raises(FragmentError):
        LanguageFragment.from_terms([make_term("(a.b)")])


def test_concat_is_partial():
    frag = LanguageFragment.closure_of([make_term("(high.seas)"), leaf("wall")])
    assert concat(frag, leaf("high"), leaf("seas")) == make_term("(high.seas)")
    with pytest.raises(UndefinedCompositionError):
        concat(frag, leaf("high"), leaf("wall"))
    with pytest.raises(UndefinedCompositionError):
        concat(frag, leaf("low"), leaf("seas"))


# =========================
# Forma prefija
# =========================
def test_infix_precedence():
    assert parse_infix("a+b&c") == parse_infix("a+(b&c)")
    assert render_infix(parse_infix("(a+b)&c")) == "(a+b)&c"


@pytest.mark.parametrize("infix,bracketing,expected", PREFIX)
def test_to_prefix_form(infix, bracketing, expected):
    t = to_prefix_form(parse_infix(infix), bracketing)
    assert render_term(t) == expected
    assert from_prefix_form(t, bracketing) == parse_infix(infix)


def test_partial_prefix_is_not_an_expression():
    with pytest.raises(CoordinationError):
        from_prefix_form(make_term("(b.c)"))
    with pytest.raises(CoordinationError):
        from_prefix_form(make_term("(&.b)"))
    with pytest.raises(CoordinationError):
        from_prefix_form(make_term("(+.a)"), PrefixBracketing.LEFT)


def test_parse_polish_reads_one_expression():
    expr, nxt = parse_polish(["a", "&", "b", "c"])
    assert expr == parse_infix("a") and nxt == 1
    expr, nxt = parse_polish(["a", "&", "b", "c"], 1)
    assert expr == parse_infix("b&c") and nxt == 4


def test_leaf_helper():
    assert isinstance(leaf("x"), Leaf)
