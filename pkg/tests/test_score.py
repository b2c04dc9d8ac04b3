"""Score translation: structure, size bound, and agreement with the
brute-force reference on grids."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import score_at, score_term_at
from ddecide.formulas import (
    And,
    Apply,
    Exists,
    Forall,
    MAX2,
    MIN2,
    Or,
    Var,
    atom_ge,
    atom_gt,
    const_term,
    formula_size,
    make_apply,
    negate,
)
from ddecide.score import MaxOver, MinOver, format_score_term, score_size, score_term

from test_formulas import formulas_at, sentences


# === translation structure ===

def test_atom_translates_to_its_term():
    assert score_term(atom_gt(Var(0))) == Var(0)
    assert score_term(atom_ge(Var(0))) == Var(0)


def test_and_becomes_min():
    phi = And(atom_gt(Var(0)), atom_ge(const_term(1)))
    assert score_term(phi) == Apply(MIN2, (Var(0), const_term(1)))


def test_or_becomes_max():
    phi = Or(atom_gt(Var(0)), atom_ge(const_term(1)))
    assert score_term(phi) == Apply(MAX2, (Var(0), const_term(1)))


def test_exists_becomes_max_over():
    phi = Exists("x", const_term(0), const_term(1), atom_gt(Var(0)))
    got = score_term(phi)
    assert isinstance(got, MaxOver)
    assert got.lower == const_term(0)
    assert got.upper == const_term(1)
    assert got.body == Var(0)


def test_forall_becomes_min_over():
    phi = Forall("x", const_term(0), const_term(1), atom_ge(Var(0)))
    got = score_term(phi)
    assert isinstance(got, MinOver)
    assert got.body == Var(0)


def test_strictness_does_not_change_the_score():
    strict = And(atom_gt(Var(0)), atom_gt(const_term(2)))
    nonstrict = And(atom_ge(Var(0)), atom_ge(const_term(2)))
    assert score_term(strict) == score_term(nonstrict)


# === size bound ===

@given(sentences)
@settings(max_examples=200)
def test_score_size_at_most_twice_formula_size(phi):
    assert score_size(score_term(phi)) <= 2 * formula_size(phi)


# === agreement with the brute-force reference ===

@given(formulas_at(0, depth=2), st.integers(min_value=2, max_value=9))
@settings(max_examples=120, deadline=None)
def test_grid_score_matches_translated_term(phi, points):
    """score_at walks the formula, score_term_at walks the translation;
    on the same grid they visit the same values."""
    direct = score_at(phi, [], points=points)
    translated = score_term_at(score_term(phi), [], points=points)
    assert abs(direct - translated) < 1e-9


@given(formulas_at(0, depth=2), st.integers(min_value=2, max_value=9))
@settings(max_examples=120, deadline=None)
def test_negation_flips_the_score(phi, points):
    direct = score_at(phi, [], points=points)
    flipped = score_at(negate(phi), [], points=points)
    assert abs(direct + flipped) < 1e-9


# === printing ===

def test_format_score_term_renders_bound_operators():
    phi = Forall("x", const_term(0), const_term(1),
                 Exists("y", const_term(0), Var(0), atom_gt(Var(0))))
    text = format_score_term(score_term(phi))
    assert "min" in text and "max" in text
    assert "x" in text and "y" in text


def test_format_score_term_plain_term():
    text = format_score_term(make_apply(MIN2, (Var(0), const_term(Fraction(1, 2)))))
    assert "1/2" in text
