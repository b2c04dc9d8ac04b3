"""Compilation of formulas into a single min/max score term.

The score of a formula is the term obtained by keeping atom terms,
turning ``and`` into a binary ``min``, ``or`` into ``max``, an
existential quantifier into a ``max`` over its range and a universal one
into a ``min`` over its range.  The score ties the formula's truth to a
single real value: for a sentence ``phi`` with score ``a``,

* the all-nonstrict variant of ``phi`` is true  iff  ``a >= 0``,
* the all-strict variant of ``phi`` is true     iff  ``a > 0``,

and shifting every atom by a slack ``d`` (strengthening) shifts those
comparisons to ``a >= d`` / ``a > d``.  This is what lets a numeric
enclosure of one closed term answer the decision query.

Score terms extend ordinary terms with two bound operators,
:class:`MinOver` and :class:`MaxOver`; range bounds live in the
enclosing scope, the body's De Bruijn scope is extended by one.  A range
whose bounds arrive out of order at evaluation time denotes its hull.

The translation grows nothing: each formula node maps to at most one
score node, so the score term's node count never exceeds (and in
practice is below) the formula's.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formulas import (
    And,
    Apply,
    Atomic,
    Exists,
    Forall,
    Formula,
    MAX2,
    MIN2,
    Or,
    Term,
    Var,
    term_size,
)


@dataclass(frozen=True)
class MinOver:
    name: str
    lower: "ScoreTerm"
    upper: "ScoreTerm"
    body: "ScoreTerm"


@dataclass(frozen=True)
class MaxOver:
    name: str
    lower: "ScoreTerm"
    upper: "ScoreTerm"
    body: "ScoreTerm"


ScoreTerm = Var | Apply | MinOver | MaxOver


def score_term(phi: Formula) -> ScoreTerm:
    """Score of a formula; free De Bruijn indices follow the formula's."""
    if isinstance(phi, Atomic):
        return phi.atom.term
    if isinstance(phi, And):
        return Apply(MIN2, (score_term(phi.left), score_term(phi.right)))
    if isinstance(phi, Or):
        return Apply(MAX2, (score_term(phi.left), score_term(phi.right)))
    if isinstance(phi, Exists):
        return MaxOver(phi.name, phi.lower, phi.upper, score_term(phi.body))
    return MinOver(phi.name, phi.lower, phi.upper, score_term(phi.body))


def score_size(t: ScoreTerm) -> int:
    if isinstance(t, (MinOver, MaxOver)):
        return 1 + score_size(t.lower) + score_size(t.upper) + score_size(t.body)
    if isinstance(t, Apply):
        return 1 + sum(score_size(a) for a in t.args)
    return term_size(t)


def _format(t: ScoreTerm, names: tuple) -> str:
    from .printer import format_term  # local import to avoid a cycle

    if isinstance(t, MinOver) or isinstance(t, MaxOver):
        op = "min-over" if isinstance(t, MinOver) else "max-over"
        lo = _format(t.lower, names)
        hi = _format(t.upper, names)
        body = _format(t.body, (t.name,) + names)
        return f"({op} ({t.name} {lo} {hi}) {body})"
    if isinstance(t, Apply) and any(
        isinstance(a, (MinOver, MaxOver)) for a in _walk_args(t)
    ):
        parts = " ".join(_format(a, names) for a in t.args)
        head = {"min": "min", "max": "max"}.get(t.fn.name, t.fn.name)
        return f"({head} {parts})"
    return format_term(t, list(names))


def _walk_args(t: Apply):
    for a in t.args:
        yield a
        if isinstance(a, Apply):
            yield from _walk_args(a)


def format_score_term(t: ScoreTerm) -> str:
    """Debug printer, same S-expression syntax as input terms, with
    ``(min-over (x lo hi) body)`` / ``(max-over ...)`` for the bound operators."""
    return _format(t, ())
