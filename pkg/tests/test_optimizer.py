"""Branch-and-bound enclosure of score terms: convergence on known
optima, determinism, traces, budgets, and edge-case domains."""

import json
from fractions import Fraction

from ddecide.formulas import const_term
from ddecide.optimizer import Enclosure, EvalBudget, Status, enclose, eval_closed
from ddecide.parser import parse_sentence
from ddecide.score import score_term

from corpus import BY_NAME


def closed_score(text):
    return score_term(parse_sentence(text))


def run(text, k=10, **kw):
    return eval_closed(closed_score(text), k, **kw)


# === pinned optima ===

def test_single_peak():
    value, enc = run("(exists (x 0 1) (> (- x (* x x)) 0))", k=10)
    assert enc.status is Status.CONVERGED
    assert abs(value.to_fraction() - Fraction(1, 4)) <= Fraction(1, 1 << 10)


def test_flat_minimum():
    value, enc = run("(forall (x -1 1) (>= (* x x) 0))", k=10)
    assert enc.status is Status.CONVERGED
    assert abs(value.to_fraction()) <= Fraction(1, 1 << 10)


def test_edge_maximum():
    value, enc = run("(exists (x 0 2) (> (- x 1) 0))", k=8)
    assert enc.status is Status.CONVERGED
    assert abs(value.to_fraction() - 1) <= Fraction(1, 1 << 8)


def test_nested_saddle():
    # min over x of max over y of (y - x) on the unit square is attained
    # at x = 1, y = 1 with value 0
    value, enc = run("(forall (x 0 1) (exists (y 0 1) (>= (- y x) 0)))", k=8)
    assert enc.status is Status.CONVERGED
    assert abs(value.to_fraction()) <= Fraction(1, 1 << 8)


def test_corpus_alpha_at_k8():
    for name in ("parabola_peak", "min_crossing", "abs_vee_floor", "pursuit_game"):
        entry = BY_NAME[name]
        value, enc = run(entry.text, k=8)
        assert enc.status is Status.CONVERGED, name
        tol = Fraction(1, 1 << 8)
        assert entry.alpha_lo - tol <= value.to_fraction() <= entry.alpha_hi + tol, name


# === determinism ===

def test_repeated_runs_are_identical():
    text = BY_NAME["min_three_way"].text
    t = closed_score(text)
    first = eval_closed(t, 9)
    second = eval_closed(t, 9)
    assert first[0] == second[0]
    assert first[1].interval == second[1].interval


def test_trace_is_reproducible():
    text = "(exists (x 0 1) (> (- x (* x x)) 0))"
    runs = []
    for _ in range(2):
        records = []
        eval_closed(closed_score(text), 8, trace=records.append)
        runs.append(records)
    assert runs[0] == runs[1]


# === trace structure ===

def test_trace_records_have_round_summaries():
    records = []
    eval_closed(closed_score("(exists (x 0 1) (> (- x (* x x)) 0))"), 8,
                trace=records.append)
    assert records
    for r in records:
        assert set(r) == {"level", "boxes", "lo", "hi"}
        assert r["level"] == 1
        assert r["boxes"] >= 1
        assert Fraction(r["lo"]) <= Fraction(r["hi"])
        json.dumps(r)  # every record is JSON-serializable as-is


def test_trace_bounds_narrow_monotonically():
    records = []
    eval_closed(closed_score("(exists (x 0 1) (> (- x (* x x)) 0))"), 8,
                trace=records.append)
    los = [Fraction(r["lo"]) for r in records]
    his = [Fraction(r["hi"]) for r in records]
    assert all(a <= b for a, b in zip(los, los[1:]))
    assert all(a >= b for a, b in zip(his, his[1:]))


def test_trace_levels_follow_nesting():
    records = []
    eval_closed(
        closed_score("(forall (x 0 1) (exists (y 0 1) (>= (- y x) 0)))"),
        6,
        trace=records.append,
    )
    levels = {r["level"] for r in records}
    assert levels == {1, 2}


# === budgets and failure modes ===

def test_tiny_split_budget_reports_exhaustion():
    value, enc = run(BY_NAME["pursuit_game"].text, k=12, max_splits=3)
    assert enc.status is Status.BUDGET_EXHAUSTED
    assert enc.interval is not None  # partial enclosure still reported


def test_depth_limit_reports_exhaustion():
    # one level is allowed, the nested second one trips the limit
    t = closed_score("(forall (x 0 1) (exists (y 0 1) (>= (- y x) 0)))")
    budget = EvalBudget(tolerance=Fraction(1, 256), precision=32, max_depth=1)
    enc = enclose(t, (), budget)
    assert enc.status is Status.BUDGET_EXHAUSTED


def test_domain_violation_carries_context():
    value, enc = run("(exists (x -1 1) (> (/ 1 x) 0))", k=6)
    assert value is None
    assert enc.status is Status.DOMAIN_VIOLATION
    assert "zero" in enc.violation


def test_sqrt_domain_violation_inside_quantifier():
    value, enc = run("(forall (x -2 -1) (> (sqrt x) 0))", k=6)
    assert enc.status is Status.DOMAIN_VIOLATION
    assert "zero" in enc.violation or "sqrt" in enc.violation


# === degenerate domains ===

def test_point_domain_evaluates_body_directly():
    value, enc = run("(exists (x 2 2) (> (* x x) 0))", k=10)
    assert enc.status is Status.CONVERGED
    assert abs(value.to_fraction() - 4) <= Fraction(1, 1 << 10)


def test_reversed_bounds_use_the_hull():
    # [1, 0] is treated as the hull [0, 1]
    forward, _ = run("(exists (x 0 1) (> (- x (* x x)) 0))", k=8)
    backward, _ = run("(exists (x 1 0) (> (- x (* x x)) 0))", k=8)
    assert abs(forward.to_fraction() - backward.to_fraction()) <= Fraction(1, 1 << 7)


def test_dependent_empty_range_collapses_to_point():
    # at x1 = 0 the range [0, x1] is the single point 0
    value, enc = run(
        "(forall (x1 0 1) (exists (x2 0 x1) (>= (- x2 x1) 0)))", k=8
    )
    assert enc.status is Status.CONVERGED
    assert abs(value.to_fraction()) <= Fraction(1, 1 << 8)


# === enclosure refinement ===

def test_enclose_converged_width_within_tolerance():
    t = closed_score("(exists (x 0 1) (> (- x (* x x)) 0))")
    budget = EvalBudget(tolerance=Fraction(1, 512), precision=40)
    enc = enclose(t, (), budget)
    assert enc.status is Status.CONVERGED
    assert enc.interval.width().to_fraction() <= Fraction(1, 512)


def test_eval_closed_widths_shrink_with_k():
    t = closed_score(BY_NAME["parabola_peak"].text)
    widths = []
    for k in (4, 8, 12):
        _, enc = eval_closed(t, k)
        widths.append(enc.interval.width().to_fraction())
        assert enc.status is Status.CONVERGED
        assert widths[-1] <= Fraction(1, 1 << k)
    assert widths[0] >= widths[1] >= widths[2]
