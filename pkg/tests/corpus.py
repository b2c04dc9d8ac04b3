"""Hand-analyzed sentences with known score values and truth status.

Each entry records, from a pencil-and-paper analysis:

* alpha_lo <= score <= alpha_hi (equal when the score is rational);
* truth of the sentence itself;
* truth of its delta-strengthening at delta = 1/4 and 1/10 (atoms
  shifted to t > delta or t >= delta);
* truth of its delta-weakening at the same deltas (shifted to -delta).

Strengthening truth follows from the score and the binding atom: with a
strict binding atom the strengthening holds iff score > delta, with a
nonstrict attained optimum iff score >= delta; likewise for weakening
at -delta.  grid_points / grid_tol tune the brute-force float oracle
used to cross-check the analysis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    text: str
    alpha_lo: Fraction
    alpha_hi: Fraction
    truth: bool
    strong_quarter: bool
    strong_tenth: bool
    weak_quarter: bool
    weak_tenth: bool
    grid_points: int = 257
    grid_tol: Fraction = Fraction(1, 16)


def _entry(name, text, alpha, truth, strong, weak=(True, True), points=257, tol=Fraction(1, 16)):
    if isinstance(alpha, tuple):
        lo, hi = alpha
    else:
        lo = hi = Fraction(alpha)
    return CorpusEntry(
        name=name,
        text=text,
        alpha_lo=Fraction(lo),
        alpha_hi=Fraction(hi),
        truth=truth,
        strong_quarter=strong[0],
        strong_tenth=strong[1],
        weak_quarter=weak[0],
        weak_tenth=weak[1],
        grid_points=points,
        grid_tol=tol,
    )


F = Fraction

CORPUS = [
    # linear, one quantifier
    _entry("exists_linear_true", "(exists (x 0 1) (> x 1/2))",
           F(1, 2), True, (True, True)),
    _entry("exists_linear_false", "(exists (x 0 2) (> x 3))",
           F(-1), False, (False, False), weak=(False, False)),
    _entry("boundary_nonstrict", "(exists (x 0 1) (>= (- x 1) 0))",
           F(0), True, (False, False)),
    _entry("boundary_strict", "(exists (x 0 1) (> (- x 1) 0))",
           F(0), False, (False, False)),
    _entry("forall_square_nonneg", "(forall (x -1 1) (>= (* x x) 0))",
           F(0), True, (False, False)),
    _entry("exists_tail_margin", "(exists (x 0 1) (> x 8/9))",
           F(1, 9), True, (False, True)),
    # polynomial shapes
    _entry("parabola_peak", "(exists (x 0 1) (> (- (* x (- 1 x)) 1/8) 0))",
           F(1, 8), True, (False, True)),
    _entry("parabola_floor", "(forall (x 0 1) (> (+ (* x (- 1 x)) 1/10) 0))",
           F(1, 10), True, (False, False)),
    _entry("wide_dome", "(exists (x -10 10) (> (- 100 (* x x)) 99))",
           F(1), True, (True, True), points=1025),
    _entry("odd_power_gap",
           "(exists (x -1 1) (> (- (pow x 3) (pow x 5)) 1/20))",
           (F(1359, 10000), F(1360, 10000)), True, (False, True)),
    _entry("bilinear_corner", "(forall (x -1 1) (forall (y -1 1) (>= (+ (* x y) 1) 0)))",
           F(0), True, (False, False), points=65),
    # min / max / abs plumbing
    _entry("min_crossing", "(exists (x 0 1) (> (min (+ x 1/2) (- 2 x)) 1))",
           F(1, 4), True, (False, True)),
    _entry("min_three_way", "(forall (x 0 2) (> (min x (min (- 2 x) 3/4)) -1/4))",
           F(1, 4), True, (False, True)),
    _entry("max_at_edge", "(exists (x -3 -1) (>= (max (* x x) (- x)) 9))",
           F(0), True, (False, False)),
    _entry("abs_vee_floor", "(forall (x -1 1) (>= (- (abs x) x) 0))",
           F(0), True, (False, False)),
    _entry("guard_band", "(exists (x -2 2) (or (> x 0) (> (- (- x) 1) 0)))",
           F(2), True, (True, True)),
    # connectives under quantifiers
    _entry("or_covers_line", "(forall (x 0 1) (or (> (- 1/2 x) 0) (> (- x 1/4) 0)))",
           F(1, 8), True, (False, True)),
    _entry("and_window", "(exists (x 0 1) (and (> x 1/3) (> (- 1 x) 1/3)))",
           F(1, 6), True, (False, True)),
    _entry("and_empty_window", "(exists (x 0 1) (and (> x 2/3) (> (- 1/3 x) 0)))",
           F(-1, 6), False, (False, False), weak=(True, False)),
    # equality atoms
    _entry("equality_hit", "(exists (x 0 2) (= (* x x) 2))",
           F(0), True, (False, False)),
    _entry("equality_miss", "(forall (x 0 1) (= x 1/2))",
           F(-1, 2), False, (False, False), weak=(False, False)),
    _entry("negated_equality", "(exists (x 0 1) (not (= x 2)))",
           F(2), True, (True, True)),
    # quantifier games
    _entry("pursuit_game",
           "(forall (x 0 1) (exists (y 0 1) (> (- 1/4 (abs (- x y))) 0)))",
           F(1, 4), True, (False, True), points=65),
    _entry("evasion_game",
           "(exists (x 0 1) (forall (y 0 1) (>= (- (abs (- x y)) 1/2) 0)))",
           F(-1, 2), False, (False, False), weak=(False, False), points=65),
    _entry("dependent_rim",
           "(forall (a 0 1) (exists (b a 1) (forall (c 0 b) (>= (- b c) 0))))",
           F(0), True, (False, False), points=33),
    _entry("nested_flat_floor",
           "(forall (x1 0 1) (exists (x2 0 x1) (and (> (exp x1) 0) (>= x2 0))))",
           F(0), True, (False, False), points=65),
    # division and square roots
    _entry("reciprocal_peak", "(exists (x 1 2) (> (/ 1 x) 2/3))",
           F(1, 3), True, (True, True)),
    _entry("reciprocal_floor", "(forall (x 2 3) (> (- 1 (/ 1 x)) 1/4))",
           F(1, 4), True, (False, True)),
    _entry("sqrt_reach", "(exists (x 0 4) (> (- (sqrt x) 3/2) 0))",
           F(1, 2), True, (True, True)),
    # transcendental entries
    _entry("pi_gap", "(exists (x 3 4) (> (- x pi) 0))",
           (F(858, 1000), F(859, 1000)), True, (True, True)),
    _entry("sin_peak", "(exists (x 0 2) (> (sin x) 99/100))",
           F(1, 100), True, (False, False)),
    _entry("cos_plateau", "(forall (x -1/2 1/2) (> (- (cos x) 4/5) 0))",
           (F(775, 10000), F(776, 10000)), True, (False, False)),
    _entry("atan_reach", "(exists (x 0 10) (> (atan x) 5/4))",
           (F(221, 1000), F(222, 1000)), True, (False, True), points=1025),
    _entry("atan_odd_cancel", "(forall (x -5 5) (>= (+ (atan x) (atan (- x))) 0))",
           F(0), True, (False, False), points=513),
    _entry("exp_dominates", "(forall (x 0 1) (> (- (exp x) x) 1/2))",
           F(1, 2), True, (True, True)),
    _entry("sin_cos_ridge", "(exists (x 0 3) (> (+ (sin x) (cos x)) 7/5))",
           (F(142, 10000), F(143, 10000)), True, (False, False), points=1025),
]

BY_NAME = {e.name: e for e in CORPUS}


def strong_truth(entry: CorpusEntry, delta: Fraction) -> bool:
    if delta == F(1, 4):
        return entry.strong_quarter
    if delta == F(1, 10):
        return entry.strong_tenth
    raise KeyError(delta)


def weak_truth(entry: CorpusEntry, delta: Fraction) -> bool:
    if delta == F(1, 4):
        return entry.weak_quarter
    if delta == F(1, 10):
        return entry.weak_tenth
    raise KeyError(delta)
