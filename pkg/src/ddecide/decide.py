"""Decision driver: answers "is the sentence true, or is its slack-
strengthened variant false?" for a rational slack ``delta > 0``.

The two honest answers overlap on purpose: for a sentence whose score
(see :mod:`.score`) sits exactly in the gray zone ``[0, delta]`` both
are correct, and the procedure may return either.  What it never does is
lie: ``True`` implies the sentence holds, ``DeltaFalse`` implies the
strengthening fails.

Mechanics: pick a dyadic ``delta'`` within ``delta/8`` of ``delta``
(largest grid-``2**-e`` value not exceeding ``delta``, with the smallest
``e`` giving ``2**-e <= delta/8``); pick the smallest ``k`` with
``2**-k < delta'/4``; evaluate the sentence's score to within ``2**-k``;
compare the midpoint against ``delta'/2``.  At or above the threshold
the score strictly exceeds ``delta'/4 > 0``, so the all-strict variant
and hence the sentence is true; below it the score is strictly under
``3*delta'/4 < delta``, so even the all-nonstrict variant of the
strengthening fails.

``decide_weaken`` is the mirrored question (is the sentence false, or
its weakening true?) and is literally ``decide_strengthen`` of the
defined negation with relabeled outcomes, sharing evidence ``delta'``
and ``k``.  ``decide_robust`` relabels the weakening answers as exact
ones; the promise that the input is delta-robust is the caller's and is
not checked.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .dyadic import Dyadic
from .formulas import Formula, negate, require_well_formed, validate_delta
from .optimizer import Enclosure, Status, TraceFn, eval_closed
from .score import score_term


class Outcome(Enum):
    TRUE = "True"
    DELTA_FALSE = "DeltaFalse"
    FALSE = "False"
    DELTA_TRUE = "DeltaTrue"
    ROBUST_TRUE = "RobustTrue"
    ROBUST_FALSE = "RobustFalse"
    UNKNOWN = "Unknown"


# exit-code buckets used by the CLI
AFFIRMATIVE = {Outcome.TRUE, Outcome.DELTA_TRUE, Outcome.ROBUST_TRUE}
NEGATIVE = {Outcome.FALSE, Outcome.DELTA_FALSE, Outcome.ROBUST_FALSE}


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    mode: str
    delta: Fraction
    delta_prime: Fraction
    k: int
    approx: Optional[Fraction]  # score midpoint; for weaken/robust, of the negation
    threshold: Fraction
    status: Status
    wall_time_ms: float
    violation: Optional[str] = None

    def to_json_dict(self) -> dict:
        out = {
            "outcome": self.outcome.value,
            "mode": self.mode,
            "delta": str(self.delta),
            "delta_prime": str(self.delta_prime),
            "k": self.k,
            "approx": None if self.approx is None else str(self.approx),
            "threshold": str(self.threshold),
            "status": self.status.value,
            "wall_time_ms": self.wall_time_ms,
        }
        if self.violation is not None:
            out["violation"] = self.violation
        return out


def _pow2_at_least(q: Fraction) -> int:
    """Smallest e with 2**e >= q, for q > 0, exactly."""
    n, d = q.numerator, q.denominator
    e = n.bit_length() - d.bit_length() - 1
    while ((d << e) if e >= 0 else d) < (n if e >= 0 else n << -e):
        e += 1
    return e


def dyadic_slack(delta: Fraction) -> Fraction:
    """Largest multiple of ``2**-e`` not exceeding delta, where ``2**-e``
    is the coarsest grid with ``2**-e <= delta/8``; then
    ``|result - delta| < delta/8`` strictly and the result is positive."""
    delta = validate_delta(delta)
    e = _pow2_at_least(8 / delta)
    return Fraction((delta.numerator << e) // delta.denominator, 1 << e)


def decision_bits(delta_prime: Fraction) -> int:
    """Smallest k with ``2**-k < delta_prime / 4`` strictly."""
    if delta_prime <= 0:
        raise ValueError("slack must be positive")
    q = 4 / delta_prime
    e = _pow2_at_least(q)
    # smallest k with 2**k > q strictly: bump when 2**e == q
    two_e = Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)
    return e + 1 if two_e == q else e


def decide_strengthen(
    phi: Formula,
    delta: Fraction,
    *,
    tolerance_bits: Optional[int] = None,
    max_splits: int = 1_000_000,
    trace: Optional[TraceFn] = None,
) -> Verdict:
    """``True`` (the sentence holds) or ``DeltaFalse`` (its delta-
    strengthening fails); ``Unknown`` only on budget exhaustion."""
    delta = validate_delta(delta)
    require_well_formed(phi)
    started = time.perf_counter()
    delta_prime = dyadic_slack(delta)
    k = tolerance_bits if tolerance_bits is not None else decision_bits(delta_prime)
    threshold = delta_prime / 2
    approx, enclosure = eval_closed(
        score_term(phi), k, max_splits=max_splits, trace=trace
    )
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    approx_frac = None if approx is None else approx.to_fraction()
    if enclosure.status is not Status.CONVERGED:
        outcome = Outcome.UNKNOWN
    elif approx_frac >= threshold:
        outcome = Outcome.TRUE
    else:
        outcome = Outcome.DELTA_FALSE
    return Verdict(
        outcome=outcome,
        mode="strengthen",
        delta=delta,
        delta_prime=delta_prime,
        k=k,
        approx=approx_frac,
        threshold=threshold,
        status=enclosure.status,
        wall_time_ms=round(elapsed_ms, 3),
        violation=enclosure.violation,
    )


_WEAKEN_FLIP = {
    Outcome.TRUE: Outcome.FALSE,
    Outcome.DELTA_FALSE: Outcome.DELTA_TRUE,
    Outcome.UNKNOWN: Outcome.UNKNOWN,
}

_ROBUST_RELABEL = {
    Outcome.FALSE: Outcome.ROBUST_FALSE,
    Outcome.DELTA_TRUE: Outcome.ROBUST_TRUE,
    Outcome.UNKNOWN: Outcome.UNKNOWN,
}


def _relabel(verdict: Verdict, mode: str, mapping: dict) -> Verdict:
    return Verdict(
        outcome=mapping[verdict.outcome],
        mode=mode,
        delta=verdict.delta,
        delta_prime=verdict.delta_prime,
        k=verdict.k,
        approx=verdict.approx,
        threshold=verdict.threshold,
        status=verdict.status,
        wall_time_ms=verdict.wall_time_ms,
        violation=verdict.violation,
    )


def decide_weaken(
    phi: Formula,
    delta: Fraction,
    *,
    tolerance_bits: Optional[int] = None,
    max_splits: int = 1_000_000,
    trace: Optional[TraceFn] = None,
) -> Verdict:
    """``False`` (the sentence fails) or ``DeltaTrue`` (its delta-
    weakening holds): the strengthen question asked of the negation."""
    inner = decide_strengthen(
        negate(phi),
        delta,
        tolerance_bits=tolerance_bits,
        max_splits=max_splits,
        trace=trace,
    )
    return _relabel(inner, "weaken", _WEAKEN_FLIP)


def decide_robust(
    phi: Formula,
    delta: Fraction,
    *,
    tolerance_bits: Optional[int] = None,
    max_splits: int = 1_000_000,
    trace: Optional[TraceFn] = None,
) -> Verdict:
    """Exact answers under the caller's (unchecked) promise that the
    sentence is delta-robust: a delta-weakening that holds then implies
    the sentence itself."""
    inner = decide_weaken(
        phi,
        delta,
        tolerance_bits=tolerance_bits,
        max_splits=max_splits,
        trace=trace,
    )
    return _relabel(inner, "robust", _ROBUST_RELABEL)
