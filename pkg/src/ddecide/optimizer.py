"""Rigorous evaluation of score terms: interval composition plus
branch-and-bound for the ``min``/``max`` bound operators.

:func:`enclose` returns a sound enclosure of the set of values a score
term takes over a box environment; :func:`eval_closed` drives it to a
requested width ``2**-k`` for closed terms and returns the enclosure's
midpoint, which is then within ``2**-k`` of the exact value.

For a bound operator (say a ``max`` over ``y`` in ``[u, v]`` under outer
environment ``E``) the algorithm follows four steps:

1. enclose the bounds, ``U`` for ``u`` and ``V`` for ``v`` over ``E``,
   and take the working range ``Y`` as their hull -- this also gives
   out-of-order ranges their hull reading;
2. upper bound: cover ``Y`` with subintervals, enclose the body over
   each, take the largest ``hi``; subintervals whose ``hi`` cannot beat
   the verified lower bound are dropped;
3. lower bound: the least body ``lo`` over all subintervals ever seen
   (the hull covers every realized range, so the maximum is at least
   that inf), sharpened in two ways that stay valid when the range
   depends on outer variables.  The segment
   ``C = [min(U.hi, V.hi), max(U.lo, V.lo)]``, when nonempty, lies
   inside every realized range; subintervals inside ``C`` contribute
   their body ``lo`` directly, and, when the body is quantifier-free,
   the body evaluated at sample points of ``C`` contributes too (the
   first sample is ``C``'s midpoint, later ones are kept-subinterval
   midpoints clamped into ``C``).  Sampling a quantified body would
   spawn a whole nested optimization per probe for information the
   inside-``C`` subintervals already deliver, so it is skipped.  When
   ``C`` is empty the covering bound alone drives convergence;
4. refine in rounds -- split every surviving subinterval at its
   midpoint (just the best one when only the lower endpoint is wanted,
   see below) -- until the gap is within this level's tolerance share,
   refinement stalls, or the budget runs out.  Round enclosures are
   intersected, so the reported gap never widens.  When the body is
   itself a bound operator, each nested evaluation is told the current
   verified lower bound: a nested call whose value provably cannot beat
   it stops refining at once, since its subinterval will be pruned
   regardless of the exact value.

A nested evaluation is also told which of its endpoints the caller
actually reads, because the two are combined very differently.  The
covering upper bound consumes only each subinterval's body ``hi`` --
for a nested minimum that is its witness side, settled by homing in on
one good point rather than covering its whole range -- so covering
evaluations refine that endpoint alone.  The verified lower bound
comes from the single best subinterval inside ``C``, so each level
keeps one fully-refined chain (the current best subinterval's nested
call refines both endpoints) while every other nested call stays
one-sided.  Requesting one endpoint never costs soundness: every
returned enclosure still contains the exact value set, the other
endpoint is merely looser.  Without this, each subinterval of an
alternating tower would pay for a full cover of every level below it,
and towers would cost the product of the per-level cover sizes instead
of roughly their sum.  When ``C`` is unavailable the lower bound needs
every subinterval's ``lo``, so the call reverts to refining both
endpoints everywhere.

Nested levels receive a third of their parent's tolerance (floored by an
adaptive share of the parent's current gap, so early rounds stay cheap);
each level counts its own splits against ``budget.max_splits``.
Evaluation is sequential and deterministic: identical inputs produce
identical enclosures, and a trace callback, when given, sees one record
per refinement round.

A round that improves the gap by less than a sixty-fourth of it ends
the call once that happens twice in a row with every subinterval
already narrower than the gap (while one is wider, halving it can
still move the bounds, so non-improvement is not yet evidence of a
floor; a call refining its lower endpoint only gates on the width of
the chain it refines instead, since the subintervals it leaves unsplit
are wide by design).  Over a pointlike environment a floor means the precision
limit was reached and the caller retries with more bits; over a wider
environment the gap carries an irreducible image-width component that
only the caller's own splitting can reduce, so lingering would burn
doubling rounds for nothing -- nested calls hit this constantly.
Domain violations (division by a zero-straddling interval, square root
below zero) abort the whole evaluation with the offending subterm's
path.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from .dyadic import Dyadic, dmax, dmin
from .errors import DomainViolationError
from .intervals import (
    Interval,
    hull,
    intersect,
    ival_abs,
    ival_add,
    ival_atan,
    ival_cos,
    ival_div,
    ival_exp,
    ival_max,
    ival_min,
    ival_mul,
    ival_neg,
    ival_pow,
    ival_sin,
    ival_sqrt,
    ival_sub,
    pi_enclosure,
    round_out,
)
from .score import MaxOver, MinOver, ScoreTerm
from .formulas import Apply, Var


class Status(Enum):
    CONVERGED = "converged"
    BUDGET_EXHAUSTED = "budget_exhausted"
    DOMAIN_VIOLATION = "domain_violation"


@dataclass(frozen=True)
class EvalBudget:
    """Effort limits for one evaluation; splits are counted per level."""

    tolerance: Fraction
    precision: int
    max_splits: int = 1_000_000
    max_depth: int = 64


@dataclass(frozen=True)
class Enclosure:
    interval: Optional[Interval]
    status: Status
    violation: Optional[str] = None


TraceFn = Callable[[dict], None]


class _DepthExceeded(Exception):
    pass


class _State:
    __slots__ = ("budget", "trace", "path")

    def __init__(self, budget: EvalBudget, trace: Optional[TraceFn]) -> None:
        self.budget = budget
        self.trace = trace
        self.path = []


def _eval(
    t: ScoreTerm, env: tuple, p: int, tol: Fraction, state: _State, depth: int
) -> Interval:
    if isinstance(t, Var):
        return env[t.index]
    if isinstance(t, Apply):
        name = t.fn.name
        state.path.append(name)
        try:
            if name == "const":
                out = Interval.from_fraction(t.fn.value, p)
            elif name == "pi":
                out = pi_enclosure(p)
            else:
                args = [_eval(a, env, p, tol, state, depth) for a in t.args]
                if name == "add":
                    out = ival_add(args[0], args[1])
                elif name == "sub":
                    out = ival_sub(args[0], args[1])
                elif name == "mul":
                    out = round_out(ival_mul(args[0], args[1]), p)
                elif name == "neg":
                    out = ival_neg(args[0])
                elif name == "min":
                    out = ival_min(args[0], args[1])
                elif name == "max":
                    out = ival_max(args[0], args[1])
                elif name == "abs":
                    out = ival_abs(args[0])
                elif name == "div":
                    out = ival_div(args[0], args[1], p)
                elif name == "pow":
                    out = round_out(ival_pow(args[0], t.fn.exponent), p)
                elif name == "exp":
                    out = ival_exp(args[0], p)
                elif name == "sin":
                    out = ival_sin(args[0], p)
                elif name == "cos":
                    out = ival_cos(args[0], p)
                elif name == "atan":
                    out = ival_atan(args[0], p)
                elif name == "sqrt":
                    out = ival_sqrt(args[0], p)
                else:
                    raise DomainViolationError(f"unknown function symbol {name!r}")
        except DomainViolationError as err:
            if err.path is None:
                err.path = ".".join(state.path)
            raise
        finally:
            state.path.pop()
        return out
    return _optimize(t, env, p, tol, state, depth)


class _Box:
    __slots__ = ("ival", "bounds")

    def __init__(self, ival: Interval, bounds: Interval) -> None:
        self.ival = ival
        self.bounds = bounds


def _has_bound_op(t: ScoreTerm) -> bool:
    if isinstance(t, (MinOver, MaxOver)):
        return True
    if isinstance(t, Apply):
        return any(_has_bound_op(a) for a in t.args)
    return False


_FLIP_NEED = {"hi": "lo", "lo": "hi", "both": "both"}


def _optimize(
    node: ScoreTerm,
    env: tuple,
    p: int,
    tol: Fraction,
    state: _State,
    depth: int,
    irrelevant_below: Optional[Dyadic] = None,
    irrelevant_above: Optional[Dyadic] = None,
    need: str = "both",
) -> Interval:
    """Evaluate a MinOver/MaxOver node.  Internally always maximizes: a
    minimum is the negated maximum of the negated body.

    The two `irrelevant_*` thresholds, in the node's returned
    orientation, let the caller declare that any enclosure entirely
    below (resp. above) the threshold is equally useful to it no matter
    how loose; refinement stops at the first round that lands there.
    `need` names the returned endpoint(s) the caller will read tightly;
    the other endpoint is still sound but may stay loose.  The
    enclosure returned is sound in every mode."""
    budget = state.budget
    if depth >= budget.max_depth:
        raise _DepthExceeded()
    maximize = isinstance(node, MaxOver)
    # the same thresholds in the internal maximize orientation
    if maximize:
        done_below, done_above = irrelevant_below, irrelevant_above
    else:
        done_below = None if irrelevant_above is None else -irrelevant_above
        done_above = None if irrelevant_below is None else -irrelevant_below
    bounds_tol = tol / 3
    lower_enc = _eval(node.lower, env, p, bounds_tol, state, depth)
    upper_enc = _eval(node.upper, env, p, bounds_tol, state, depth)
    domain = hull(lower_enc, upper_enc)
    quant_body = isinstance(node.body, (MinOver, MaxOver))

    # points guaranteed to lie inside the realized range no matter where
    # the outer variables sit: the range runs between u(x) and v(x), and
    # min(u, v) <= min(U.hi, V.hi) while max(u, v) >= max(U.lo, V.lo)
    c_lo = dmin(lower_enc.hi, upper_enc.hi)
    c_hi = dmax(lower_enc.lo, upper_enc.lo)
    common: Optional[Interval] = Interval(c_lo, c_hi) if c_lo <= c_hi else None

    # which internal endpoints this call must tighten; without `common`
    # the verified lower bound needs every subinterval's lo, so the
    # one-sided machinery is disabled outright
    if maximize:
        want_hi, want_lo = need != "lo", need != "hi"
    else:
        want_hi, want_lo = need != "hi", need != "lo"
    if common is None:
        want_hi = want_lo = True
    self_need = "both" if (want_hi and want_lo) else ("hi" if want_hi else "lo")

    def body_over(
        y: Interval,
        child_tol: Fraction,
        cut: Optional[Dyadic] = None,
        child_need: str = "both",
    ) -> Interval:
        sub = (y,) + env
        # a directly nested bound operator hears how far the pruning
        # test can see: a subinterval whose value provably cannot beat
        # `cut` will be dropped whatever its exact value is
        if quant_body:
            passed = child_need if maximize else _FLIP_NEED[child_need]
            if maximize:
                out = _optimize(
                    node.body, sub, p, child_tol, state, depth + 1,
                    irrelevant_below=cut, need=passed,
                )
            else:
                out = _optimize(
                    node.body, sub, p, child_tol, state, depth + 1,
                    irrelevant_above=None if cut is None else -cut, need=passed,
                )
        else:
            out = _eval(node.body, sub, p, child_tol, state, depth + 1)
        return out if maximize else ival_neg(out)

    if domain.is_point():
        out = body_over(domain, tol, child_need=self_need)
        return out if maximize else ival_neg(out)

    def clamp_sample(point: Dyadic) -> Dyadic:
        return dmin(dmax(point, common.lo), common.hi)

    boxes = [_Box(domain, body_over(domain, tol / 3, child_need=self_need))]
    pruned_floor: Optional[Dyadic] = None  # least body-lo among pruned boxes

    # point probes sharpen the lower bound cheaply for arithmetic
    # bodies; for a quantified body each probe would cost a nested
    # optimization, and the inside-`common` subintervals converge alone
    probe = common is not None and not _has_bound_op(node.body)
    sample_lb: Optional[Dyadic] = None
    if probe:
        sample_lb = body_over(Interval.point(clamp_sample(domain.midpoint())), tol / 3).lo

    splits = 0
    stalls = 0
    prev_gap: Optional[Fraction] = None
    split_width: Optional[Fraction] = None  # widest box split last round
    lb: Optional[Dyadic] = None
    ub: Optional[Dyadic] = None
    while True:
        # covering bounds: the subintervals (plus already-pruned ones)
        # cover every realized range [u(x), v(x)], so the least body-lo
        # bounds the maximum from below and the largest live body-hi from
        # above; a subinterval lying inside `common` belongs to every
        # realized range, so its body-lo is a far tighter lower bound
        round_ub = boxes[0].bounds.hi
        cover_lb = boxes[0].bounds.lo
        widest = boxes[0].ival.width()
        inner_lb: Optional[Dyadic] = None
        for b in boxes:
            round_ub = dmax(round_ub, b.bounds.hi)
            cover_lb = dmin(cover_lb, b.bounds.lo)
            widest = dmax(widest, b.ival.width())
            if common is not None and common.lo <= b.ival.lo and b.ival.hi <= common.hi:
                inner_lb = b.bounds.lo if inner_lb is None else dmax(inner_lb, b.bounds.lo)
        if pruned_floor is not None:
            cover_lb = dmin(cover_lb, pruned_floor)
        round_lb = cover_lb
        if inner_lb is not None:
            round_lb = dmax(round_lb, inner_lb)
        if sample_lb is not None:
            round_lb = dmax(round_lb, sample_lb)
        # each round's [round_lb, round_ub] encloses the value set, so the
        # running intersection does too and the gap never widens
        lb = round_lb if lb is None else dmax(lb, round_lb)
        ub = round_ub if ub is None else dmin(ub, round_ub)
        if lb > ub:  # everything got pruned down to the verified bound
            ub = lb
        gap = (ub - lb).to_fraction()
        if state.trace is not None:
            lo_out, hi_out = (lb, ub) if maximize else (-ub, -lb)
            state.trace(
                {
                    "level": depth + 1,
                    "boxes": len(boxes),
                    "lo": str(lo_out.to_fraction()),
                    "hi": str(hi_out.to_fraction()),
                }
            )
        if gap <= tol or splits >= budget.max_splits:
            break
        if done_below is not None and ub <= done_below:
            break
        if done_above is not None and lb >= done_above:
            break
        # the gap can plateau for many rounds while the sample grid
        # closes in on the maximizer, but only while some subinterval is
        # still wider than the gap itself; once every box is narrower,
        # repeated non-improvement means the floor was reached, and each
        # wasted round doubles the box count.  A lower-endpoint-only
        # call leaves most subintervals unsplit on purpose, so it gates
        # on the chain it does refine: halving can still move the bound
        # until that chain narrows to the tolerance.
        if prev_gap is None or prev_gap - gap >= gap / 64:
            stalls = 0
        else:
            if want_hi:
                settled = widest.to_fraction() <= gap
            else:
                settled = split_width is not None and split_width <= tol
            if settled:
                stalls += 1
                if stalls >= 2:
                    break
        prev_gap = gap

        # keep only subintervals that can still influence the maximum;
        # gap > 0 here, so the box carrying the upper bound survives
        live = []
        for b in boxes:
            if b.bounds.hi > lb:
                live.append(b)
            else:
                pruned_floor = (
                    b.bounds.lo if pruned_floor is None else dmin(pruned_floor, b.bounds.lo)
                )

        # the carrier is the best subinterval inside `common`, the one
        # whose body lo feeds the verified lower bound; its chain is
        # refined on both endpoints (pruning needs that bound even when
        # the caller reads only the upper one)
        carrier = None
        if common is not None:
            for b in live:
                if common.lo <= b.ival.lo and b.ival.hi <= common.hi:
                    if carrier is None or b.bounds.lo > carrier.bounds.lo:
                        carrier = b

        if want_hi:
            to_split = live
            keep = []
            cov_need = "hi" if common is not None else "both"
        elif carrier is not None:
            to_split = [carrier]
            keep = [b for b in live if b is not carrier]
            cov_need = "lo"
        else:  # nothing inside `common` yet; refine everything to get there
            to_split = live
            keep = []
            cov_need = "both"

        # one round: split the chosen survivors, tighten samples on the
        # children
        child_tol = max(tol / 3, gap / 8)
        cut = lb
        boxes = keep
        split_width = None
        for b in to_split:
            if splits >= budget.max_splits:
                boxes.append(b)
                continue
            splits += 1
            width = b.ival.width().to_fraction()
            if split_width is None or width > split_width:
                split_width = width
            child_need = "both" if (b is carrier and cov_need == "hi") else cov_need
            mid = b.ival.midpoint()
            for part in (Interval(b.ival.lo, mid), Interval(mid, b.ival.hi)):
                boxes.append(_Box(part, body_over(part, child_tol, cut, child_need)))
                if probe:
                    candidate = clamp_sample(part.midpoint())
                    value = body_over(Interval.point(candidate), child_tol).lo
                    sample_lb = value if sample_lb is None else dmax(sample_lb, value)

    out = Interval(lb, ub)
    return out if maximize else ival_neg(out)


def enclose(
    t: ScoreTerm,
    env: tuple,
    budget: EvalBudget,
    trace: Optional[TraceFn] = None,
) -> Enclosure:
    """Sound enclosure of the values of ``t`` over ``env``.

    ``env`` is a tuple of intervals indexed by De Bruijn index (entry 0
    is the innermost binder).  The result contains ``t``'s value for
    every point assignment drawn from ``env``; CONVERGED means its width
    is within ``budget.tolerance``.
    """
    state = _State(budget, trace)
    try:
        ival = _eval(t, env, budget.precision, budget.tolerance, state, 0)
    except DomainViolationError as err:
        return Enclosure(None, Status.DOMAIN_VIOLATION, f"{err} (at {err.path})")
    except _DepthExceeded:
        return Enclosure(None, Status.BUDGET_EXHAUSTED, "quantifier depth limit hit")
    if ival.width().to_fraction() <= budget.tolerance:
        return Enclosure(ival, Status.CONVERGED)
    return Enclosure(ival, Status.BUDGET_EXHAUSTED)


_PRECISION_ROUNDS = 6


def eval_closed(
    t: ScoreTerm,
    k: int,
    *,
    max_splits: int = 1_000_000,
    trace: Optional[TraceFn] = None,
) -> tuple[Optional[Dyadic], Enclosure]:
    """Midpoint of a width-``2**-k`` enclosure of a closed score term.

    On convergence the returned value differs from the exact one by less
    than ``2**-k``.  Precision starts at ``max(32, k + 8)`` and doubles
    on each global refinement round; successive enclosures are
    intersected, so the width never increases between rounds.
    """
    tol = Fraction(1, 1 << k)
    p = max(32, k + 8)
    best: Optional[Interval] = None
    last: Optional[Enclosure] = None
    for _ in range(_PRECISION_ROUNDS):
        budget = EvalBudget(tolerance=tol, precision=p, max_splits=max_splits)
        enc = enclose(t, (), budget, trace)
        if enc.status is Status.DOMAIN_VIOLATION:
            return None, enc
        assert enc.interval is not None
        best = enc.interval if best is None else intersect(best, enc.interval)
        if best.width().to_fraction() <= tol:
            return best.midpoint(), Enclosure(best, Status.CONVERGED)
        last = Enclosure(best, Status.BUDGET_EXHAUSTED)
        p *= 2
    return best.midpoint() if best is not None else None, last
