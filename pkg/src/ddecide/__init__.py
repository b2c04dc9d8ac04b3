"""ddecide: delta-decisions for bounded sentences over the reals.

Given a bounded first-order sentence built from polynomials, abs, min,
max, division, sqrt, exp, sin, cos and atan, and a rational delta > 0,
the solver answers either that the sentence is true or that its
delta-strengthening is false (the two can overlap, and either answer is
then correct).  See README.md for the input syntax and the CLI.
"""

from .decide import (
    AFFIRMATIVE,
    NEGATIVE,
    Outcome,
    Verdict,
    decide_robust,
    decide_strengthen,
    decide_weaken,
    decision_bits,
    dyadic_slack,
)
from .dyadic import Dyadic
from .errors import (
    DdecideError,
    DomainViolationError,
    ParseError,
    WellFormednessError,
)
from .formulas import (
    And,
    Atom,
    Atomic,
    Exists,
    Forall,
    Formula,
    Or,
    Term,
    Var,
    check_well_formed,
    formula_size,
    negate,
    rescale_unit,
    strengthen,
    term_size,
    weaken,
)
from .intervals import Interval
from .optimizer import Enclosure, EvalBudget, Status, enclose, eval_closed
from .parser import parse_sentence, parse_term
from .printer import format_sentence, format_term
from .qbf import QbfInstance, encode, parse_qdimacs
from .score import MaxOver, MinOver, score_size, score_term

__version__ = "0.1.0"

__all__ = [
    "AFFIRMATIVE",
    "NEGATIVE",
    "And",
    "Atom",
    "Atomic",
    "DdecideError",
    "DomainViolationError",
    "Dyadic",
    "Enclosure",
    "EvalBudget",
    "Exists",
    "Forall",
    "Formula",
    "Interval",
    "MaxOver",
    "MinOver",
    "Or",
    "Outcome",
    "ParseError",
    "QbfInstance",
    "Status",
    "Term",
    "Var",
    "Verdict",
    "WellFormednessError",
    "check_well_formed",
    "decide_robust",
    "decide_strengthen",
    "decide_weaken",
    "decision_bits",
    "dyadic_slack",
    "enclose",
    "encode",
    "eval_closed",
    "format_sentence",
    "format_term",
    "formula_size",
    "negate",
    "parse_qdimacs",
    "parse_sentence",
    "parse_term",
    "rescale_unit",
    "score_size",
    "score_term",
    "strengthen",
    "term_size",
    "weaken",
    "__version__",
]
