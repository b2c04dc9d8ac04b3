"""Terms, atoms, formulas, and the symbolic transformations on them.

The language is first-order logic over the reals restricted to the shape
this solver decides: negation-free formulas built from atoms ``t > 0``
and ``t >= 0`` with ``and`` / ``or``, under quantifiers whose ranges are
bounded by terms of the enclosing scope.  General comparisons and ``not``
exist only as input sugar; :func:`normalize_atom` rewrites them into the
two atom kinds.  Negation of a whole formula is a defined operation
(:func:`negate`) that swaps connectives, quantifiers and atom kinds.

Binding uses De Bruijn indices: ``Var(0)`` is the variable of the
nearest enclosing quantifier, ``Var(k)`` skips ``k`` binders.  Quantifier
bounds live in the enclosing scope (they cannot see the variable being
bound -- ill-scoped input fails at the parser, which is where names
exist).  Binders carry a display name purely for printing.

Slack shifting (:func:`strengthen` / :func:`weaken`) folds the shift
into the atom's term as ``t - c`` with a literal rational constant,
merging with an existing literal offset.  Together with the canonical
negation helper (which peels double negation and negates literal
offsets) this makes the documented syntactic identities hold literally:

* ``negate(negate(phi)) == phi`` on canonically built formulas,
* ``negate(strengthen(phi, d)) == weaken(negate(phi), d)`` on all
  well-formed formulas,
* ``strengthen(phi, 0) == phi``.

Constant folding (double negation, additive zero, unit coefficient) runs
inside the smart constructors, so transformation outputs are stable
under syntactic comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import WellFormednessError

Rational = Fraction

# === function symbols ===


@dataclass(frozen=True)
class FuncSym:
    """Function symbol; ``exponent`` only for pow, ``value`` only for const."""

    name: str
    exponent: int | None = None
    value: Rational | None = None


NEG = FuncSym("neg")
ADD = FuncSym("add")
SUB = FuncSym("sub")
MUL = FuncSym("mul")
DIV = FuncSym("div")
ABS = FuncSym("abs")
MIN2 = FuncSym("min")
MAX2 = FuncSym("max")
EXP = FuncSym("exp")
SIN = FuncSym("sin")
COS = FuncSym("cos")
ATAN = FuncSym("atan")
SQRT = FuncSym("sqrt")
PI = FuncSym("pi")

ARITY = {
    "neg": 1, "add": 2, "sub": 2, "mul": 2, "div": 2, "abs": 1,
    "min": 2, "max": 2, "exp": 1, "sin": 1, "cos": 1, "atan": 1,
    "sqrt": 1, "pow": 1, "const": 0, "pi": 0,
}

# Partial primitives: evaluation may abort on them, everything else is total.
PARTIAL = frozenset({"div", "sqrt"})


def pow_int(n: int) -> FuncSym:
    if n < 0:
        raise ValueError("pow exponent must be nonnegative")
    return FuncSym("pow", exponent=n)


def const(value: Rational | int) -> FuncSym:
    return FuncSym("const", value=Fraction(value))


# === terms ===


@dataclass(frozen=True)
class Var:
    index: int  # De Bruijn: 0 = innermost enclosing binder


@dataclass(frozen=True)
class Apply:
    fn: FuncSym
    args: tuple  # of Term (of AlphaTerm-like nodes after translation)


Term = Var | Apply


def const_term(value: Rational | int) -> Apply:
    return Apply(const(value), ())


_ZERO = Fraction(0)
_ONE = Fraction(1)


def _const_value(t: Term) -> Rational | None:
    if isinstance(t, Apply) and t.fn.name == "const":
        return t.fn.value
    return None


def negated_term(t: Term) -> Term:
    """Canonical ``-t``: peels double negation, pushes through literal offsets."""
    if isinstance(t, Apply):
        if t.fn.name == "neg":
            return t.args[0]
        if t.fn.name == "sub":
            offset = _const_value(t.args[1])
            if offset is not None:
                return shift_term(negated_term(t.args[0]), -offset)
    return Apply(NEG, (t,))


def shift_term(t: Term, amount: Rational) -> Term:
    """Canonical ``t - amount``, merging with an existing literal offset."""
    if isinstance(t, Apply) and t.fn.name == "sub":
        offset = _const_value(t.args[1])
        if offset is not None:
            return shift_term(t.args[0], offset + amount)
    if amount == 0:
        return t
    return Apply(SUB, (t, const_term(amount)))


def fold_term(t: Term) -> Term:
    """Rebuild bottom-up through the folding constructors."""
    if isinstance(t, Var) or not t.args:
        return t
    args = tuple(fold_term(a) for a in t.args)
    return make_apply(t.fn, args)


def make_apply(fn: FuncSym, args: tuple) -> Term:
    """Apply node with the documented constant folds."""
    if fn.name == "neg":
        return negated_term(args[0])
    if fn.name == "add":
        if _const_value(args[0]) == _ZERO:
            return args[1]
        if _const_value(args[1]) == _ZERO:
            return args[0]
    elif fn.name == "sub":
        if _const_value(args[1]) == _ZERO:
            return args[0]
    elif fn.name == "mul":
        if _const_value(args[0]) == _ONE:
            return args[1]
        if _const_value(args[1]) == _ONE:
            return args[0]
    return Apply(fn, args)


# === atoms and formulas ===


@dataclass(frozen=True)
class Atom:
    """``term > 0`` when strict, ``term >= 0`` otherwise."""

    term: Term
    strict: bool


@dataclass(frozen=True)
class Atomic:
    atom: Atom


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    name: str
    lower: Term  # enclosing scope
    upper: Term  # enclosing scope
    body: "Formula"  # scope extended by this binder


@dataclass(frozen=True)
class Forall:
    name: str
    lower: Term
    upper: Term
    body: "Formula"


Formula = Atomic | And | Or | Exists | Forall


def atom_gt(t: Term) -> Atomic:
    return Atomic(Atom(t, True))


def atom_ge(t: Term) -> Atomic:
    return Atomic(Atom(t, False))


def _plain_neg(t: Term) -> Term:
    # normalize_atom keeps the literal "-(t)" shape (only double negation folds)
    if isinstance(t, Apply) and t.fn.name == "neg":
        return t.args[0]
    return Apply(NEG, (t,))


def normalize_atom(relation: str, t: Term) -> Atom:
    """Rewrite a relation against zero into the two canonical atom kinds.

    relation is one of ``">"``, ``">="``, ``"<"``, ``"<="``, ``"="``,
    ``"not>"``, ``"not>="`` (the last two for a negated canonical atom).
    """
    if relation == ">":
        return Atom(t, True)
    if relation == ">=":
        return Atom(t, False)
    if relation == "<":  # t < 0  <=>  -t > 0
        return Atom(_plain_neg(t), True)
    if relation == "<=":  # t <= 0  <=>  -t >= 0
        return Atom(_plain_neg(t), False)
    if relation == "=":  # t = 0  <=>  -|t| >= 0
        return Atom(_plain_neg(Apply(ABS, (t,))), False)
    if relation == "not>":  # not (t > 0)  <=>  -t >= 0
        return Atom(_plain_neg(t), False)
    if relation == "not>=":  # not (t >= 0)  <=>  -t > 0
        return Atom(_plain_neg(t), True)
    raise ValueError(f"unknown relation {relation!r}")


# === formula transformations ===


def negate(phi: Formula) -> Formula:
    """Defined negation: swaps atom kinds, connectives and quantifiers."""
    if isinstance(phi, Atomic):
        return Atomic(Atom(negated_term(phi.atom.term), not phi.atom.strict))
    if isinstance(phi, And):
        return Or(negate(phi.left), negate(phi.right))
    if isinstance(phi, Or):
        return And(negate(phi.left), negate(phi.right))
    if isinstance(phi, Exists):
        return Forall(phi.name, phi.lower, phi.upper, negate(phi.body))
    return Exists(phi.name, phi.lower, phi.upper, negate(phi.body))


def _shift_atoms(phi: Formula, amount: Rational) -> Formula:
    if isinstance(phi, Atomic):
        return Atomic(Atom(shift_term(phi.atom.term, amount), phi.atom.strict))
    if isinstance(phi, And):
        return And(_shift_atoms(phi.left, amount), _shift_atoms(phi.right, amount))
    if isinstance(phi, Or):
        return Or(_shift_atoms(phi.left, amount), _shift_atoms(phi.right, amount))
    if isinstance(phi, Exists):
        return Exists(phi.name, phi.lower, phi.upper, _shift_atoms(phi.body, amount))
    return Forall(phi.name, phi.lower, phi.upper, _shift_atoms(phi.body, amount))


def strengthen(phi: Formula, delta: Rational) -> Formula:
    """Shift every atom from ``t # 0`` to ``t - delta # 0``; bounds unchanged."""
    return _shift_atoms(phi, Fraction(delta))


def weaken(phi: Formula, delta: Rational) -> Formula:
    """Shift every atom from ``t # 0`` to ``t + delta # 0``; bounds unchanged."""
    return _shift_atoms(phi, -Fraction(delta))


def _set_strict(phi: Formula, strict: bool) -> Formula:
    if isinstance(phi, Atomic):
        return Atomic(Atom(phi.atom.term, strict))
    if isinstance(phi, And):
        return And(_set_strict(phi.left, strict), _set_strict(phi.right, strict))
    if isinstance(phi, Or):
        return Or(_set_strict(phi.left, strict), _set_strict(phi.right, strict))
    if isinstance(phi, Exists):
        return Exists(phi.name, phi.lower, phi.upper, _set_strict(phi.body, strict))
    return Forall(phi.name, phi.lower, phi.upper, _set_strict(phi.body, strict))


def strictify(phi: Formula) -> Formula:
    """All atoms become strict; the result implies ``phi``."""
    return _set_strict(phi, True)


def destrictify(phi: Formula) -> Formula:
    """All atoms become nonstrict; ``phi`` implies the result."""
    return _set_strict(phi, False)


# === unit-box rescaling ===


def shift_indices(t: Term, by: int, cutoff: int = 0) -> Term:
    """Add ``by`` to every free De Bruijn index >= cutoff."""
    if isinstance(t, Var):
        return Var(t.index + by) if t.index >= cutoff else t
    if not t.args:
        return t
    return Apply(t.fn, tuple(shift_indices(a, by, cutoff) for a in t.args))


def substitute(t: Term, subst: tuple) -> Term:
    """Replace ``Var(i)`` by ``subst[i]``; every free index must be covered."""
    if isinstance(t, Var):
        return subst[t.index]
    if not t.args:
        return t
    return Apply(t.fn, tuple(substitute(a, subst) for a in t.args))


def _rescale(phi: Formula, subst: tuple) -> Formula:
    if isinstance(phi, Atomic):
        term = fold_term(substitute(phi.atom.term, subst))
        return Atomic(Atom(term, phi.atom.strict))
    if isinstance(phi, And):
        return And(_rescale(phi.left, subst), _rescale(phi.right, subst))
    if isinstance(phi, Or):
        return Or(_rescale(phi.left, subst), _rescale(phi.right, subst))
    lower = fold_term(substitute(phi.lower, subst))
    upper = fold_term(substitute(phi.upper, subst))
    lo1 = shift_indices(lower, 1)
    hi1 = shift_indices(upper, 1)
    # x := lower + (upper - lower) * x', with x' the fresh [0, 1] variable
    replacement = fold_term(
        Apply(ADD, (lo1, Apply(MUL, (Apply(SUB, (hi1, lo1)), Var(0)))))
    )
    inner = (replacement,) + tuple(shift_indices(s, 1) for s in subst)
    body = _rescale(phi.body, inner)
    kind = Exists if isinstance(phi, Exists) else Forall
    return kind(phi.name, const_term(0), const_term(1), body)


def rescale_unit(phi: Formula) -> Formula:
    """Equivalent sentence with every quantifier ranging over [0, 1].

    Each bound variable x over [lower, upper] is replaced in its body by
    ``lower + (upper - lower) * x'`` with x' in [0, 1]; bounds mentioning
    outer variables are themselves rewritten first.  Identity bounds fold
    away, so unit sentences are fixed points.
    """
    return _rescale(phi, ())


# === validation and measures ===


def _check_term(t: Term, depth: int, path: str) -> str | None:
    if isinstance(t, Var):
        if t.index < 0 or t.index >= depth:
            return f"{path}: unbound variable index {t.index} at depth {depth}"
        return None
    fn = t.fn
    arity = ARITY.get(fn.name)
    if arity is None:
        return f"{path}: unknown function symbol {fn.name!r}"
    if len(t.args) != arity:
        return f"{path}: {fn.name} expects {arity} argument(s), got {len(t.args)}"
    if fn.name == "pow":
        if not isinstance(fn.exponent, int) or fn.exponent < 0:
            return f"{path}: pow exponent must be a nonnegative integer"
    elif fn.exponent is not None:
        return f"{path}: {fn.name} carries a stray exponent"
    if fn.name == "const":
        if not isinstance(fn.value, Fraction):
            return f"{path}: const value must be rational"
    elif fn.value is not None:
        return f"{path}: {fn.name} carries a stray value"
    for i, arg in enumerate(t.args):
        issue = _check_term(arg, depth, f"{path}.{fn.name}[{i}]")
        if issue:
            return issue
    return None


def _check_formula(phi: Formula, depth: int, path: str) -> str | None:
    if isinstance(phi, Atomic):
        return _check_term(phi.atom.term, depth, f"{path}.atom")
    if isinstance(phi, (And, Or)):
        kind = "and" if isinstance(phi, And) else "or"
        return _check_formula(phi.left, depth, f"{path}.{kind}.left") or _check_formula(
            phi.right, depth, f"{path}.{kind}.right"
        )
    kind = "exists" if isinstance(phi, Exists) else "forall"
    here = f"{path}.{kind}({phi.name})"
    return (
        _check_term(phi.lower, depth, f"{here}.lower")
        or _check_term(phi.upper, depth, f"{here}.upper")
        or _check_formula(phi.body, depth + 1, here)
    )


def check_well_formed(phi: Formula) -> str | None:
    """First violation as a located message, or None if the sentence is valid."""
    return _check_formula(phi, 0, "sentence")


def require_well_formed(phi: Formula) -> None:
    issue = check_well_formed(phi)
    if issue is not None:
        raise WellFormednessError(issue)


def validate_delta(delta: Rational) -> Fraction:
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("the slack parameter must be positive")
    return delta


def term_size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + sum(term_size(a) for a in t.args)


def formula_size(phi: Formula) -> int:
    """Node count: atoms count their term nodes, binders their bound terms."""
    if isinstance(phi, Atomic):
        return 1 + term_size(phi.atom.term)
    if isinstance(phi, (And, Or)):
        return 1 + formula_size(phi.left) + formula_size(phi.right)
    return 1 + term_size(phi.lower) + term_size(phi.upper) + formula_size(phi.body)
