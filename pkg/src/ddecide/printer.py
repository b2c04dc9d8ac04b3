"""Formatting of terms and formulas back into the input S-expression
syntax.  Printing a parsed sentence and reparsing it reproduces the same
tree, provided binder names don't shadow each other (shadowed names are
disambiguated with a numeric suffix, which changes the stored names)."""

from __future__ import annotations

from fractions import Fraction

from .formulas import And, Apply, Atomic, Exists, Forall, Formula, Or, Term, Var

OP_SYMBOL = {
    "add": "+",
    "sub": "-",
    "neg": "-",
    "mul": "*",
    "div": "/",
    "abs": "abs",
    "min": "min",
    "max": "max",
    "exp": "exp",
    "sin": "sin",
    "cos": "cos",
    "atan": "atan",
    "sqrt": "sqrt",
}


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_term(t: Term, names: list) -> str:
    """names[i] is the display name for De Bruijn index i; indices with
    no binder in sight print as a placeholder."""
    if isinstance(t, Var):
        return names[t.index] if t.index < len(names) else f"?v{t.index}"
    fn = t.fn
    if fn.name == "const":
        return format_rational(fn.value)
    if fn.name == "pi":
        return "pi"
    if fn.name == "pow":
        return f"(pow {format_term(t.args[0], names)} {fn.exponent})"
    parts = " ".join(format_term(a, names) for a in t.args)
    return f"({OP_SYMBOL[fn.name]} {parts})"


def _fresh(name: str, names: list) -> str:
    if name not in names:
        return name
    n = 2
    while f"{name}_{n}" in names:
        n += 1
    return f"{name}_{n}"


def format_formula(phi: Formula, names: list) -> str:
    if isinstance(phi, Atomic):
        rel = ">" if phi.atom.strict else ">="
        return f"({rel} {format_term(phi.atom.term, names)} 0)"
    if isinstance(phi, And):
        return f"(and {format_formula(phi.left, names)} {format_formula(phi.right, names)})"
    if isinstance(phi, Or):
        return f"(or {format_formula(phi.left, names)} {format_formula(phi.right, names)})"
    kind = "exists" if isinstance(phi, Exists) else "forall"
    name = _fresh(phi.name, names)
    lo = format_term(phi.lower, names)
    hi = format_term(phi.upper, names)
    body = format_formula(phi.body, [name] + names)
    return f"({kind} ({name} {lo} {hi}) {body})"


def format_sentence(phi: Formula) -> str:
    return format_formula(phi, [])
