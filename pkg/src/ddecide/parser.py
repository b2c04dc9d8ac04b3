"""S-expression front end for sentences.

Grammar (one sentence per input):

    sentence ::= formula
    formula  ::= (exists (NAME term term) formula)
               | (forall (NAME term term) formula)
               | (and formula formula+) | (or formula formula+)
               | atom | (not atom)
    atom     ::= (REL term) | (REL term term)       REL in > >= < <= =
    term     ::= NAME | NUMBER | pi
               | (+ term term+) | (* term term+)
               | (- term) | (- term term) | (/ term term)
               | (min term term+) | (max term term+)
               | (abs term) | (exp term) | (sin term) | (cos term)
               | (atan term) | (sqrt term) | (pow term NAT)

Numbers are exact: integers, ratios like 3/32, or decimals like 2.51.
A one-argument relation compares against zero.  `;` starts a comment.
Atoms are normalized on the way in, so every parsed formula compares a
single term against 0 with > or >=.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .formulas import (
    ABS,
    ADD,
    ATAN,
    COS,
    DIV,
    EXP,
    MAX2,
    MIN2,
    MUL,
    NEG,
    PI,
    SIN,
    SQRT,
    SUB,
    And,
    Atomic,
    Exists,
    Forall,
    Formula,
    Or,
    Term,
    Var,
    const_term,
    make_apply,
    normalize_atom,
    pow_int,
)

_NUMBER = re.compile(r"[+-]?(\d+(\.\d+)?|\d+/\d+)\Z")

_RELATIONS = {">", ">=", "<", "<=", "="}

# symbol -> (function, arity); None arity means n-ary with at least 2
_TERM_OPS = {
    "+": (ADD, None),
    "*": (MUL, None),
    "min": (MIN2, None),
    "max": (MAX2, None),
    "/": (DIV, 2),
    "abs": (ABS, 1),
    "exp": (EXP, 1),
    "sin": (SIN, 1),
    "cos": (COS, 1),
    "atan": (ATAN, 1),
    "sqrt": (SQRT, 1),
}

_KEYWORDS = (
    {"exists", "forall", "and", "or", "not", "pi", "pow", "-"}
    | _RELATIONS
    | set(_TERM_OPS)
)


class _Atom:
    __slots__ = ("text", "line", "col")

    def __init__(self, text, line, col):
        self.text, self.line, self.col = text, line, col


class _List:
    __slots__ = ("items", "line", "col")

    def __init__(self, items, line, col):
        self.items, self.line, self.col = items, line, col


def _tokenize(text: str):
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
        elif c in " \t\r":
            col += 1
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            yield c, line, col
            col += 1
            i += 1
        else:
            start, start_col = i, col
            while i < n and text[i] not in " \t\r\n();":
                i += 1
                col += 1
            yield text[start:i], line, start_col
    yield None, line, col


def _read(text: str):
    """Return the list of top-level nodes."""
    stack = [_List([], 1, 1)]
    for tok, line, col in _tokenize(text):
        if tok is None:
            break
        if tok == "(":
            node = _List([], line, col)
            stack[-1].items.append(node)
            stack.append(node)
        elif tok == ")":
            if len(stack) == 1:
                raise ParseError("unmatched ')'", line, col)
            stack.pop()
        else:
            stack[-1].items.append(_Atom(tok, line, col))
    if len(stack) > 1:
        raise ParseError("unclosed '('", stack[-1].line, stack[-1].col)
    return stack[0].items


def _err(node, message: str) -> ParseError:
    return ParseError(message, node.line, node.col)


def _head(node):
    if not isinstance(node, _List):
        return None
    if not node.items or not isinstance(node.items[0], _Atom):
        raise _err(node, "expected an operator after '('")
    return node.items[0].text


def _parse_number(atom: _Atom) -> Fraction:
    if not _NUMBER.match(atom.text):
        raise _err(atom, f"bad number {atom.text!r}")
    try:
        return Fraction(atom.text)
    except (ValueError, ZeroDivisionError):
        raise _err(atom, f"bad number {atom.text!r}") from None


def _parse_term(node, scope: list, binding: str = "") -> Term:
    if isinstance(node, _Atom):
        text = node.text
        if text == "pi":
            return make_apply(PI, ())
        if text and (text[0].isdigit() or text[0] in "+-" and len(text) > 1):
            return const_term(_parse_number(node))
        if text in scope:
            return Var(scope.index(text))
        if text == binding:
            raise _err(node, f"the range of {text!r} cannot mention {text!r}")
        if text in _KEYWORDS:
            raise _err(node, f"expected a term, got {text!r}")
        raise _err(node, f"unknown variable {text!r}")
    head = _head(node)
    args = node.items[1:]
    if head == "-":
        if len(args) == 1:
            return make_apply(NEG, (_parse_term(args[0], scope, binding),))
        if len(args) == 2:
            return make_apply(
                SUB,
                (
                    _parse_term(args[0], scope, binding),
                    _parse_term(args[1], scope, binding),
                ),
            )
        raise _err(node, "'-' takes one or two arguments")
    if head == "pow":
        if len(args) != 2:
            raise _err(node, "'pow' takes a term and a literal exponent")
        if not isinstance(args[1], _Atom) or not args[1].text.isdigit():
            raise _err(node, "'pow' exponent must be a nonnegative integer literal")
        return make_apply(pow_int(int(args[1].text)), (_parse_term(args[0], scope, binding),))
    if head in _TERM_OPS:
        fn, arity = _TERM_OPS[head]
        if arity is None:
            if len(args) < 2:
                raise _err(node, f"{head!r} takes at least two arguments")
            out = _parse_term(args[0], scope, binding)
            for a in args[1:]:
                out = make_apply(fn, (out, _parse_term(a, scope, binding)))
            return out
        if len(args) != arity:
            raise _err(node, f"{head!r} takes exactly {arity} argument(s)")
        return make_apply(fn, tuple(_parse_term(a, scope, binding) for a in args))
    raise _err(node, f"unknown term operator {head!r}")


def _parse_atom(node, scope: list):
    """Parse a relation form into a normalized atom (as an Atomic formula)."""
    head = _head(node)
    negated = False
    if head == "not":
        if len(node.items) != 2:
            raise _err(node, "'not' takes exactly one atom")
        node = node.items[1]
        head = _head(node)
        negated = True
    if head not in _RELATIONS:
        raise _err(node, f"expected a relation, got {head!r}")
    args = node.items[1:]
    if len(args) not in (1, 2):
        raise _err(node, f"{head!r} takes one or two arguments")
    lhs = _parse_term(args[0], scope)
    if len(args) == 2:
        rhs = _parse_term(args[1], scope)
        # a REL b  becomes a comparison of a difference against zero,
        # oriented so the relation is > or >= where possible
        if head in ("<", "<="):
            diff = make_apply(SUB, (rhs, lhs))
            head = ">" if head == "<" else ">="
        else:
            diff = make_apply(SUB, (lhs, rhs))
    else:
        diff = lhs
    atom = normalize_atom(head, diff)
    if negated:
        atom = normalize_atom("not>" if atom.strict else "not>=", atom.term)
    return Atomic(atom)


def _parse_formula(node, scope: list) -> Formula:
    if isinstance(node, _Atom):
        raise _err(node, f"expected a formula, got {node.text!r}")
    head = _head(node)
    if head in ("exists", "forall"):
        if len(node.items) != 3:
            raise _err(node, f"{head!r} takes a binder and a body")
        binder = node.items[1]
        if (
            not isinstance(binder, _List)
            or len(binder.items) != 3
            or not isinstance(binder.items[0], _Atom)
        ):
            raise _err(node, f"{head!r} binder must look like (x lo hi)")
        name = binder.items[0].text
        # reject anything term parsing would read as a number, else the
        # binder could never be referenced
        if (
            name in _KEYWORDS
            or name[0].isdigit()
            or (name[0] in "+-" and len(name) > 1)
        ):
            raise _err(binder.items[0], f"invalid variable name {name!r}")
        lower = _parse_term(binder.items[1], scope, binding=name)
        upper = _parse_term(binder.items[2], scope, binding=name)
        body = _parse_formula(node.items[2], [name] + scope)
        cls = Exists if head == "exists" else Forall
        return cls(name, lower, upper, body)
    if head in ("and", "or"):
        args = node.items[1:]
        if len(args) < 2:
            raise _err(node, f"{head!r} takes at least two formulas")
        parts = [_parse_formula(a, scope) for a in args]
        cls = And if head == "and" else Or
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = cls(p, out)
        return out
    return _parse_atom(node, scope)


def parse_sentence(text: str) -> Formula:
    nodes = _read(text)
    if not nodes:
        raise ParseError("empty input", 1, 1)
    if len(nodes) > 1:
        raise _err(nodes[1], "expected a single sentence")
    return _parse_formula(nodes[0], [])


def parse_term(text: str, scope: list = ()) -> Term:
    """Parse a single term; free variables come from `scope` (innermost
    name first).  Mostly a convenience for tests and experiments."""
    nodes = _read(text)
    if len(nodes) != 1:
        raise ParseError("expected a single term", 1, 1)
    return _parse_term(nodes[0], list(scope))
