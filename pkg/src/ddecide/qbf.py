"""Quantified Boolean formulas over the reals.

A QBF instance (prenex CNF, read from a QDIMACS subset) is turned into a
bounded sentence over [-2, 2] ranges.  Boolean variable p becomes a real
variable x; the literal p becomes the atom x > 0 and the literal not-p
becomes -x - 1 > 0, so the two polarities are separated by a unit gap.
Three extra pieces make the translation faithful with margin 1/2:

* a guard clause (x > 0 or -x - 1 > 0) for every variable, keeping any
  useful valuation out of the dead band (-1, 0];
* for every universally quantified variable, an escape disjunct
  min(2x + 7/2, 1 - x) > 0 at the top of the matrix, which is at least
  1/2 whenever x is in [-3/2, 1/2], i.e. whenever x is not a clear
  true (x >= 1/2) or clear false (x <= -3/2) play;
* the matrix is the conjunction of translated clauses and guards,
  preceded by the escape disjuncts.

A true instance then has score at least 1/2 and a false one at most
-1/2, so deciding the sentence at delta = 1/4 recovers the exact truth
value of the QBF.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .formulas import (
    ADD,
    MIN2,
    MUL,
    SUB,
    And,
    Atom,
    Atomic,
    Exists,
    Forall,
    Formula,
    Or,
    Var,
    const_term,
    make_apply,
    negated_term,
    shift_term,
)


@dataclass(frozen=True)
class QbfInstance:
    """Prenex CNF instance.  prefix lists ("e" | "a", variable) pairs
    outermost first with 1-based variables; clauses hold nonzero literal
    integers.  Variables used in clauses but missing from the prefix are
    implicitly outermost existentials."""

    num_vars: int
    prefix: tuple
    clauses: tuple

    def complete_prefix(self) -> tuple:
        bound = {v for _, v in self.prefix}
        used = {abs(lit) for clause in self.clauses for lit in clause}
        free = sorted((used | set(range(1, self.num_vars + 1))) - bound)
        return tuple(("e", v) for v in free) + self.prefix


def parse_qdimacs(text: str) -> QbfInstance:
    num_vars = None
    num_clauses = None
    prefix = []
    clauses = []
    current = []
    in_prefix = True
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("expected 'p cnf <vars> <clauses>'", line_no, 1)
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("bad problem line", line_no, 1) from None
            continue
        if num_vars is None:
            raise ParseError("clause before the problem line", line_no, 1)
        if line[0] in "ea":
            if not in_prefix:
                raise ParseError("quantifier line after a clause", line_no, 1)
            kind = line[0]
            toks = line[1:].split()
            if not toks or toks[-1] != "0":
                raise ParseError("quantifier line must end with 0", line_no, 1)
            for tok in toks[:-1]:
                try:
                    v = int(tok)
                except ValueError:
                    raise ParseError(f"bad variable {tok!r}", line_no, 1) from None
                if not 1 <= v <= num_vars or any(v == w for _, w in prefix):
                    raise ParseError(f"bad quantified variable {v}", line_no, 1)
                prefix.append((kind, v))
            continue
        in_prefix = False
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", line_no, 1) from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif 1 <= abs(lit) <= num_vars:
                current.append(lit)
            else:
                raise ParseError(f"literal {lit} out of range", line_no, 1)
    if num_vars is None:
        raise ParseError("missing problem line", 1, 1)
    if current:
        raise ParseError("unterminated clause", line_no, 1)
    if num_clauses is not None and len(clauses) != num_clauses:
        raise ParseError(
            f"expected {num_clauses} clauses, found {len(clauses)}", line_no, 1
        )
    return QbfInstance(num_vars, tuple(prefix), tuple(clauses))


_FALSE_ATOM = Atomic(Atom(const_term(-1), True))


def _literal(lit: int, index: dict) -> Formula:
    x = Var(index[abs(lit)])
    if lit > 0:
        return Atomic(Atom(x, True))
    return Atomic(Atom(shift_term(negated_term(x), Fraction(1)), True))


def _or_fold(parts: list) -> Formula:
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Or(p, out)
    return out


def _and_fold(parts: list) -> Formula:
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def _escape(idx: int) -> Formula:
    # min(2x + 7/2, 1 - x) > 0: true margin >= 1/2 for x in [-3/2, 1/2]
    x = Var(idx)
    left = make_apply(ADD, (make_apply(MUL, (const_term(2), x)), const_term(Fraction(7, 2))))
    right = make_apply(SUB, (const_term(1), x))
    return Atomic(Atom(make_apply(MIN2, (left, right)), True))


def encode(instance: QbfInstance) -> Formula:
    prefix = instance.complete_prefix()
    depth = len(prefix)
    index = {v: depth - 1 - j for j, (_, v) in enumerate(prefix)}

    conjuncts = []
    for clause in instance.clauses:
        if clause:
            conjuncts.append(_or_fold([_literal(lit, index) for lit in clause]))
        else:
            conjuncts.append(_FALSE_ATOM)
    for _, v in prefix:
        conjuncts.append(Or(_literal(v, index), _literal(-v, index)))
    matrix = _and_fold(conjuncts) if conjuncts else Atomic(Atom(const_term(1), True))

    escapes = [_escape(index[v]) for kind, v in prefix if kind == "a"]
    if escapes:
        matrix = _or_fold(escapes + [matrix])

    lo, hi = const_term(-2), const_term(2)
    for kind, v in reversed(prefix):
        cls = Exists if kind == "e" else Forall
        matrix = cls(f"x{v}", lo, hi, matrix)
    return matrix
