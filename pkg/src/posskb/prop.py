"""Propositional formulas: AST, parser, renderer, evaluation, CNF.

The concrete syntax is parenthesized prefix form, matching the concept
language::

    expr ::= IDENT
           | "(" "not" expr ")"
           | "(" "and" expr expr+ ")"
           | "(" "or" expr expr+ ")"
           | "(" "implies" expr expr ")"
           | "(" "iff" expr expr ")"

N-ary ``and``/``or`` parse to right-nested binary nodes, so rendering is
strictly binary and round-trips structurally.

Satisfiability goes through a structural CNF with auxiliary variables (one
per composite subformula); only satisfiability is ever queried, so the
auxiliary atoms are harmless.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import ParseError
from .sat import satisfiable
from .sexpr import TokenStream, tokenize


class PropFormula:
    """Base class for propositional formula nodes."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Atom(PropFormula):
    name: str


@dataclass(frozen=True, slots=True)
class Not(PropFormula):
    inner: PropFormula


@dataclass(frozen=True, slots=True)
class And(PropFormula):
    lhs: PropFormula
    rhs: PropFormula


@dataclass(frozen=True, slots=True)
class Or(PropFormula):
    lhs: PropFormula
    rhs: PropFormula


@dataclass(frozen=True, slots=True)
class Implies(PropFormula):
    lhs: PropFormula
    rhs: PropFormula


@dataclass(frozen=True, slots=True)
class Iff(PropFormula):
    lhs: PropFormula
    rhs: PropFormula


_CONNECTIVES = {"not", "and", "or", "implies", "iff"}


def atoms(formula: PropFormula) -> frozenset[str]:
    """All atom names occurring in the formula."""
    out: set[str] = set()
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node.name)
        elif isinstance(node, Not):
            stack.append(node.inner)
        else:
            stack.append(node.lhs)  # type: ignore[attr-defined]
            stack.append(node.rhs)  # type: ignore[attr-defined]
    return frozenset(out)


def evaluate(formula: PropFormula, assignment: Mapping[str, bool]) -> bool:
    """Truth value under a total assignment; missing atoms read as false."""
    if isinstance(formula, Atom):
        return bool(assignment.get(formula.name, False))
    if isinstance(formula, Not):
        return not evaluate(formula.inner, assignment)
    if isinstance(formula, And):
        return evaluate(formula.lhs, assignment) and evaluate(formula.rhs, assignment)
    if isinstance(formula, Or):
        return evaluate(formula.lhs, assignment) or evaluate(formula.rhs, assignment)
    if isinstance(formula, Implies):
        return (not evaluate(formula.lhs, assignment)) or evaluate(formula.rhs, assignment)
    if isinstance(formula, Iff):
        return evaluate(formula.lhs, assignment) == evaluate(formula.rhs, assignment)
    raise TypeError(f"not a propositional formula: {formula!r}")


def render_prop(formula: PropFormula) -> str:
    if isinstance(formula, Atom):
        return formula.name
    if isinstance(formula, Not):
        return f"(not {render_prop(formula.inner)})"
    for cls, name in ((And, "and"), (Or, "or"), (Implies, "implies"), (Iff, "iff")):
        if isinstance(formula, cls):
            return f"({name} {render_prop(formula.lhs)} {render_prop(formula.rhs)})"
    raise TypeError(f"not a propositional formula: {formula!r}")


# --- parsing ----------------------------------------------------------------


def _is_identifier(text: str) -> bool:
    return bool(text) and all(c.isalnum() or c == "_" for c in text)


def parse_prop(text: str) -> PropFormula:
    """Parse a propositional formula from prefix syntax."""
    stream = TokenStream(tokenize(text))
    formula = parse_prop_from(stream)
    stream.expect_end()
    return formula


def parse_prop_from(stream: TokenStream) -> PropFormula:
    kind, text, line, col = stream.next()
    if kind == "word":
        if text in _CONNECTIVES:
            raise ParseError(f"{text!r} is reserved and cannot be an atom", line, col)
        if not _is_identifier(text):
            raise ParseError(f"invalid atom name {text!r}", line, col)
        return Atom(text)
    if kind != "(":
        raise ParseError(f"expected formula, found {text!r}", line, col)
    kind, head, line, col = stream.next()
    if kind != "word" or head not in _CONNECTIVES:
        raise ParseError(f"unknown connective {head!r}", line, col)
    if head == "not":
        inner = parse_prop_from(stream)
        stream.expect(")")
        return Not(inner)
    if head in ("and", "or"):
        cls = And if head == "and" else Or
        operands = [parse_prop_from(stream), parse_prop_from(stream)]
        while stream.peek()[0] != ")":
            operands.append(parse_prop_from(stream))
        stream.expect(")")
        result = operands[-1]
        for operand in reversed(operands[:-1]):
            result = cls(operand, result)
        return result
    lhs = parse_prop_from(stream)
    rhs = parse_prop_from(stream)
    stream.expect(")")
    return Implies(lhs, rhs) if head == "implies" else Iff(lhs, rhs)


# --- CNF and satisfiability --------------------------------------------------


def cnf_clauses(formulas: list[PropFormula]) -> tuple[int, list[tuple[int, ...]]]:
    """Structural CNF of the conjunction of ``formulas``.

    Atoms get the low variable ids (sorted by name, so the encoding is
    deterministic); every composite subformula gets one auxiliary variable
    constrained to be equivalent to it.  The returned clause set is
    satisfiable iff the conjunction is.
    """
    names = sorted(set().union(*(atoms(f) for f in formulas)) if formulas else set())
    var_of: dict[str, int] = {name: i + 1 for i, name in enumerate(names)}
    counter = len(names)
    clauses: list[tuple[int, ...]] = []
    cache: dict[PropFormula, int] = {}

    def fresh() -> int:
        nonlocal counter
        counter += 1
        return counter

    def encode(node: PropFormula) -> int:
        if isinstance(node, Atom):
            return var_of[node.name]
        if node in cache:
            return cache[node]
        if isinstance(node, Not):
            var = -encode(node.inner)
        elif isinstance(node, And):
            a, b = encode(node.lhs), encode(node.rhs)
            var = fresh()
            clauses.extend([(-var, a), (-var, b), (-a, -b, var)])
        elif isinstance(node, Or):
            a, b = encode(node.lhs), encode(node.rhs)
            var = fresh()
            clauses.extend([(-var, a, b), (-a, var), (-b, var)])
        elif isinstance(node, Implies):
            a, b = encode(node.lhs), encode(node.rhs)
            var = fresh()
            clauses.extend([(-var, -a, b), (a, var), (-b, var)])
        elif isinstance(node, Iff):
            a, b = encode(node.lhs), encode(node.rhs)
            var = fresh()
            clauses.extend([(-var, -a, b), (-var, a, -b), (var, a, b), (var, -a, -b)])
        else:
            raise TypeError(f"not a propositional formula: {node!r}")
        cache[node] = var
        return var

    for formula in formulas:
        clauses.append((encode(formula),))
    return counter, clauses


def prop_satisfiable(formulas: list[PropFormula]) -> bool:
    """Whether the conjunction of the formulas has a model."""
    num_vars, clauses = cnf_clauses(formulas)
    return satisfiable(num_vars, clauses)
