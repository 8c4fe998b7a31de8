"""ALCN concept language: AST, parser, renderer, negation normal form.

Concepts are built from primitive concept names with conjunction,
disjunction, negation, value and exists restrictions over roles, and
unqualified number restrictions.  ``top`` and ``bottom`` constants round the
language out so that normalization is total (the complement of ``(atleast 0
R)``, which every individual satisfies, needs an unsatisfiable constant).

Concrete syntax is parenthesized prefix form::

    concept ::= IDENT | "top" | "bottom"
              | "(" "and" concept concept+ ")"
              | "(" "or" concept concept+ ")"
              | "(" "not" concept ")"
              | "(" "all" ROLE concept ")"
              | "(" "some" ROLE concept ")"
              | "(" "atleast" NAT ROLE ")"
              | "(" "atmost" NAT ROLE ")"

N-ary ``and``/``or`` parse to right-nested binary nodes; rendering is
strictly binary, so ``parse(render(c))`` reproduces ``c`` exactly.

All nodes are immutable and hashable; operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .sexpr import Token, TokenStream, tokenize


class Concept:
    """Base class for concept nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Top(Concept):
    pass


@dataclass(frozen=True, slots=True)
class Bottom(Concept):
    pass


@dataclass(frozen=True, slots=True)
class Primitive(Concept):
    name: str


@dataclass(frozen=True, slots=True)
class And(Concept):
    lhs: Concept
    rhs: Concept


@dataclass(frozen=True, slots=True)
class Or(Concept):
    lhs: Concept
    rhs: Concept


@dataclass(frozen=True, slots=True)
class Not(Concept):
    inner: Concept


@dataclass(frozen=True, slots=True)
class All(Concept):
    role: str
    filler: Concept


@dataclass(frozen=True, slots=True)
class Some(Concept):
    role: str
    filler: Concept


@dataclass(frozen=True, slots=True)
class AtLeast(Concept):
    n: int
    role: str


@dataclass(frozen=True, slots=True)
class AtMost(Concept):
    n: int
    role: str


TOP = Top()
BOTTOM = Bottom()


@dataclass(frozen=True, slots=True)
class TerminologicalAxiom:
    """Inclusion ``lhs -> rhs``: every instance of lhs is an instance of rhs."""

    lhs: Concept
    rhs: Concept

    def __str__(self) -> str:
        return f"{render(self.lhs)} => {render(self.rhs)}"


@dataclass(frozen=True, slots=True)
class ConceptMembership:
    individual: str
    concept: Concept

    def __str__(self) -> str:
        return f"{self.individual} : {render(self.concept)}"


@dataclass(frozen=True, slots=True)
class RoleMembership:
    subject: str
    object: str
    role: str

    def __str__(self) -> str:
        return f"({self.subject}, {self.object}) : {self.role}"


Assertion = ConceptMembership | RoleMembership

RESERVED = frozenset(
    {"top", "bottom", "and", "or", "not", "all", "some", "atleast", "atmost"}
)


def check_name(text: str, token: Token, what: str) -> str:
    if not text or not all(c.isalnum() or c == "_" for c in text):
        raise ParseError(f"invalid {what} {text!r}", token[2], token[3])
    if text in RESERVED:
        raise ParseError(f"{text!r} is reserved and cannot be a {what}", token[2], token[3])
    return text


def parse_concept(text: str) -> Concept:
    """Parse a concept expression; raises :class:`ParseError` with position."""
    stream = TokenStream(tokenize(text))
    concept = parse_concept_from(stream)
    stream.expect_end()
    return concept


def parse_concept_from(stream: TokenStream) -> Concept:
    """Parse one concept from an open token stream (shared with the KB reader)."""
    tok = stream.next()
    kind, text, line, col = tok
    if kind == "word":
        if text == "top":
            return TOP
        if text == "bottom":
            return BOTTOM
        return Primitive(check_name(text, tok, "concept name"))
    if kind != "(":
        raise ParseError(f"expected concept, found {text!r}", line, col)
    head_tok = stream.next()
    if head_tok[0] != "word":
        raise ParseError(f"expected constructor name, found {head_tok[1]!r}", head_tok[2], head_tok[3])
    head = head_tok[1]
    if head in ("and", "or"):
        cls = And if head == "and" else Or
        operands = [parse_concept_from(stream), parse_concept_from(stream)]
        while stream.peek()[0] != ")":
            operands.append(parse_concept_from(stream))
        stream.expect(")")
        result = operands[-1]
        for operand in reversed(operands[:-1]):
            result = cls(operand, result)
        return result
    if head == "not":
        inner = parse_concept_from(stream)
        stream.expect(")")
        return Not(inner)
    if head in ("all", "some"):
        role_tok = stream.next()
        role = check_name(role_tok[1], role_tok, "role name")
        filler = parse_concept_from(stream)
        stream.expect(")")
        return All(role, filler) if head == "all" else Some(role, filler)
    if head in ("atleast", "atmost"):
        n_tok = stream.next()
        n = _parse_cardinality(n_tok)
        role_tok = stream.next()
        role = check_name(role_tok[1], role_tok, "role name")
        stream.expect(")")
        return AtLeast(n, role) if head == "atleast" else AtMost(n, role)
    raise ParseError(f"unknown constructor {head!r}", head_tok[2], head_tok[3])


def _parse_cardinality(tok: Token) -> int:
    kind, text, line, col = tok
    if kind == "word" and text.lstrip("-").isdigit():
        value = int(text)
        if value < 0:
            raise ParseError(f"cardinality must be non-negative, got {value}", line, col)
        return value
    raise ParseError(f"expected a number, found {text!r}", line, col)


def render(concept: Concept) -> str:
    """Concrete syntax for a concept; inverse of :func:`parse_concept`."""
    if isinstance(concept, Top):
        return "top"
    if isinstance(concept, Bottom):
        return "bottom"
    if isinstance(concept, Primitive):
        return concept.name
    if isinstance(concept, And):
        return f"(and {render(concept.lhs)} {render(concept.rhs)})"
    if isinstance(concept, Or):
        return f"(or {render(concept.lhs)} {render(concept.rhs)})"
    if isinstance(concept, Not):
        return f"(not {render(concept.inner)})"
    if isinstance(concept, All):
        return f"(all {concept.role} {render(concept.filler)})"
    if isinstance(concept, Some):
        return f"(some {concept.role} {render(concept.filler)})"
    if isinstance(concept, AtLeast):
        return f"(atleast {concept.n} {concept.role})"
    if isinstance(concept, AtMost):
        return f"(atmost {concept.n} {concept.role})"
    raise TypeError(f"not a concept: {concept!r}")


def negate(concept: Concept) -> Concept:
    """Semantic complement, unnormalized."""
    return Not(concept)


def nnf(concept: Concept) -> Concept:
    """Negation normal form: negation only directly above primitives.

    Logically equivalent to the input and idempotent.  Complemented number
    restrictions flip around the bound: ``not (atmost n R)`` becomes
    ``(atleast n+1 R)`` and ``not (atleast n R)`` becomes ``(atmost n-1 R)``
    for positive ``n``; ``not (atleast 0 R)`` is unsatisfiable.
    """
    if isinstance(concept, (Top, Bottom, Primitive, AtLeast, AtMost)):
        return concept
    if isinstance(concept, And):
        return And(nnf(concept.lhs), nnf(concept.rhs))
    if isinstance(concept, Or):
        return Or(nnf(concept.lhs), nnf(concept.rhs))
    if isinstance(concept, All):
        return All(concept.role, nnf(concept.filler))
    if isinstance(concept, Some):
        return Some(concept.role, nnf(concept.filler))
    inner = concept.inner
    if isinstance(inner, Top):
        return BOTTOM
    if isinstance(inner, Bottom):
        return TOP
    if isinstance(inner, Primitive):
        return concept
    if isinstance(inner, Not):
        return nnf(inner.inner)
    if isinstance(inner, And):
        return Or(nnf(Not(inner.lhs)), nnf(Not(inner.rhs)))
    if isinstance(inner, Or):
        return And(nnf(Not(inner.lhs)), nnf(Not(inner.rhs)))
    if isinstance(inner, All):
        return Some(inner.role, nnf(Not(inner.filler)))
    if isinstance(inner, Some):
        return All(inner.role, nnf(Not(inner.filler)))
    if isinstance(inner, AtLeast):
        return BOTTOM if inner.n == 0 else AtMost(inner.n - 1, inner.role)
    if isinstance(inner, AtMost):
        return AtLeast(inner.n + 1, inner.role)
    raise TypeError(f"not a concept: {inner!r}")


def internalize(tbox: frozenset[TerminologicalAxiom] | set[TerminologicalAxiom]) -> Concept:
    """Global constraint equivalent to a TBox: NNF of the conjunction of
    ``(not lhs) or rhs`` over all axioms, ``top`` for an empty TBox.

    Axioms are ordered by their rendered text so the result is deterministic
    for set inputs.
    """
    ordered = sorted(tbox, key=str)
    if not ordered:
        return TOP
    disjunctions = [nnf(Or(Not(ax.lhs), ax.rhs)) for ax in ordered]
    result = disjunctions[-1]
    for disj in reversed(disjunctions[:-1]):
        result = And(disj, result)
    return result
