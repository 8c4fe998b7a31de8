"""Completion-rule (tableau) consistency procedure for ALCN knowledge bases.

The TBox is internalized into one global constraint added to every node, so
axioms may carry arbitrary concepts on both sides.  Rules fire in a fixed
priority, disjunction and merge choices backtrack chronologically, and
generated nodes stop producing successors when an ancestor carries exactly
the same label (equality blocking); named individuals are never blocked and
never merged into generated ones.  The unique name assumption is built in:
all named individuals start pairwise distinct.

Termination of the rule engine is backed by explicit resource caps; hitting
a cap raises :class:`ResourceLimitExceeded`, a third outcome distinct from
both verdicts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import concepts as cl
from .concepts import (
    All,
    Assertion,
    AtLeast,
    AtMost,
    Bottom,
    Concept,
    ConceptMembership,
    Not,
    Or,
    Primitive,
    RoleMembership,
    Some,
    TerminologicalAxiom,
    Top,
    internalize,
    nnf,
)
from .errors import ResourceLimitExceeded

TraceSink = Callable[[str, int], None]

DEFAULT_NODE_CAP = 100_000
DEFAULT_FIRING_CAP = 1_000_000


@dataclass
class TableauStats:
    """Instrumentation counters for one consistency check."""

    nodes_created: int = 0
    rule_firings: int = 0
    merges: int = 0
    named_merges: int = 0  # must stay zero: named individuals are never merged


@dataclass
class _Budget:
    node_cap: int
    firing_cap: int
    stats: TableauStats
    trace: TraceSink | None

    def fire(self, rule: str, node: int) -> None:
        self.stats.rule_firings += 1
        if self.stats.rule_firings > self.firing_cap:
            raise ResourceLimitExceeded(
                f"rule-firing cap of {self.firing_cap} exceeded"
            )
        if self.trace is not None:
            self.trace(rule, node)

    def created(self) -> None:
        self.stats.nodes_created += 1
        if self.stats.nodes_created > self.node_cap:
            raise ResourceLimitExceeded(f"node cap of {self.node_cap} exceeded")


class CompletionGraph:
    """Tableau working state: individuals, labels, role edges, inequalities.

    Node ids are ints; named individuals keep their ABox name in
    ``name_of``.  Labels hold NNF concepts in insertion order (dict keys),
    which keeps every scan deterministic.
    """

    __slots__ = ("order", "labels", "edges", "distinct", "named", "parent", "name_of", "next_id")

    def __init__(self) -> None:
        self.order: list[int] = []
        self.labels: dict[int, dict[Concept, None]] = {}
        self.edges: dict[int, dict[str, list[int]]] = {}
        self.distinct: set[frozenset[int]] = set()
        self.named: set[int] = set()
        self.parent: dict[int, int | None] = {}
        self.name_of: dict[int, str] = {}
        self.next_id = 0

    # -- construction ---------------------------------------------------

    def add_node(self, name: str | None, parent: int | None) -> int:
        nid = self.next_id
        self.next_id += 1
        self.order.append(nid)
        self.labels[nid] = {}
        self.edges[nid] = {}
        self.parent[nid] = parent
        if name is not None:
            self.named.add(nid)
            self.name_of[nid] = name
        return nid

    def add_concept(self, node: int, concept: Concept) -> bool:
        if concept in self.labels[node]:
            return False
        self.labels[node][concept] = None
        return True

    def add_edge(self, src: int, role: str, dst: int) -> None:
        targets = self.edges[src].setdefault(role, [])
        if dst not in targets:
            targets.append(dst)

    def successors(self, node: int, role: str) -> list[int]:
        return self.edges[node].get(role, [])

    def clone(self) -> "CompletionGraph":
        g = CompletionGraph()
        g.order = list(self.order)
        g.labels = {n: dict(lbl) for n, lbl in self.labels.items()}
        g.edges = {n: {r: list(ts) for r, ts in roles.items()} for n, roles in self.edges.items()}
        g.distinct = set(self.distinct)
        g.named = set(self.named)
        g.parent = dict(self.parent)
        g.name_of = dict(self.name_of)
        g.next_id = self.next_id
        return g

    # -- queries ----------------------------------------------------------

    def label_set(self, node: int) -> frozenset[Concept]:
        return frozenset(self.labels[node])

    def is_blocked(self, node: int) -> bool:
        """Generated node with an ancestor carrying exactly the same label."""
        if node in self.named:
            return False
        own = self.label_set(node)
        seen = {node}
        ancestor = self.parent.get(node)
        while ancestor is not None and ancestor not in seen:
            seen.add(ancestor)
            if self.label_set(ancestor) == own:
                return True
            ancestor = self.parent.get(ancestor)
        return False

    def pairwise_distinct_subset(self, nodes: list[int], size: int) -> bool:
        """Whether some ``size`` nodes of ``nodes`` are pairwise distinct."""
        if size <= 1:
            return len(nodes) >= size
        if len(nodes) < size:
            return False
        for combo in itertools.combinations(nodes, size):
            if all(
                frozenset((a, b)) in self.distinct
                for a, b in itertools.combinations(combo, 2)
            ):
                return True
        return False

    def merge(self, victim: int, survivor: int, stats: TableauStats) -> None:
        """Identify ``victim`` with ``survivor`` (victim disappears)."""
        if victim in self.named and survivor in self.named:
            stats.named_merges += 1  # policy violation; counted, not silently ignored
        stats.merges += 1
        self.labels[survivor].update(self.labels[victim])
        del self.labels[victim]
        victim_parent = self.parent.pop(victim)
        for node, par in list(self.parent.items()):
            if par == victim:
                self.parent[node] = victim_parent if node == survivor else survivor
        outgoing = self.edges.pop(victim)
        for role, targets in outgoing.items():
            for dst in targets:
                self.add_edge(survivor, role, dst if dst != victim else survivor)
        for node, roles in self.edges.items():
            for role, targets in roles.items():
                if victim in targets:
                    replaced = [survivor if t == victim else t for t in targets]
                    deduped: list[int] = []
                    for t in replaced:
                        if t not in deduped:
                            deduped.append(t)
                    roles[role] = deduped
        for pair in [p for p in self.distinct if victim in p]:
            self.distinct.discard(pair)
            (other,) = pair - {victim}
            self.distinct.add(frozenset((other, survivor)))
        self.order.remove(victim)
        self.named.discard(victim)
        self.name_of.pop(victim, None)


@dataclass(frozen=True)
class ConsistencyVerdict:
    """Outcome of a consistency check.

    ``witness`` is a complete, clash-free completion graph when consistent
    and ``None`` otherwise; ``stats`` carries the instrumentation counters.
    """

    consistent: bool
    witness: CompletionGraph | None
    stats: TableauStats


def check_consistency(
    tbox: Iterable[TerminologicalAxiom],
    abox: Iterable[Assertion],
    *,
    node_cap: int = DEFAULT_NODE_CAP,
    firing_cap: int = DEFAULT_FIRING_CAP,
    trace: TraceSink | None = None,
) -> ConsistencyVerdict:
    """Decide whether the TBox plus ABox has a model under unique names."""
    tbox = frozenset(tbox)
    abox_list = sorted(abox, key=str)
    global_concept = internalize(tbox)
    stats = TableauStats()
    budget = _Budget(node_cap, firing_cap, stats, trace)

    g = CompletionGraph()
    names = sorted(
        {a.individual for a in abox_list if isinstance(a, ConceptMembership)}
        | {n for a in abox_list if isinstance(a, RoleMembership) for n in (a.subject, a.object)}
    )
    id_of: dict[str, int] = {}
    for name in names:
        id_of[name] = g.add_node(name, None)
        budget.created()
    if not names:
        # Interpretation domains are non-empty; seed one anonymous individual
        # so a contradictory TBox is detected even with an empty ABox.
        g.add_node(None, None)
        budget.created()
    for a, b in itertools.combinations(sorted(id_of.values()), 2):
        g.distinct.add(frozenset((a, b)))
    for assertion in abox_list:
        if isinstance(assertion, ConceptMembership):
            g.add_concept(id_of[assertion.individual], nnf(assertion.concept))
        else:
            g.add_edge(id_of[assertion.subject], assertion.role, id_of[assertion.object])
    if not isinstance(global_concept, Top):
        for node in g.order:
            g.add_concept(node, global_concept)

    witness = _search(g, global_concept, budget)
    return ConsistencyVerdict(witness is not None, witness, stats)


def is_subsumed(
    tbox: Iterable[TerminologicalAxiom],
    sub: Concept,
    sup: Concept,
    abox: Iterable[Assertion] = (),
    **caps,
) -> bool:
    """Whether every instance of ``sub`` is an instance of ``sup``.

    Reduces to inconsistency of a fresh individual in ``sub and (not sup)``
    added to the knowledge base.
    """
    abox_list = list(abox)
    fresh = _fresh_individual(abox_list)
    probe = ConceptMembership(fresh, cl.And(sub, Not(sup)))
    return not check_consistency(tbox, abox_list + [probe], **caps).consistent


def is_instance(
    tbox: Iterable[TerminologicalAxiom],
    abox: Iterable[Assertion],
    query: Assertion,
    **caps,
) -> bool:
    """Whether the knowledge base entails the membership assertion."""
    abox_list = list(abox)
    if isinstance(query, ConceptMembership):
        probe = ConceptMembership(query.individual, Not(query.concept))
        return not check_consistency(tbox, abox_list + [probe], **caps).consistent
    # With unique names and no role constructors, a role assertion between
    # named individuals is entailed only when asserted or when the KB has no
    # model at all.
    if query in abox_list:
        return True
    return not check_consistency(tbox, abox_list, **caps).consistent


def _fresh_individual(abox: list[Assertion]) -> str:
    used = set()
    for a in abox:
        if isinstance(a, ConceptMembership):
            used.add(a.individual)
        else:
            used.update((a.subject, a.object))
    candidate = "_x"
    counter = 0
    while candidate in used:
        counter += 1
        candidate = f"_x{counter}"
    return candidate


# -- rule engine -----------------------------------------------------------


def find_clash(g: CompletionGraph) -> bool:
    for node in g.order:
        label = g.labels[node]
        for concept in label:
            if isinstance(concept, Bottom):
                return True
            if isinstance(concept, Not) and concept.inner in label:
                return True
            if isinstance(concept, AtMost):
                succ = g.successors(node, concept.role)
                if len(succ) > concept.n and g.pairwise_distinct_subset(succ, concept.n + 1):
                    return True
    return False


def find_applicable_rule(g: CompletionGraph) -> tuple[str, int, Concept] | None:
    """First applicable rule in priority order, or None when complete.

    Exposed so tests can verify that a consistency witness really is
    complete.  Priority: conjunction, value restriction, disjunction, merge,
    exists restriction, at-least restriction.
    """
    for node in g.order:
        for concept in g.labels[node]:
            if isinstance(concept, cl.And) and (
                concept.lhs not in g.labels[node] or concept.rhs not in g.labels[node]
            ):
                return ("and", node, concept)
    for node in g.order:
        for concept in g.labels[node]:
            if isinstance(concept, All) and any(
                concept.filler not in g.labels[y] for y in g.successors(node, concept.role)
            ):
                return ("all", node, concept)
    for node in g.order:
        for concept in g.labels[node]:
            if isinstance(concept, Or) and (
                concept.lhs not in g.labels[node] and concept.rhs not in g.labels[node]
            ):
                return ("or", node, concept)
    for node in g.order:
        for concept in g.labels[node]:
            if isinstance(concept, AtMost):
                succ = g.successors(node, concept.role)
                if len(succ) > concept.n and _mergeable_pairs(g, succ):
                    return ("atmost", node, concept)
    for node in g.order:
        if g.is_blocked(node):
            continue
        for concept in g.labels[node]:
            if isinstance(concept, Some) and not any(
                concept.filler in g.labels[y] for y in g.successors(node, concept.role)
            ):
                return ("some", node, concept)
            if isinstance(concept, AtLeast) and concept.n > 0:
                succ = g.successors(node, concept.role)
                if not g.pairwise_distinct_subset(succ, concept.n):
                    return ("atleast", node, concept)
    return None


def _mergeable_pairs(g: CompletionGraph, successors: list[int]) -> list[tuple[int, int]]:
    pairs = []
    for a, b in itertools.combinations(successors, 2):
        if frozenset((a, b)) not in g.distinct:
            pairs.append((a, b))
    return pairs


def _search(g: CompletionGraph, global_concept: Concept, budget: _Budget) -> CompletionGraph | None:
    """Depth-first expansion; returns a complete clash-free graph or None."""
    while True:
        if find_clash(g):
            return None
        found = find_applicable_rule(g)
        if found is None:
            return g
        rule, node, concept = found
        if rule == "and":
            budget.fire(rule, node)
            g.add_concept(node, concept.lhs)
            g.add_concept(node, concept.rhs)
        elif rule == "all":
            budget.fire(rule, node)
            for y in g.successors(node, concept.role):
                g.add_concept(y, concept.filler)
        elif rule == "or":
            budget.fire(rule, node)
            for disjunct in (concept.lhs, concept.rhs):
                branch = g.clone()
                branch.add_concept(node, disjunct)
                result = _search(branch, global_concept, budget)
                if result is not None:
                    return result
            return None
        elif rule == "atmost":
            budget.fire(rule, node)
            succ = g.successors(node, concept.role)
            for a, b in _mergeable_pairs(g, succ):
                # Keep the named node when merging a generated one into it;
                # otherwise keep the earlier-created node.
                victim, survivor = (a, b) if b in g.named and a not in g.named else (b, a)
                branch = g.clone()
                branch.merge(victim, survivor, budget.stats)
                result = _search(branch, global_concept, budget)
                if result is not None:
                    return result
            return None
        elif rule == "some":
            budget.fire(rule, node)
            child = g.add_node(None, node)
            budget.created()
            g.add_edge(node, concept.role, child)
            g.add_concept(child, concept.filler)
            if not isinstance(global_concept, Top):
                g.add_concept(child, global_concept)
        elif rule == "atleast":
            budget.fire(rule, node)
            children = []
            for _ in range(concept.n):
                child = g.add_node(None, node)
                budget.created()
                g.add_edge(node, concept.role, child)
                if not isinstance(global_concept, Top):
                    g.add_concept(child, global_concept)
                children.append(child)
            for a, b in itertools.combinations(children, 2):
                g.distinct.add(frozenset((a, b)))
        else:  # pragma: no cover
            raise AssertionError(f"unknown rule {rule}")
