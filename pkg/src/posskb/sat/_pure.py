"""Pure-Python DPLL satisfiability kernel.

Reference implementation for the compiled core: identical interface,
identical verdicts.  Clauses are tuples of nonzero DIMACS-style literals
(positive = variable true, negative = false) over variables ``1..num_vars``.
"""

from __future__ import annotations

from typing import Sequence

BACKEND_NAME = "pure"


def satisfiable(num_vars: int, clauses: Sequence[Sequence[int]]) -> bool:
    """Decide satisfiability with unit propagation and chronological search."""
    assign: list[int] = [0] * (num_vars + 1)  # 0 unknown, 1 true, -1 false
    clause_list = [tuple(c) for c in clauses]
    if any(len(c) == 0 for c in clause_list):
        return False
    return _solve(clause_list, assign)


def _propagate(clauses: list[tuple[int, ...]], assign: list[int], trail: list[int]) -> bool:
    changed = True
    while changed:
        changed = False
        for clause in clauses:
            unassigned = 0
            last = 0
            satisfied = False
            for lit in clause:
                value = assign[abs(lit)]
                if value == 0:
                    unassigned += 1
                    last = lit
                elif (value > 0) == (lit > 0):
                    satisfied = True
                    break
            if satisfied:
                continue
            if unassigned == 0:
                return False
            if unassigned == 1:
                assign[abs(last)] = 1 if last > 0 else -1
                trail.append(abs(last))
                changed = True
    return True


def _solve(clauses: list[tuple[int, ...]], assign: list[int]) -> bool:
    trail: list[int] = []
    if not _propagate(clauses, assign, trail):
        for var in trail:
            assign[var] = 0
        return False
    var = _pick_branch(clauses, assign)
    if var == 0:
        return True
    for value in (1, -1):
        assign[var] = value
        if _solve(clauses, assign):
            return True
        assign[var] = 0
    for v in trail:
        assign[v] = 0
    return False


def _pick_branch(clauses: list[tuple[int, ...]], assign: list[int]) -> int:
    # First unassigned variable of the first unsatisfied clause: deterministic,
    # and skips variables occurring only in already-satisfied clauses.
    for clause in clauses:
        candidate = 0
        satisfied = False
        for lit in clause:
            value = assign[abs(lit)]
            if value == 0:
                if candidate == 0:
                    candidate = abs(lit)
            elif (value > 0) == (lit > 0):
                satisfied = True
                break
        if not satisfied and candidate:
            return candidate
    return 0
