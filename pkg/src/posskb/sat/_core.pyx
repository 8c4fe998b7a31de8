# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled DPLL satisfiability kernel.

Same contract as ``posskb.sat._pure.satisfiable``: clauses are sequences of
nonzero DIMACS-style literals over variables 1..num_vars.  The solver runs
unit propagation to fixpoint and branches on the first unassigned variable
of the first unsatisfied clause, with chronological backtracking on an
explicit trail.
"""

from libc.stdlib cimport malloc, free

BACKEND_NAME = "compiled"


cdef struct Solver:
    int num_vars
    int num_clauses
    int *lits          # flattened literals
    int *start         # clause i occupies lits[start[i]:start[i+1]]
    signed char *assign  # index 1..num_vars: 0 unknown, 1 true, -1 false
    int *trail
    int trail_len


cdef bint _propagate(Solver *s, int trail_mark) noexcept:
    """Unit propagation to fixpoint; returns False on conflict."""
    cdef bint changed = True
    cdef int i, j, lit, var, last, unassigned
    cdef bint satisfied
    cdef signed char value
    while changed:
        changed = False
        for i in range(s.num_clauses):
            satisfied = False
            unassigned = 0
            last = 0
            for j in range(s.start[i], s.start[i + 1]):
                lit = s.lits[j]
                var = lit if lit > 0 else -lit
                value = s.assign[var]
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
                var = last if last > 0 else -last
                s.assign[var] = 1 if last > 0 else -1
                s.trail[s.trail_len] = var
                s.trail_len += 1
                changed = True
    return True


cdef int _pick_branch(Solver *s) noexcept:
    cdef int i, j, lit, var, candidate
    cdef bint satisfied
    cdef signed char value
    for i in range(s.num_clauses):
        candidate = 0
        satisfied = False
        for j in range(s.start[i], s.start[i + 1]):
            lit = s.lits[j]
            var = lit if lit > 0 else -lit
            value = s.assign[var]
            if value == 0:
                if candidate == 0:
                    candidate = var
            elif (value > 0) == (lit > 0):
                satisfied = True
                break
        if not satisfied and candidate != 0:
            return candidate
    return 0


cdef bint _solve(Solver *s) noexcept:
    cdef int mark = s.trail_len
    cdef int var, k
    if not _propagate(s, mark):
        for k in range(mark, s.trail_len):
            s.assign[s.trail[k]] = 0
        s.trail_len = mark
        return False
    var = _pick_branch(s)
    if var == 0:
        return True
    s.assign[var] = 1
    if _solve(s):
        return True
    s.assign[var] = -1
    if _solve(s):
        return True
    s.assign[var] = 0
    for k in range(mark, s.trail_len):
        s.assign[s.trail[k]] = 0
    s.trail_len = mark
    return False


def satisfiable(int num_vars, clauses):
    """Decide satisfiability of the clause set."""
    cdef int num_clauses = len(clauses)
    cdef int total = 0
    cdef int i, j, lit
    for clause in clauses:
        if len(clause) == 0:
            return False
        total += len(clause)

    cdef Solver s
    s.num_vars = num_vars
    s.num_clauses = num_clauses
    s.lits = <int *> malloc(total * sizeof(int))
    s.start = <int *> malloc((num_clauses + 1) * sizeof(int))
    s.assign = <signed char *> malloc((num_vars + 1) * sizeof(signed char))
    s.trail = <int *> malloc((num_vars + 1) * sizeof(int))
    if s.lits == NULL or s.start == NULL or s.assign == NULL or s.trail == NULL:
        _release(&s)
        raise MemoryError()
    s.trail_len = 0
    for i in range(num_vars + 1):
        s.assign[i] = 0
    j = 0
    for i, clause in enumerate(clauses):
        s.start[i] = j
        for lit in clause:
            if lit == 0 or lit < -num_vars or lit > num_vars:
                _release(&s)
                raise ValueError(f"literal {lit} out of range for {num_vars} variables")
            s.lits[j] = lit
            j += 1
    s.start[num_clauses] = j

    try:
        return bool(_solve(&s))
    finally:
        _release(&s)


cdef void _release(Solver *s) noexcept:
    if s.lits != NULL:
        free(s.lits)
    if s.start != NULL:
        free(s.start)
    if s.assign != NULL:
        free(s.assign)
    if s.trail != NULL:
        free(s.trail)
