"""Minimization, isomorphism and language equivalence.

``minimize_refine`` and ``minimize_brzozowski`` share no code beyond the
automaton types, and ``are_equivalent`` uses neither, so the three can be
used to check one another.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from . import kernels
from .automata import AutomatonError, Dfa, determinize, reverse
from .operations import BooleanOp, boolean_product


def trim(d: Dfa) -> Dfa:
    """Drop unreachable states and renumber the rest in BFS (letter) order."""
    order = kernels.reach_bfs(d.delta, d.initial)
    if len(order) == d.n and np.array_equal(order, np.arange(d.n)):
        return d
    new_id = np.full(d.n, -1, dtype=np.int64)
    new_id[order] = np.arange(len(order))
    table = new_id[d.delta[order]]
    finals = frozenset(int(new_id[q]) for q in d.finals if new_id[q] >= 0)
    return Dfa(len(order), d.alphabet, table, 0, finals)


def partition(d: Dfa) -> tuple[np.ndarray, int]:
    """Block id per state of ``d`` under Nerode equivalence, plus the block count."""
    return kernels.refine_partition(d.delta, d.final_mask)


def minimize_refine(d: Dfa) -> Dfa:
    d = trim(d)
    blocks, count = partition(d)
    _, reps = np.unique(blocks, return_index=True)
    table = blocks[d.delta[reps]]
    finals = frozenset(int(b) for b in np.unique(blocks[list(d.finals)])) if d.finals else frozenset()
    return Dfa(int(count), d.alphabet, table, int(blocks[d.initial]), finals)


def minimize_brzozowski(d: Dfa) -> Dfa:
    """Double reversal and subset construction.

    The first pass is subject to the usual determinization cap. The second
    runs on the reverse of an accessible DFA, whose subset construction
    cannot outgrow the minimal automaton, so it is allowed any input width.
    """
    first = determinize(reverse(d))
    return determinize(reverse(first), cap=first.n)


def are_isomorphic(d1: Dfa, d2: Dfa) -> bool:
    """Parallel BFS from the initial pair; states unreachable from it must not exist."""
    if d1.alphabet != d2.alphabet:
        raise AutomatonError(f"alphabet mismatch: {d1.alphabet} vs {d2.alphabet}")
    if d1.n != d2.n:
        return False
    fwd = {d1.initial: d2.initial}
    back = {d2.initial: d1.initial}
    queue = deque([d1.initial])
    f1, f2 = d1.finals, d2.finals
    while queue:
        p = queue.popleft()
        q = fwd[p]
        if (p in f1) != (q in f2):
            return False
        for p2, q2 in zip(d1.delta[p].tolist(), d2.delta[q].tolist()):
            seen = fwd.get(p2)
            if seen is None:
                if q2 in back:
                    return False
                fwd[p2] = q2
                back[q2] = p2
                queue.append(p2)
            elif seen != q2:
                return False
    return len(fwd) == d1.n


def are_equivalent(d1: Dfa, d2: Dfa) -> bool:
    """Language equality: the symmetric-difference product has no reachable final state."""
    if d1.alphabet != d2.alphabet:
        raise AutomatonError(f"alphabet mismatch: {d1.alphabet} vs {d2.alphabet}")
    return not boolean_product(d1, d2, BooleanOp.SYMMETRIC_DIFFERENCE).finals
