"""Boolean products, concatenation and star."""

from __future__ import annotations

import enum

import numpy as np

from . import kernels
from .automata import Automaton, AutomatonError, CapExceededError, Dfa, Nfa, as_nfa

PRODUCT_CAP = 1 << 26


class BooleanOp(enum.Enum):
    UNION = "union"
    INTERSECTION = "intersection"
    DIFFERENCE = "difference"
    SYMMETRIC_DIFFERENCE = "symdiff"

    def holds(self, left, right):
        """Finality of a pair; works elementwise on numpy bool arrays too."""
        if self is BooleanOp.UNION:
            return left | right
        if self is BooleanOp.INTERSECTION:
            return left & right
        if self is BooleanOp.DIFFERENCE:
            return left & ~right if isinstance(left, np.ndarray) else left and not right
        return left ^ right


def _same_alphabet(a: Automaton, b: Automaton) -> None:
    if a.alphabet != b.alphabet:
        raise AutomatonError(f"alphabet mismatch: {a.alphabet} vs {b.alphabet}")


def boolean_product(d1: Dfa, d2: Dfa, op: BooleanOp) -> Dfa:
    """Accessible direct product; ``labels`` holds the reachable ``(p, q)`` pairs."""
    _same_alphabet(d1, d2)
    if d1.n * d2.n > PRODUCT_CAP:
        raise CapExceededError("product states", d1.n * d2.n, PRODUCT_CAP)
    left, right, table = kernels.product_bfs(d1.delta, d2.delta, d1.initial, d2.initial)
    final = op.holds(d1.final_mask[left], d2.final_mask[right])
    pairs = np.column_stack([left, right])
    pairs.setflags(write=False)
    return Dfa(len(left), d1.alphabet, table, 0, frozenset(np.flatnonzero(final).tolist()), labels=pairs)


def concatenate(left: Automaton, right: Automaton) -> Nfa:
    """NFA for ``L(left) L(right)`` on the disjoint union of the two state sets.

    Right-hand states are shifted by ``left.n``. Every left transition that
    lands on a left final state gets a twin landing on each right initial
    state, so no epsilon moves are needed.
    """
    _same_alphabet(left, right)
    a, b = as_nfa(left), as_nfa(right)
    shift = a.n
    b_init = frozenset(q + shift for q in b.initials)
    rows = []
    for row in a.delta:
        rows.append(tuple(cell | b_init if not cell.isdisjoint(a.finals) else cell for cell in row))
    for row in b.delta:
        rows.append(tuple(frozenset(q + shift for q in cell) for cell in row))
    initials = set(a.initials)
    if not a.initials.isdisjoint(a.finals):
        initials |= b_init
    finals = frozenset(q + shift for q in b.finals)
    return Nfa(a.n + b.n, a.alphabet, tuple(rows), frozenset(initials), finals)


def star(machine: Automaton) -> Nfa:
    """NFA for ``L(machine)*`` with one extra state ``n``, the sole initial state.

    The extra state is final and has the union of the moves of the initial
    states; every transition into a final state also goes to each initial
    state.
    """
    nf = as_nfa(machine)
    k = len(nf.alphabet)
    rows = []
    for row in nf.delta:
        rows.append(tuple(cell | nf.initials if not cell.isdisjoint(nf.finals) else cell for cell in row))
    fresh = tuple(frozenset().union(*(rows[q][i] for q in nf.initials)) for i in range(k))
    rows.append(fresh)
    return Nfa(nf.n + 1, nf.alphabet, tuple(rows), frozenset((nf.n,)), nf.finals | {nf.n})
