"""Complete DFAs, epsilon-free NFAs, and the basic maps between them."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from . import kernels

DEFAULT_MAX_N = 24
MAX_N_ENV = "WITNESSLAB_MAX_N"


class AutomatonError(ValueError):
    """Malformed automaton, bad word, or incompatible operands."""


class CapExceededError(AutomatonError):
    """A construction would exceed a configured size cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


def max_determinize_n() -> int:
    """Largest NFA accepted by :func:`determinize` (``WITNESSLAB_MAX_N``, clamped to 24)."""
    raw = os.environ.get(MAX_N_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_MAX_N
    try:
        value = int(raw)
    except ValueError:
        raise AutomatonError(f"{MAX_N_ENV} must be an integer, got {raw!r}") from None
    return max(1, min(value, DEFAULT_MAX_N))


def _check_alphabet(alphabet: Iterable[str]) -> tuple[str, ...]:
    letters = tuple(alphabet)
    if len(set(letters)) != len(letters):
        raise AutomatonError(f"duplicate letters in alphabet {letters!r}")
    return letters


def _check_states(states: Iterable[int], n: int, what: str) -> frozenset[int]:
    out = frozenset(int(s) for s in states)
    bad = sorted(s for s in out if not 0 <= s < n)
    if bad:
        raise AutomatonError(f"{what} {bad} out of range for {n} states")
    return out


@dataclass(frozen=True, eq=False)
class Dfa:
    """Complete deterministic automaton on states ``0..n-1``.

    ``delta[q, i]`` is the successor of ``q`` on ``alphabet[i]``. ``labels``
    is diagnostic metadata left by the constructions (subset bitmasks after
    :func:`determinize`, ``(left, right)`` pairs after a product) and takes no
    part in equality.
    """

    n: int
    alphabet: tuple[str, ...]
    delta: np.ndarray
    initial: int
    finals: frozenset[int]
    labels: object = field(default=None, repr=False)

    def __post_init__(self):
        alphabet = _check_alphabet(self.alphabet)
        delta = np.array(self.delta, dtype=np.int32, copy=True)
        if self.n < 1:
            raise AutomatonError("a DFA needs at least one state")
        if delta.shape != (self.n, len(alphabet)):
            raise AutomatonError(
                f"transition table has shape {delta.shape}, expected {(self.n, len(alphabet))}"
            )
        if delta.size and (delta.min() < 0 or delta.max() >= self.n):
            raise AutomatonError(f"transition target out of range for {self.n} states")
        if not 0 <= self.initial < self.n:
            raise AutomatonError(f"initial state {self.initial} out of range")
        delta.setflags(write=False)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "initial", int(self.initial))
        object.__setattr__(self, "finals", _check_states(self.finals, self.n, "final states"))

    def __eq__(self, other):
        if not isinstance(other, Dfa):
            return NotImplemented
        return (
            self.n == other.n
            and self.alphabet == other.alphabet
            and self.initial == other.initial
            and self.finals == other.finals
            and np.array_equal(self.delta, other.delta)
        )

    def __hash__(self):
        return hash((self.n, self.alphabet, self.initial, self.finals, self.delta.tobytes()))

    @property
    def final_mask(self) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        mask[list(self.finals)] = True
        return mask

    def letter_index(self, letter: str) -> int:
        try:
            return self.alphabet.index(letter)
        except ValueError:
            raise AutomatonError(f"letter {letter!r} not in alphabet {self.alphabet}") from None

    def step(self, state: int, letter: str) -> int:
        return int(self.delta[state, self.letter_index(letter)])


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton without epsilon moves.

    ``delta[q][i]`` is the set of successors of ``q`` on ``alphabet[i]``.
    An empty ``initials`` set is allowed and gives the empty language.
    """

    n: int
    alphabet: tuple[str, ...]
    delta: tuple[tuple[frozenset[int], ...], ...]
    initials: frozenset[int]
    finals: frozenset[int]

    def __post_init__(self):
        alphabet = _check_alphabet(self.alphabet)
        k = len(alphabet)
        rows = tuple(tuple(frozenset(int(t) for t in cell) for cell in row) for row in self.delta)
        if len(rows) != self.n or any(len(row) != k for row in rows):
            raise AutomatonError(f"NFA table must be {self.n} rows of {k} successor sets")
        for row in rows:
            for cell in row:
                _check_states(cell, self.n, "transition target")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "delta", rows)
        object.__setattr__(self, "initials", _check_states(self.initials, self.n, "initial states"))
        object.__setattr__(self, "finals", _check_states(self.finals, self.n, "final states"))

    def letter_index(self, letter: str) -> int:
        try:
            return self.alphabet.index(letter)
        except ValueError:
            raise AutomatonError(f"letter {letter!r} not in alphabet {self.alphabet}") from None

    def masks(self) -> np.ndarray:
        """Successor sets as an ``(n, |alphabet|)`` array of int64 bitmasks."""
        if self.n > 62:
            raise CapExceededError("bitmask width", self.n, 62)
        out = np.zeros((self.n, len(self.alphabet)), dtype=np.int64)
        for q, row in enumerate(self.delta):
            for i, cell in enumerate(row):
                out[q, i] = to_mask(cell)
        return out


Automaton = Union[Dfa, Nfa]
Word = Union[str, Sequence[str]]


def to_mask(states: Iterable[int]) -> int:
    mask = 0
    for s in states:
        mask |= 1 << int(s)
    return mask


def from_mask(mask: int) -> frozenset[int]:
    mask = int(mask)
    out = []
    q = 0
    while mask:
        if mask & 1:
            out.append(q)
        mask >>= 1
        q += 1
    return frozenset(out)


def make_dfa(
    n: int,
    alphabet: Sequence[str],
    delta: Union[Mapping[tuple[int, str], int], Sequence[Sequence[int]], np.ndarray],
    initial: int,
    finals: Iterable[int],
) -> Dfa:
    """Validate and build a :class:`Dfa`.

    ``delta`` is either a mapping ``(state, letter) -> state`` that must be
    total, or a row-major table with one column per letter in alphabet order.
    """
    alphabet = _check_alphabet(alphabet)
    if isinstance(delta, Mapping):
        table = np.empty((n, len(alphabet)), dtype=np.int64)
        for q in range(n):
            for i, x in enumerate(alphabet):
                if (q, x) not in delta:
                    raise AutomatonError(f"transition table is partial: no move from {q} on {x!r}")
                table[q, i] = delta[(q, x)]
        extra = [key for key in delta if not (0 <= key[0] < n and key[1] in alphabet)]
        if extra:
            raise AutomatonError(f"transitions for unknown states or letters: {extra}")
    else:
        table = np.asarray(delta, dtype=np.int64)
        if table.shape != (n, len(alphabet)):
            raise AutomatonError(f"transition table has shape {table.shape}, expected {(n, len(alphabet))}")
    if table.size and (table.min() < 0 or table.max() >= n):
        raise AutomatonError(f"transition target out of range for {n} states")
    return Dfa(n, alphabet, table, initial, frozenset(finals))


def make_nfa(n, alphabet, delta, initials, finals) -> Nfa:
    return Nfa(n, tuple(alphabet), delta, frozenset(initials), frozenset(finals))


def as_nfa(machine: Automaton) -> Nfa:
    if isinstance(machine, Nfa):
        return machine
    rows = tuple(tuple(frozenset((int(t),)) for t in row) for row in machine.delta)
    return Nfa(machine.n, machine.alphabet, rows, frozenset((machine.initial,)), machine.finals)


def accepts(machine: Automaton, word: Word) -> bool:
    if isinstance(machine, Dfa):
        q = machine.initial
        for x in word:
            q = machine.delta[q, machine.letter_index(x)]
        return int(q) in machine.finals
    current = set(machine.initials)
    for x in word:
        i = machine.letter_index(x)
        nxt: set[int] = set()
        for q in current:
            nxt |= machine.delta[q][i]
        current = nxt
    return not current.isdisjoint(machine.finals)


def reverse(machine: Automaton) -> Nfa:
    """Swap initial and final states and flip every transition."""
    nf = as_nfa(machine)
    k = len(nf.alphabet)
    pre: list[list[set[int]]] = [[set() for _ in range(k)] for _ in range(nf.n)]
    for p, row in enumerate(nf.delta):
        for i, cell in enumerate(row):
            for q in cell:
                pre[q][i].add(p)
    return Nfa(nf.n, nf.alphabet, pre, nf.finals, nf.initials)


def determinize(nf: Automaton, cap: Optional[int] = None) -> Dfa:
    """Accessible subset construction.

    States of the result are the reachable subsets in breadth-first order;
    ``result.labels`` holds their bitmasks. The empty subset, if reached, is
    kept as an ordinary dead state. Inputs with more than ``cap`` states
    (default :func:`max_determinize_n`) are refused.
    """
    nf = as_nfa(nf)
    cap = max_determinize_n() if cap is None else cap
    if nf.n > cap:
        raise CapExceededError("determinize input states", nf.n, cap)
    if nf.n <= DEFAULT_MAX_N:
        subsets, table = kernels.subset_bfs(nf.masks(), np.int64(to_mask(nf.initials)), nf.n)
        final_mask = to_mask(nf.finals)
        finals = np.flatnonzero((subsets & final_mask) != 0).tolist()
        subsets.setflags(write=False)
        labels = subsets
    else:
        labels, table = _subset_bfs_sparse(nf)
        final_mask = to_mask(nf.finals)
        finals = [i for i, s in enumerate(labels) if s & final_mask]
    return Dfa(len(labels), nf.alphabet, table, 0, frozenset(finals), labels=labels)


def _subset_bfs_sparse(nf: Nfa) -> tuple[tuple[int, ...], np.ndarray]:
    """Dictionary-indexed subset construction for machines too wide for the dense kernel."""
    k = len(nf.alphabet)
    masks = [[to_mask(cell) for cell in row] for row in nf.delta]
    start = to_mask(nf.initials)
    index = {start: 0}
    subsets = [start]
    rows = []
    head = 0
    while head < len(subsets):
        s = subsets[head]
        row = []
        for x in range(k):
            img = 0
            for q in from_mask(s):
                img |= masks[q][x]
            j = index.get(img)
            if j is None:
                j = index[img] = len(subsets)
                subsets.append(img)
            row.append(j)
        rows.append(row)
        head += 1
    return tuple(subsets), np.array(rows, dtype=np.int32).reshape(len(subsets), k)


def complement(d: Dfa) -> Dfa:
    return Dfa(d.n, d.alphabet, d.delta, d.initial, frozenset(range(d.n)) - d.finals)
