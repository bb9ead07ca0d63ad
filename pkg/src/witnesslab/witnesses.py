"""Universal witness automata, their dialects and letter permutations.

Letters are given in role order: the first letter is the cycle
``(0, ..., n-1)``, the second a transposition, the third a singular map
moving one state, the fourth the identity. ``U`` witnesses use the
transposition ``(0, 1)`` and the singular map ``n-1 -> 0``; ``V`` witnesses
use ``(n-2, n-1)`` and ``n-1 -> n-2``.

Specs have a compact text form, e.g. ``U[n=5;letters=abc;finals=4]``::

    spec   := ("U" | "V") "[" item (";" item)* "]"
    item   := "n=" INT                 size, at least 3 (required)
            | "letters=" LETTERS       2-4 distinct letters in role order (required)
            | "finals=" INT ("," INT)* final states (default n-1)
            | "trans=" INT "," INT     transposed pair (dialect)
            | "sing=" INT "," INT      singular map r -> s (dialect)
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .automata import AutomatonError, Dfa


class Role(enum.Enum):
    CYCLE = "cycle"
    TRANSPOSITION = "transposition"
    SINGULAR = "singular"
    IDENTITY = "identity"


ROLE_ORDER = (Role.CYCLE, Role.TRANSPOSITION, Role.SINGULAR, Role.IDENTITY)


class Family(enum.Enum):
    U_BINARY = "U2"
    U_TERNARY = "U3"
    U_QUATERNARY = "U4"
    V_QUATERNARY = "V4"

    @property
    def symbol(self) -> str:
        return self.value[0]

    @property
    def arity(self) -> int:
        return int(self.value[1])

    @property
    def roles(self) -> tuple[Role, ...]:
        return ROLE_ORDER[: self.arity]

    @classmethod
    def lookup(cls, symbol: str, arity: int) -> "Family":
        for fam in cls:
            if fam.symbol == symbol and fam.arity == arity:
                return fam
        raise WitnessSpecError(f"no {symbol} family over {arity} letters")


class WitnessSpecError(AutomatonError):
    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class MonoidCapExceeded(Exception):
    def __init__(self, cap: int):
        super().__init__(f"transition monoid exceeds cap {cap}")
        self.cap = cap


@dataclass(frozen=True)
class Transformation:
    """A total map on ``{0, ..., n-1}``; ``image[i]`` is where ``i`` goes."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if any(not 0 <= t < n for t in self.image):
            raise ValueError(f"image {self.image} leaves {{0..{n - 1}}}")

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, q: int) -> int:
        return self.image[q]

    def then(self, other: "Transformation") -> "Transformation":
        """Apply ``self`` first, then ``other``."""
        return Transformation(tuple(other.image[t] for t in self.image))

    @classmethod
    def cycle(cls, n: int) -> "Transformation":
        return cls(tuple((i + 1) % n for i in range(n)))

    @classmethod
    def transposition(cls, n: int, p: int, q: int) -> "Transformation":
        if p == q:
            raise ValueError("transposition needs two distinct states")
        img = list(range(n))
        img[p], img[q] = q, p
        return cls(tuple(img))

    @classmethod
    def singular(cls, n: int, r: int, s: int) -> "Transformation":
        if r == s:
            raise ValueError("singular map must move its state (r != s)")
        img = list(range(n))
        img[r] = s
        return cls(tuple(img))

    @classmethod
    def identity(cls, n: int) -> "Transformation":
        return cls(tuple(range(n)))


def default_params(role: Role, n: int, symbol: str = "U") -> Optional[tuple[int, int]]:
    if role is Role.TRANSPOSITION:
        return (0, 1) if symbol == "U" else (n - 2, n - 1)
    if role is Role.SINGULAR:
        return (n - 1, 0) if symbol == "U" else (n - 1, n - 2)
    return None


def letter_action(role: Role, n: int, params: Optional[tuple[int, int]] = None, symbol: str = "U") -> Transformation:
    if params is None:
        params = default_params(role, n, symbol)
    elif not all(0 <= v < n for v in params):
        raise ValueError(f"parameters {params} out of range for n={n}")
    if role is Role.CYCLE:
        return Transformation.cycle(n)
    if role is Role.IDENTITY:
        return Transformation.identity(n)
    if role is Role.TRANSPOSITION:
        return Transformation.transposition(n, *params)
    return Transformation.singular(n, *params)


@dataclass(frozen=True)
class WitnessSpec:
    family: Family
    n: int
    letters: tuple[str, ...]
    finals: frozenset[int] = frozenset()
    trans: Optional[tuple[int, int]] = None
    sing: Optional[tuple[int, int]] = None

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.n < 3:
            raise WitnessSpecError(f"witness size must be at least 3, got n={self.n}")
        if len(self.letters) != self.family.arity:
            raise WitnessSpecError(f"{self.family.name} needs {self.family.arity} letters, got {len(self.letters)}")
        if len(set(self.letters)) != len(self.letters):
            raise WitnessSpecError(f"letters must be distinct: {''.join(self.letters)}")
        finals = frozenset(self.finals) if self.finals else frozenset({self.n - 1})
        if any(not 0 <= q < self.n for q in finals):
            raise WitnessSpecError(f"final states {sorted(finals)} out of range for n={self.n}")
        if len(finals) == self.n:
            raise WitnessSpecError("final set must be a proper subset of the states")
        object.__setattr__(self, "finals", finals)
        for name, role in (("trans", Role.TRANSPOSITION), ("sing", Role.SINGULAR)):
            value = getattr(self, name)
            if value is None:
                continue
            if role not in self.family.roles:
                raise WitnessSpecError(f"{name}= given but {self.family.name} has no {role.value} letter")
            value = tuple(int(v) for v in value)
            if len(value) != 2 or not all(0 <= v < self.n for v in value) or value[0] == value[1]:
                raise WitnessSpecError(f"{name}={value} must be two distinct states below {self.n}")
            if value == default_params(role, self.n, self.family.symbol):
                value = None
            object.__setattr__(self, name, value)

    @property
    def roles(self) -> dict[str, Role]:
        return dict(zip(self.letters, self.family.roles))

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(sorted(self.letters))

    def action(self, letter: str) -> Transformation:
        role = self.roles[letter]
        params = {Role.TRANSPOSITION: self.trans, Role.SINGULAR: self.sing}.get(role)
        return letter_action(role, self.n, params, self.family.symbol)

    def __str__(self) -> str:
        parts = [f"n={self.n}", f"letters={''.join(self.letters)}", "finals=" + ",".join(map(str, sorted(self.finals)))]
        if self.trans is not None:
            parts.append("trans=%d,%d" % self.trans)
        if self.sing is not None:
            parts.append("sing=%d,%d" % self.sing)
        return f"{self.family.symbol}[{';'.join(parts)}]"


def witness(symbol: str, n: int, letters: str, finals: Sequence[int] = ()) -> WitnessSpec:
    """Shorthand: ``witness("U", 5, "bac", [1, 3])``."""
    return WitnessSpec(Family.lookup(symbol, len(letters)), n, tuple(letters), frozenset(finals))


_ITEM = re.compile(r"([a-z]+)=([^;\]]*)")
_INTS = re.compile(r"\d+(,\d+)*$")


def parse_spec(text: str) -> WitnessSpec:
    """Parse the compact spec syntax described in the module docstring."""
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    if not s or s[0] not in "UV":
        raise WitnessSpecError("spec must start with U or V", offset)
    if len(s) < 2 or s[1] != "[":
        raise WitnessSpecError("expected '[' after family letter", offset + 1)
    if not s.endswith("]"):
        raise WitnessSpecError("expected closing ']'", offset + len(s))
    body = s[2:-1]
    pos = 2
    fields: dict[str, tuple[str, int]] = {}
    for chunk in body.split(";"):
        m = _ITEM.fullmatch(chunk)
        if m is None:
            raise WitnessSpecError(f"expected key=value, got {chunk!r}", offset + pos)
        key = m.group(1)
        if key not in {"n", "letters", "finals", "trans", "sing"}:
            raise WitnessSpecError(f"unknown key {key!r}", offset + pos)
        if key in fields:
            raise WitnessSpecError(f"duplicate key {key!r}", offset + pos)
        fields[key] = (m.group(2), offset + pos + len(key) + 1)
        pos += len(chunk) + 1

    def ints(key):
        value, at = fields[key]
        if not _INTS.match(value):
            raise WitnessSpecError(f"{key} must be comma-separated integers, got {value!r}", at)
        return [int(v) for v in value.split(",")]

    for key in ("n", "letters"):
        if key not in fields:
            raise WitnessSpecError(f"missing required key {key!r}", offset + len(s) - 1)
    nv = ints("n")
    if len(nv) != 1:
        raise WitnessSpecError("n takes a single integer", fields["n"][1])
    letters, at = fields["letters"]
    if not letters or not letters.isalpha():
        raise WitnessSpecError(f"letters must be alphabetic, got {letters!r}", at)
    try:
        family = Family.lookup(s[0], len(letters))
    except WitnessSpecError as exc:
        raise WitnessSpecError(str(exc), at) from None
    kwargs = {}
    if "finals" in fields:
        kwargs["finals"] = frozenset(ints("finals"))
    for key in ("trans", "sing"):
        if key in fields:
            pair = ints(key)
            if len(pair) != 2:
                raise WitnessSpecError(f"{key} takes exactly two states", fields[key][1])
            kwargs[key] = tuple(pair)
    return WitnessSpec(family, nv[0], tuple(letters), **kwargs)


def build_witness(spec: WitnessSpec) -> Dfa:
    alphabet = spec.alphabet
    columns = [spec.action(x).image for x in alphabet]
    table = np.array(columns, dtype=np.int32).T
    return Dfa(spec.n, alphabet, table, 0, spec.finals)


def permute_letters(d: Dfa, mapping: Mapping[str, str]) -> Dfa:
    """Rename letters: the new automaton moves on ``mapping[x]`` as ``d`` moved on ``x``."""
    if set(mapping) != set(d.alphabet) or set(mapping.values()) != set(d.alphabet):
        raise AutomatonError(f"mapping {dict(mapping)} is not a bijection on {d.alphabet}")
    inverse = {v: k for k, v in mapping.items()}
    table = np.column_stack([d.delta[:, d.letter_index(inverse[y])] for y in d.alphabet])
    return Dfa(d.n, d.alphabet, table, d.initial, d.finals)


def transition_monoid_size(d: Dfa, cap: Optional[int] = None) -> int:
    """Number of distinct state maps induced by words (the empty word included).

    Raises :class:`MonoidCapExceeded` once more than ``cap`` maps are found.
    """
    gens = [np.ascontiguousarray(d.delta[:, i]) for i in range(len(d.alphabet))]
    start = np.arange(d.n, dtype=np.int32)
    seen = {start.tobytes()}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for g in gens:
            u = g[t]
            key = u.tobytes()
            if key not in seen:
                seen.add(key)
                if cap is not None and len(seen) > cap:
                    raise MonoidCapExceeded(cap)
                queue.append(u)
    return len(seen)
