"""JSON interchange and Graphviz DOT rendering."""

from __future__ import annotations

import json
from typing import Union

from .automata import Automaton, AutomatonError, Dfa, Nfa, make_dfa


def to_dict(machine: Automaton) -> dict:
    """Plain-data form with keys in the fixed order n, alphabet, delta, initial(s), finals."""
    if isinstance(machine, Dfa):
        return {
            "n": machine.n,
            "alphabet": list(machine.alphabet),
            "delta": machine.delta.tolist(),
            "initial": machine.initial,
            "finals": sorted(machine.finals),
        }
    return {
        "n": machine.n,
        "alphabet": list(machine.alphabet),
        "delta": [[sorted(cell) for cell in row] for row in machine.delta],
        "initials": sorted(machine.initials),
        "finals": sorted(machine.finals),
    }


def to_json(machine: Automaton) -> str:
    return json.dumps(to_dict(machine)) + "\n"


def from_dict(data: dict) -> Automaton:
    try:
        n = int(data["n"])
        alphabet = [str(x) for x in data["alphabet"]]
        delta = data["delta"]
        finals = [int(q) for q in data["finals"]]
        if "initial" in data and "initials" in data:
            raise AutomatonError("give either 'initial' or 'initials', not both")
        if "initial" in data:
            return make_dfa(n, alphabet, delta, int(data["initial"]), finals)
        initials = [int(q) for q in data["initials"]]
    except KeyError as exc:
        raise AutomatonError(f"automaton JSON is missing key {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, AutomatonError):
            raise
        raise AutomatonError(f"malformed automaton JSON: {exc}") from None
    return Nfa(n, tuple(alphabet), delta, frozenset(initials), frozenset(finals))


def from_json(text: str) -> Automaton:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AutomatonError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise AutomatonError("automaton JSON must be an object")
    return from_dict(data)


def to_dot(machine: Union[Dfa, Nfa], name: str = "automaton") -> str:
    """Circles for states, double circles for finals, a point node feeding each initial state.

    Parallel edges are merged into one edge with a comma-separated label.
    """
    if isinstance(machine, Dfa):
        initials = [machine.initial]
        moves = [[(t,) for t in row] for row in machine.delta.tolist()]
    else:
        initials = sorted(machine.initials)
        moves = [[sorted(cell) for cell in row] for row in machine.delta]
    name = name.replace('"', r'\"')
    lines = [f'digraph "{name}" {{', "  rankdir=LR;"]
    for q in range(machine.n):
        shape = "doublecircle" if q in machine.finals else "circle"
        lines.append(f'  {q} [shape={shape}, label="{q}"];')
    for i, q in enumerate(initials):
        lines.append(f"  __start{i} [shape=point];")
        lines.append(f"  __start{i} -> {q};")
    for p in range(machine.n):
        edges: dict[int, list[str]] = {}
        for letter, targets in zip(machine.alphabet, moves[p]):
            for t in targets:
                edges.setdefault(t, []).append(letter)
        for t in sorted(edges):
            lines.append(f'  {p} -> {t} [label="{",".join(edges[t])}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
