import itertools

import numpy as np
import pytest

from witnesslab.automata import Dfa, make_dfa
from witnesslab.complexity import random_minimal_dfa
from witnesslab.witnesses import build_witness, parse_spec


def W(text: str) -> Dfa:
    return build_witness(parse_spec(text))


def words(alphabet, max_len):
    for length in range(max_len + 1):
        for w in itertools.product(alphabet, repeat=length):
            yield "".join(w)


def sigma_star(alphabet=("a",)):
    return make_dfa(1, alphabet, [[0] * len(alphabet)], 0, [0])


def empty_language(alphabet=("a",)):
    return make_dfa(1, alphabet, [[0] * len(alphabet)], 0, [])


def witness_corpus():
    """Witnesses of every family at small sizes, all over the alphabet abc."""
    out = []
    for n in (3, 4, 5):
        out += [
            W(f"U[n={n};letters=abc]"),
            W(f"U[n={n};letters=bac]"),
            W(f"U[n={n};letters=abc;finals=0]"),
            W(f"U[n={n};letters=abc;finals=0,2]"),
        ]
    return out


@pytest.fixture(scope="session")
def random_minimal():
    rng = np.random.default_rng(20121)
    return [random_minimal_dfa(int(rng.integers(1, 7)), "ab", rng) for _ in range(60)]


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion and print it."""

    def report(label: str, ok: bool, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
