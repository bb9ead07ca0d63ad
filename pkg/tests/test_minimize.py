import itertools

import numpy as np
import pytest

from witnesslab.automata import AutomatonError, complement, make_dfa
from witnesslab.minimize import (
    are_equivalent,
    are_isomorphic,
    minimize_brzozowski,
    minimize_refine,
    trim,
)
from witnesslab.operations import BooleanOp, boolean_product

from conftest import W, empty_language, witness_corpus, words


def nerode_count(d, max_len=None):
    """Independent oracle: distinct acceptance signatures of reachable states."""
    reach = {d.initial}
    frontier = [d.initial]
    while frontier:
        frontier = [int(t) for q in frontier for t in d.delta[q] if int(t) not in reach]
        reach.update(frontier)
        frontier = list(set(frontier))
    max_len = d.n if max_len is None else max_len
    tests = list(words(d.alphabet, max_len))
    sigs = set()
    for q in reach:
        sig = []
        for w in tests:
            p = q
            for x in w:
                p = int(d.delta[p, d.letter_index(x)])
            sig.append(p in d.finals)
        sigs.add(tuple(sig))
    return len(sigs)


def two_final_sinks():
    # 0 -a-> 1, 0 -b-> 2, 1 and 2 are final sinks
    return make_dfa(3, "ab", [[1, 2], [1, 1], [2, 2]], 0, {1, 2})


class TestMinimizeRefine:
    def test_witness_is_minimal(self):
        d = W("U[n=4;letters=abc]")
        m = minimize_refine(d)
        assert m.n == 4
        assert are_isomorphic(m, d)

    def test_merges_final_sinks(self):
        assert minimize_refine(two_final_sinks()).n == 2

    def test_identical_streams_union(self):
        p = boolean_product(W("U[n=4;letters=ab]"), W("U[n=6;letters=ab]"), BooleanOp.UNION)
        assert minimize_refine(p).n == 24

    def test_unreachable_states_dropped(self):
        d = make_dfa(3, "a", [[0], [2], [1]], 0, {0, 1})
        assert trim(d).n == 1
        assert minimize_refine(d).n == 1

    def test_trim_bfs_order(self):
        d = make_dfa(4, "ab", [[3, 2], [1, 1], [0, 0], [1, 0]], 0, {1})
        t = trim(d)
        # BFS from 0: a->3, b->2, then 3 -a-> 1
        assert t.delta.tolist() == [[1, 2], [3, 0], [0, 0], [3, 3]]
        assert t.finals == {3}

    @pytest.mark.parametrize("seed", range(25))
    def test_matches_nerode_oracle(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 7))
        d = make_dfa(n, "ab", rng.integers(0, n, size=(n, 2)), 0, np.flatnonzero(rng.random(n) < 0.5))
        m = minimize_refine(d)
        assert m.n == nerode_count(d)
        assert are_equivalent(m, d)


class TestMinimizeBrzozowski:
    @pytest.mark.parametrize(
        "d",
        [
            W("U[n=4;letters=abc]"),
            make_dfa(3, "ab", [[1, 2], [1, 1], [2, 2]], 0, {1, 2}),
            empty_language(),
        ],
        ids=["witness", "sinks", "empty"],
    )
    def test_agrees_with_refine(self, d):
        assert are_isomorphic(minimize_brzozowski(d), minimize_refine(d))

    def test_u5(self):
        assert minimize_brzozowski(W("U[n=5;letters=abc]")).n == 5

    def test_empty_language_one_state(self):
        assert minimize_brzozowski(empty_language()).n == 1


class TestIsomorphism:
    def test_self(self):
        d = W("U[n=5;letters=abc]")
        assert are_isomorphic(d, d)

    def test_letter_roles_differ(self):
        assert not are_isomorphic(W("U[n=3;letters=abc]"), W("U[n=3;letters=bac]"))

    def test_relabelled_states(self):
        d = W("U[n=4;letters=abc]")
        perm = np.array([0, 3, 1, 2])  # old -> new
        table = np.empty_like(d.delta)
        table[perm] = perm[d.delta]
        e = make_dfa(4, d.alphabet, table, 0, {int(perm[3])})
        assert are_isomorphic(d, e)

    def test_alphabet_mismatch(self):
        with pytest.raises(AutomatonError):
            are_isomorphic(W("U[n=3;letters=ab]"), W("U[n=3;letters=abc]"))

    def test_mutual_oracle_on_random(self, random_minimal):
        for d in random_minimal:
            assert are_isomorphic(minimize_refine(d), minimize_brzozowski(d))


class TestEquivalence:
    def test_difference_identity(self):
        k, l = W("U[n=4;letters=abc]"), W("U[n=5;letters=bac]")
        diff = boolean_product(k, l, BooleanOp.DIFFERENCE)
        via = boolean_product(k, complement(l), BooleanOp.INTERSECTION)
        assert are_equivalent(diff, via)

    def test_different_sizes(self):
        assert not are_equivalent(W("U[n=4;letters=abc]"), W("U[n=5;letters=abc]"))

    @pytest.mark.parametrize("d", witness_corpus())
    def test_minimized_is_equivalent(self, d):
        assert are_equivalent(d, minimize_refine(d))

    def test_agrees_with_word_oracle(self):
        corpus = witness_corpus()
        for d1, d2 in itertools.combinations(corpus[:8], 2):
            brute = all(d1_acc == d2_acc for d1_acc, d2_acc in
                        ((accepts_(d1, w), accepts_(d2, w)) for w in words("abc", 6)))
            assert are_equivalent(d1, d2) == brute


def accepts_(d, w):
    q = d.initial
    for x in w:
        q = d.delta[q, d.letter_index(x)]
    return int(q) in d.finals


WITNESS_TEMPLATES = [
    "U[n={n};letters=ab]",
    "U[n={n};letters=abc]",
    "U[n={n};letters=bac]",
    "U[n={n};letters=abcd]",
    "U[n={n};letters=dcba]",
    "V[n={n};letters=abcd]",
    "V[n={n};letters=dcba]",
    "U[n={n};letters=abc;finals=0,2]",
    "U[n={n};letters=bac;finals=1,3]",
    "U[n={n};letters=abc;finals=0]",
    "U[n={n};letters=bac;finals=1]",
]


class TestProperties:
    def test_idempotent(self, random_minimal):
        for d in random_minimal + witness_corpus():
            m = minimize_refine(d)
            assert are_isomorphic(minimize_refine(m), m)

    @pytest.mark.parametrize(
        "spec",
        [
            template.format(n=n)
            for n in range(3, 9)
            for template in WITNESS_TEMPLATES
            if not ("finals=1,3" in template and n < 4)
        ],
    )
    def test_witnesses_are_minimal(self, spec):
        d = W(spec)
        assert minimize_refine(d).n == d.n
