import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from witnesslab.automata import AutomatonError
from witnesslab.minimize import are_isomorphic
from witnesslab.witnesses import (
    Family,
    MonoidCapExceeded,
    Role,
    Transformation,
    WitnessSpecError,
    build_witness,
    letter_action,
    parse_spec,
    permute_letters,
    transition_monoid_size,
    witness,
)

from conftest import W


class TestLetterAction:
    def test_cycle(self):
        assert letter_action(Role.CYCLE, 5).image == (1, 2, 3, 4, 0)

    def test_identity(self):
        assert letter_action(Role.IDENTITY, 4).image == (0, 1, 2, 3)

    def test_v_singular(self):
        assert letter_action(Role.SINGULAR, 5, symbol="V").image == (0, 1, 2, 3, 3)

    def test_u_defaults(self):
        assert letter_action(Role.TRANSPOSITION, 5).image == (1, 0, 2, 3, 4)
        assert letter_action(Role.SINGULAR, 5).image == (0, 1, 2, 3, 0)
        assert letter_action(Role.TRANSPOSITION, 5, symbol="V").image == (0, 1, 2, 4, 3)

    def test_dialect_params(self):
        assert letter_action(Role.TRANSPOSITION, 4, (1, 3)).image == (0, 3, 2, 1)
        assert letter_action(Role.SINGULAR, 4, (2, 0)).image == (0, 1, 0, 3)

    def test_degenerate_params(self):
        with pytest.raises(ValueError):
            letter_action(Role.SINGULAR, 4, (2, 2))
        with pytest.raises(ValueError):
            letter_action(Role.TRANSPOSITION, 4, (1, 1))
        with pytest.raises(ValueError):
            letter_action(Role.TRANSPOSITION, 4, (1, 4))

    @given(st.integers(3, 12), st.data())
    def test_role_shapes(self, n, data):
        cyc = letter_action(Role.CYCLE, n)
        assert sorted(cyc.image) == list(range(n))
        p, q = data.draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
        t = letter_action(Role.TRANSPOSITION, n, (p, q))
        assert [i for i in range(n) if t(i) != i] == sorted((p, q))
        assert t(p) == q and t(q) == p
        s = letter_action(Role.SINGULAR, n, (p, q))
        assert [i for i in range(n) if s(i) != i] == [p] and s(p) == q

    def test_composition_order(self):
        a = Transformation.cycle(3)
        b = Transformation.transposition(3, 0, 1)
        assert a.then(b).image == (0, 2, 1)


class TestBuildWitness:
    def test_u4_transitions(self):
        d = W("U[n=4;letters=abc;finals=3]")
        assert d.step(3, "a") == 0
        assert d.step(0, "b") == 1 and d.step(1, "b") == 0
        assert d.step(3, "c") == 0 and d.step(2, "c") == 2
        assert d.initial == 0 and d.finals == {3}

    def test_interchanged_letters(self):
        d = W("U[n=5;letters=bac]")
        assert d.delta[:, d.letter_index("b")].tolist() == [1, 2, 3, 4, 0]
        assert d.delta[:, d.letter_index("a")].tolist() == [1, 0, 2, 3, 4]

    def test_dialect_final_set(self):
        d = W("U[n=4;letters=abc;finals=0,2]")
        assert d.finals == {0, 2}
        assert (d.delta == W("U[n=4;letters=abc]").delta).all()

    def test_binary_omits_singular(self):
        d = W("U[n=4;letters=ab]")
        assert d.alphabet == ("a", "b")

    def test_v_dcba_roles(self):
        n = 6
        spec = parse_spec(f"V[n={n};letters=dcba]")
        assert spec.roles == {"d": Role.CYCLE, "c": Role.TRANSPOSITION, "b": Role.SINGULAR, "a": Role.IDENTITY}
        d = build_witness(spec)
        col = lambda x: d.delta[:, d.letter_index(x)].tolist()
        assert col("d") == [(i + 1) % n for i in range(n)]
        assert col("c") == [0, 1, 2, 3, 5, 4]
        assert col("b") == [0, 1, 2, 3, 4, 4]
        assert col("a") == list(range(n))

    def test_quaternary_u(self):
        d = W("U[n=4;letters=abcd]")
        assert d.delta[:, 3].tolist() == [0, 1, 2, 3]
        assert (d.delta[:, :3] == W("U[n=4;letters=abc]").delta).all()


class TestSpecValidation:
    def test_n_too_small(self):
        with pytest.raises(WitnessSpecError, match="at least 3"):
            witness("U", 2, "abc")

    def test_full_final_set(self):
        with pytest.raises(WitnessSpecError, match="proper"):
            witness("U", 3, "abc", [0, 1, 2])

    def test_final_out_of_range(self):
        with pytest.raises(WitnessSpecError):
            witness("U", 3, "abc", [3])

    def test_v_needs_four_letters(self):
        with pytest.raises(WitnessSpecError):
            parse_spec("V[n=4;letters=abc]")

    def test_duplicate_letters(self):
        with pytest.raises(WitnessSpecError, match="distinct"):
            parse_spec("U[n=4;letters=aab]")

    def test_default_finals(self):
        assert witness("U", 6, "abc").finals == {5}


class TestParseSpec:
    @pytest.mark.parametrize(
        "text",
        [
            "U[n=5;letters=abc;finals=4]",
            "V[n=5;letters=dcba;finals=4]",
            "U[n=4;letters=abc;finals=0,2]",
            "U[n=3;letters=ab;finals=2]",
            "U[n=6;letters=abc;finals=5;trans=2,4;sing=1,3]",
        ],
    )
    def test_round_trip(self, text):
        assert str(parse_spec(text)) == text

    def test_defaults_filled(self):
        assert str(parse_spec("V[n=5;letters=dcba]")) == "V[n=5;letters=dcba;finals=4]"
        assert parse_spec("U[n=5;letters=abc;trans=0,1]").trans is None

    def test_family_by_letter_count(self):
        assert parse_spec("U[n=3;letters=ab]").family is Family.U_BINARY
        assert parse_spec("U[n=3;letters=abc]").family is Family.U_TERNARY
        assert parse_spec("U[n=3;letters=abcd]").family is Family.U_QUATERNARY
        assert parse_spec("V[n=3;letters=abcd]").family is Family.V_QUATERNARY

    @pytest.mark.parametrize(
        "text, pos",
        [
            ("X[n=3;letters=ab]", 0),
            ("U(n=3;letters=ab]", 1),
            ("U[n=3;letters=ab", 16),
            ("U[n=3;colour=ab]", 6),
            ("U[n=3;letters=ab;finals=x]", 24),
            ("U[letters=ab]", 12),
            ("U[n=3;n=4;letters=ab]", 6),
        ],
    )
    def test_errors_carry_position(self, text, pos):
        with pytest.raises(WitnessSpecError) as info:
            parse_spec(text)
        assert info.value.position == pos

    def test_dialect(self):
        d = W("U[n=5;letters=abc;trans=1,3;sing=4,2]")
        assert d.delta[:, 1].tolist() == [0, 3, 2, 1, 4]
        assert d.delta[:, 2].tolist() == [0, 1, 2, 3, 2]

    def test_trans_on_binary_singular_rejected(self):
        with pytest.raises(WitnessSpecError):
            parse_spec("U[n=5;letters=ab;sing=1,2]")


class TestPermuteLetters:
    def test_identity_mapping(self):
        d = W("U[n=4;letters=abc]")
        assert permute_letters(d, {"a": "a", "b": "b", "c": "c"}) == d

    def test_swap_gives_permuted_witness(self):
        d = permute_letters(W("U[n=4;letters=abc]"), {"a": "b", "b": "a", "c": "c"})
        assert are_isomorphic(d, W("U[n=4;letters=bac]"))

    def test_involution(self):
        d = W("U[n=5;letters=abcd]")
        swap = {"a": "b", "b": "a", "c": "c", "d": "d"}
        assert permute_letters(permute_letters(d, swap), swap) == d

    def test_reverse_order(self):
        d = permute_letters(W("U[n=5;letters=abcd]"), dict(zip("abcd", "dcba")))
        assert d == W("U[n=5;letters=dcba]")

    def test_not_bijective(self):
        with pytest.raises(AutomatonError):
            permute_letters(W("U[n=4;letters=abc]"), {"a": "b", "b": "b", "c": "c"})


def monoid_by_words(d, max_len):
    """Oracle: collect maps of all words up to max_len, by explicit enumeration."""
    seen = set()
    for length in range(max_len + 1):
        for w in itertools.product(range(len(d.alphabet)), repeat=length):
            t = np.arange(d.n)
            for x in w:
                t = d.delta[t, x]
            seen.add(tuple(t.tolist()))
    return len(seen)


class TestTransitionMonoid:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_full_transformation_monoid(self, n):
        assert transition_monoid_size(W(f"U[n={n};letters=abc]")) == n**n

    def test_binary_is_symmetric_group(self):
        assert transition_monoid_size(W("U[n=4;letters=ab]")) == 24
        assert transition_monoid_size(W("U[n=3;letters=ab]")) == 6

    def test_against_word_enumeration(self):
        # words of length <= 12 already generate all of S_4 and of T_3
        assert monoid_by_words(W("U[n=4;letters=ab]"), 12) == 24
        assert monoid_by_words(W("U[n=3;letters=abc]"), 9) == 27

    def test_cap(self):
        with pytest.raises(MonoidCapExceeded):
            transition_monoid_size(W("U[n=5;letters=abc]"), cap=100)
        assert transition_monoid_size(W("U[n=3;letters=abc]"), cap=27) == 27
