import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fockbridge.algebra.symbolic import (
    NormalForm,
    Word,
    boson_normal_form,
    canonical_partition,
    commutator_identity_check,
    expand_permutation_sum,
    normal_order,
    oscillator_faithfulness,
    set_partitions,
    verify_expansion,
)
from fockbridge.core.exceptions import DimensionCapError

words = st.text(alphabet="XP", max_size=8).map(Word)


def test_textbook_word():
    form = normal_order(Word("PPPXPPXX"))
    assert form.terms == {(3, 5, 0): 1, (2, 4, 1): 13, (1, 3, 2): 44, (0, 2, 3): 36}
    assert form.render() == "X^3P^5 + 13(-ih)X^2P^4 + 44(-ih)^2XP^3 + 36(-ih)^3P^2"


def test_single_swap():
    assert normal_order(Word("PX")).terms == {(1, 1, 0): 1, (0, 0, 1): 1}
    assert normal_order(Word("XP")).terms == {(1, 1, 0): 1}
    assert normal_order(Word("")) == NormalForm.identity()


def test_parse_rejects_other_letters():
    assert Word.parse(" px p ") == Word("PXP")
    with pytest.raises(ValueError):
        Word.parse("XQ")


@given(words, words)
def test_normal_order_respects_concatenation(left, right):
    assert normal_order(left + right) == normal_order(left) * normal_order(right)


@given(words)
def test_normal_form_preserves_letter_balance(word):
    x_count, p_count = word.counts()
    for (m, n, k), value in normal_order(word).terms.items():
        assert isinstance(value, int) and value > 0
        assert (m + k, n + k) == (x_count, p_count)


@given(words)
def test_normal_form_matches_oscillator(word):
    assert oscillator_faithfulness(word, levels=len(word) + 6, hbar=0.7) <= 1e-9


def test_oscillator_needs_enough_levels():
    with pytest.raises(ValueError):
        oscillator_faithfulness(Word("XXXX"), levels=5)


def test_three_particle_expansion():
    expansion = expand_permutation_sum(3)
    assert expansion.coefficients() == [1, -1, -1, -1, 2]
    assert expansion.render() == "O_iO_jO_k - O_iO_jO_j - O_iO_iO_j - O_iO_jO_i + 2 O_iO_iO_i"


@pytest.mark.parametrize("particles", [1, 2, 3, 4])
def test_expansion_size_and_sum(particles):
    expansion = expand_permutation_sum(particles)
    bell = sum(1 for _ in set_partitions(list(range(particles))))
    assert len(expansion.terms) == bell
    # with all factors equal to 1 on a 1-mode space, both sides count N!
    value = expansion.evaluate([np.eye(1)] * particles)
    assert value[0, 0] == pytest.approx(np.prod(range(1, particles + 1)))


@pytest.mark.parametrize("particles,mode_dim", [(1, 3), (2, 3), (3, 2)])
def test_expansion_matches_brute_force(rng, particles, mode_dim):
    expansion = expand_permutation_sum(particles)
    assert verify_expansion(particles, expansion, mode_dim, rng=rng) <= 1e-10


def test_expansion_oracle_size_cap():
    with pytest.raises(DimensionCapError):
        verify_expansion(4, expand_permutation_sum(4), 9)


def test_expansion_rejects_bad_arguments():
    with pytest.raises(ValueError):
        expand_permutation_sum(0)
    with pytest.raises(ValueError):
        expand_permutation_sum(2, factors=("A",))


def test_commutator_identity(rng):
    assert commutator_identity_check(rng) <= 1e-12


def test_sympy_boson_expansion_reproduces_textbook_word():
    assert boson_normal_form(Word("PPPXPPXX")) == normal_order(Word("PPPXPPXX"))
    assert boson_normal_form(Word("")) == NormalForm.identity()


@settings(max_examples=30, deadline=None)
@given(words)
def test_normal_order_agrees_with_sympy(word):
    assert normal_order(word) == boson_normal_form(word)


def test_set_partitions_are_distinct():
    partitions = [canonical_partition(blocks) for blocks in set_partitions("abcd")]
    assert len(partitions) == 15
    assert len(set(partitions)) == 15
    assert list(set_partitions([])) == [[]]


def test_expansion_renders_named_factors():
    expansion = expand_permutation_sum(2, factors=("A", "B"))
    assert expansion.render() == "A_iB_j - A_iB_i"
    assert expand_permutation_sum(2).render(symbol="T") == "T_iT_j - T_iT_i"
