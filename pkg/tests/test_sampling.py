from fractions import Fraction

import numpy as np
import pytest

from smallcancel.errors import FamilyError, InputError
from smallcancel.models import RelatorFamily
from smallcancel.services.cancellation import find_relator_subword
from smallcancel.services.sampling import random_dense_word, random_relator_product
from smallcancel.services.word_core import density_barrier, is_epsilon_dense, is_reduced

EPSILONS = [Fraction(1, 10), Fraction(1, 3), Fraction(1)]


def barrier_delta(floor, epsilon):
    """Smallest-ish threshold that still clears c * epsilon * delta > 1."""
    delta = Fraction(1001, 1000) / (floor * epsilon)
    assert density_barrier(epsilon, delta, floor)
    return delta


class TestRandomDenseWord:
    """Test suite for the dense word sampler."""

    @pytest.mark.parametrize("epsilon", EPSILONS)
    def test_words_are_dense(self, rng, epsilon):
        """Sampled words are reduced and epsilon-dense."""
        for _ in range(20):
            word = random_dense_word(rng, 40, epsilon)
            assert is_reduced(word)
            assert is_epsilon_dense(word, epsilon)

    def test_seed_reproducible(self):
        """The same seed gives the same words."""
        a = random_dense_word(np.random.default_rng(3), 30, Fraction(1, 3))
        b = random_dense_word(np.random.default_rng(3), 30, Fraction(1, 3))
        assert a == b

    def test_epsilon_range(self, rng):
        """epsilon must lie in (0, 1]."""
        with pytest.raises(InputError):
            random_dense_word(rng, 10, Fraction(0))


class TestRandomRelatorProduct:
    """Test suite for the relator product sampler."""

    def test_product_is_reduced(self, small_family, rng):
        """Products come back in normal form."""
        for _ in range(10):
            assert is_reduced(random_relator_product(rng, small_family))

    def test_empty_pool(self, rng):
        """There must be a relator to sample."""
        with pytest.raises(FamilyError):
            random_relator_product(rng, RelatorFamily([]))


class TestDensityBarrier:
    """Dense words never hold a large fraction of a long relator."""

    def test_barrier_small_sample(self, trivial_family):
        """No match once c * epsilon * delta > 1."""
        rng = np.random.default_rng(99)
        floor = trivial_family.per_letter_floor
        for sample in range(60):
            epsilon = EPSILONS[sample % len(EPSILONS)]
            word = random_dense_word(rng, 60, epsilon)
            assert find_relator_subword(word, trivial_family, barrier_delta(floor, epsilon)) is None

    @pytest.mark.slow
    def test_barrier_thousand_samples(self, trivial_family):
        """One thousand seeded dense words, zero matches."""
        rng = np.random.default_rng(20240601)
        floor = trivial_family.per_letter_floor
        matches = 0
        for sample in range(1000):
            epsilon = EPSILONS[sample % len(EPSILONS)]
            word = random_dense_word(rng, 200, epsilon)
            if find_relator_subword(word, trivial_family, barrier_delta(floor, epsilon)) is not None:
                matches += 1
        assert matches == 0
