from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallcancel.errors import InputError, NotReducedError
from smallcancel.models import Word
from smallcancel.models.results import MatchKind
from smallcancel.services.cancellation import find_relator_subword
from smallcancel.services.relator_gen import make_relator
from smallcancel.services.relator_index import SuffixAutomaton, get_relator_index
from smallcancel.services.word_core import parse_word, reduce

thresholds = st.sampled_from([Fraction(1, 10), Fraction(1, 4), Fraction(1, 2), Fraction(7, 10), Fraction(1)])
letters = st.tuples(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=1))


def oracle_match(word, members, threshold):
    """(start, length) of the leftmost-longest qualifying subword, by brute force."""
    codes = word.codes
    for start in range(len(codes)):
        for length in range(len(codes) - start, 0, -1):
            piece = codes[start : start + length]
            for member in members:
                if length <= threshold * len(member):
                    continue
                text = member.codes
                if any(text[i : i + length] == piece for i in range(len(text) - length + 1)):
                    return start, length
    return None


def words_near(family):
    """Reduced words mixing member fragments with noise letters."""
    members = family.symmetrized.materialize()

    @st.composite
    def build(draw):
        codes = []
        for _ in range(draw(st.integers(min_value=1, max_value=3))):
            if draw(st.booleans()):
                member = members[draw(st.integers(min_value=0, max_value=len(members) - 1))]
                lo = draw(st.integers(min_value=0, max_value=len(member) - 1))
                hi = draw(st.integers(min_value=lo + 1, max_value=len(member)))
                codes.extend(member.codes[lo:hi])
            else:
                g, e = draw(letters)
                codes.append(2 * g + e)
        return reduce(Word(tuple(codes), False))

    return build()


class TestSuffixAutomaton:
    """Test suite for the generalized suffix automaton."""

    def test_scan_reports_longest_suffix(self):
        """Plain run lengths follow the doubled words."""
        automaton = SuffixAutomaton([(0, 2, 4)])
        plain, _ = automaton.scan((0, 2, 4, 0, 2, 6))
        assert plain == [1, 2, 3, 4, 5, 0]

    def test_scan_flips_last_letter(self):
        """Flipped runs end in the other exponent of w[j]."""
        automaton = SuffixAutomaton([(0, 2, 4)])
        plain, flipped = automaton.scan((0, 2, 5))
        assert plain == [1, 2, 0]
        assert flipped == [0, 0, 3]

    def test_locate(self):
        """Occurrences map back to (word, start in doubled text)."""
        automaton = SuffixAutomaton([(0, 2), (4, 6, 8)])
        assert automaton.locate((6, 8, 4)) == (1, 1)
        assert automaton.locate((2, 0)) == (0, 1)


class TestFindRelatorSubword:
    """Test suite for leftmost-longest relator subword search."""

    def test_relator_matches_itself(self, trivial_family):
        """A relator is its own subword."""
        relator = make_relator((0, 1), 2, 80)
        match = find_relator_subword(relator, trivial_family, Fraction(1, 2))
        assert match is not None
        assert match.start == 0
        assert match.length == len(relator)
        assert match.ratio == 1
        assert match.kind is MatchKind.PLAIN

    def test_short_word_has_no_match(self, trivial_family):
        """Three letters are far below half of any relator."""
        assert find_relator_subword(reduce(parse_word("x0 x1 x2")), trivial_family, Fraction(1, 2)) is None

    def test_conjugated_relator(self, trivial_family):
        """Conjugation leaves the relator intact."""
        relator = make_relator((0, 1), 2, 80)
        word = reduce(Word(parse_word("x5").codes + relator.codes + parse_word("x5^2").codes, False))
        match = find_relator_subword(word, trivial_family, Fraction(7, 10))
        assert match is not None
        assert match.ratio >= Fraction(7, 10)
        assert match.start == 1

    def test_match_is_exact(self, trivial_family):
        """The reported subword occurs in both the word and the member."""
        relator = make_relator((0, 1, 2), 3, 80)
        word = reduce(Word(parse_word("x4 x3").codes + relator.codes[100:9000] + parse_word("x6").codes, False))
        match = find_relator_subword(word, trivial_family, Fraction(1, 2))
        assert match is not None
        assert match.subword.codes == word.codes[match.start : match.start + match.length]
        assert match.member_word.codes[match.position : match.position + match.length] == match.subword.codes
        assert match.member_word == trivial_family.symmetrized.word(match.member)

    def test_split_member_match(self, trivial_family):
        """A letter-splitting member matches when the seam letter is flipped."""
        relator = make_relator((0, 1), 2, 80)
        flipped = (relator.codes[0] ^ 1,) + relator.codes[1:] + (relator.codes[0] ^ 1,)
        match = find_relator_subword(Word(flipped, True), trivial_family, Fraction(1, 2))
        assert match is not None
        assert match.length == len(relator) + 1
        assert match.kind is MatchKind.SPLIT_WHOLE

    def test_threshold_range(self, small_family):
        """threshold must lie in (0, 1]."""
        with pytest.raises(InputError):
            find_relator_subword(reduce(parse_word("x0")), small_family, Fraction(0))

    def test_requires_reduced(self, small_family):
        """Unreduced words are rejected."""
        with pytest.raises(NotReducedError):
            find_relator_subword(parse_word("x0 x0"), small_family, Fraction(1, 2))

    def test_index_is_cached(self, small_family):
        """The index is built once per family."""
        assert get_relator_index(small_family) is get_relator_index(small_family)

    @given(data=st.data(), threshold=thresholds)
    @settings(max_examples=150, deadline=None)
    def test_agrees_with_brute_force(self, small_family, data, threshold):
        """Leftmost-longest (start, length) matches an exhaustive search."""
        word = data.draw(words_near(small_family))
        members = small_family.symmetrized.materialize()
        expected = oracle_match(word, members, threshold)
        match = find_relator_subword(word, small_family, threshold)
        if expected is None:
            assert match is None
            return
        assert match is not None
        assert (match.start, match.length) == expected
        assert match.member_word.codes[match.position : match.position + match.length] == word.codes[
            match.start : match.start + match.length
        ]
        assert match.length * threshold.denominator > threshold.numerator * match.member_length
