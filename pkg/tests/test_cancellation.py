from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallcancel.errors import FamilyError, InputError
from smallcancel.models import ConstructionParams, GroupSpec, Word
from smallcancel.services.cancellation import max_piece, verify_cprime
from smallcancel.services.polish_group import apply_sigma, materialize_family, parse_perm
from smallcancel.services.relator_gen import build_family, make_relator
from smallcancel.services.word_core import parse_word, reduce


def oracle_piece_length(host, members):
    """Longest prefix shared with another member, last letter up to exponent."""
    best = 0
    for other in members:
        if other == host:
            continue
        limit = min(len(host), len(other))
        m = 0
        while m < limit and host.codes[m] == other.codes[m]:
            m += 1
        if m < limit and host.codes[m] >> 1 == other.codes[m] >> 1:
            m += 1
        best = max(best, m)
    return best


def small_families():
    s3 = GroupSpec(generators=(parse_perm("(0 1)"), parse_perm("(1 2)")), closure_depth=4)
    return [
        materialize_family(GroupSpec(), ConstructionParams(n_rep=1, k_min=2, k_max=3)),
        materialize_family(GroupSpec(), ConstructionParams(n_rep=2, k_min=2, k_max=3)),
        materialize_family(GroupSpec(), ConstructionParams(n_rep=4, k_min=2, k_max=2)),
        materialize_family(GroupSpec(), ConstructionParams(n_rep=1, k_min=4, k_max=4)),
        materialize_family(s3, ConstructionParams(n_rep=1, k_min=2, k_max=2)),
        build_family([reduce(parse_word(" ".join(f"x{i}" for i in range(11))))]),
        build_family([reduce(parse_word("x0 x1^2 x2")), reduce(parse_word("x0 x1^2 x3 x4"))]),
    ]


class TestMaxPiece:
    """Test suite for pieces between symmetrized members."""

    def test_diverging_prefix(self):
        """Two members sharing x0 x1 then diverging."""
        host = reduce(parse_word(" ".join(f"x{i}" for i in range(11))))
        other = reduce(parse_word("x0 x1 x20 x21 x22"))
        family = build_family([host, other])
        witness = max_piece(host, family)
        assert witness is not None
        assert witness.piece.render() == "x0 x1"
        assert witness.ratio == Fraction(2, 11)
        assert witness.other != witness.host

    @pytest.mark.parametrize("index", range(7))
    def test_agrees_with_oracle(self, index):
        """Every member's longest piece matches the all-pairs oracle."""
        family = small_families()[index]
        members = family.symmetrized.materialize()
        assert len(members) <= 200
        for host in members:
            expected = oracle_piece_length(host, members)
            witness = max_piece(host, family)
            if expected == 0:
                assert witness is None
                continue
            assert witness is not None
            assert len(witness.piece) == expected
            assert witness.ratio == Fraction(expected, len(host))
            assert witness.host == host
            assert witness.other in members and witness.other != host
            piece = witness.piece.codes
            assert witness.other.codes[: len(piece) - 1] == piece[:-1]
            assert witness.other.codes[len(piece) - 1] >> 1 == piece[-1] >> 1
            assert witness.seam_consolidated == (witness.other.codes[len(piece) - 1] != piece[-1])

    def test_host_must_be_member(self, small_family):
        """Pieces are only defined for family members."""
        with pytest.raises(FamilyError):
            max_piece(reduce(parse_word("x7 x8")), small_family)

    def test_relabeling_preserves_ratios(self):
        """Relabeling every relator keeps the largest piece ratio."""
        sigma = parse_perm("(0 5 2)(1 7)")
        base = [make_relator((0, 1), 2, 2), make_relator((0, 1, 2), 3, 2)]
        family = build_family(base)
        relabeled = build_family([apply_sigma(sigma, word) for word in base])
        lam = Fraction(1, 2)
        assert verify_cprime(family, lam).max_piece_ratio == verify_cprime(relabeled, lam).max_piece_ratio


class TestVerifyCPrime:
    """Test suite for C'(lambda) certificates."""

    def test_trivial_family_certifies(self, trivial_family):
        """Relators at n_rep = 80 with k <= 3 certify C'(1/10)."""
        certificate = verify_cprime(trivial_family, Fraction(1, 10))
        assert certificate.passed
        assert certificate.max_piece_ratio < Fraction(1, 10)
        assert certificate.min_length == 6640
        assert certificate.witnesses
        assert all(w.ratio == certificate.max_piece_ratio for w in certificate.witnesses)
        assert trivial_family.certified_lambda == Fraction(1, 10)

    def test_length_condition_fails(self):
        """A length-5 relator cannot be C'(1/10)."""
        family = build_family([reduce(parse_word("x0 x1 x2 x3 x4"))])
        certificate = verify_cprime(family, Fraction(1, 10))
        assert not certificate.length_condition
        assert not certificate.passed
        assert certificate.min_length == 5

    def test_scaled_family_reports(self):
        """Short relators still get a full certificate."""
        family = materialize_family(GroupSpec(), ConstructionParams(n_rep=4, k_min=2, k_max=3))
        certificate = verify_cprime(family, Fraction(1, 6))
        assert 0 < certificate.max_piece_ratio <= 1
        assert certificate.piece_condition == (certificate.max_piece_ratio < Fraction(1, 6))
        assert set(certificate.class_maxima) == {len(codes) for codes in family.symmetrized.cyclic_words} | {
            len(codes) + 1 for codes in family.symmetrized.cyclic_words
        }

    def test_monotone_in_lambda(self, small_family):
        """Passing at lambda implies passing at every larger lambda."""
        results = [verify_cprime(small_family, Fraction(p, 10)).passed for p in range(1, 11)]
        for earlier, later in zip(results, results[1:]):
            assert later or not earlier

    def test_threads_do_not_change_result(self, small_family):
        """Per-class parallelism merges deterministically."""
        serial = verify_cprime(small_family, Fraction(1, 2), threads=1)
        parallel = verify_cprime(small_family, Fraction(1, 2), threads=4)
        assert serial.max_piece_ratio == parallel.max_piece_ratio
        assert serial.class_maxima == parallel.class_maxima
        assert [w.host for w in serial.witnesses] == [w.host for w in parallel.witnesses]

    def test_progress_callback(self, small_family):
        """Progress is reported once per length class."""
        calls = []
        verify_cprime(small_family, Fraction(1, 2), on_progress=lambda done, total, msg: calls.append((done, total)))
        assert calls[-1][0] == calls[-1][1] == len(calls)

    def test_empty_family(self):
        """Certification needs at least one relator."""
        with pytest.raises(FamilyError):
            verify_cprime(build_family([]), Fraction(1, 10))

    @pytest.mark.parametrize("lam", [Fraction(0), Fraction(3, 2)])
    def test_lambda_range(self, small_family, lam):
        """lambda must lie in (0, 1]."""
        with pytest.raises(InputError):
            verify_cprime(small_family, lam)

    @pytest.mark.slow
    def test_two_generator_group_certifies(self):
        """<(0 1 2),(3 4)>, k <= 6, n_rep = 80 certifies C'(1/10)."""
        spec = GroupSpec(generators=(parse_perm("(0 1 2)"), parse_perm("(3 4)")), closure_depth=8)
        family = materialize_family(spec, ConstructionParams(n_rep=80, k_min=2, k_max=6))
        certificate = verify_cprime(family, Fraction(1, 10), threads=4)
        assert certificate.passed
        assert certificate.max_piece_ratio < Fraction(1, 10)
        assert certificate.min_length == 6640


class TestWitnessInvariants:
    """Property checks on witnesses."""

    @given(st.integers(min_value=0, max_value=2), st.integers(min_value=0, max_value=40))
    @settings(max_examples=30, deadline=None)
    def test_witness_is_prefix_of_both(self, family_index, member_index):
        """Witness pieces are literal prefixes of host and, up to the last exponent, of other."""
        family = small_families()[family_index]
        members = family.symmetrized.materialize()
        host = members[member_index % len(members)]
        witness = max_piece(host, family)
        if witness is None:
            return
        piece = witness.piece.codes
        assert host.codes[: len(piece)] == piece
        assert witness.other.codes[: len(piece) - 1] == piece[:-1]
        assert isinstance(witness.piece, Word) and len(piece) > 0
