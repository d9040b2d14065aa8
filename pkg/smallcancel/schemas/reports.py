from __future__ import annotations

from fractions import Fraction
from typing import Any, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..models.family import RelatorFamily
from ..models.results import (
    CPrimeCertificate,
    PieceWitness,
    ProbeReport,
    RelatorMatch,
    UniqueExponentScan,
    Verdict,
)


def ratio_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


class PieceWitnessOut(BaseModel):
    host: str = Field(description="Member id of the relator U holding the piece")
    other: str = Field(description="Member id of the relator V sharing it")
    host_length: int = Field(description="|U|")
    piece_length: int = Field(description="|B|")
    ratio: str = Field(description="|B|/|U| as p/q")
    seam_consolidated: bool = Field(description="Whether B's last letter differs in exponent between U and V")
    piece: str = Field(description="The piece B, rendered")


class TruncationOut(BaseModel):
    k_max: Optional[int] = Field(description="Largest k in the truncation")
    n_rep: Optional[int] = Field(description="Repetition bound")
    prefixes: List[str] = Field(description="Prefix patterns with their k")
    provenance: dict[str, Any] = Field(description="Where the family came from")


class CertificateOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lambda_: str = Field(alias="lambda", description="Target lambda as p/q")
    passed: bool = Field(alias="pass", description="Both conditions hold")
    max_piece_ratio: str = Field(description="Largest |B|/|U| over all pieces, as p/q")
    min_length: int = Field(description="Shortest relator length")
    piece_condition: bool = Field(description="max_piece_ratio < lambda")
    length_condition: bool = Field(description="min_length > 1/lambda")
    members: int = Field(description="Size of the symmetrized family")
    class_maxima: dict[str, int] = Field(description="Longest piece per member length")
    witnesses: List[PieceWitnessOut] = Field(description="Pieces attaining max_piece_ratio")
    truncation: TruncationOut = Field(description="What the certificate covers")


class MatchOut(BaseModel):
    start: int = Field(description="Start of S in the word")
    length: int = Field(description="|S|")
    relator: str = Field(description="Member id of R")
    relator_length: int = Field(description="|R|")
    position: int = Field(description="Start of S inside R")
    kind: str = Field(description="plain, split-head, split-tail or split-whole")
    ratio: str = Field(description="|S|/|R| as p/q")


class DehnStepOut(BaseModel):
    pos: int = Field(description="Position of the replaced subword")
    relator: str = Field(description="Member id used")
    piece_length: int = Field(description="|S|")
    relator_length: int = Field(description="|R|")
    new_length: int = Field(description="Word length after the step")
    replacement: str = Field(description="Replacement word, rendered")


class VerdictOut(BaseModel):
    status: str = Field(description="trivial, nontrivial_sound or nontrivial_truncation_limited")
    final: str = Field(description="Final word, rendered")
    final_length: int = Field(description="Length of the final word")
    steps: List[DehnStepOut] = Field(description="Replacement trace")
    certificate: Optional[MatchOut] = Field(default=None, description="First majority match, if any")


class WindowOut(BaseModel):
    offset: int = Field(description="Window start")
    inverse: bool = Field(description="Window of the inverse relator")
    both_exponent: List[int] = Field(description="Generators seen with both exponents")


class ScanOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    passed: bool = Field(alias="pass", description="Every window reports exactly the expected generator")
    mode: str = Field(description="cyclic or linear")
    base_length: int = Field(description="|base|")
    window_length: int = Field(description="ceil(ratio * |base|)")
    window_ratio: str = Field(description="Ratio as p/q")
    expected: int = Field(description="Generator of the base relator's last letter")
    failures: int = Field(description="Windows deviating from the expectation")
    windows: List[WindowOut] = Field(description="Per-window results")


class InclusionOut(BaseModel):
    subset: bool = Field(description="Every base relator of A is a base relator of B")
    missing: List[str] = Field(description="Base relators of A absent from B")


class ClosureOut(BaseModel):
    complete: bool = Field(description="One more multiplication round adds nothing")
    depth: int = Field(description="Closure depth used")
    size: int = Field(description="Number of elements")
    elements: List[str] = Field(description="Elements in cycle notation")


class ProbeOutcomeOut(BaseModel):
    word: str = Field(description="Conjugator or candidate, rendered")
    status: str = Field(description="Verdict status")


class ProbeOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    probe: str = Field(description="Probe name")
    passed: bool = Field(alias="pass", description="Probe outcome")
    value: Optional[int] = Field(default=None, description="Numeric result (order probe)")
    outcomes: List[ProbeOutcomeOut] = Field(default_factory=list, description="Per-input outcomes")


def witness_out(witness: PieceWitness) -> PieceWitnessOut:
    return PieceWitnessOut(
        host=witness.host_ref.id if witness.host_ref else "",
        other=witness.other_ref.id if witness.other_ref else "",
        host_length=len(witness.host),
        piece_length=len(witness.piece),
        ratio=ratio_text(witness.ratio),
        seam_consolidated=witness.seam_consolidated,
        piece=witness.piece.render(),
    )


def truncation_out(family: RelatorFamily) -> TruncationOut:
    return TruncationOut(
        k_max=family.params.k_max if family.params else None,
        n_rep=family.params.n_rep if family.params else None,
        prefixes=[
            f"{r.prefix.render()} k={r.k}" if r.prefix is not None else f"- k={r.k}"
            for r in family.base_relators
        ],
        provenance=family.provenance,
    )


def certificate_out(certificate: CPrimeCertificate, family: RelatorFamily) -> CertificateOut:
    return CertificateOut(
        lambda_=ratio_text(certificate.lam),
        passed=certificate.passed,
        max_piece_ratio=ratio_text(certificate.max_piece_ratio),
        min_length=certificate.min_length,
        piece_condition=certificate.piece_condition,
        length_condition=certificate.length_condition,
        members=certificate.members,
        class_maxima={str(k): v for k, v in sorted(certificate.class_maxima.items())},
        witnesses=[witness_out(w) for w in certificate.witnesses],
        truncation=truncation_out(family),
    )


def match_out(match: RelatorMatch) -> MatchOut:
    return MatchOut(
        start=match.start,
        length=match.length,
        relator=match.member.id,
        relator_length=match.member_length,
        position=match.position,
        kind=match.kind.value,
        ratio=ratio_text(match.ratio),
    )


def verdict_out(verdict: Verdict) -> VerdictOut:
    return VerdictOut(
        status=verdict.status.value,
        final=verdict.final.render(),
        final_length=len(verdict.final),
        steps=[
            DehnStepOut(
                pos=s.position,
                relator=s.relator,
                piece_length=s.piece_length,
                relator_length=s.relator_length,
                new_length=s.new_length,
                replacement=s.replacement.render(),
            )
            for s in verdict.trace
        ],
        certificate=match_out(verdict.certificate) if verdict.certificate else None,
    )


def scan_out(scan: UniqueExponentScan) -> ScanOut:
    return ScanOut(
        passed=scan.passed,
        mode=scan.mode,
        base_length=scan.base_length,
        window_length=scan.window_length,
        window_ratio=ratio_text(scan.window_ratio),
        expected=scan.expected,
        failures=len(scan.failures),
        windows=[
            WindowOut(offset=w.offset, inverse=w.inverse, both_exponent=list(w.both_exponent))
            for w in scan.windows
        ],
    )


def probe_out(report: ProbeReport) -> ProbeOut:
    return ProbeOut(
        probe=report.probe,
        passed=report.passed,
        value=report.value,
        outcomes=[ProbeOutcomeOut(word=o.word.render(), status=o.status.value) for o in report.outcomes],
    )


class RelatorOut(BaseModel):
    prefix: Optional[List[int]] = Field(default=None, description="Prefix pattern, or null for word-built relators")
    k: int = Field(description="Number of distinct letters the relator is built from")
    n_rep: Optional[int] = Field(default=None, description="Repetition bound")
    length: int = Field(description="|R|")
    word: Optional[str] = Field(default=None, description="Rendered relator, when requested")


class FamilyOut(BaseModel):
    base_relators: int = Field(description="Number of base relators")
    cyclic_words: int = Field(description="Deduplicated cyclic words (relators and inverses)")
    members: int = Field(description="Size of the symmetrized family")
    min_length: int = Field(description="Shortest base relator")
    per_letter_floor: str = Field(description="floor(min |R|/k) as p/q")
    excluded_min_length: Optional[int] = Field(description="Lower bound on relators outside the truncation")
    provenance: dict[str, Any] = Field(description="Where the family came from")
    relators: List[RelatorOut] = Field(description="Base relators in canonical order")


class MembersOut(BaseModel):
    count: int = Field(description="Number of symmetrized members")
    members: List[str] = Field(description="Members ordered by (length, letters)")


class DensityOut(BaseModel):
    dense: bool = Field(description="Every inspected subword is dense enough")
    epsilon: str = Field(description="Density as p/q")
    length: int = Field(description="|w| after reduction")
    distinct: int = Field(description="Distinct generators in w")


class WordOut(BaseModel):
    word: str = Field(description="Rendered word")
    length: int = Field(description="Word length")


class BarrierOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    passed: bool = Field(alias="pass", description="No dense word matched")
    samples: int = Field(description="Number of sampled words")
    matches: int = Field(description="Words holding a delta-fraction of a relator")
    floor: str = Field(description="Per-letter floor c as p/q")
    epsilons: List[str] = Field(description="Densities sampled, as p/q")


def family_out(family: RelatorFamily, include_words: bool = False) -> FamilyOut:
    return FamilyOut(
        base_relators=len(family.base_relators),
        cyclic_words=len(family.symmetrized.cyclic_words),
        members=len(family.symmetrized),
        min_length=0 if family.is_empty() else family.min_length,
        per_letter_floor=ratio_text(family.per_letter_floor),
        excluded_min_length=family.excluded_min_length,
        provenance=family.provenance,
        relators=[
            RelatorOut(
                prefix=list(r.prefix.values) if r.prefix is not None else None,
                k=r.k,
                n_rep=r.n_rep,
                length=len(r.word),
                word=r.word.render() if include_words else None,
            )
            for r in family.base_relators
        ],
    )
