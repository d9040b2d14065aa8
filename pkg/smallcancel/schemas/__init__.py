from .reports import (
    BarrierOut,
    CertificateOut,
    ClosureOut,
    DehnStepOut,
    DensityOut,
    FamilyOut,
    InclusionOut,
    MatchOut,
    MembersOut,
    PieceWitnessOut,
    ProbeOut,
    RelatorOut,
    ScanOut,
    TruncationOut,
    VerdictOut,
    WordOut,
    certificate_out,
    family_out,
    match_out,
    probe_out,
    ratio_text,
    scan_out,
    verdict_out,
    witness_out,
)

__all__ = [
    "BarrierOut",
    "CertificateOut",
    "ClosureOut",
    "DehnStepOut",
    "DensityOut",
    "FamilyOut",
    "InclusionOut",
    "MatchOut",
    "MembersOut",
    "PieceWitnessOut",
    "ProbeOut",
    "RelatorOut",
    "ScanOut",
    "TruncationOut",
    "VerdictOut",
    "WordOut",
    "certificate_out",
    "family_out",
    "match_out",
    "probe_out",
    "ratio_text",
    "scan_out",
    "verdict_out",
    "witness_out",
]
