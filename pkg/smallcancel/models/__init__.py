from .word import Letter, Word
from .perm import GroupSpec, Perm, PrefixPattern
from .family import BaseRelator, ConstructionParams, MemberRef, RelatorFamily, SymmetrizedSet

__all__ = [
    "Letter",
    "Word",
    "GroupSpec",
    "Perm",
    "PrefixPattern",
    "BaseRelator",
    "ConstructionParams",
    "MemberRef",
    "RelatorFamily",
    "SymmetrizedSet",
]
