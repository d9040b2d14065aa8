"""Exception hierarchy shared by every smallcancel module."""

from __future__ import annotations


class SmallCancelError(Exception):
    pass


class InputError(SmallCancelError, ValueError):
    """Malformed or out-of-range input (maps to a usage error on the CLI)."""


class WordSyntaxError(InputError):
    pass


class PermSyntaxError(InputError):
    pass


class RationalSyntaxError(InputError):
    pass


class ManifestError(InputError):
    pass


class ParamsError(InputError):
    pass


class NotReducedError(InputError):
    pass


class FamilyError(SmallCancelError):
    """A family cannot answer the request (empty, host missing, mismatched params)."""


class CertificationRequiredError(SmallCancelError):
    """The Dehn solver refuses families without a C'(1/6)-or-better certificate."""


class TruncationLimitedError(SmallCancelError):
    """A boolean probe reached a verdict the truncation cannot vouch for."""
