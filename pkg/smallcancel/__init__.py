"""Small-cancellation relator families over free products of Z/3."""

__version__ = "0.1.0"
