"""Exception types shared across the package."""


class FieldMismatchError(ValueError):
    """Operands belong to different fields, extensions or rings."""


class ParseError(ValueError):
    """Text could not be parsed into an algebraic element."""


class ValidationError(ValueError):
    """Construction parameters are invalid (field, extension or code)."""


class DecodingFailure(Exception):
    """The received word is not within the unique decoding radius.

    ``reason`` is one of ``kernel-trivial``, ``all-W-zero``,
    ``nonzero-remainder``, ``degree-exceeds-k`` or ``weight-exceeds-t``.
    """

    def __init__(self, reason, detail=""):
        self.reason = reason
        self.detail = detail
        msg = reason if not detail else f"{reason}: {detail}"
        super().__init__(msg)
