"""Exception hierarchy shared by all sliderule modules."""


class SlideRuleError(Exception):
    """Base class for every error raised by this package."""


class ParseError(SlideRuleError):
    """Malformed expression text; `offset` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class NonMonotoneError(SlideRuleError):
    """A scale was requested for a function that is not strictly monotone."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class DomainError(SlideRuleError):
    """The function is undefined over (most of) the requested interval."""


class OutOfRangeError(SlideRuleError):
    """A target distance lies outside the image of the function."""

    def __init__(self, message: str, target: float, lo: float, hi: float):
        super().__init__(message)
        self.target = target
        self.lo = lo
        self.hi = hi


class UnboundedImageError(SlideRuleError):
    """The requested domain would need an infinitely (or absurdly) long scale."""


class OffScaleError(SlideRuleError):
    """A computed result lands beyond the result scale.

    `fold_units` is the distance (in scale units) by which a re-alignment
    with the slide's other index would bring the result back on scale.
    """

    def __init__(self, message: str, needed: float, lo: float, hi: float, fold_units: float):
        super().__init__(message)
        self.needed = needed
        self.lo = lo
        self.hi = hi
        self.fold_units = fold_units


class UnknownCodeError(SlideRuleError):
    """Unknown catalog code; carries the list of valid ones."""

    def __init__(self, code: str, known):
        super().__init__(f"unknown scale code {code!r}; known codes: {', '.join(known)}")
        self.code = code
        self.known = tuple(known)


class SchemaError(SlideRuleError):
    """A document violates the scale/model schema; `path` names the bad field."""

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class VersionError(SlideRuleError):
    """Document format_version not supported."""
