"""Exception hierarchy shared across the package.

The CLI maps these onto stable exit codes: contract violations exit 1,
malformed input documents exit 2, size/budget overruns exit 3.
"""


class DomainError(ValueError):
    """A contract violation: bad names, shapes, overlapping sets, invalid laws."""


class DegenerateEventError(DomainError):
    """Conditioning on an event of probability zero."""


class DegenerateSchemeError(DomainError):
    """A coding scheme that cannot produce the sequences it promises."""


class CapacityError(RuntimeError):
    """A tensor or enumeration would exceed the configured size budget."""


class ParseError(ValueError):
    """A malformed input document."""
