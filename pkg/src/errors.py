"""Exceptions raised by the critdisc library.

Every exception carries a `detail` message and the process `exit_code`
the command-line surface maps it to:

- 1: domain, parse and integrality errors (bad input, wrong prime, ...)
- 2: the rational map is not a member of F_{d,lambda}
- 3: an internal-consistency check failed (an exact identity did not hold)

`DomainError` is also a `ValueError`, so it can be raised from inside
pydantic validators and surfaces as a normal validation error there.
"""


class CritDiscException(Exception):
    """Base error with an exit code and a human readable detail."""

    exit_code: int = 1

    def __init__(self, detail: str, exit_code: int | None = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class DomainError(CritDiscException, ValueError):
    exit_code = 1


class ParseError(DomainError):
    pass


class IntegralityError(DomainError):
    pass


class UnsupportedCaseError(DomainError):
    pass


class NonMemberError(CritDiscException):
    exit_code = 2


class ConsistencyError(CritDiscException):
    exit_code = 3
