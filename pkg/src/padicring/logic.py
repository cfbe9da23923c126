"""Three-valued verdicts for relations decided at bounded precision."""

from __future__ import annotations

from enum import Enum
from typing import Iterable

from .errors import UndecidedError


class Verdict(Enum):
    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"

    def __bool__(self) -> bool:
        # An undecided verdict must never be silently read as True or False.
        if self is Verdict.UNDECIDED:
            raise UndecidedError("verdict is undecided at the current precision")
        return self is Verdict.YES

    @property
    def decided(self) -> bool:
        return self is not Verdict.UNDECIDED

    @classmethod
    def of(cls, flag: bool) -> "Verdict":
        return cls.YES if flag else cls.NO

    def negate(self) -> "Verdict":
        if self is Verdict.YES:
            return Verdict.NO
        if self is Verdict.NO:
            return Verdict.YES
        return self


def all_of(verdicts: Iterable[Verdict]) -> Verdict:
    """Kleene conjunction: a single NO decides the whole thing."""
    result = Verdict.YES
    for v in verdicts:
        if v is Verdict.NO:
            return Verdict.NO
        if v is Verdict.UNDECIDED:
            result = Verdict.UNDECIDED
    return result


def any_of(verdicts: Iterable[Verdict]) -> Verdict:
    result = Verdict.NO
    for v in verdicts:
        if v is Verdict.YES:
            return Verdict.YES
        if v is Verdict.UNDECIDED:
            result = Verdict.UNDECIDED
    return result
