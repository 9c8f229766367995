"""Stdlib names missing on older interpreters (the project targets Python 3.12)."""

import enum

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11: same definition as CPython 3.11's enum.StrEnum

    class StrEnum(str, enum.Enum):
        def __new__(cls, *values):
            if len(values) > 3:
                raise TypeError(f"too many arguments for str(): {values!r}")
            if len(values) == 1 and not isinstance(values[0], str):
                raise TypeError(f"{values[0]!r} is not a string")
            value = str(*values)
            member = str.__new__(cls, value)
            member._value_ = value
            return member

        __str__ = str.__str__
        __format__ = str.__format__

        @staticmethod
        def _generate_next_value_(name, start, count, last_values):
            return name.lower()


__all__ = ["StrEnum"]
