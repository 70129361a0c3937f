"""Exception hierarchy shared across the package."""

from __future__ import annotations


class BiHomError(Exception):
    """Base class for every error raised by this package."""


class FieldMismatch(BiHomError, TypeError):
    """Scalars or operands live over different fields."""


class DimensionMismatch(BiHomError, ValueError):
    pass


class NotBijectiveError(BiHomError, ValueError):
    """A structure map or operator that must be invertible is singular."""


class InstanceError(BiHomError, ValueError):
    """An AlgebraInstance is structurally malformed."""


class HypothesisError(BiHomError, ValueError):
    """A construction's hypothesis failed.

    ``clause`` names the failed hypothesis and ``witnesses`` carries the
    concrete counterexamples (a list of ``ViolationWitness``).
    """

    def __init__(self, clause: str, witnesses=(), message: str | None = None):
        self.clause = clause
        self.witnesses = list(witnesses)
        if message is None:
            message = f"hypothesis '{clause}' failed"
            if self.witnesses:
                message += f" ({len(self.witnesses)} witness(es), first: {self.witnesses[0]})"
        super().__init__(message)


class BudgetExceeded(BiHomError, RuntimeError):
    """An enumeration would exceed the configured search budget."""


class AlgebraFileError(BiHomError, ValueError):
    """Syntax or semantic problem in an algebra/operator file.

    ``path`` is a dotted key path for semantic errors; ``line``/``column``
    are set for syntax errors.
    """

    def __init__(self, message: str, *, path: str | None = None,
                 line: int | None = None, column: int | None = None):
        self.path = path
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path is not None:
            where.append(f"at {path}")
        super().__init__(f"{message}" + (f" [{'; '.join(where)}]" if where else ""))
