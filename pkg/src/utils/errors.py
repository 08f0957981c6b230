"""
Custom exception classes for the Hochschild calculus toolkit.

Every error stores the offending values as attributes and composes its
message in ``__init__`` so that callers (and the CLI) can report them
without re-deriving context.
"""
from typing import Any, List, Optional, Sequence


class HochschildError(Exception):
    """Base class of every error raised by the toolkit."""


class InvalidFieldError(HochschildError):
    """Raised when a field descriptor cannot be constructed (e.g. composite p)."""

    def __init__(self, descriptor: Any, reason: str):
        self.descriptor = descriptor
        self.reason = reason
        super().__init__(f"Invalid field '{descriptor}': {reason}")


class FieldMismatchError(HochschildError):
    """Raised when scalars from two different fields meet in one operation."""

    def __init__(self, left: Any, right: Any, operation: str = "arithmetic"):
        self.left = left
        self.right = right
        self.operation = operation
        super().__init__(
            f"Field mismatch in {operation}: {left!r} and {right!r} live in different fields"
        )


class DimensionMismatchError(HochschildError):
    """Raised when vector or matrix shapes do not agree."""

    def __init__(self, expected: Any, actual: Any, what: str = "vector"):
        self.expected = expected
        self.actual = actual
        self.what = what
        super().__init__(f"Dimension mismatch for {what}: expected {expected}, got {actual}")


class IndexRangeError(HochschildError):
    """Raised for a slot or position index outside its admissible range."""

    def __init__(self, name: str, value: int, low: int, high: int):
        self.name = name
        self.value = value
        self.low = low
        self.high = high
        super().__init__(f"{name}={value} outside admissible range [{low}, {high}]")


class ParentMismatchError(HochschildError):
    """Raised when elements or cochains of different algebras are combined."""

    def __init__(self, operation: str):
        self.operation = operation
        super().__init__(f"Operands of {operation} belong to different algebras")


class AlgebraStructureError(HochschildError):
    """Raised when structure constants violate the algebra axioms."""

    def __init__(self, reason: str, violations: Optional[Sequence[Any]] = None):
        self.reason = reason
        self.violations = list(violations or [])
        message = f"Invalid algebra structure: {reason}"
        if self.violations:
            shown = ", ".join(str(v) for v in self.violations[:5])
            more = len(self.violations) - 5
            message += f" (violations: {shown}{' ...' if more > 0 else ''})"
        super().__init__(message)


class InvalidAutomorphismError(HochschildError):
    """Raised when a matrix is not an invertible multiplicative unital map."""

    def __init__(self, name: str, reason: str, witness: Any = None):
        self.name = name
        self.reason = reason
        self.witness = witness
        message = f"'{name}' is not an algebra automorphism: {reason}"
        if witness is not None:
            message += f" (at {witness})"
        super().__init__(message)


class InvalidGradingError(HochschildError):
    """Raised when a grading does not make the structure constants homogeneous."""

    def __init__(self, name: str, violations: List[Any]):
        self.name = name
        self.violations = violations
        super().__init__(
            f"Grading '{name}' is not homogeneous on {len(violations)} basis pair(s), "
            f"first: {violations[:3]}"
        )


class NotFrobeniusError(HochschildError):
    """Raised when the form <a,b> = eps(ab) is degenerate."""

    def __init__(self, rank: int, dim: int):
        self.rank = rank
        self.dim = dim
        super().__init__(f"Bilinear form is degenerate: Gram rank {rank} < dim {dim}")


class InconsistentStructureError(HochschildError):
    """Raised by internal consistency guards that genuine input can never trip."""

    def __init__(self, what: str, detail: str = ""):
        self.what = what
        self.detail = detail
        message = f"Internal inconsistency in {what}"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class DegreeTooLargeError(HochschildError):
    """Raised when a cochain space exceeds the configured scalar budget."""

    def __init__(self, degree: int, size: int, budget: int):
        self.degree = degree
        self.size = size
        self.budget = budget
        super().__init__(
            f"Cochain space at degree {degree} needs {size} scalars, budget is {budget}"
        )


class NotACocycleError(HochschildError):
    """Raised when an operation requiring a cocycle receives something else."""

    def __init__(self, degree: int, witness: Any = None):
        self.degree = degree
        self.witness = witness
        message = f"Degree-{degree} cochain is not a cocycle"
        if witness is not None:
            message += f" (delta nonzero at {witness})"
        super().__init__(message)


class NotInvariantError(HochschildError):
    """Raised when a cochain is required to be fixed by an automorphism but is not."""

    def __init__(self, automorphism: str, witness: Any = None):
        self.automorphism = automorphism
        self.witness = witness
        message = f"Cochain is not invariant under '{automorphism}'"
        if witness is not None:
            message += f" (differs at {witness})"
        super().__init__(message)


class AveragingUndefinedError(HochschildError):
    """Raised when averaging over a group whose order the characteristic divides."""

    def __init__(self, order: Optional[int], characteristic: int):
        self.order = order
        self.characteristic = characteristic
        if order is None:
            reason = "the automorphism has no finite order within the search bound"
        else:
            reason = f"characteristic {characteristic} divides the order {order}"
        super().__init__(f"Averaging is undefined: {reason}")


class InapplicableError(HochschildError):
    """Raised when an operation does not apply to the given data."""

    def __init__(self, operation: str, reason: str):
        self.operation = operation
        self.reason = reason
        super().__init__(f"{operation} is not applicable: {reason}")


class MissingFrobeniusError(InapplicableError):
    """Raised when an operation needs Frobenius data the input does not carry."""

    def __init__(self, operation: str):
        super().__init__(operation, "no Frobenius form is attached to the algebra")


class GeneratorConditionError(HochschildError):
    """Raised when a generator is requested outside its side conditions."""

    def __init__(self, kind: str, degree: int, condition: str):
        self.kind = kind
        self.degree = degree
        self.condition = condition
        super().__init__(f"Generator {kind} does not exist in degree {degree}: {condition} fails")


class ResolutionTableError(HochschildError):
    """Raised when the homotopy table produces a term outside the resolution shape."""

    def __init__(self, degree: int, case: str, detail: str):
        self.degree = degree
        self.case = case
        self.detail = detail
        super().__init__(f"Homotopy table, degree {degree}, case {case}: {detail}")


class AlgebraFileError(HochschildError):
    """Raised when an algebra file cannot be parsed or fails validation."""

    def __init__(
        self,
        path: str,
        issue: str,
        field: Optional[str] = None,
        line: Optional[int] = None,
    ):
        self.path = path
        self.issue = issue
        self.field = field
        self.line = line
        location = path
        if line is not None:
            location += f":{line}"
        if field is not None:
            location += f" [{field}]"
        super().__init__(f"{location}: {issue}")


class ConfigurationError(HochschildError):
    """Exception raised for configuration-related errors"""

    def __init__(self, config_key: str, issue: str):
        self.config_key = config_key
        self.issue = issue

        message = f"Configuration error for '{config_key}': {issue}"
        super().__init__(message)
