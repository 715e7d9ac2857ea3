"""Exception hierarchy shared across the package.

Input-flavored errors (bad descriptors, inconsistent pole annotations,
malformed problem files) map to CLI exit code 2; a failed verification
report maps to exit code 1; InternalInvariantError maps to exit code 3
and should never fire on hypothesis-respecting input.
"""


class SpecfactError(Exception):
    """Base class for all package errors."""


class FieldError(SpecfactError):
    """Invalid field operation: descriptor mismatch, sign of a complex
    element, division by zero handled separately via ZeroDivisionError."""


class DescriptorError(SpecfactError):
    """Rejected field descriptor (non-positive or square radicand)."""


class PoleDataError(SpecfactError):
    """Caller-supplied pole/zero annotations disagree with the actual
    numerators or denominators, or lie outside the open unit disk."""


class SingularSystemError(SpecfactError):
    """Exactly singular linear system where theory guarantees a unique
    solution; signals input violating a theorem hypothesis."""


class CoronaError(SpecfactError):
    """No polynomial corona solution up to the degree cap (the given
    functions share a zero in the open unit disk)."""


class FactorizationError(SpecfactError):
    """Invalid triangular factor, or a polynomiality expectation that the
    computed spectral factor does not meet."""


class CompletionError(SpecfactError):
    """Row data unfit for paraunitary completion (unit-norm identity
    fails, or evaluation at z = 1 hits a pole)."""


class ProblemFormatError(SpecfactError):
    """Malformed problem file (syntax or schema violation)."""


class InternalInvariantError(SpecfactError):
    """A certificate that must hold by construction failed: a bug trap."""
