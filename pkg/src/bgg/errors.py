"""Exception taxonomy.

Three families matter downstream: bad input (config), structural invariant
violations (bugs, never expected on valid data), and mathematical findings
(which are reported, not raised).
"""


class GCMError(ValueError):
    """Input matrix violates the generalized Cartan matrix axioms."""


class NotSymmetrizableError(ValueError):
    """No positive integer symmetrizer exists for the matrix."""


class NotWeylMatrixError(ValueError):
    """Matrix is not a product of simple reflection matrices."""


class EnumerationLimitError(RuntimeError):
    """A Weyl group level exceeded the configured size bound."""


class CutoffExceededError(RuntimeError):
    """Requested data lies beyond the constructed height cutoff."""


class NotComparableError(ValueError):
    """No inclusion exists between the requested Verma modules."""


class InvariantViolationError(RuntimeError):
    """Internal consistency check failed; indicates a bug, not a finding."""


class LinAlgError(RuntimeError):
    """Inconsistent exact linear system."""
