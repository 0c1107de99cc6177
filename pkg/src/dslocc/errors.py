"""Exception types shared across the package.

Every error raised on purpose by this library derives from DsloccError, so
callers (in particular the CLI) can separate domain failures from bugs.
"""


class DsloccError(Exception):
    """Base class for all errors raised by dslocc."""


class DomainError(DsloccError):
    """An argument lies outside the mathematical domain of an operation."""


class ContractError(DsloccError):
    """A structural precondition or invariant was violated."""


class ZeroNormState(DsloccError):
    """A state was annihilated (zero norm), e.g. by Pauli exclusion."""


class PostSelectionImpossible(DsloccError):
    """The projective post-selection has zero probability of success."""


class NumericalError(DsloccError):
    """A numerical routine failed to converge."""
