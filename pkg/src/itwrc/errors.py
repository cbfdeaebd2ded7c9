"""Semantic exception hierarchy for the itwrc package."""


class ItwrcError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDistribution(ItwrcError, ValueError):
    """A probability tensor violates nonnegativity or normalization."""


class UnknownVariable(ItwrcError, ValueError):
    """A variable label is not declared in the joint / polytope at hand."""


class StateSpaceError(ItwrcError, ValueError):
    """The product of alphabet sizes exceeds the dense-tensor cap."""


class AlphabetMismatch(ItwrcError, ValueError):
    """Alphabet sizes of two objects that must agree do not."""


class InvalidChannel(ItwrcError, ValueError):
    """A channel transition tensor is not row-stochastic."""


class SchemeInputError(ItwrcError, ValueError):
    """A scheme input violates its factorization or sizing invariants."""


class PolytopeError(ItwrcError, ValueError):
    """A rate-polytope operation was applied outside its domain."""


class SchemaError(ItwrcError, ValueError):
    """A JSON document does not match the expected file schema."""
