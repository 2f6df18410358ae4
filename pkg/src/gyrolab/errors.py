"""Exception types shared across the package."""


class GyrolabError(Exception):
    """Base class for all gyrolab errors."""


class ModelError(GyrolabError):
    """A model document or table is structurally invalid."""


class DomainError(GyrolabError):
    """An operand lies outside the model's carrier."""


class ModelMismatchError(GyrolabError):
    """Two set-level operands reference different models."""


class PreconditionError(GyrolabError):
    """A declared precondition of an operation does not hold."""


class ChainError(GyrolabError):
    """A neighborhood chain is unusable for the requested construction."""


class MonotonicityError(ChainError):
    """The dyadic family is not monotone; the chain cannot metrize.

    Carries the offending pair of dyadics and the witness element.
    """

    def __init__(self, q_small, q_large, witness):
        self.q_small = q_small
        self.q_large = q_large
        self.witness = witness
        super().__init__(
            f"dyadic family not monotone: element {witness!r} lies in V({q_small}) "
            f"but not in V({q_large})"
        )
