"""Exception hierarchy.

Everything derives from ``ResonatorError`` so callers (and the CLI exit-code
mapping) can catch the family at once. ``SemanticError`` marks hypothesis
violations: wrong field, wrong characteristic, maps that are not morphisms.
"""


class ResonatorError(ValueError):
    pass


class AxiomViolation(ResonatorError):
    """A circuit family fails the matroid circuit axioms."""


class EmptyCircuit(AxiomViolation):
    pass


class SemanticError(ResonatorError):
    pass


class FieldMismatch(SemanticError):
    pass


class IncompleteMap(SemanticError):
    """A weak map that is not complete induces no map of OS algebras."""


class NotWeakMap(SemanticError):
    pass


class CharDividesN(SemanticError):
    pass


class CharDividesBlockSize(SemanticError):
    pass


class ParallelSplit(SemanticError):
    """Parallel elements were sent to different blocks of a partition."""


class NotACover(SemanticError):
    pass


class NotSingularEnough(SemanticError):
    pass


class TorusViolation(SemanticError):
    """A torus statement was asked about a point with a zero coordinate."""


class CoverLimitReached(ResonatorError):
    pass


class SpecError(ResonatorError):
    """Malformed matroid spec or command input."""
