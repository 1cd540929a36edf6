"""Exception hierarchy.

Everything raised deliberately by the library derives from :class:`PnsError`;
the CLI maps it to exit status 1.
"""


class PnsError(Exception):
    """Base class for domain errors."""


# graph structure / format

class GraphError(PnsError):
    pass


class GraphFormatError(GraphError):
    """Malformed line, missing header, bad identifier, ..."""


class UnknownNode(GraphError):
    pass


class DuplicateNode(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class CycleDetected(GraphError):
    pass


class MissingRoot(GraphError):
    pass


class LeafWithChildren(GraphError):
    pass


class InternalWithoutChildren(GraphError):
    pass


class MixWithoutEdgeLabels(GraphError):
    pass


class NotPure(GraphError):
    """A MIX node reached an operation that needs a normalized graph."""


# evaluation

class ArithmeticOverflow(PnsError, OverflowError):
    pass


class NotAlternating(PnsError):
    pass


class AssumedNotLeaf(PnsError):
    pass


class BudgetExceeded(PnsError):
    pass


# search

class RootAlreadySolved(PnsError):
    pass


class ExpanderContractViolation(PnsError):
    pass


# CNF / reduction

class DimacsError(PnsError):
    pass


class MissingHeader(DimacsError):
    pass


class VariableOutOfRange(DimacsError):
    pass


class ClauseCountMismatch(DimacsError):
    pass


class TrailingGarbage(DimacsError):
    pass


class TooManyVariables(PnsError):
    pass


# generators

class UnknownFixture(PnsError):
    pass


class EvenLayerCount(PnsError):
    pass


class TooFewLayers(PnsError):
    pass


class TooLarge(PnsError):
    pass
