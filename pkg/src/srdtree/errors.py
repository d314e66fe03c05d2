"""Exception types shared across the package."""


class SrdTreeError(Exception):
    """Base class for every error this package raises on purpose."""


# ---- tree construction ----------------------------------------------------


class CycleDetected(SrdTreeError):
    """The edge list contains a directed cycle, so no root reaches it."""


class DisconnectedNode(SrdTreeError):
    """A node cannot be reached from the root by parent links."""


class DuplicateChild(SrdTreeError):
    """Two edges enter the same child node."""


class MultipleRoots(SrdTreeError):
    """More than one node has no parent."""


class DuplicateEdgeId(SrdTreeError):
    """The same edge id appears on two edge records."""


class InvalidEdgeId(SrdTreeError):
    """Edge ids are not the dense integer range 1..n."""


class AttrBoundsViolated(SrdTreeError):
    """Edge attributes break w >= 0, u >= w or c > 0."""


class MissingEdgeWeight(SrdTreeError):
    """A weight vector or attribute table lacks an entry for some edge."""


# ---- solver arguments ------------------------------------------------------


class NegativeBudget(SrdTreeError):
    """The upgrade budget must be nonnegative."""


class NOutOfRange(SrdTreeError):
    """A cardinality bound lies outside 1..n."""


# ---- reference oracles ------------------------------------------------------


class InstanceTooLarge(SrdTreeError):
    """A brute-force oracle refuses instances beyond its enumeration guard."""


class DemandOutOfRange(SrdTreeError):
    """The parametric oracle needs w(T) < D <= u(T)."""


class UnknownProblemTag(SrdTreeError):
    """An oracle or dispatcher got a problem tag it does not know."""


# ---- instance files ---------------------------------------------------------


class InstanceSyntaxError(SrdTreeError):
    """A line of an instance file does not match the format grammar."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MissingHeader(SrdTreeError):
    """The instance file lacks the version tag or a mandatory directive."""


class BoundViolation(SrdTreeError):
    """An edge line carries attribute values outside the allowed bounds."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class BadConfig(SrdTreeError):
    """A generator configuration is unusable."""


# ---- command line ------------------------------------------------------------


class MissingParam(SrdTreeError):
    """A problem needs a parameter that neither the file nor a flag supplies."""

    def __init__(self, param: str, problem: str):
        super().__init__(f"problem '{problem}' needs parameter {param}; "
                         f"set it in the instance file or pass --{param.lower()}")
        self.param = param
        self.problem = problem
