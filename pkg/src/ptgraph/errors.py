"""Exception types shared across the package."""


class PtGraphError(Exception):
    """Base class for all errors raised by this package."""


class UnknownNode(PtGraphError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown node: {name!r}")


class CyclicGraph(PtGraphError):
    def __init__(self, cycle=None):
        self.cycle = tuple(cycle) if cycle else ()
        msg = "directed subgraph contains a cycle"
        if self.cycle:
            msg += ": " + " -> ".join(self.cycle)
        super().__init__(msg)


class ValidationError(PtGraphError):
    """A graph failed structural validation; carries the full report."""

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(str(v) for v in report))


class ParseError(PtGraphError):
    """Syntax error in the graph DSL, with a byte span into the input."""

    def __init__(self, message, span):
        self.span = span
        super().__init__(f"{message} at {span.start}..{span.end}")


class UndirectedEdgesPresent(PtGraphError):
    def __init__(self, edges):
        self.edges = tuple(edges)
        pairs = ", ".join(f"{e.tail} -- {e.head}" for e in self.edges)
        super().__init__(f"graph still has undirected edges: {pairs}")


class NoTreatment(PtGraphError):
    def __init__(self):
        super().__init__("graph has no treatment node")


class MissingRoles(PtGraphError):
    def __init__(self, missing):
        self.missing = tuple(missing)
        super().__init__(f"graph lacks required roles: {', '.join(self.missing)}")


class TooManyUndirectedEdges(PtGraphError):
    def __init__(self, count, cap):
        self.count = count
        self.cap = cap
        super().__init__(
            f"{count} undirected edges exceeds the completion cap of {cap}; "
            "direct some edges or add tiers"
        )


class InvalidCandidate(PtGraphError):
    def __init__(self, reason):
        self.reason = reason
        super().__init__(f"invalid adjustment candidate: {reason}")


class TooLarge(PtGraphError):
    def __init__(self, size, limit, what="graph"):
        self.size = size
        self.limit = limit
        super().__init__(f"{what} size {size} exceeds limit {limit}")


class BadRange(PtGraphError):
    def __init__(self, lo, hi):
        self.lo = lo
        self.hi = hi
        super().__init__(
            f"bad coefficient range ({lo}, {hi}): need 0 < lo <= hi "
            "(magnitudes bounded away from zero)"
        )


class DegenerateY0(PtGraphError):
    def __init__(self):
        super().__init__(
            "Cov(A, Y0) is zero; the pre-period outcome carries no treatment "
            "association (itself a faithfulness violation worth reporting)"
        )


class SingularConditioningSet(PtGraphError):
    def __init__(self, cond):
        self.cond = tuple(cond)
        super().__init__(f"conditioning set {self.cond} has singular covariance")


class SingularSystem(PtGraphError):
    def __init__(self):
        super().__init__("coefficient system is singular")
