"""Exception hierarchy.

Two families matter to callers: invalid input (ValueError subclasses) and
resource limits (ResourceBoundError).  Hitting a bound is never evidence that
an object does not exist, so the CLI keeps the two apart.
"""


class TreespecError(Exception):
    pass


class GraphError(TreespecError, ValueError):
    pass


class Graph6Error(GraphError):
    pass


class PolyError(TreespecError, ValueError):
    pass


class ResourceBoundError(TreespecError):
    pass


class UnsupportedDegreeError(ResourceBoundError):
    pass


class CapExceededError(ResourceBoundError):
    pass


class WitnessNotFoundError(ResourceBoundError):
    def __init__(self, poly, bound, detail=""):
        self.poly = poly
        self.bound = bound
        msg = f"no witness for {poly} within {bound}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class CertificateError(TreespecError, ValueError):
    pass
