"""Exception hierarchy shared by every module."""


class HomlabError(Exception):
    pass


class GraphInputError(HomlabError, ValueError):
    """Malformed graph data: loops, out-of-range endpoints, bad parameters."""


class ExactChromaticUnavailable(HomlabError):
    """Raised instead of returning an approximate chromatic number."""

    def __init__(self, n: int, cutoff: int):
        super().__init__(
            f"exact chromatic unavailable: {n} vertices exceeds cutoff {cutoff}"
        )
        self.n = n
        self.cutoff = cutoff


class SizeCutoffError(HomlabError):
    pass


class Undecided(HomlabError):
    """A search ran out of its time or node budget before deciding.

    ``decided`` carries whatever partial information the caller had already
    settled (for example one direction of a comparison).
    """

    def __init__(self, message: str, decided=None):
        super().__init__(message)
        self.decided = decided


class PreconditionError(HomlabError):
    """A construction hypothesis failed; ``hypothesis`` names which one."""

    def __init__(self, hypothesis: str, detail: str = ""):
        msg = hypothesis if not detail else f"{hypothesis}: {detail}"
        super().__init__(msg)
        self.hypothesis = hypothesis
        self.detail = detail


class RigidSearchFailed(HomlabError):
    pass
