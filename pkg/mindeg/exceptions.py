class MindegError(Exception):
    """Base exception for all mindeg errors."""


class ParseError(MindegError):
    """Error parsing a group spec or a campaign YAML file."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class SpecInvalid(MindegError):
    """A group spec violates the invariants of its family."""


class ConfigError(MindegError):
    """Engine configuration failed validation."""


class CapExceeded(MindegError):
    """A closure or enumeration grew past its configured cap."""

    def __init__(self, what: str, cap: int, hint: str | None = None):
        self.what = what
        self.cap = cap
        self.hint = hint
        message = f"{what} exceeds cap {cap}"
        super().__init__(f"{message}; {hint}" if hint else message)


class BudgetExceeded(MindegError):
    """The cooperative time budget ran out."""

    def __init__(self, seconds: float):
        self.seconds = seconds
        super().__init__(f"time budget of {seconds:g}s exhausted")


class NoRootOfUnity(MindegError):
    """No primitive q-th root of unity exists in F_p."""

    def __init__(self, q: int, p: int):
        self.q = q
        self.p = p
        super().__init__(f"F_{p} has no primitive {q}-th root of unity ({p} mod {q} = {p % q})")


class InvalidDecomposition(MindegError):
    """An abelian decomposition contains a factor that is not a prime power."""


class CertificateError(MindegError):
    """A certificate failed re-verification."""


class NoFeasibleCover(MindegError):
    """The cover instance admits no faithful collection of the requested size."""

    def __init__(self, min_candidates: int):
        self.min_candidates = min_candidates
        super().__init__(f"no faithful collection with at least {min_candidates} member(s)")
