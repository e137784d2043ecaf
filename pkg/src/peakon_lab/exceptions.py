"""Exception classes for the peakon lab."""

from typing import TYPE_CHECKING, Optional, Tuple

if TYPE_CHECKING:
    from .field import PeriodicField


class PeakonLabError(Exception):
    """Base exception for all peakon-lab errors."""
    pass


class GridError(PeakonLabError):
    """Raised when a grid or a field sampled on it is invalid."""

    def __init__(self, message: str, n: Optional[int] = None):
        self.n = n
        super().__init__(f"{message} (n: {n})" if n is not None else message)


class DomainError(PeakonLabError):
    """Raised when a functional is evaluated outside its domain."""

    def __init__(
        self,
        message: str,
        point: Optional[Tuple[float, float]] = None
    ):
        self.point = point
        msg = message
        if point is not None:
            msg = f"{msg} (M, m: {point[0]:.17g}, {point[1]:.17g})"
        super().__init__(msg)


class ConfigurationError(PeakonLabError):
    """Raised when a solver or sweep configuration is invalid."""

    def __init__(self, message: str, key: Optional[str] = None):
        self.key = key
        super().__init__(f"{message} (key: {key})" if key else message)


class IntegrationError(PeakonLabError):
    """Raised when time stepping produces a non-finite state."""

    def __init__(
        self,
        message: str,
        time: Optional[float] = None,
        last_state: Optional["PeriodicField"] = None
    ):
        self.time = time
        self.last_state = last_state
        super().__init__(
            f"{message} (t: {time:.17g})" if time is not None else message
        )
