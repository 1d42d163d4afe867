"""Exception hierarchy shared by the library and the CLI."""


class HoloError(Exception):
    """Base class for every error raised by holoctf."""


class DomainError(HoloError, ValueError):
    """A physical or numerical input lies outside its admissible domain."""


class UnsupportedConfigurationError(HoloError):
    """No generating function is constructed for this (kind, f)."""


class DegenerateZeroError(HoloError):
    """A tabulated zero turned out not to be simple."""


class ConstructionInconsistencyError(HoloError):
    """Closed-form zero families collided."""


class ContractError(HoloError, ValueError):
    """Arguments do not satisfy the documented contract."""


class TruncationDomainError(HoloError):
    """Evaluation point lies outside the radius a truncated zero table supports."""


class OverflowGuardError(HoloError):
    """Object too strong for the full nonlinear model."""


class PhantomValidationError(HoloError, ValueError):
    """Phantom description is malformed or leaves the support disc."""
