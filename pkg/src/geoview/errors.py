"""Exception hierarchy shared across the package."""


class GeoviewError(Exception):
    """Base class for all package errors."""


class ConfigError(GeoviewError):
    """Invalid configuration value or unknown option."""


class ContractError(GeoviewError):
    """A call violated a documented precondition (shapes, dims, ranges)."""


class InvalidDepthError(GeoviewError):
    """Depth value was zero or negative where positive depth is required."""


class PixelBoundsError(GeoviewError):
    """Pixel coordinate fell outside the image."""


class BehindCameraError(GeoviewError):
    """Point has non-positive depth in the camera frame."""


class TrainingDiverged(GeoviewError):
    """Training loss became non-finite."""


class ReportError(GeoviewError):
    """Report emission was asked to write empty or inconsistent results."""
