"""Exception hierarchy shared by every frlp module."""


class FrlpError(Exception):
    """Base class for all library errors."""


class GridError(FrlpError, ValueError):
    """Invalid grid parameters."""


class OddSampleCount(GridError):
    pass


class AngleSingular(FrlpError, ValueError):
    """The angle is a multiple of pi, where the chirp and the dilation blow up."""


class ChirpAliased(FrlpError):
    """The chirp's instantaneous frequency exceeds the sampling guard.

    The ``report`` attribute carries the :class:`~frlp.frft.SamplingReport`.
    """

    def __init__(self, report):
        self.report = report
        super().__init__(
            f"chirp aliased: max instantaneous frequency {report.chirp_freq:.6g} "
            f"exceeds guard {report.limit:.6g} (Nyquist {report.nyquist:.6g})"
        )


class GridMismatch(FrlpError, ValueError):
    pass


class SymbolUnbounded(FrlpError, ValueError):
    pass


class SupportViolation(FrlpError, ValueError):
    pass


class RangeExceedsNyquist(FrlpError, ValueError):
    pass


class DimUnsupported(FrlpError, ValueError):
    pass


class ScaleMisaligned(FrlpError, ValueError):
    pass


class DcSingular(FrlpError, ValueError):
    """A negative-order homogeneous symbol was applied without a DC policy."""


class ExponentMismatch(FrlpError, ValueError):
    pass


class EmptyCubeFamily(FrlpError, ValueError):
    pass


class PsiNotMeanZero(FrlpError, ValueError):
    pass


class CubeTooSmall(FrlpError, ValueError):
    pass
