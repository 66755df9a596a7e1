"""Exception hierarchy shared by all cpsphere modules."""


class CpSphereError(Exception):
    """Base class for all errors raised by cpsphere."""


class SpecFunOverflowError(CpSphereError, OverflowError):
    """An intermediate special-function magnitude left the representable range."""

    def __init__(self, order, argument, message=None):
        self.order = order
        self.argument = argument
        if message is None:
            message = (
                f"special function overflow at order l={order}, "
                f"argument z={argument!r}"
            )
        super().__init__(message)


class PoleError(CpSphereError, ValueError):
    """Evaluation requested at (or numerically on top of) a pole."""


class PerfectConductorError(CpSphereError, ValueError):
    """A finite permittivity was requested from the perfect-conductor model.

    Callers must branch to the analytic perfect-conductor formulas instead.
    """


class RegimeError(CpSphereError, ValueError):
    """Parameters are outside the validity regime of the requested expansion."""


class ConvergenceError(CpSphereError, RuntimeError):
    """A series or quadrature failed to reach the requested tolerance."""

    def __init__(self, message, partial=None, estimate=None):
        self.partial = partial
        self.estimate = estimate
        super().__init__(message)
