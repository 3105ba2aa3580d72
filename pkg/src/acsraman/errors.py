"""Exception hierarchy shared by the library, the service and the CLI.

Two broad categories matter for callers: ``DomainError`` means the request
asked for something outside the physical domain of the model (the inputs are
well formed numbers, but no meaningful answer exists), while
``NumericalError`` means an iterative routine failed to meet its own
accuracy target.  The CLI maps the categories to exit codes 3 and 4.
"""


class AcsRamanError(Exception):
    """Base class for every error raised by this package."""


class DomainError(AcsRamanError):
    """Inputs lie outside the physical domain of the requested quantity."""


class NumericalError(AcsRamanError):
    """An iterative numerical routine failed to converge to tolerance."""


class CutoffOverflow(DomainError):
    """A creation operator would push an occupation past the state cutoff."""


class PoleAtSouthPole(DomainError):
    """theta at (or numerically at) pi, where the stereographic label diverges."""


class CombinatoricsOverflow(DomainError):
    """Requested block exceeds the supported total-quanta ceiling."""


class ZeroCoupling(DomainError):
    """Coupling strength is zero: the coherent-state labels are undefined
    and the Hamiltonian is already diagonal."""


class UnstableBranch(DomainError):
    """Non-positive normal-mode frequency: the branch trace diverges."""


class BadBeta(DomainError):
    """Inverse temperature must be strictly positive."""


class UnstableSystem(DomainError):
    """Coupling too strong for the oscillator frequencies: the lower
    normal mode is non-positive and thermodynamics diverge."""


class GridTooCoarse(DomainError):
    """Sphere grid violates the exactness bounds for the requested block."""


class ExponentialNoConvergence(NumericalError):
    """Matrix-exponential Taylor series failed its remainder bound."""


class NoConvergence(NumericalError):
    """Jacobi eigensolver hit the sweep limit before reaching tolerance."""


class TailTooFat(NumericalError):
    """Spectral sum would need more blocks than the allowed cap to reach
    the requested tail bound."""


# CLI exit codes: 2 invalid parameters, 3 domain error, 4 numerical failure.
EXIT_INVALID_PARAMS = 2
EXIT_DOMAIN_ERROR = 3
EXIT_NUMERICAL_ERROR = 4


def exit_code_for(error_code: str) -> int:
    """Map an error code (exception class name) to a CLI exit code."""
    cls = globals().get(error_code)
    if isinstance(cls, type) and issubclass(cls, DomainError):
        return EXIT_DOMAIN_ERROR
    if isinstance(cls, type) and issubclass(cls, NumericalError):
        return EXIT_NUMERICAL_ERROR
    return EXIT_INVALID_PARAMS
