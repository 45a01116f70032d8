"""Exception types shared across the package."""


class ChronopathError(Exception):
    """Base class for all package-specific errors."""


class SingularDenominator(ChronopathError):
    """A sine factor in the interference product sits on the pole lattice.

    Raised when q*z/2 is within the guard band of a nonzero multiple of pi
    for some q in [1, n].  The caller chose theta on (or too close to) a
    pole of the product; perturbing theta slightly clears it.
    """

    def __init__(self, theta, n_steps, q, k):
        self.theta = theta
        self.n_steps = n_steps
        self.q = q
        self.k = k
        super().__init__(
            f"sin(q*z/2) vanishes for q={q} (z = theta/N, theta={theta!r}, "
            f"N={n_steps}, multiple k={k}); perturb theta, e.g. by +1e-9 "
            f"(CLI: --perturb-theta-on-pole)"
        )


class ThetaOutOfRange(ChronopathError):
    """theta is outside the open interval (2*pi, 4*pi) required here."""


class DimTooSmall(ChronopathError):
    """Requested operator truncation dimension is below the minimum of 16."""


class FlatProfile(ChronopathError):
    """Amplitude profile has no strict maximum; peak finding is undefined."""


class InvalidFraction(ChronopathError):
    """Contributing-particle fraction f must lie in (0, 1]."""


class LogOverflow(ChronopathError):
    """Conversion from log-domain would overflow an ordinary float."""
