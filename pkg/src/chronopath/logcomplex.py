"""Complex amplitudes stored as (log-magnitude, phase).

Products of thousands of sine ratios overflow or underflow ordinary
floats long before the normalized profile does, so amplitudes are kept
as log|a| plus a phase in (-pi, pi] and only converted to complex when
the magnitude fits.
"""
from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass

from .errors import LogOverflow

# Largest log-magnitude exp() can represent as a finite float.
_OVERFLOW_LOG = math.log(sys.float_info.max)


def _canonical_phase(phase: float) -> float:
    """Wrap to (-pi, pi]."""
    p = math.remainder(phase, 2.0 * math.pi)
    if p == -math.pi:
        p = math.pi
    return p + 0.0  # normalise -0.0


@dataclass(frozen=True, slots=True)
class LogComplex:
    """A complex number a = exp(log_mag) * exp(i*phase).

    log_mag = -inf encodes exact zero (phase fixed to 0 by convention).
    """

    log_mag: float
    phase: float = 0.0

    def __post_init__(self):
        if math.isinf(self.log_mag) and self.log_mag < 0:
            object.__setattr__(self, "phase", 0.0)
        else:
            object.__setattr__(self, "phase", _canonical_phase(self.phase))

    @classmethod
    def zero(cls) -> "LogComplex":
        return cls(-math.inf, 0.0)

    @classmethod
    def one(cls) -> "LogComplex":
        return cls(0.0, 0.0)

    @classmethod
    def from_complex(cls, value: complex) -> "LogComplex":
        value = complex(value)
        if value == 0:
            return cls.zero()
        return cls(math.log(abs(value)), cmath.phase(value))

    @property
    def is_zero(self) -> bool:
        return math.isinf(self.log_mag) and self.log_mag < 0

    def __mul__(self, other: "LogComplex") -> "LogComplex":
        if not isinstance(other, LogComplex):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return LogComplex.zero()
        return LogComplex(self.log_mag + other.log_mag, self.phase + other.phase)

    def magnitude(self) -> float:
        """exp(log_mag); raises LogOverflow if it exceeds float range."""
        if self.is_zero:
            return 0.0
        if self.log_mag > _OVERFLOW_LOG:
            raise LogOverflow(
                f"log-magnitude {self.log_mag:.6g} exceeds float range "
                f"(limit {_OVERFLOW_LOG:.6g})"
            )
        return math.exp(self.log_mag)

    def to_complex(self) -> complex:
        if self.is_zero:
            return 0j
        return self.magnitude() * complex(math.cos(self.phase), math.sin(self.phase))
