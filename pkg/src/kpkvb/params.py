"""Model parameters for the hyperbolic random graph and derived constants."""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, field


class ParameterError(ValueError):
    """Raised when a model parameter lies outside its admissible range."""

    def __init__(self, name: str, value, reason: str):
        super().__init__(f"invalid {name}={value!r}: {reason}")
        self.name = name
        self.value = value


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= 0.5:
        raise ParameterError("alpha", alpha, "must be a finite number > 1/2")
    return alpha


def check_nu(nu: float) -> float:
    nu = float(nu)
    if not math.isfinite(nu) or nu <= 0.0:
        raise ParameterError("nu", nu, "must be a finite number > 0")
    return nu


def check_n(n) -> int:
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        if isinstance(n, float) and n.is_integer():
            n = int(n)
        else:
            raise ParameterError("n", n, "must be an integer")
    n = int(n)
    if n < 1:
        raise ParameterError("n", n, "must be >= 1")
    return n


def xi_of(alpha: float, nu: float) -> float:
    """Mean degree scale of the limit model at height zero."""
    return 4.0 * alpha * nu / (math.pi * (2.0 * alpha - 1.0))


def eta_of(nu: float) -> float:
    return 4.0 * nu / math.pi


@dataclass(frozen=True)
class ModelParams:
    """Validated ``(alpha, nu, n)`` with the disk radius and limit constants.

    ``R`` is the disk radius ``2 ln(n / nu)``; ``xi`` and ``eta`` are the
    constants ``4 alpha nu / (pi (2 alpha - 1))`` and ``4 nu / pi``.
    """

    alpha: float
    nu: float
    n: int
    R: float = field(init=False)
    xi: float = field(init=False)
    eta: float = field(init=False)

    def __post_init__(self):
        alpha = check_alpha(self.alpha)
        nu = check_nu(self.nu)
        n = check_n(self.n)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "R", 2.0 * math.log(n / nu))
        object.__setattr__(self, "xi", xi_of(alpha, nu))
        object.__setattr__(self, "eta", eta_of(nu))


def derive_params(alpha: float, nu: float, n: int) -> ModelParams:
    return ModelParams(alpha, nu, n)
