"""Closed-form approximation ratios.

The semicircle curve for decoded quantum interferometry with decoding
fraction ``l = ell/m`` and acceptance density ``rho = r/q`` is

    alpha = (sqrt(l (1 - rho)) + sqrt(rho (1 - l)))**2    if rho <= 1 - l
    alpha = 1                                             otherwise.

The saturation test is done in exact rational arithmetic on the inputs, so
points on or past the boundary return exactly ``1.0``; the square roots are
binary64.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import RangeError


def _unit(value, name, open_interval=False):
    value = Fraction(value)
    if open_interval and not 0 < value < 1:
        raise RangeError(f"{name} must lie in (0, 1), got {value}")
    if not 0 <= value <= 1:
        raise RangeError(f"{name} must lie in [0, 1], got {value}")
    return value


def semicircle_branch(ell_over_m, r_over_q):
    """The unsaturated expression, evaluated without the saturation test."""
    ell = float(_unit(ell_over_m, "ell_over_m"))
    rho = float(_unit(r_over_q, "r_over_q"))
    return (math.sqrt(ell * (1 - rho)) + math.sqrt(rho * (1 - ell))) ** 2


def saturation_threshold(r_over_q):
    """Smallest decoding fraction at which the ratio reaches 1: ``1 - r/q``."""
    return 1 - _unit(r_over_q, "r_over_q", open_interval=True)


def semicircle_ratio(ell_over_m, r_over_q):
    ell = _unit(ell_over_m, "ell_over_m")
    rho = _unit(r_over_q, "r_over_q", open_interval=True)
    if ell >= 1 - rho:
        return 1.0
    return min(1.0, semicircle_branch(ell, rho))


def prange_expected_ratio(n_over_m, r_over_q):
    """``n/m + (1 - n/m) r/q``; exact when given rationals."""
    for value, name in ((n_over_m, "n_over_m"), (r_over_q, "r_over_q")):
        if not 0 <= value <= 1:
            raise RangeError(f"{name} must lie in [0, 1], got {value}")
    return n_over_m + (1 - n_over_m) * r_over_q


@dataclass(frozen=True)
class LandscapePoint:
    ell_over_m: Fraction
    r_over_q: Fraction
    alpha_dqi: float
    saturated: bool

    @property
    def hardness_wall(self):
        return self.r_over_q


def landscape_curve(r_over_q, steps):
    """Sample the semicircle curve on ``steps`` evenly spaced points of [0, 1]."""
    if steps < 2:
        raise RangeError("steps must be >= 2")
    rho = _unit(r_over_q, "r_over_q", open_interval=True)
    points = []
    for k in range(steps):
        ell = Fraction(k, steps - 1)
        points.append(LandscapePoint(ell, rho, semicircle_ratio(ell, rho), ell >= 1 - rho))
    return points


def landscape_rows(points):
    """CSV-ready rows ``(ell_over_m, alpha_dqi, hardness_wall, saturated)``."""
    for pt in points:
        yield (repr(float(pt.ell_over_m)), repr(pt.alpha_dqi),
               repr(float(pt.hardness_wall)), "true" if pt.saturated else "false")


LANDSCAPE_HEADER = ("ell_over_m", "alpha_dqi", "hardness_wall", "saturated")
