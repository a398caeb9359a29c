"""Secret-key region over (concurrence, disturbance).

A secret key is extractable one-way when delta = i_ab - i_ae is
positive.  Both eavesdropper-information cases reduce delta to a
difference of binary entropies, which is how it is evaluated here: the
constant terms cancel algebraically instead of numerically, keeping the
sign trustworthy down to machine precision.
"""

from dataclasses import dataclass
from enum import Enum
from math import sqrt

import numpy as np

from .infotheory import (
    binary_entropy,
    i_ab,
    i_ae_equal_concurrence,
    i_ae_independent,
)

BRUSS_THRESHOLD = 0.1565

PRECISION_FLOOR = 1e-12

BISECTION_MAX_ITER = 200
BISECTION_TOL = 1e-12

_D_EDGE = 1e-9  # probe points standing in for the open interval ends


class SweepMode(str, Enum):
    """How the eavesdropper information depends on the disturbance."""

    DEPENDENT = "dependent"
    INDEPENDENT = "independent"


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a key-region sweep."""

    c: float
    d: float
    i_ab: float
    i_ae: float
    delta: float
    key: bool


@dataclass(frozen=True)
class CriticalPoint:
    """Zero crossing of delta along d for one concurrence.

    d_star is None when delta never changes sign.  delta_min and
    delta_min_d locate the smallest |delta| probed; below_floor flags
    that it dipped under the precision floor, where the sign of delta
    is no longer numerically meaningful.
    """

    mode: SweepMode
    c: float
    d_star: float | None
    delta_min: float
    delta_min_d: float
    below_floor: bool


def bruss_baseline(d: float) -> bool:
    """Key criterion for the product-probe attack: positive below 0.1565."""
    if not 0.0 < d < 0.5:
        raise ValueError("d must lie in (0, 0.5)")
    return d < BRUSS_THRESHOLD


def _dependent_flip_bias(c: float, d: float) -> float:
    # p = d + (1 - 2d)(1 - sqrt(1 - c^2))/2, with the shrink term
    # computed cancellation-free so c = 0 returns exactly d
    shrink = c * c / (1.0 + sqrt(1.0 - c * c))
    return d + (1.0 - 2.0 * d) * shrink / 2.0


def critical_disturbance_closed_form(c: float) -> float:
    """Independent-case threshold (1 - sqrt(1 - c**2)) / 2."""
    if not 0.0 < c <= 1.0:
        raise ValueError("concurrence must lie in (0, 1]")
    return c * c / (2.0 * (1.0 + sqrt(1.0 - c * c)))


def delta_i(mode: SweepMode, c: float, d: float) -> float:
    """i_ab - i_ae as a difference of binary entropies.

    Dependent mode: h(p) - h(d) with p the effective flip bias seen by
    the probe.  Independent mode: h(d_star) - h(d) with d_star the
    closed-form threshold.  Identical to composing i_ab with the i_ae
    closed forms, but numerically stable near delta = 0.
    """
    mode = SweepMode(mode)
    if not 0.0 < d < 0.5:
        raise ValueError("d must lie in (0, 0.5)")
    if mode is SweepMode.DEPENDENT:
        if not 0.0 <= c <= 1.0:
            raise ValueError("concurrence out of [0, 1]")
        return binary_entropy(_dependent_flip_bias(c, d)) - binary_entropy(d)
    if not 0.0 < c <= 1.0:
        raise ValueError("concurrence must lie in (0, 1]")
    return binary_entropy(critical_disturbance_closed_form(c)) - binary_entropy(d)


def critical_disturbance(
    mode: SweepMode, c: float, scan_points: int = 1001
) -> CriticalPoint:
    """Locate the sign change of delta over d in (0, 0.5) by bisection.

    Runs at most 200 iterations to an interval of 1e-12.  When delta
    never changes sign the result carries d_star = None together with
    the smallest probed |delta| and its location, so callers can report
    a precision floor instead of a bare "no crossing".
    """
    mode = SweepMode(mode)
    lo, hi = _D_EDGE, 0.5 - _D_EDGE

    grid = np.linspace(lo, hi, scan_points)
    deltas = np.array([delta_i(mode, c, float(x)) for x in grid])
    idx = int(np.abs(deltas).argmin())
    delta_min = float(deltas[idx])
    delta_min_d = float(grid[idx])
    below_floor = abs(delta_min) < PRECISION_FLOOR

    f_lo = delta_i(mode, c, lo)
    f_hi = delta_i(mode, c, hi)
    if f_lo == 0.0 or f_hi == 0.0 or (f_lo > 0.0) == (f_hi > 0.0):
        return CriticalPoint(mode, c, None, delta_min, delta_min_d, below_floor)

    for _ in range(BISECTION_MAX_ITER):
        mid = 0.5 * (lo + hi)
        f_mid = delta_i(mode, c, mid)
        if f_mid == 0.0:
            lo = hi = mid
            break
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo < BISECTION_TOL:
            break
    d_star = 0.5 * (lo + hi)
    return CriticalPoint(mode, c, d_star, delta_min, delta_min_d, below_floor)


def sweep(
    mode: SweepMode,
    c_values: list[float] | tuple[float, ...],
    d_range: tuple[float, float] | None = None,
    steps: int = 500,
) -> list[SweepRow]:
    """Evaluate the key criterion on a (c, d) grid, ordered by (c, d).

    The d grid is ``steps`` uniform points on [d_min, d_max], default
    (0.001, 0.499); both ends must stay strictly inside (0, 0.5).  A
    degenerate range d_min = d_max with steps = 1 evaluates a single
    point.
    """
    mode = SweepMode(mode)
    if not c_values:
        raise ValueError("need at least one concurrence value")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    if d_range is None:
        d_range = (1e-3, 0.5 - 1e-3)
    d_min, d_max = d_range
    if not 0.0 < d_min <= d_max < 0.5:
        raise ValueError("d range must satisfy 0 < d_min <= d_max < 0.5")
    if steps > 1 and d_min == d_max:
        raise ValueError("degenerate d range needs steps = 1")
    d_grid = np.linspace(d_min, d_max, steps)
    rows: list[SweepRow] = []
    for c in sorted(c_values):
        if mode is SweepMode.DEPENDENT:
            i_ae_c = lambda d: i_ae_equal_concurrence(c, d)  # noqa: E731
        else:
            value = i_ae_independent(c)
            i_ae_c = lambda d: value  # noqa: E731
        for d in d_grid:
            d = float(d)
            delta = delta_i(mode, c, d)
            rows.append(
                SweepRow(
                    c=float(c),
                    d=d,
                    i_ab=i_ab(d),
                    i_ae=float(i_ae_c(d)),
                    delta=delta,
                    key=delta > 0.0,
                )
            )
    return rows


# canned figure datasets: nine concurrence curves per case
FIGURE_SPECS: dict[int, tuple[SweepMode, tuple[float, ...]]] = {
    1: (SweepMode.DEPENDENT, tuple(k / 10.0 for k in range(1, 10))),
    2: (SweepMode.INDEPENDENT, tuple(k / 10.0 for k in range(1, 10))),
}


def figure_rows(fig_id: int, steps: int = 500) -> list[SweepRow]:
    """Sweep data behind the two canned key-region figures."""
    if fig_id not in FIGURE_SPECS:
        raise ValueError(f"unknown figure id {fig_id}; choose from {sorted(FIGURE_SPECS)}")
    mode, c_values = FIGURE_SPECS[fig_id]
    return sweep(mode, list(c_values), steps=steps)
