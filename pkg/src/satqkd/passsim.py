"""Single-pass key-bit integration for an overhead zenith pass.

The satellite crosses directly above the station on a circular orbit; Earth
rotation is ignored within the pass (second-order for LEO pass durations).
Time t = 0 is the zenith instant, so geometry and rates are symmetric in t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .linkbudget import LinkModel, rate_at_distance
from .orbit import DEFAULT_CONSTANTS, KeplerianOrbit, PhysicalConstants, angular_velocity

DEFAULT_MIN_ELEVATION_DEG = 20.0

# Bisection tolerance for the window edge, in seconds.
_WINDOW_TOL_S = 1e-6


@dataclass(frozen=True)
class PassWindow:
    """Contiguous interval [t1, t2] around the zenith instant, seconds."""

    t1_s: float
    t2_s: float

    def __post_init__(self) -> None:
        if self.t1_s > self.t2_s:
            raise ValueError(f"window start {self.t1_s} after end {self.t2_s}")

    @property
    def duration_s(self) -> float:
        return self.t2_s - self.t1_s

    @property
    def is_empty(self) -> bool:
        return self.t2_s == self.t1_s


@dataclass(frozen=True)
class PassResult:
    """Integrated key bits over one pass plus the sampled time series."""

    window: PassWindow
    total_bits: float
    samples: tuple[tuple[float, float, float], ...]  # (t_s, distance_km, rate_bps)


def _mean_motion(h_km: float, consts: PhysicalConstants) -> float:
    orbit = KeplerianOrbit(semi_major_axis_km=consts.earth_radius_km + h_km)
    return angular_velocity(orbit, consts)


def overhead_geometry(
    h_km: float, t_s: float, consts: PhysicalConstants = DEFAULT_CONSTANTS
) -> tuple[float, float]:
    """(elevation_deg, distance_km) at time t_s relative to zenith.

    The central angle grows as phi = omega * |t|; the distance follows the
    law of cosines and the elevation comes from the in-plane triangle,
    reaching 90 degrees at t = 0 and dropping symmetrically on both sides.
    """
    if h_km <= 0:
        raise ValueError(f"altitude must be > 0 km, got {h_km}")
    r_earth = consts.earth_radius_km
    r_orbit = r_earth + h_km
    phi = _mean_motion(h_km, consts) * abs(t_s)
    distance = math.sqrt(
        r_earth**2 + r_orbit**2 - 2.0 * r_earth * r_orbit * math.cos(phi)
    )
    sin_elev = (r_orbit * math.cos(phi) - r_earth) / distance
    sin_elev = min(1.0, max(-1.0, sin_elev))
    return math.degrees(math.asin(sin_elev)), distance


def effective_window(
    h_km: float,
    min_elevation_deg: float = DEFAULT_MIN_ELEVATION_DEG,
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
) -> PassWindow:
    """Symmetric window around zenith where elevation >= min_elevation_deg.

    Elevation decreases monotonically with |t| until the horizon, so the
    edge is found by bisection to 1e-6 s.
    """
    if not 0.0 < min_elevation_deg <= 90.0:
        raise ValueError(
            f"min_elevation_deg must be in (0, 90], got {min_elevation_deg}"
        )
    if min_elevation_deg == 90.0:
        return PassWindow(0.0, 0.0)

    r_earth = consts.earth_radius_km
    r_orbit = r_earth + h_km
    omega = _mean_motion(h_km, consts)
    # Horizon crossing bounds the bracket: elevation(t_horizon) = 0.
    t_horizon = math.acos(r_earth / r_orbit) / omega

    lo, hi = 0.0, t_horizon
    while hi - lo > _WINDOW_TOL_S:
        mid = 0.5 * (lo + hi)
        elev, _ = overhead_geometry(h_km, mid, consts)
        if elev >= min_elevation_deg:
            lo = mid
        else:
            hi = mid
    t_star = 0.5 * (lo + hi)
    return PassWindow(-t_star, t_star)


def _simpson_nodes(t1: float, t2: float, max_step_s: float) -> tuple[int, float]:
    """Even interval count and adjusted step covering [t1, t2] exactly."""
    span = t2 - t1
    n = max(2, math.ceil(span / max_step_s))
    if n % 2:
        n += 1
    return n, span / n


def integrate_pass(
    h_km: float,
    model: LinkModel,
    min_elevation_deg: float = DEFAULT_MIN_ELEVATION_DEG,
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
    max_step_s: float = 1.0,
) -> PassResult:
    """Total key bits over one effective window via composite Simpson.

    The instantaneous rate is the link model evaluated on the overhead-pass
    distance; the step is shrunk so an even number of intervals lands
    exactly on the window endpoints. Smoothness of the integrand makes the
    result stable to below 1e-6 relative under step halving.
    """
    if max_step_s <= 0:
        raise ValueError("max_step_s must be > 0")
    window = effective_window(h_km, min_elevation_deg, consts)
    if window.is_empty:
        _, d0 = overhead_geometry(h_km, 0.0, consts)
        sample = (0.0, d0, rate_at_distance(model, d0))
        return PassResult(window=window, total_bits=0.0, samples=(sample,))

    n, step = _simpson_nodes(window.t1_s, window.t2_s, max_step_s)
    samples = []
    rates = []
    for k in range(n + 1):
        t = window.t1_s + k * step
        _, distance = overhead_geometry(h_km, t, consts)
        rate = rate_at_distance(model, distance)
        samples.append((t, distance, rate))
        rates.append(rate)

    acc = rates[0] + rates[n]
    acc += 4.0 * sum(rates[1:n:2])
    acc += 2.0 * sum(rates[2:n:2])
    total = acc * step / 3.0
    return PassResult(window=window, total_bits=total, samples=tuple(samples))


def altitude_sweep(
    model: LinkModel,
    h_grid_km: list[float],
    min_elevation_deg: float = DEFAULT_MIN_ELEVATION_DEG,
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
    max_step_s: float = 1.0,
) -> list[tuple[float, float]]:
    """Total pass bits for each altitude in the grid, order preserved."""
    results = []
    for h in h_grid_km:
        if h <= 0:
            raise ValueError(f"altitudes must be > 0 km, got {h}")
        result = integrate_pass(h, model, min_elevation_deg, consts, max_step_s)
        results.append((h, result.total_bits))
    return results
