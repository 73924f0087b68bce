"""Log-linear link-efficiency model and key-rate curves.

The channel is summarized by a dB-per-km slope around a reference distance:
LE(d) = slope * (d - D0), and the key rate scales as T0 * 10^(LE/10). The
default calibration uses the published Micius downlink figures (12 kbit/s
at 645 km, 1 kbit/s at 1200 km).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import LinkFitError
from .orbit import DEFAULT_CONSTANTS, PhysicalConstants, slant_range

# Published Micius downlink calibration points: (distance km, rate bit/s).
MICIUS_CALIBRATION = ((645.0, 12000.0), (1200.0, 1000.0))


@dataclass(frozen=True)
class LinkModel:
    """Fitted log-linear efficiency model.

    slope_db_per_km is negative for physical links; ref_distance_km is the
    distance at which the model returns exactly base_rate_bps.
    """

    slope_db_per_km: float
    ref_distance_km: float
    base_rate_bps: float

    def __post_init__(self) -> None:
        if self.ref_distance_km <= 0:
            raise ValueError("ref_distance_km must be > 0")
        if self.base_rate_bps <= 0:
            raise ValueError("base_rate_bps must be > 0")


def fit_from_two_points(d1_km: float, rate1: float, d2_km: float, rate2: float) -> LinkModel:
    """Fit the dB slope through two (distance, rate) calibration points.

    slope = 10 * log10(rate2 / rate1) / (d2 - d1); the returned model
    reproduces both inputs exactly.
    """
    if d1_km == d2_km:
        raise LinkFitError("calibration distances must differ")
    if d1_km <= 0 or d2_km <= 0:
        raise LinkFitError("calibration distances must be > 0")
    if rate1 <= 0 or rate2 <= 0:
        raise LinkFitError("calibration rates must be > 0")
    slope = 10.0 * math.log10(rate2 / rate1) / (d2_km - d1_km)
    return LinkModel(slope_db_per_km=slope, ref_distance_km=d1_km, base_rate_bps=rate1)


def default_link_model() -> LinkModel:
    """Model fitted to the Micius calibration points."""
    (d1, r1), (d2, r2) = MICIUS_CALIBRATION
    return fit_from_two_points(d1, r1, d2, r2)


def link_efficiency_db(model: LinkModel, distance_km: float) -> float:
    """Channel efficiency in dB relative to the reference distance (0 dB at D0)."""
    if distance_km <= 0:
        raise ValueError(f"distance must be > 0 km, got {distance_km}")
    return model.slope_db_per_km * (distance_km - model.ref_distance_km)


def rate_at_distance(model: LinkModel, distance_km: float) -> float:
    """Key rate T0 * 10^(LE/10) at the given link distance, bit/s."""
    return model.base_rate_bps * 10.0 ** (link_efficiency_db(model, distance_km) / 10.0)


def rate_vs_elevation(
    model: LinkModel,
    h_km: float,
    theta_grid_deg: list[float],
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
) -> list[tuple[float, float]]:
    """Key rate along an elevation grid for a satellite at altitude h_km.

    Each elevation maps through the slant-range geometry to a distance and
    then through the rate model; the grid order is preserved.
    """
    return [
        (theta, rate_at_distance(model, slant_range(theta, h_km, consts)))
        for theta in theta_grid_deg
    ]


def rate_vs_slant(model: LinkModel, d_grid_km: list[float]) -> list[tuple[float, float]]:
    """Key rate along a slant-distance grid; grid order preserved."""
    return [(d, rate_at_distance(model, d)) for d in d_grid_km]
