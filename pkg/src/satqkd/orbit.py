"""Two-body orbital mechanics and satellite-station geometry.

Satellites live in an Earth-centered inertial frame; ground stations sit on
a spherical Earth rotating once per sidereal day. Propagation is ideal
Keplerian (no J2, drag, or perturbations).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometryError, GeometryDomainError, KeplerSolverError
from .geodesy import GroundStation

_TWO_PI = 2.0 * math.pi

# Newton's starting guess diverges from E0 = M for high eccentricity near
# M ~ 0, so switch to E0 = pi there.
_HIGH_ECC_SWITCH = 0.8
_MAX_NEWTON_ITER = 50
_KEPLER_TOL = 1e-13


@dataclass(frozen=True)
class PhysicalConstants:
    """Pinned physical constants (km, s, m^3/s^2).

    atmosphere_margin_km is the grazing clearance used by line-of-sight
    tests between satellites.
    """

    earth_radius_km: float = 6371.0
    mu_m3_s2: float = 3.986004418e14
    sidereal_day_s: float = 86164.0905
    atmosphere_margin_km: float = 100.0

    def __post_init__(self) -> None:
        for name in ("earth_radius_km", "mu_m3_s2", "sidereal_day_s", "atmosphere_margin_km"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")


DEFAULT_CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class KeplerianOrbit:
    """Classical orbital elements; angles in degrees, lengths in km.

    Covers circular LEO (e = 0) through Molniya-class eccentricity. The
    perigee radius a(1 - e) must clear the Earth radius of whatever
    constants are used with it; operations enforce that on entry.
    """

    semi_major_axis_km: float
    eccentricity: float = 0.0
    inclination_deg: float = 0.0
    raan_deg: float = 0.0
    arg_perigee_deg: float = 0.0
    mean_anomaly_epoch_deg: float = 0.0

    def __post_init__(self) -> None:
        if self.semi_major_axis_km <= 0:
            raise ValueError("semi_major_axis_km must be > 0")
        if not 0.0 <= self.eccentricity < 1.0:
            raise ValueError(f"eccentricity must be in [0, 1), got {self.eccentricity}")

    @property
    def perigee_radius_km(self) -> float:
        return self.semi_major_axis_km * (1.0 - self.eccentricity)

    @property
    def apogee_radius_km(self) -> float:
        return self.semi_major_axis_km * (1.0 + self.eccentricity)


def circular_orbit(
    altitude_km: float, consts: PhysicalConstants = DEFAULT_CONSTANTS, **kwargs: float
) -> KeplerianOrbit:
    """Circular orbit at the given altitude above the spherical Earth."""
    if altitude_km <= 0:
        raise ValueError(f"altitude_km must be > 0, got {altitude_km}")
    return KeplerianOrbit(semi_major_axis_km=consts.earth_radius_km + altitude_km, **kwargs)


@dataclass(frozen=True)
class Position3:
    """Cartesian point in the Earth-centered inertial frame (km) at time t (s)."""

    x: float
    y: float
    z: float
    t: float

    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def radius(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)


def _check_orbit(orbit: KeplerianOrbit, consts: PhysicalConstants) -> None:
    if orbit.perigee_radius_km <= consts.earth_radius_km:
        raise ValueError(
            f"perigee radius {orbit.perigee_radius_km:.1f} km does not clear the "
            f"Earth radius {consts.earth_radius_km:.1f} km"
        )


def orbital_period(orbit: KeplerianOrbit, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Keplerian period T = 2*pi*sqrt(a^3 / mu), in seconds."""
    _check_orbit(orbit, consts)
    a_m = orbit.semi_major_axis_km * 1000.0
    return _TWO_PI * math.sqrt(a_m**3 / consts.mu_m3_s2)


def angular_velocity(orbit: KeplerianOrbit, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Mean motion 2*pi / T, in rad/s."""
    return _TWO_PI / orbital_period(orbit, consts)


def solve_kepler(mean_anomaly_rad: float, eccentricity: float) -> float:
    """Solve E - e*sin(E) = M for the eccentric anomaly E (radians).

    Newton iteration from E0 = M for e < 0.8 and E0 = pi otherwise, capped
    at 50 iterations. M is reduced into [0, 2*pi) and the matching whole
    turns are added back to E, so E - e*sin(E) - M stays below 1e-12 rad.
    """
    e = eccentricity
    if not 0.0 <= e < 1.0:
        raise ValueError(f"eccentricity must be in [0, 1), got {e}")
    if not math.isfinite(mean_anomaly_rad):
        raise ValueError("mean anomaly must be finite")

    turns = math.floor(mean_anomaly_rad / _TWO_PI)
    m = mean_anomaly_rad - turns * _TWO_PI

    if e == 0.0 or m == 0.0:
        return m + turns * _TWO_PI

    ecc_anomaly = m if e < _HIGH_ECC_SWITCH else math.pi
    for _ in range(_MAX_NEWTON_ITER):
        f = ecc_anomaly - e * math.sin(ecc_anomaly) - m
        if abs(f) <= _KEPLER_TOL:
            return ecc_anomaly + turns * _TWO_PI
        fprime = 1.0 - e * math.cos(ecc_anomaly)
        ecc_anomaly -= f / fprime
    raise KeplerSolverError(
        f"Kepler iteration did not converge for M={mean_anomaly_rad}, e={e}"
    )


def propagate(
    orbit: KeplerianOrbit, t: float, consts: PhysicalConstants = DEFAULT_CONSTANTS
) -> Position3:
    """Inertial position at time t seconds past epoch.

    Mean anomaly advances at the mean motion; the eccentric anomaly comes
    from solve_kepler; the perifocal position is rotated by argument of
    perigee, inclination, and RAAN.
    """
    _check_orbit(orbit, consts)
    n = angular_velocity(orbit, consts)
    m = math.radians(orbit.mean_anomaly_epoch_deg) + n * t
    ecc_anomaly = solve_kepler(m, orbit.eccentricity)

    e = orbit.eccentricity
    a = orbit.semi_major_axis_km
    cos_e = math.cos(ecc_anomaly)
    sin_e = math.sin(ecc_anomaly)
    r = a * (1.0 - e * cos_e)
    # True anomaly via the half-angle form, stable for all quadrants.
    nu = 2.0 * math.atan2(
        math.sqrt(1.0 + e) * math.sin(ecc_anomaly / 2.0),
        math.sqrt(1.0 - e) * math.cos(ecc_anomaly / 2.0),
    )

    u = math.radians(orbit.arg_perigee_deg) + nu  # argument of latitude
    inc = math.radians(orbit.inclination_deg)
    raan = math.radians(orbit.raan_deg)

    cos_u, sin_u = math.cos(u), math.sin(u)
    cos_i, sin_i = math.cos(inc), math.sin(inc)
    cos_o, sin_o = math.cos(raan), math.sin(raan)

    x = r * (cos_o * cos_u - sin_o * sin_u * cos_i)
    y = r * (sin_o * cos_u + cos_o * sin_u * cos_i)
    z = r * (sin_u * sin_i)
    return Position3(x=x, y=y, z=z, t=t)


def station_position(
    station: GroundStation, t: float, consts: PhysicalConstants = DEFAULT_CONSTANTS
) -> Position3:
    """Inertial position of a ground station fixed to the rotating sphere.

    At t = 0 the prime meridian is aligned with the inertial x-axis.
    """
    rot = _TWO_PI / consts.sidereal_day_s
    lat = math.radians(station.lat_deg)
    lon = math.radians(station.lon_deg) + rot * t
    r = consts.earth_radius_km
    return Position3(
        x=r * math.cos(lat) * math.cos(lon),
        y=r * math.cos(lat) * math.sin(lon),
        z=r * math.sin(lat),
        t=t,
    )


def elevation_angle(sat: Position3, stn: Position3) -> float:
    """Elevation of the satellite above the station's horizon plane, degrees.

    90 at zenith, 0 on the horizon, negative below it. Computed as 90 minus
    the angle between the station's local vertical and the line of sight.
    """
    los = sat.vector() - stn.vector()
    los_norm = float(np.linalg.norm(los))
    up_norm = stn.radius()
    if los_norm == 0.0 or up_norm == 0.0:
        raise DegenerateGeometryError("coincident satellite and station positions")
    cos_zenith = float(np.dot(stn.vector(), los)) / (up_norm * los_norm)
    cos_zenith = min(1.0, max(-1.0, cos_zenith))
    return 90.0 - math.degrees(math.acos(cos_zenith))


def slant_range(
    theta_deg: float, h_km: float, consts: PhysicalConstants = DEFAULT_CONSTANTS
) -> float:
    """Line-of-sight distance to a satellite at altitude h seen at elevation theta.

    d = sqrt((R+h)^2 - (R cos(theta))^2) - R sin(theta); strictly decreasing
    in theta for fixed h, equal to h at zenith.
    """
    if not 0.0 <= theta_deg <= 90.0:
        raise GeometryDomainError(f"elevation angle {theta_deg} outside [0, 90] degrees")
    if h_km <= 0:
        raise GeometryDomainError(f"altitude must be > 0 km, got {h_km}")
    r_earth = consts.earth_radius_km
    theta = math.radians(theta_deg)
    return math.sqrt((r_earth + h_km) ** 2 - (r_earth * math.cos(theta)) ** 2) - r_earth * math.sin(
        theta
    )


def line_of_sight(
    p1: Position3, p2: Position3, consts: PhysicalConstants = DEFAULT_CONSTANTS
) -> bool:
    """True when the segment p1-p2 clears the Earth plus atmosphere margin.

    The test is on the minimum distance from Earth's center to the segment;
    when the perpendicular foot falls outside the segment the endpoints are
    the closest approach and the path is clear (both sit above the surface).
    """
    a = p1.vector()
    d = p2.vector() - a
    seg_len_sq = float(np.dot(d, d))
    blocked_radius = consts.earth_radius_km + consts.atmosphere_margin_km
    if seg_len_sq == 0.0:
        return True
    t = -float(np.dot(a, d)) / seg_len_sq
    if t <= 0.0 or t >= 1.0:
        return True
    closest = a + t * d
    return float(np.linalg.norm(closest)) > blocked_radius
