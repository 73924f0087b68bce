"""Constellation-level evaluation: relay rings, Molniya duty cycles, coverage.

Equatorial relay rings are rigid rotating polygons; Molniya relays loiter
near apogee over one hemisphere; ground coverage is a time-stepped
simulation with satellites propagated in the inertial frame and stations on
the rotating Earth.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Literal

from .errors import InfeasibleRingError
from .geodesy import GroundStation
from .linkbudget import LinkModel, rate_at_distance
from .orbit import (
    DEFAULT_CONSTANTS,
    KeplerianOrbit,
    PhysicalConstants,
    Position3,
    elevation_angle,
    line_of_sight,
    orbital_period,
    propagate,
    station_position,
)

MOLNIYA_ECCENTRICITY = 0.74
MOLNIYA_INCLINATION_DEG = 63.4
MOLNIYA_ARG_PERIGEE_DEG = 270.0


class UndersamplingWarning(UserWarning):
    """Simulation step too coarse relative to the fastest orbit."""


def molniya_orbit(
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
    raan_deg: float = 0.0,
    mean_anomaly_epoch_deg: float = 0.0,
) -> KeplerianOrbit:
    """Classical Molniya relay orbit: half-sidereal-day period, e = 0.74,
    critical inclination, apogee over the northern hemisphere."""
    half_day = consts.sidereal_day_s / 2.0
    a_m = (consts.mu_m3_s2 * (half_day / (2.0 * math.pi)) ** 2) ** (1.0 / 3.0)
    return KeplerianOrbit(
        semi_major_axis_km=a_m / 1000.0,
        eccentricity=MOLNIYA_ECCENTRICITY,
        inclination_deg=MOLNIYA_INCLINATION_DEG,
        arg_perigee_deg=MOLNIYA_ARG_PERIGEE_DEG,
        raan_deg=raan_deg,
        mean_anomaly_epoch_deg=mean_anomaly_epoch_deg,
    )


@dataclass(frozen=True)
class RelayRing:
    """Equally-spaced (by default) relay satellites on one equatorial circle."""

    count: int
    altitude_km: float
    phase_offsets_deg: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.count < 2:
            raise ValueError(f"ring needs at least 2 satellites, got {self.count}")
        if self.altitude_km <= 0:
            raise ValueError("ring altitude must be > 0 km")
        if not self.phase_offsets_deg:
            spacing = 360.0 / self.count
            object.__setattr__(
                self, "phase_offsets_deg", tuple(i * spacing for i in range(self.count))
            )
        if len(self.phase_offsets_deg) != self.count:
            raise ValueError("phase_offsets_deg length must equal count")
        reduced = [p % 360.0 for p in self.phase_offsets_deg]
        if len(set(reduced)) != self.count:
            raise ValueError("phase offsets must be distinct modulo 360")

    def orbit(self, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> KeplerianOrbit:
        return KeplerianOrbit(semi_major_axis_km=consts.earth_radius_km + self.altitude_km)

    def positions(self, t_s: float, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> list[Position3]:
        """Satellite positions at time t, in phase-offset order."""
        radius = consts.earth_radius_km + self.altitude_km
        n = 2.0 * math.pi / orbital_period(self.orbit(consts), consts)
        out = []
        for phase in self.phase_offsets_deg:
            ang = math.radians(phase) + n * t_s
            out.append(Position3(radius * math.cos(ang), radius * math.sin(ang), 0.0, t_s))
        return out


@dataclass(frozen=True)
class RelayDutyCycle:
    """Hemisphere dwell fractions for one relay over the sampled horizon."""

    north_fraction: float
    south_fraction: float
    degenerate: bool = False  # equatorial orbit: z identically zero


@dataclass(frozen=True)
class Scenario:
    """One constellation evaluation case."""

    stations: tuple[GroundStation, ...]
    orbits: tuple[KeplerianOrbit, ...] = ()
    ring: RelayRing | None = None
    relays: tuple[KeplerianOrbit, ...] = ()
    link: LinkModel | None = None
    isl_loss_db: float = 0.0
    duration_s: float = 86164.0905
    step_s: float = 10.0
    min_elevation_deg: float = 20.0

    def __post_init__(self) -> None:
        if not self.stations:
            raise ValueError("scenario needs at least one station")
        if self.duration_s <= 0:
            raise ValueError("duration_s must be > 0")
        if not 0 < self.step_s <= self.duration_s:
            raise ValueError("step_s must be in (0, duration_s]")
        if self.isl_loss_db < 0:
            raise ValueError("isl_loss_db must be >= 0")
        names = [s.name for s in self.stations]
        if len(set(names)) != len(names):
            raise ValueError("station names must be unique")


@dataclass(frozen=True)
class CoverageReport:
    """Per-station coverage, ring connectivity, and relay duty cycles."""

    per_station_coverage: dict[str, float]
    ring_connected_fraction: float | None = None
    relay_duty_cycles: dict[str, RelayDutyCycle] = field(default_factory=dict)


def min_ring_altitude(count: int, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Lowest ring altitude at which adjacent satellites keep line of sight.

    Adjacent satellites sit 2*pi/count apart; the chord midpoint is the
    closest approach to Earth's center, so clearance requires
    (R + h) cos(pi/count) > R + margin. A 2-ring's chord runs through the
    center and no altitude works.
    """
    if count < 2:
        raise ValueError(f"ring count must be >= 2, got {count}")
    if count == 2:
        raise InfeasibleRingError(
            "2-satellite ring: the adjacent chord is diametric and passes through "
            "Earth's center; no altitude gives line of sight"
        )
    clearance = consts.earth_radius_km + consts.atmosphere_margin_km
    return clearance / math.cos(math.pi / count) - consts.earth_radius_km


def ring_connected(
    ring: RelayRing, t_s: float, consts: PhysicalConstants = DEFAULT_CONSTANTS
) -> bool:
    """True when every adjacent ring pair has line of sight at time t."""
    positions = ring.positions(t_s, consts)
    order = sorted(range(ring.count), key=lambda i: ring.phase_offsets_deg[i] % 360.0)
    for k in range(len(order)):
        a = positions[order[k]]
        b = positions[order[(k + 1) % len(order)]]
        if not line_of_sight(a, b, consts):
            return False
    return True


def relay_duty_cycle(
    relay: KeplerianOrbit,
    target_hemisphere: Literal["north", "south"],
    duration_s: float,
    step_s: float,
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
) -> float:
    """Fraction of sampled instants the relay spends over a hemisphere.

    Strict sign convention on the inertial z-coordinate: an equatorial
    relay (z identically zero) scores 0 for both hemispheres.
    """
    period = orbital_period(relay, consts)
    if duration_s < period:
        raise ValueError(
            f"duration {duration_s:.1f} s shorter than one orbital period {period:.1f} s"
        )
    if step_s <= 0:
        raise ValueError("step_s must be > 0")
    n_steps = int(duration_s / step_s)
    hits = 0
    for k in range(n_steps):
        z = propagate(relay, k * step_s, consts).z
        if target_hemisphere == "north":
            hits += z > 0.0
        else:
            hits += z < 0.0
    return hits / n_steps


def _shortest_period(scenario: Scenario, consts: PhysicalConstants) -> float | None:
    periods = [orbital_period(o, consts) for o in scenario.orbits]
    periods += [orbital_period(o, consts) for o in scenario.relays]
    if scenario.ring is not None:
        periods.append(orbital_period(scenario.ring.orbit(consts), consts))
    return min(periods) if periods else None


def coverage_fraction(
    scenario: Scenario, consts: PhysicalConstants = DEFAULT_CONSTANTS
) -> CoverageReport:
    """Time-stepped coverage over [0, duration) at step_s.

    A station counts as covered at an instant when any communication
    satellite sits at or above the minimum elevation. Ring connectivity and
    relay hemisphere dwell are sampled on the same grid. A step coarser
    than 1/100 of the fastest orbit raises an UndersamplingWarning
    (reported, not fatal).
    """
    shortest = _shortest_period(scenario, consts)
    if shortest is not None and scenario.step_s > shortest / 100.0:
        warnings.warn(
            f"step {scenario.step_s:.1f} s exceeds 1/100 of the shortest orbital "
            f"period {shortest:.1f} s; coverage fractions may be undersampled",
            UndersamplingWarning,
            stacklevel=2,
        )

    n_steps = int(scenario.duration_s / scenario.step_s)
    n_steps = max(n_steps, 1)
    covered = {s.name: 0 for s in scenario.stations}
    ring_hits = 0

    for k in range(n_steps):
        t = k * scenario.step_s
        sat_positions = [propagate(o, t, consts) for o in scenario.orbits]
        for stn in scenario.stations:
            stn_pos = station_position(stn, t, consts)
            for sat_pos in sat_positions:
                if elevation_angle(sat_pos, stn_pos) >= scenario.min_elevation_deg:
                    covered[stn.name] += 1
                    break
        if scenario.ring is not None and ring_connected(scenario.ring, t, consts):
            ring_hits += 1

    duty: dict[str, RelayDutyCycle] = {}
    for i, relay in enumerate(scenario.relays):
        north = relay_duty_cycle(relay, "north", scenario.duration_s, scenario.step_s, consts)
        south = relay_duty_cycle(relay, "south", scenario.duration_s, scenario.step_s, consts)
        duty[f"relay{i}"] = RelayDutyCycle(
            north_fraction=north,
            south_fraction=south,
            degenerate=(north == 0.0 and south == 0.0),
        )

    return CoverageReport(
        per_station_coverage={name: hits / n_steps for name, hits in covered.items()},
        ring_connected_fraction=(ring_hits / n_steps if scenario.ring is not None else None),
        relay_duty_cycles=duty,
    )


def network_key_rate(
    scenario: Scenario, t_s: float, consts: PhysicalConstants = DEFAULT_CONSTANTS
) -> dict[tuple[str, str], float]:
    """Best achievable pair rate between every station pair at time t.

    Downlinks run only from communication satellites at or above the
    minimum elevation; relayed paths route through at most two
    inter-satellite hops (direct sat-sat, or sat-relay-sat), each hop
    multiplying in 10^(-isl_loss_db/10) and requiring line of sight.
    Stations with no valid path score 0.
    """
    if scenario.link is None:
        raise ValueError("scenario has no link model")
    model = scenario.link

    stn_positions = [station_position(s, t_s, consts) for s in scenario.stations]
    sat_positions = [propagate(o, t_s, consts) for o in scenario.orbits]
    relay_positions = [propagate(o, t_s, consts) for o in scenario.relays]
    if scenario.ring is not None:
        relay_positions.extend(scenario.ring.positions(t_s, consts))

    # downlink[si][gi]: rate from satellite si to station gi, or None.
    downlink: list[list[float | None]] = []
    for sat_pos in sat_positions:
        row: list[float | None] = []
        for stn_pos in stn_positions:
            if elevation_angle(sat_pos, stn_pos) >= scenario.min_elevation_deg:
                d = float(math.dist(sat_pos.vector(), stn_pos.vector()))
                row.append(rate_at_distance(model, d))
            else:
                row.append(None)
        downlink.append(row)

    hop_factor = 10.0 ** (-scenario.isl_loss_db / 10.0)
    n_sats = len(sat_positions)
    sat_sat_los = [
        [
            a != b and line_of_sight(sat_positions[a], sat_positions[b], consts)
            for b in range(n_sats)
        ]
        for a in range(n_sats)
    ]
    sat_relay_los = [
        [line_of_sight(sat_positions[a], rp, consts) for rp in relay_positions]
        for a in range(n_sats)
    ]

    rates: dict[tuple[str, str], float] = {}
    names = [s.name for s in scenario.stations]
    for gi in range(len(names)):
        for gj in range(gi + 1, len(names)):
            best = 0.0
            for sa in range(n_sats):
                ra = downlink[sa][gi]
                if ra is None:
                    continue
                for sb in range(n_sats):
                    rb = downlink[sb][gj]
                    if rb is None:
                        continue
                    floor_rate = min(ra, rb)
                    if sa == sb:
                        best = max(best, floor_rate)
                        continue
                    if sat_sat_los[sa][sb]:
                        best = max(best, floor_rate * hop_factor)
                    for ri in range(len(relay_positions)):
                        if sat_relay_los[sa][ri] and sat_relay_los[sb][ri]:
                            best = max(best, floor_rate * hop_factor * hop_factor)
            rates[(names[gi], names[gj])] = best
    return rates
