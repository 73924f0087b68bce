"""Scenario configuration loading.

One JSON file describes an experiment: sections ``constants``, ``link``,
``stations``, ``orbits``, ``ring``, ``relays``, ``simulation``. Lengths are
km, times seconds, angles degrees, rates bit/s. Unknown keys anywhere are
rejected so typos fail loudly instead of silently using defaults.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

from .constellation import RelayRing, Scenario
from .errors import ConfigError, StationFileError
from .geodesy import GroundStation
from .linkbudget import LinkModel, default_link_model, fit_from_two_points
from .orbit import KeplerianOrbit, PhysicalConstants

_TOP_KEYS = {"constants", "link", "stations", "orbits", "ring", "relays", "simulation"}
_CONSTANTS_KEYS = {"earth_radius_km", "mu_m3_s2", "sidereal_day_s", "atmosphere_margin_km"}
_LINK_KEYS = {"slope_db_per_km", "ref_distance_km", "base_rate_bps", "fit_points"}
_ORBIT_KEYS = {"a_km", "altitude_km", "e", "inc_deg", "raan_deg", "argp_deg", "M0_deg"}
_RING_KEYS = {"count", "altitude_km", "phase_offsets_deg"}
_SIM_KEYS = {"duration_s", "step_s", "min_elevation_deg", "isl_loss_db"}
_STATION_KEYS = {"name", "lat_deg", "lon_deg"}

STATION_CSV_HEADER = ["name", "lat_deg", "lon_deg"]


@dataclass(frozen=True)
class SimulationParams:
    duration_s: float = 86164.0905
    step_s: float = 10.0
    min_elevation_deg: float = 20.0
    isl_loss_db: float = 0.0


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated configuration, ready to hand to the library modules."""

    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    link: LinkModel = field(default_factory=default_link_model)
    stations: tuple[GroundStation, ...] = ()
    orbits: tuple[KeplerianOrbit, ...] = ()
    ring: RelayRing | None = None
    relays: tuple[KeplerianOrbit, ...] = ()
    simulation: SimulationParams = field(default_factory=SimulationParams)

    def scenario(self) -> Scenario:
        """Assemble the constellation Scenario; requires at least one station."""
        if not self.stations:
            raise ConfigError("scenario requires a 'stations' section with at least one station")
        try:
            return Scenario(
                stations=self.stations,
                orbits=self.orbits,
                ring=self.ring,
                relays=self.relays,
                link=self.link,
                isl_loss_db=self.simulation.isl_loss_db,
                duration_s=self.simulation.duration_s,
                step_s=self.simulation.step_s,
                min_elevation_deg=self.simulation.min_elevation_deg,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


def _reject_unknown(mapping: dict, allowed: set[str], where: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(sorted(unknown))}")


def _number(mapping: dict, key: str, where: str, default: float | None = None) -> float:
    if key not in mapping:
        if default is None:
            raise ConfigError(f"missing required key '{key}' in {where}")
        return default
    value = mapping[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}.{key} must be a number, got {value!r}")
    return float(value)


def _parse_constants(block: dict) -> PhysicalConstants:
    _reject_unknown(block, _CONSTANTS_KEYS, "constants")
    defaults = PhysicalConstants()
    try:
        return PhysicalConstants(
            earth_radius_km=_number(block, "earth_radius_km", "constants", defaults.earth_radius_km),
            mu_m3_s2=_number(block, "mu_m3_s2", "constants", defaults.mu_m3_s2),
            sidereal_day_s=_number(block, "sidereal_day_s", "constants", defaults.sidereal_day_s),
            atmosphere_margin_km=_number(
                block, "atmosphere_margin_km", "constants", defaults.atmosphere_margin_km
            ),
        )
    except ValueError as exc:
        raise ConfigError(f"constants: {exc}") from exc


def _parse_link(block: dict) -> LinkModel:
    _reject_unknown(block, _LINK_KEYS, "link")
    if "fit_points" in block:
        extra = set(block) - {"fit_points"}
        if extra:
            raise ConfigError("link: fit_points cannot be combined with explicit model keys")
        points = block["fit_points"]
        if (
            not isinstance(points, list)
            or len(points) != 2
            or any(not isinstance(p, list) or len(p) != 2 for p in points)
        ):
            raise ConfigError("link.fit_points must be [[d1_km, rate1], [d2_km, rate2]]")
        try:
            return fit_from_two_points(points[0][0], points[0][1], points[1][0], points[1][1])
        except Exception as exc:
            raise ConfigError(f"link.fit_points: {exc}") from exc
    try:
        return LinkModel(
            slope_db_per_km=_number(block, "slope_db_per_km", "link"),
            ref_distance_km=_number(block, "ref_distance_km", "link"),
            base_rate_bps=_number(block, "base_rate_bps", "link"),
        )
    except ValueError as exc:
        raise ConfigError(f"link: {exc}") from exc


def _parse_orbit(block: dict, consts: PhysicalConstants, where: str) -> KeplerianOrbit:
    if not isinstance(block, dict):
        raise ConfigError(f"{where} must be an object")
    _reject_unknown(block, _ORBIT_KEYS, where)
    has_a = "a_km" in block
    has_alt = "altitude_km" in block
    if has_a == has_alt:
        raise ConfigError(f"{where}: exactly one of 'a_km' or 'altitude_km' is required")
    if has_alt:
        a_km = consts.earth_radius_km + _number(block, "altitude_km", where)
    else:
        a_km = _number(block, "a_km", where)
    try:
        return KeplerianOrbit(
            semi_major_axis_km=a_km,
            eccentricity=_number(block, "e", where, 0.0),
            inclination_deg=_number(block, "inc_deg", where, 0.0),
            raan_deg=_number(block, "raan_deg", where, 0.0),
            arg_perigee_deg=_number(block, "argp_deg", where, 0.0),
            mean_anomaly_epoch_deg=_number(block, "M0_deg", where, 0.0),
        )
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _parse_ring(block: dict) -> RelayRing:
    _reject_unknown(block, _RING_KEYS, "ring")
    count = block.get("count")
    if not isinstance(count, int) or isinstance(count, bool):
        raise ConfigError("ring.count must be an integer")
    phases = block.get("phase_offsets_deg", [])
    if not isinstance(phases, list) or any(
        isinstance(p, bool) or not isinstance(p, (int, float)) for p in phases
    ):
        raise ConfigError("ring.phase_offsets_deg must be a list of numbers")
    try:
        return RelayRing(
            count=count,
            altitude_km=_number(block, "altitude_km", "ring"),
            phase_offsets_deg=tuple(float(p) for p in phases),
        )
    except ValueError as exc:
        raise ConfigError(f"ring: {exc}") from exc


def _parse_station_entry(entry: dict, where: str) -> GroundStation:
    if not isinstance(entry, dict):
        raise ConfigError(f"{where} must be an object with name/lat_deg/lon_deg")
    _reject_unknown(entry, _STATION_KEYS, where)
    name = entry.get("name")
    if not isinstance(name, str) or not name:
        raise ConfigError(f"{where}.name must be a non-empty string")
    try:
        return GroundStation(
            name=name,
            lat_deg=_number(entry, "lat_deg", where),
            lon_deg=_number(entry, "lon_deg", where),
        )
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def read_stations_csv(path: str | Path) -> tuple[GroundStation, ...]:
    """Load stations from a ``name,lat_deg,lon_deg`` CSV (UTF-8, header required).

    Malformed rows are reported with their 1-based line number.
    """
    path = Path(path)
    if not path.exists():
        raise StationFileError(f"stations file not found: {path}")
    stations: list[GroundStation] = []
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise StationFileError(f"{path}: file is empty") from None
        if [h.strip() for h in header] != STATION_CSV_HEADER:
            raise StationFileError(
                f"{path} line 1: expected header 'name,lat_deg,lon_deg', got {','.join(header)!r}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 3:
                raise StationFileError(f"{path} line {lineno}: expected 3 fields, got {len(row)}")
            name = row[0].strip()
            try:
                lat = float(row[1])
                lon = float(row[2])
            except ValueError:
                raise StationFileError(
                    f"{path} line {lineno}: latitude/longitude must be decimal degrees"
                ) from None
            try:
                stations.append(GroundStation(name=name, lat_deg=lat, lon_deg=lon))
            except ValueError as exc:
                raise StationFileError(f"{path} line {lineno}: {exc}") from None
    if not stations:
        raise StationFileError(f"{path}: no station rows found")
    return tuple(stations)


def _parse_stations(section, base_dir: Path) -> tuple[GroundStation, ...]:
    if isinstance(section, dict):
        _reject_unknown(section, {"file"}, "stations")
        file_ref = section.get("file")
        if not isinstance(file_ref, str):
            raise ConfigError("stations.file must be a path string")
        path = Path(file_ref)
        if not path.is_absolute():
            path = base_dir / path
        if not path.exists():
            raise ConfigError(f"stations.file does not exist: {path}")
        return read_stations_csv(path)
    if isinstance(section, list):
        return tuple(
            _parse_station_entry(entry, f"stations[{i}]") for i, entry in enumerate(section)
        )
    raise ConfigError("stations must be a list of station objects or {'file': path}")


def _parse_simulation(block: dict) -> SimulationParams:
    _reject_unknown(block, _SIM_KEYS, "simulation")
    defaults = SimulationParams()
    params = SimulationParams(
        duration_s=_number(block, "duration_s", "simulation", defaults.duration_s),
        step_s=_number(block, "step_s", "simulation", defaults.step_s),
        min_elevation_deg=_number(block, "min_elevation_deg", "simulation", defaults.min_elevation_deg),
        isl_loss_db=_number(block, "isl_loss_db", "simulation", defaults.isl_loss_db),
    )
    if params.duration_s <= 0:
        raise ConfigError("simulation.duration_s must be > 0")
    if not 0 < params.step_s <= params.duration_s:
        raise ConfigError("simulation.step_s must be in (0, duration_s]")
    if not 0 < params.min_elevation_deg <= 90:
        raise ConfigError("simulation.min_elevation_deg must be in (0, 90]")
    if params.isl_loss_db < 0:
        raise ConfigError("simulation.isl_loss_db must be >= 0")
    return params


def load_config(path: str | Path) -> ScenarioConfig:
    """Parse and validate a scenario JSON file."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    _reject_unknown(raw, _TOP_KEYS, "config")

    constants = _parse_constants(raw.get("constants", {}))
    link = _parse_link(raw["link"]) if "link" in raw else default_link_model()
    stations = _parse_stations(raw["stations"], path.parent) if "stations" in raw else ()

    orbits_raw = raw.get("orbits", [])
    if not isinstance(orbits_raw, list):
        raise ConfigError("orbits must be a list of orbit blocks")
    orbits = tuple(
        _parse_orbit(block, constants, f"orbits[{i}]") for i, block in enumerate(orbits_raw)
    )

    relays_raw = raw.get("relays", [])
    if not isinstance(relays_raw, list):
        raise ConfigError("relays must be a list of orbit blocks")
    relays = tuple(
        _parse_orbit(block, constants, f"relays[{i}]") for i, block in enumerate(relays_raw)
    )

    ring = _parse_ring(raw["ring"]) if "ring" in raw else None
    simulation = _parse_simulation(raw.get("simulation", {}))

    return ScenarioConfig(
        constants=constants,
        link=link,
        stations=stations,
        orbits=orbits,
        ring=ring,
        relays=relays,
        simulation=simulation,
    )
