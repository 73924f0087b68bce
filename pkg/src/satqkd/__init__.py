"""Satellite QKD planning toolkit.

Clusters ground stations for shared satellite coverage, models the
satellite-ground link geometry and key-generation rate, integrates total
key bits over orbital passes, and evaluates relay constellations
(equatorial rings and Molniya relays).
"""

from .constellation import (
    CoverageReport,
    RelayDutyCycle,
    RelayRing,
    Scenario,
    coverage_fraction,
    min_ring_altitude,
    molniya_orbit,
    network_key_rate,
    relay_duty_cycle,
    ring_connected,
)
from .geodesy import (
    ClusteringParams,
    ClusterSet,
    GroundStation,
    cluster_centroid,
    dbscan_cluster,
    distance_matrix,
    haversine_distance,
)
from .linkbudget import (
    LinkModel,
    default_link_model,
    fit_from_two_points,
    link_efficiency_db,
    rate_at_distance,
    rate_vs_elevation,
    rate_vs_slant,
)
from .orbit import (
    DEFAULT_CONSTANTS,
    KeplerianOrbit,
    PhysicalConstants,
    Position3,
    angular_velocity,
    circular_orbit,
    elevation_angle,
    line_of_sight,
    orbital_period,
    propagate,
    slant_range,
    solve_kepler,
    station_position,
)
from .passsim import (
    PassResult,
    PassWindow,
    altitude_sweep,
    effective_window,
    integrate_pass,
    overhead_geometry,
)

__version__ = "0.1.0"

__all__ = [
    "ClusteringParams",
    "ClusterSet",
    "CoverageReport",
    "DEFAULT_CONSTANTS",
    "GroundStation",
    "KeplerianOrbit",
    "LinkModel",
    "PassResult",
    "PassWindow",
    "PhysicalConstants",
    "Position3",
    "RelayDutyCycle",
    "RelayRing",
    "Scenario",
    "altitude_sweep",
    "angular_velocity",
    "circular_orbit",
    "cluster_centroid",
    "coverage_fraction",
    "dbscan_cluster",
    "default_link_model",
    "distance_matrix",
    "effective_window",
    "elevation_angle",
    "fit_from_two_points",
    "haversine_distance",
    "integrate_pass",
    "line_of_sight",
    "link_efficiency_db",
    "min_ring_altitude",
    "molniya_orbit",
    "network_key_rate",
    "orbital_period",
    "overhead_geometry",
    "propagate",
    "rate_at_distance",
    "rate_vs_elevation",
    "rate_vs_slant",
    "relay_duty_cycle",
    "ring_connected",
    "slant_range",
    "solve_kepler",
    "station_position",
]
