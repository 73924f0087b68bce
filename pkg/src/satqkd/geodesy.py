"""Spherical-Earth geodesy and density-based clustering of ground stations.

Distances are great-circle (haversine) on a sphere of radius
``EARTH_RADIUS_KM``; clustering is plain DBSCAN over a precomputed distance
matrix, deterministic in station index order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateCentroidError,
    EmptyInputError,
    MalformedMatrixError,
)

EARTH_RADIUS_KM = 6371.0

# Default neighborhood radius for clustering; stations this close can share
# one satellite. 250 km is the tighter alternative preset.
DEFAULT_EPS_KM = 400.0
TIGHT_EPS_KM = 250.0
DEFAULT_MIN_SAMPLES = 1


@dataclass(frozen=True)
class GroundStation:
    """A named geodetic point (decimal degrees)."""

    name: str
    lat_deg: float
    lon_deg: float

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("station name must be non-empty")
        if not -90.0 <= self.lat_deg <= 90.0:
            raise ValueError(f"latitude {self.lat_deg} outside [-90, 90]")
        if not -180.0 <= self.lon_deg <= 180.0:
            raise ValueError(f"longitude {self.lon_deg} outside [-180, 180]")

    def unit_vector(self) -> np.ndarray:
        """Unit position vector on the sphere (x toward lat=0/lon=0)."""
        lat = math.radians(self.lat_deg)
        lon = math.radians(self.lon_deg)
        return np.array(
            [
                math.cos(lat) * math.cos(lon),
                math.cos(lat) * math.sin(lon),
                math.sin(lat),
            ]
        )


@dataclass(frozen=True)
class ClusteringParams:
    """DBSCAN parameters: neighborhood radius and core-point threshold.

    The eps-neighborhood of a point includes the point itself when counting
    against ``min_samples``.
    """

    eps_km: float = DEFAULT_EPS_KM
    min_samples: int = DEFAULT_MIN_SAMPLES

    def __post_init__(self) -> None:
        if self.eps_km <= 0:
            raise ValueError(f"eps_km must be > 0, got {self.eps_km}")
        if self.min_samples < 1:
            raise ValueError(f"min_samples must be >= 1, got {self.min_samples}")


@dataclass(frozen=True)
class ClusterSet:
    """Partition of station indices into clusters plus noise.

    Clusters are ordered by discovery (ascending seed index) and are pairwise
    disjoint; every input index appears exactly once across clusters + noise.
    """

    clusters: tuple[frozenset[int], ...]
    noise: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        seen: set[int] = set()
        total = 0
        for members in list(self.clusters) + [self.noise]:
            seen.update(members)
            total += len(members)
        if total != len(seen):
            raise ValueError("clusters and noise must be pairwise disjoint")

    @property
    def n_clusters(self) -> int:
        return len(self.clusters)

    def label_of(self, index: int) -> int | None:
        """Cluster id of a station index, or None when it is noise."""
        for cid, members in enumerate(self.clusters):
            if index in members:
                return cid
        return None


def haversine_distance(a: GroundStation, b: GroundStation, r_km: float = EARTH_RADIUS_KM) -> float:
    """Great-circle distance between two stations on a sphere of radius r_km.

    d = 2 r asin( sqrt( sin^2(dlat/2) + cos(lat1) cos(lat2) sin^2(dlon/2) ) )

    The asin argument is clamped to [0, 1] against rounding, so every valid
    input yields a finite value in [0, pi*r].
    """
    if r_km <= 0:
        raise ValueError(f"r_km must be > 0, got {r_km}")
    lat1 = math.radians(a.lat_deg)
    lat2 = math.radians(b.lat_deg)
    dlat = lat2 - lat1
    dlon = math.radians(b.lon_deg - a.lon_deg)
    s = math.sin(dlat / 2.0) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2.0) ** 2
    s = min(1.0, max(0.0, s))
    return 2.0 * r_km * math.asin(math.sqrt(s))


def distance_matrix(stations: list[GroundStation], r_km: float = EARTH_RADIUS_KM) -> np.ndarray:
    """Symmetric pairwise haversine matrix with zero diagonal, in km."""
    if not stations:
        raise EmptyInputError("cannot build a distance matrix from zero stations")
    n = len(stations)
    matrix = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d = haversine_distance(stations[i], stations[j], r_km)
            matrix[i, j] = d
            matrix[j, i] = d
    return matrix


def _check_matrix(matrix: np.ndarray) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise MalformedMatrixError(f"distance matrix must be square, got shape {matrix.shape}")
    if not np.array_equal(matrix, matrix.T):
        raise MalformedMatrixError("distance matrix must be symmetric")
    if np.any(np.diag(matrix) != 0.0):
        raise MalformedMatrixError("distance matrix must have a zero diagonal")
    return matrix


def dbscan_cluster(matrix: np.ndarray, params: ClusteringParams) -> ClusterSet:
    """DBSCAN over a precomputed distance matrix.

    A point is core when its eps-neighborhood (itself included) holds at
    least ``min_samples`` points; clusters are maximal density-connected
    sets; non-core points unreachable from any core point are noise.

    Points are visited in ascending index order and expansion queues pop in
    insertion order, so labels are reproducible: a border point reachable
    from several clusters joins the one discovered first.
    """
    matrix = _check_matrix(matrix)
    n = matrix.shape[0]
    eps = params.eps_km

    neighborhoods = [np.flatnonzero(matrix[i] <= eps) for i in range(n)]
    is_core = [len(neighborhoods[i]) >= params.min_samples for i in range(n)]

    UNVISITED, NOISE = -2, -1
    labels = [UNVISITED] * n
    clusters: list[frozenset[int]] = []

    for seed in range(n):
        if labels[seed] != UNVISITED:
            continue
        if not is_core[seed]:
            labels[seed] = NOISE
            continue
        cluster_id = len(clusters)
        members = {seed}
        labels[seed] = cluster_id
        queue = list(neighborhoods[seed])
        k = 0
        while k < len(queue):
            p = int(queue[k])
            k += 1
            if labels[p] == NOISE:
                labels[p] = cluster_id  # border point, reclaimed from noise
                members.add(p)
            if labels[p] != UNVISITED:
                continue
            labels[p] = cluster_id
            members.add(p)
            if is_core[p]:
                queue.extend(neighborhoods[p])
        clusters.append(frozenset(members))

    noise = frozenset(i for i in range(n) if labels[i] == NOISE)
    return ClusterSet(clusters=tuple(clusters), noise=noise)


def cluster_centroid(
    stations: list[GroundStation], member_indices: set[int] | frozenset[int]
) -> tuple[float, float]:
    """Spherical centroid of a member set as (lat_deg, lon_deg).

    Uses the normalized mean of 3D unit vectors, which avoids longitude
    wraparound artifacts near the antimeridian.
    """
    if not member_indices:
        raise EmptyInputError("cannot compute the centroid of an empty member set")
    mean = np.zeros(3)
    for idx in sorted(member_indices):
        mean += stations[idx].unit_vector()
    mean /= len(member_indices)
    norm = float(np.linalg.norm(mean))
    if norm < 1e-9:
        raise DegenerateCentroidError(
            "member positions cancel out (antipodal configuration); centroid undefined"
        )
    mean /= norm
    lat = math.degrees(math.asin(min(1.0, max(-1.0, float(mean[2])))))
    lon = math.degrees(math.atan2(float(mean[1]), float(mean[0])))
    return lat, lon
