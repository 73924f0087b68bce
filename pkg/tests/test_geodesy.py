import math
import random

import numpy as np
import pytest

from oracles import brute_force_dbscan
from satqkd.errors import DegenerateCentroidError, EmptyInputError, MalformedMatrixError
from satqkd.geodesy import (
    EARTH_RADIUS_KM,
    ClusteringParams,
    ClusterSet,
    GroundStation,
    cluster_centroid,
    dbscan_cluster,
    distance_matrix,
    haversine_distance,
)


def random_stations(rng: random.Random, n: int) -> list[GroundStation]:
    return [
        GroundStation(f"s{i}", rng.uniform(-90, 90), rng.uniform(-180, 180)) for i in range(n)
    ]


def assert_same_clustering(result: ClusterSet, oracle_clusters, oracle_noise):
    assert set(result.clusters) == oracle_clusters
    assert result.noise == oracle_noise


class TestGroundStation:
    def test_valid(self):
        s = GroundStation("tokyo", 35.68, 139.69)
        assert s.name == "tokyo"

    @pytest.mark.parametrize(
        "name,lat,lon",
        [("", 0, 0), ("x", 91, 0), ("x", -91, 0), ("x", 0, 181), ("x", 0, -181)],
    )
    def test_invalid(self, name, lat, lon):
        with pytest.raises(ValueError):
            GroundStation(name, lat, lon)


class TestHaversine:
    def test_identical_points_zero(self):
        s = GroundStation("a", 12.0, 34.0)
        assert haversine_distance(s, s, 6371.0) == 0.0

    def test_antipodal_is_half_circumference(self):
        a = GroundStation("a", 0.0, 0.0)
        b = GroundStation("b", 0.0, 180.0)
        assert haversine_distance(a, b, 6371.0) == pytest.approx(math.pi * 6371.0, abs=1e-6)

    def test_one_degree_equatorial_arc(self):
        a = GroundStation("a", 0.0, 0.0)
        b = GroundStation("b", 0.0, 1.0)
        expected = 6371.0 * math.pi / 180.0
        assert haversine_distance(a, b, 6371.0) == pytest.approx(expected, abs=1e-9)

    def test_symmetry_and_bounds(self):
        rng = random.Random(7)
        for _ in range(300):
            a, b = random_stations(rng, 2)
            d_ab = haversine_distance(a, b)
            d_ba = haversine_distance(b, a)
            assert d_ab == d_ba
            assert 0.0 <= d_ab <= math.pi * EARTH_RADIUS_KM

    def test_near_antipodal_clamp_stays_finite(self):
        a = GroundStation("a", 0.0, 0.0)
        b = GroundStation("b", 1e-14, 180.0)
        d = haversine_distance(a, b)
        assert math.isfinite(d)
        assert d <= math.pi * EARTH_RADIUS_KM

    def test_bad_radius(self):
        a = GroundStation("a", 0.0, 0.0)
        with pytest.raises(ValueError):
            haversine_distance(a, a, 0.0)


class TestDistanceMatrix:
    def test_single_station_zero_matrix(self):
        m = distance_matrix([GroundStation("a", 10, 20)])
        assert m.shape == (1, 1)
        assert m[0, 0] == 0.0

    def test_antipodal_pair(self):
        m = distance_matrix([GroundStation("a", 0, 0), GroundStation("b", 0, 180)])
        assert m[0, 1] == pytest.approx(20015.086796, abs=1e-5)
        assert m[1, 0] == m[0, 1]

    def test_matches_pairwise_calls(self):
        stations = [
            GroundStation("a", 48.85, 2.35),
            GroundStation("b", 52.52, 13.40),
            GroundStation("c", -33.87, 151.21),
        ]
        m = distance_matrix(stations)
        for i in range(3):
            for j in range(3):
                assert m[i, j] == haversine_distance(stations[i], stations[j])

    def test_empty_raises(self):
        with pytest.raises(EmptyInputError):
            distance_matrix([])


class TestDbscan:
    def test_three_close_stations_one_cluster(self):
        stations = [
            GroundStation("a", 0.0, 0.0),
            GroundStation("b", 0.0, 1.0),
            GroundStation("c", 1.0, 0.5),
        ]
        result = dbscan_cluster(distance_matrix(stations), ClusteringParams(400.0, 1))
        assert result.clusters == (frozenset({0, 1, 2}),)
        assert result.noise == frozenset()

    def test_chain_links_into_single_cluster(self):
        # A-B and B-C within eps, A-C beyond: density chaining joins all three.
        m = np.array([[0.0, 300.0, 600.0], [300.0, 0.0, 300.0], [600.0, 300.0, 0.0]])
        result = dbscan_cluster(m, ClusteringParams(400.0, 1))
        assert result.clusters == (frozenset({0, 1, 2}),)
        clusters, noise = brute_force_dbscan(m, 400.0, 1)
        assert_same_clustering(result, clusters, noise)

    def test_isolated_station_is_noise(self):
        stations = [
            GroundStation("a", 0.0, 0.0),
            GroundStation("b", 0.0, 1.0),
            GroundStation("far", 0.0, 30.0),  # >1000 km from the pair
        ]
        result = dbscan_cluster(distance_matrix(stations), ClusteringParams(400.0, 2))
        assert result.noise == frozenset({2})
        assert result.clusters == (frozenset({0, 1}),)

    def test_min_samples_one_never_produces_noise(self):
        rng = random.Random(11)
        for _ in range(30):
            stations = random_stations(rng, rng.randint(1, 12))
            result = dbscan_cluster(distance_matrix(stations), ClusteringParams(250.0, 1))
            assert result.noise == frozenset()
            assert sum(len(c) for c in result.clusters) == len(stations)

    @pytest.mark.parametrize("eps_km", [100.0, 250.0, 400.0])
    @pytest.mark.parametrize("min_samples", [1, 2, 3])
    def test_matches_brute_force_reference(self, eps_km, min_samples):
        rng = random.Random(int(eps_km) * 10 + min_samples)
        for _ in range(40):
            stations = random_stations(rng, rng.randint(1, 15))
            m = distance_matrix(stations)
            result = dbscan_cluster(m, ClusteringParams(eps_km, min_samples))
            clusters, noise = brute_force_dbscan(m, eps_km, min_samples)
            assert_same_clustering(result, clusters, noise)

    def test_members_stay_density_reachable(self):
        # With min_samples <= 2 every member of a multi-station cluster has
        # another member within eps.
        rng = random.Random(23)
        for min_samples in (1, 2):
            for _ in range(20):
                stations = random_stations(rng, rng.randint(2, 15))
                m = distance_matrix(stations)
                result = dbscan_cluster(m, ClusteringParams(400.0, min_samples))
                for members in result.clusters:
                    if len(members) < 2:
                        continue
                    for i in members:
                        assert any(m[i, j] <= 400.0 for j in members if j != i)

    def test_adding_far_points_never_splits_a_tight_cluster(self):
        rng = random.Random(31)
        base = [
            GroundStation("a", 10.0, 10.0),
            GroundStation("b", 10.0, 12.0),
            GroundStation("c", 11.5, 11.0),
        ]
        base_result = dbscan_cluster(distance_matrix(base), ClusteringParams(400.0, 1))
        assert base_result.clusters == (frozenset({0, 1, 2}),)
        for _ in range(20):
            extra = [
                GroundStation(f"far{i}", rng.uniform(-90, -40), rng.uniform(-180, -90))
                for i in range(rng.randint(1, 5))
            ]
            merged = dbscan_cluster(distance_matrix(base + extra), ClusteringParams(400.0, 1))
            assert frozenset({0, 1, 2}) in merged.clusters

    def test_non_square_matrix_rejected(self):
        with pytest.raises(MalformedMatrixError):
            dbscan_cluster(np.zeros((2, 3)), ClusteringParams(400.0, 1))

    def test_asymmetric_matrix_rejected(self):
        m = np.array([[0.0, 1.0], [2.0, 0.0]])
        with pytest.raises(MalformedMatrixError):
            dbscan_cluster(m, ClusteringParams(400.0, 1))

    def test_nonzero_diagonal_rejected(self):
        m = np.array([[1.0, 2.0], [2.0, 1.0]])
        with pytest.raises(MalformedMatrixError):
            dbscan_cluster(m, ClusteringParams(400.0, 1))

    def test_params_validation(self):
        with pytest.raises(ValueError):
            ClusteringParams(eps_km=0.0)
        with pytest.raises(ValueError):
            ClusteringParams(min_samples=0)

    def test_cluster_set_rejects_overlap(self):
        with pytest.raises(ValueError):
            ClusterSet(clusters=(frozenset({0, 1}), frozenset({1, 2})))


class TestCentroid:
    def test_single_member_is_itself(self):
        stations = [GroundStation("a", 42.5, -71.1)]
        lat, lon = cluster_centroid(stations, {0})
        assert lat == pytest.approx(42.5, abs=1e-9)
        assert lon == pytest.approx(-71.1, abs=1e-9)

    def test_equatorial_pair_midpoint(self):
        stations = [GroundStation("a", 0.0, 10.0), GroundStation("b", 0.0, 20.0)]
        lat, lon = cluster_centroid(stations, {0, 1})
        assert lat == pytest.approx(0.0, abs=1e-9)
        assert lon == pytest.approx(15.0, abs=1e-9)

    def test_symmetric_lat_pair(self):
        stations = [GroundStation("a", 10.0, 0.0), GroundStation("b", -10.0, 0.0)]
        lat, lon = cluster_centroid(stations, {0, 1})
        assert lat == pytest.approx(0.0, abs=1e-9)
        assert lon == pytest.approx(0.0, abs=1e-9)

    def test_wraparound_near_antimeridian(self):
        # Naive longitude averaging would land near 0; the vector mean stays
        # at the antimeridian.
        stations = [GroundStation("a", 0.0, 179.0), GroundStation("b", 0.0, -179.0)]
        _, lon = cluster_centroid(stations, {0, 1})
        assert abs(lon) == pytest.approx(180.0, abs=1e-9)

    def test_empty_raises(self):
        with pytest.raises(EmptyInputError):
            cluster_centroid([GroundStation("a", 0, 0)], set())

    def test_antipodal_pair_degenerate(self):
        stations = [GroundStation("a", 0.0, 0.0), GroundStation("b", 0.0, 180.0)]
        with pytest.raises(DegenerateCentroidError):
            cluster_centroid(stations, {0, 1})
