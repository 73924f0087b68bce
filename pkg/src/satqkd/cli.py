"""Command-line front end.

Subcommands: cluster, curves, pass, sweep, coverage, relay. Each one reads
an optional scenario config, writes CSV reports (and matching PNG figures
unless --no-plot) into --out, and prints a short summary. Errors exit
nonzero with a single ``error_code: message`` line on stderr.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
import warnings
from pathlib import Path

from . import constellation, geodesy, linkbudget, passsim
from .config import ScenarioConfig, load_config, read_stations_csv
from .errors import GeometryDomainError, InfeasibleRingError, SatQKDError
from .orbit import orbital_period


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _out_dir(args: argparse.Namespace) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load(args: argparse.Namespace) -> ScenarioConfig:
    if args.config is not None:
        return load_config(args.config)
    return ScenarioConfig()


def _grid(lo: float, hi: float, step: float) -> list[float]:
    if step <= 0:
        raise GeometryDomainError(f"grid step must be > 0, got {step}")
    if lo > hi:
        raise GeometryDomainError(f"grid minimum {lo} exceeds maximum {hi}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [lo + k * step for k in range(count)]


def cmd_cluster(args: argparse.Namespace) -> int:
    cfg = _load(args)
    out = _out_dir(args)
    stations = read_stations_csv(args.stations_file)
    params = geodesy.ClusteringParams(eps_km=args.eps_km, min_samples=args.min_samples)
    matrix = geodesy.distance_matrix(list(stations), cfg.constants.earth_radius_km)
    clusters = geodesy.dbscan_cluster(matrix, params)

    labels: dict[int, str] = {}
    for cid, members in enumerate(clusters.clusters):
        for idx in members:
            labels[idx] = str(cid)
    for idx in clusters.noise:
        labels[idx] = "noise"
    _write_csv(
        out / "clusters.csv",
        ["station_name", "cluster_id"],
        [[stations[i].name, labels[i]] for i in range(len(stations))],
    )

    centroids = []
    for cid, members in enumerate(clusters.clusters):
        lat, lon = geodesy.cluster_centroid(list(stations), members)
        centroids.append((cid, lat, lon))
    _write_csv(
        out / "centroids.csv",
        ["cluster_id", "centroid_lat_deg", "centroid_lon_deg"],
        [[str(cid), _fmt(lat), _fmt(lon)] for cid, lat, lon in centroids],
    )

    if not args.no_plot:
        from . import plotting

        plotting.plot_clusters(stations, clusters, centroids, out / "clusters.png")

    print(
        f"{len(stations)} stations -> {clusters.n_clusters} clusters, "
        f"{len(clusters.noise)} noise (eps={args.eps_km} km, min_samples={args.min_samples})"
    )
    return 0


def cmd_curves(args: argparse.Namespace) -> int:
    cfg = _load(args)
    out = _out_dir(args)
    h_km = args.altitude_km
    if h_km <= 0:
        raise GeometryDomainError(f"altitude must be > 0 km, got {h_km}")

    if args.mode == "elevation":
        lo = args.grid_min if args.grid_min is not None else 5.0
        hi = args.grid_max if args.grid_max is not None else 90.0
        step = args.grid_step if args.grid_step is not None else 1.0
        if lo < 0.0 or hi > 90.0:
            raise GeometryDomainError(f"elevation grid [{lo}, {hi}] outside [0, 90] degrees")
        grid = _grid(lo, hi, step)
        series = linkbudget.rate_vs_elevation(cfg.link, h_km, grid, cfg.constants)
        _write_csv(
            out / "rate_vs_elevation.csv",
            ["theta_deg", "rate_bps"],
            [[_fmt(theta), _fmt(rate)] for theta, rate in series],
        )
        if not args.no_plot:
            from . import plotting

            plotting.plot_curve(
                series,
                "elevation angle (deg)",
                f"Key rate vs elevation (h = {h_km:g} km)",
                out / "rate_vs_elevation.png",
            )
        print(f"{len(series)} elevation points written to {out / 'rate_vs_elevation.csv'}")
    else:
        lo = args.grid_min if args.grid_min is not None else 400.0
        hi = args.grid_max if args.grid_max is not None else 2300.0
        step = args.grid_step if args.grid_step is not None else 50.0
        if lo <= 0:
            raise GeometryDomainError(f"slant grid must start above 0 km, got {lo}")
        grid = _grid(lo, hi, step)
        series = linkbudget.rate_vs_slant(cfg.link, grid)
        _write_csv(
            out / "rate_vs_slant.csv",
            ["slant_km", "rate_bps"],
            [[_fmt(d), _fmt(rate)] for d, rate in series],
        )
        if not args.no_plot:
            from . import plotting

            plotting.plot_curve(
                series,
                "slant range (km)",
                "Key rate vs slant range",
                out / "rate_vs_slant.png",
                logy=True,
            )
        print(f"{len(series)} slant points written to {out / 'rate_vs_slant.csv'}")
    return 0


def cmd_pass(args: argparse.Namespace) -> int:
    cfg = _load(args)
    out = _out_dir(args)
    if args.altitude_km <= 0:
        raise GeometryDomainError(f"altitude must be > 0 km, got {args.altitude_km}")
    min_elev = (
        args.min_elevation_deg
        if args.min_elevation_deg is not None
        else cfg.simulation.min_elevation_deg
    )
    result = passsim.integrate_pass(args.altitude_km, cfg.link, min_elev, cfg.constants)

    _write_csv(
        out / "pass_samples.csv",
        ["t_s", "distance_km", "rate_bps"],
        [[_fmt(t), _fmt(d), _fmt(r)] for t, d, r in result.samples],
    )
    _write_csv(
        out / "pass_summary.csv",
        ["altitude_km", "min_elevation_deg", "t1_s", "t2_s", "total_bits"],
        [
            [
                _fmt(args.altitude_km),
                _fmt(min_elev),
                _fmt(result.window.t1_s),
                _fmt(result.window.t2_s),
                _fmt(result.total_bits),
            ]
        ],
    )
    if not args.no_plot:
        from . import plotting

        plotting.plot_pass(result.samples, result.total_bits, out / "pass_rate.png")

    print(
        f"pass at h={args.altitude_km:g} km, elevation >= {min_elev:g} deg: "
        f"window {result.window.duration_s:.1f} s, total {result.total_bits:.1f} bits"
    )
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _load(args)
    out = _out_dir(args)
    if args.h_min <= 0 or args.h_max <= 0:
        raise GeometryDomainError("sweep altitudes must be > 0 km")
    min_elev = (
        args.min_elevation_deg
        if args.min_elevation_deg is not None
        else cfg.simulation.min_elevation_deg
    )
    grid = _grid(args.h_min, args.h_max, args.h_step)
    series = passsim.altitude_sweep(cfg.link, grid, min_elev, cfg.constants)
    _write_csv(
        out / "altitude_sweep.csv",
        ["altitude_km", "total_bits"],
        [[_fmt(h), _fmt(total)] for h, total in series],
    )
    if not args.no_plot:
        from . import plotting

        plotting.plot_sweep(series, out / "altitude_sweep.png")
    print(f"{len(series)} altitudes written to {out / 'altitude_sweep.csv'}")
    return 0


def _ring_feasibility_lines(cfg: ScenarioConfig) -> tuple[list[str], str]:
    """Summary lines plus the min-altitude CSV cell for the configured ring."""
    ring = cfg.ring
    assert ring is not None
    try:
        h_min = constellation.min_ring_altitude(ring.count, cfg.constants)
    except InfeasibleRingError as exc:
        return [f"ring of {ring.count}: infeasible ({exc})"], ""
    feasible = ring.altitude_km >= h_min
    lines = [
        f"ring of {ring.count} at {ring.altitude_km:g} km: minimum connected altitude "
        f"{h_min:.1f} km -> {'feasible' if feasible else 'infeasible'}"
    ]
    return lines, _fmt(h_min)


def cmd_coverage(args: argparse.Namespace) -> int:
    cfg = _load(args)
    out = _out_dir(args)
    scenario = cfg.scenario()

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        report = constellation.coverage_fraction(scenario, cfg.constants)
    for item in caught:
        print(f"warning: {item.message}", file=sys.stderr)

    _write_csv(
        out / "coverage.csv",
        ["station", "coverage_fraction"],
        [[name, _fmt(frac)] for name, frac in report.per_station_coverage.items()],
    )

    rate_rows = []
    n_steps = max(int(scenario.duration_s / scenario.step_s), 1)
    for k in range(n_steps):
        t = k * scenario.step_s
        for (name_a, name_b), rate in constellation.network_key_rate(
            scenario, t, cfg.constants
        ).items():
            rate_rows.append([name_a, name_b, _fmt(t), _fmt(rate)])
    _write_csv(out / "pairwise_rates.csv", ["station_a", "station_b", "t_s", "rate_bps"], rate_rows)

    if not args.no_plot:
        from . import plotting

        plotting.plot_coverage(report.per_station_coverage, out / "coverage.png")

    for name, frac in report.per_station_coverage.items():
        print(f"coverage {name}: {frac:.4f}")
    if report.ring_connected_fraction is not None:
        print(f"ring_connected_fraction: {report.ring_connected_fraction:.4f}")
        for line in _ring_feasibility_lines(cfg)[0]:
            print(line)
    return 0


def cmd_relay(args: argparse.Namespace) -> int:
    cfg = _load(args)
    out = _out_dir(args)

    duty_rows = []
    duty = {}
    for i, relay in enumerate(cfg.relays):
        north = constellation.relay_duty_cycle(
            relay, "north", cfg.simulation.duration_s, cfg.simulation.step_s, cfg.constants
        )
        south = constellation.relay_duty_cycle(
            relay, "south", cfg.simulation.duration_s, cfg.simulation.step_s, cfg.constants
        )
        cycle = constellation.RelayDutyCycle(
            north_fraction=north,
            south_fraction=south,
            degenerate=(north == 0.0 and south == 0.0),
        )
        duty[f"relay{i}"] = cycle
        duty_rows.append([f"relay{i}", _fmt(north), _fmt(south)])
        note = " (degenerate: equatorial, z identically 0)" if cycle.degenerate else ""
        print(f"relay{i}: north {north:.4f}, south {south:.4f}{note}")
    _write_csv(out / "duty_cycles.csv", ["relay_id", "north_fraction", "south_fraction"], duty_rows)

    if cfg.ring is not None:
        lines, h_min_cell = _ring_feasibility_lines(cfg)
        for line in lines:
            print(line)
        ring_period = orbital_period(cfg.ring.orbit(cfg.constants), cfg.constants)
        n_steps = max(int(ring_period / cfg.simulation.step_s), 1)
        hits = sum(
            constellation.ring_connected(cfg.ring, k * cfg.simulation.step_s, cfg.constants)
            for k in range(n_steps)
        )
        connected_fraction = hits / n_steps
        print(f"ring_connected_fraction: {connected_fraction:.4f} (over one ring period)")
        _write_csv(
            out / "ring_summary.csv",
            ["count", "altitude_km", "min_ring_altitude_km", "ring_connected_fraction"],
            [
                [
                    str(cfg.ring.count),
                    _fmt(cfg.ring.altitude_km),
                    h_min_cell,
                    _fmt(connected_fraction),
                ]
            ],
        )

    if duty and not args.no_plot:
        from . import plotting

        plotting.plot_duty_cycles(duty, out / "duty_cycles.png")

    if not cfg.relays and cfg.ring is None:
        print("no relays or ring configured; nothing to report")
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, default=None, help="scenario JSON file")
    parser.add_argument("--out", type=Path, default=Path("."), help="output directory for reports")
    parser.add_argument(
        "--seedless",
        action="store_true",
        help="reserved: the toolkit is fully deterministic, no seeds exist",
    )
    parser.add_argument("--no-plot", action="store_true", help="skip PNG figure rendering")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="satqkd",
        description="Satellite QKD planning toolkit: clustering, link curves, pass "
        "integration, and relay-constellation evaluation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="cluster ground stations from a CSV")
    p.add_argument("stations_file", type=Path, help="CSV with header name,lat_deg,lon_deg")
    p.add_argument("--eps-km", type=float, default=geodesy.DEFAULT_EPS_KM,
                   help="neighborhood radius in km (default 400; 250 is the tight preset)")
    p.add_argument("--min-samples", type=int, default=geodesy.DEFAULT_MIN_SAMPLES,
                   help="min points (self included) for a core station (default 1)")
    _add_common(p)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("curves", help="key-rate curves vs elevation or slant range")
    p.add_argument("--mode", choices=("elevation", "slant"), required=True)
    p.add_argument("--altitude-km", type=float, default=400.0,
                   help="satellite altitude in km (default 400)")
    p.add_argument("--grid-min", type=float, default=None,
                   help="grid start (deg for elevation, km for slant)")
    p.add_argument("--grid-max", type=float, default=None, help="grid end")
    p.add_argument("--grid-step", type=float, default=None, help="grid step")
    _add_common(p)
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("pass", help="integrate key bits over one overhead pass")
    p.add_argument("--altitude-km", type=float, default=400.0,
                   help="satellite altitude in km (default 400)")
    p.add_argument("--min-elevation-deg", type=float, default=None,
                   help="override the minimum usable elevation in degrees")
    _add_common(p)
    p.set_defaults(func=cmd_pass)

    p = sub.add_parser("sweep", help="total pass bits across an altitude grid")
    p.add_argument("--h-min", type=float, default=400.0, help="lowest altitude in km")
    p.add_argument("--h-max", type=float, default=1200.0, help="highest altitude in km")
    p.add_argument("--h-step", type=float, default=50.0, help="altitude step in km")
    p.add_argument("--min-elevation-deg", type=float, default=None,
                   help="override the minimum usable elevation in degrees")
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("coverage", help="time-stepped station coverage for a scenario")
    _add_common(p)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("relay", help="relay duty cycles and ring feasibility")
    _add_common(p)
    p.set_defaults(func=cmd_relay)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SatQKDError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"invalid_value: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
