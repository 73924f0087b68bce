"""Figure rendering for CLI reports.

Each function takes the same data series the CSV writers receive and saves
one PNG next to the delimited output. Rendering is headless (Agg) and
optional; the CSVs stay the canonical artifacts.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .constellation import RelayDutyCycle
from .geodesy import ClusterSet, GroundStation

_DPI = 150


def _save(fig: plt.Figure, path: Path) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def plot_clusters(
    stations: list[GroundStation] | tuple[GroundStation, ...],
    clusters: ClusterSet,
    centroids: list[tuple[int, float, float]],
    path: Path,
) -> None:
    """Station scatter in lon/lat colored by cluster, noise in grey crosses."""
    fig, ax = plt.subplots(figsize=(8, 5))
    cmap = plt.get_cmap("tab10")
    for cid, members in enumerate(clusters.clusters):
        lons = [stations[i].lon_deg for i in sorted(members)]
        lats = [stations[i].lat_deg for i in sorted(members)]
        ax.scatter(lons, lats, color=cmap(cid % 10), label=f"cluster {cid}", s=40)
    if clusters.noise:
        lons = [stations[i].lon_deg for i in sorted(clusters.noise)]
        lats = [stations[i].lat_deg for i in sorted(clusters.noise)]
        ax.scatter(lons, lats, color="grey", marker="x", label="noise", s=40)
    for cid, lat, lon in centroids:
        ax.scatter([lon], [lat], color="black", marker="+", s=90)
    ax.set_xlabel("longitude (deg)")
    ax.set_ylabel("latitude (deg)")
    ax.set_title("Ground-station clusters")
    if len(clusters.clusters) + bool(clusters.noise) <= 12:
        ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    _save(fig, path)


def plot_curve(
    series: list[tuple[float, float]], xlabel: str, title: str, path: Path, logy: bool = False
) -> None:
    """Generic x vs key-rate/total line plot."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    xs = [p[0] for p in series]
    ys = [p[1] for p in series]
    ax.plot(xs, ys, marker="o", markersize=3)
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("key rate (bit/s)")
    ax.set_title(title)
    ax.grid(alpha=0.3)
    _save(fig, path)


def plot_pass(samples, total_bits: float, path: Path) -> None:
    """Rate and distance over one pass, annotated with the integrated total."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ts = [s[0] for s in samples]
    rates = [s[2] for s in samples]
    ax.plot(ts, rates, color="tab:blue")
    ax.set_xlabel("time from zenith (s)")
    ax.set_ylabel("key rate (bit/s)", color="tab:blue")
    ax2 = ax.twinx()
    ax2.plot(ts, [s[1] for s in samples], color="tab:orange", linestyle="--")
    ax2.set_ylabel("slant distance (km)", color="tab:orange")
    ax.set_title(f"Overhead pass (total {total_bits:,.0f} bits)")
    ax.grid(alpha=0.3)
    _save(fig, path)


def plot_sweep(series: list[tuple[float, float]], path: Path) -> None:
    """Total transmitted bits versus orbit altitude."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot([p[0] for p in series], [p[1] for p in series], marker="s", markersize=4)
    ax.set_xlabel("altitude (km)")
    ax.set_ylabel("total bits per pass")
    ax.set_title("Total transmitted bits vs altitude")
    ax.grid(alpha=0.3)
    _save(fig, path)


def plot_coverage(per_station: dict[str, float], path: Path) -> None:
    """Per-station coverage fraction bar chart."""
    fig, ax = plt.subplots(figsize=(max(6, 0.6 * len(per_station) + 2), 4.5))
    names = list(per_station)
    ax.bar(range(len(names)), [per_station[n] for n in names], color="tab:green")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("coverage fraction")
    ax.set_ylim(0, 1)
    ax.set_title("Station coverage")
    ax.grid(axis="y", alpha=0.3)
    _save(fig, path)


def plot_duty_cycles(duty: dict[str, RelayDutyCycle], path: Path) -> None:
    """North/south hemisphere dwell per relay."""
    fig, ax = plt.subplots(figsize=(max(6, 1.2 * len(duty) + 2), 4.5))
    names = list(duty)
    idx = range(len(names))
    width = 0.38
    ax.bar([i - width / 2 for i in idx], [duty[n].north_fraction for n in names], width,
           label="north")
    ax.bar([i + width / 2 for i in idx], [duty[n].south_fraction for n in names], width,
           label="south")
    ax.set_xticks(list(idx))
    ax.set_xticklabels(names)
    ax.set_ylabel("dwell fraction")
    ax.set_ylim(0, 1)
    ax.set_title("Relay hemisphere duty cycles")
    ax.legend()
    ax.grid(axis="y", alpha=0.3)
    _save(fig, path)
