"""Built-in experiment scenarios.

Reference clouds (circle, interval, disk) at the default resolutions at
which the known component counts stabilize for n <= 4, together with the
matching parametric spectral domains.
"""

from __future__ import annotations

import numpy as np

from .configspace import PointCloud
from .domains import SpectralDomain
from .errors import CsLabError

__all__ = [
    "SCENARIOS",
    "circle_cloud",
    "interval_cloud",
    "disk_cloud",
    "scenario_cloud",
    "scenario_domain",
]

SCENARIOS = ("circle", "interval", "disk")

CIRCLE_M = 48
INTERVAL_M = 40
DISK_M = 60
SPACING_FACTOR = 1.5  # epsilon = 1.5 x sample spacing; delta = epsilon


def circle_cloud(m: int = CIRCLE_M) -> PointCloud:
    """m equally spaced points on the unit circle."""
    pts = np.exp(2j * np.pi * np.arange(m) / m)
    spacing = abs(pts[1] - pts[0])
    eps = SPACING_FACTOR * spacing
    return PointCloud(points=pts, epsilon=eps, delta=eps)


def interval_cloud(m: int = INTERVAL_M) -> PointCloud:
    """m equally spaced points on [-1, 1]."""
    pts = np.linspace(-1.0, 1.0, m).astype(complex)
    spacing = float(pts[1].real - pts[0].real)
    eps = SPACING_FACTOR * spacing
    return PointCloud(points=pts, epsilon=eps, delta=eps)


def disk_cloud(m: int = DISK_M, seed: int = 7, candidates: int = 40) -> PointCloud:
    """m blue-noise points in the unit disk (best-candidate sampling).

    Deterministic given the seed; epsilon is SPACING_FACTOR times the
    largest nearest-neighbor gap so the epsilon-graph is connected.
    """
    rng = np.random.default_rng(seed)

    def draw(size):
        th = rng.uniform(0.0, 2.0 * np.pi, size)
        r = np.sqrt(rng.uniform(0.0, 1.0, size))
        return r * np.exp(1j * th)

    pts = [complex(draw(1)[0])]
    while len(pts) < m:
        cand = draw(candidates)
        arr = np.asarray(pts)
        dists = np.abs(cand[:, None] - arr[None, :]).min(axis=1)
        pts.append(complex(cand[int(np.argmax(dists))]))
    pts = np.asarray(pts)
    d = np.abs(pts[:, None] - pts[None, :])
    np.fill_diagonal(d, np.inf)
    eps = SPACING_FACTOR * float(d.min(axis=1).max())
    return PointCloud(points=pts, epsilon=eps, delta=eps)


def scenario_cloud(name: str) -> PointCloud:
    if name == "circle":
        return circle_cloud()
    if name == "interval":
        return interval_cloud()
    if name == "disk":
        return disk_cloud()
    raise CsLabError(f"unknown scenario {name!r}; expected one of {SCENARIOS}")


def scenario_domain(name: str) -> SpectralDomain:
    if name == "circle":
        return SpectralDomain.circle(0j, 1.0)
    if name == "interval":
        return SpectralDomain.interval(-1.0, 1.0)
    if name == "disk":
        return SpectralDomain.disk(0j, 1.0)
    raise CsLabError(f"unknown scenario {name!r}; expected one of {SCENARIOS}")
