"""Spectral domains: parametric subsets of C (circle, interval, disk)
and finite point clouds, with distance queries and deterministic
samplers used by the probes and the harness."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CsLabError, InsufficientSamplesError

__all__ = ["SpectralDomain"]

_KINDS = ("circle", "interval", "disk", "cloud")


@dataclass(frozen=True)
class SpectralDomain:
    """A subset X of the complex plane that can be sampled and measured.

    kind is one of "circle", "interval", "disk", "cloud".  For the cloud
    kind, `points` holds the finite sample and `epsilon` the neighbor
    radius used as the cluster-point proxy.
    """

    kind: str
    center: complex = 0j
    radius: float = 1.0
    endpoints: tuple = (-1.0, 1.0)
    points: np.ndarray | None = None
    epsilon: float = 0.0
    membership_tol: float = field(default=1e-6)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise CsLabError(f"unknown domain kind {self.kind!r}")
        if self.kind in ("circle", "disk") and self.radius <= 0:
            raise CsLabError("radius must be positive")
        if self.kind == "interval" and not self.endpoints[0] < self.endpoints[1]:
            raise CsLabError("interval endpoints must be increasing")
        if self.kind == "cloud":
            pts = np.asarray(self.points, dtype=complex).ravel()
            if pts.size == 0:
                raise CsLabError("empty point cloud")
            object.__setattr__(self, "points", pts)

    # -- constructors -------------------------------------------------------

    @classmethod
    def circle(cls, center: complex = 0j, radius: float = 1.0) -> "SpectralDomain":
        return cls("circle", center=complex(center), radius=float(radius))

    @classmethod
    def interval(cls, a: float = -1.0, b: float = 1.0) -> "SpectralDomain":
        return cls("interval", endpoints=(float(a), float(b)))

    @classmethod
    def disk(cls, center: complex = 0j, radius: float = 1.0) -> "SpectralDomain":
        return cls("disk", center=complex(center), radius=float(radius))

    @classmethod
    def from_cloud(cls, points, epsilon: float) -> "SpectralDomain":
        return cls("cloud", points=np.asarray(points, dtype=complex), epsilon=float(epsilon))

    # -- geometry -----------------------------------------------------------

    @property
    def scale(self) -> float:
        """A characteristic length of the domain."""
        if self.kind in ("circle", "disk"):
            return self.radius
        if self.kind == "interval":
            a, b = self.endpoints
            return (b - a) / 2.0
        return float(np.abs(self.points - self.points.mean()).max() or 1.0)

    def distance(self, z: complex) -> float:
        z = complex(z)
        if self.kind == "circle":
            return abs(abs(z - self.center) - self.radius)
        if self.kind == "interval":
            a, b = self.endpoints
            dx = max(a - z.real, 0.0, z.real - b)
            return float(np.hypot(dx, z.imag))
        if self.kind == "disk":
            return max(0.0, abs(z - self.center) - self.radius)
        return float(np.min(np.abs(self.points - z)))

    def contains(self, z: complex, tol: float | None = None) -> bool:
        tol = self.membership_tol if tol is None else tol
        return self.distance(z) <= tol

    def default_center(self) -> complex:
        """A canonical cluster point of the domain."""
        if self.kind == "circle":
            return self.center + self.radius
        if self.kind == "interval":
            a, b = self.endpoints
            return complex((a + b) / 2.0)
        if self.kind == "disk":
            return self.center
        # densest cloud point: smallest nearest-neighbor gap
        d = np.abs(self.points[:, None] - self.points[None, :])
        np.fill_diagonal(d, np.inf)
        return complex(self.points[int(np.argmin(d.min(axis=1)))])

    # -- sampling -----------------------------------------------------------

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """size points drawn from the domain."""
        if self.kind == "circle":
            th = rng.uniform(0.0, 2.0 * np.pi, size)
            return self.center + self.radius * np.exp(1j * th)
        if self.kind == "interval":
            a, b = self.endpoints
            return rng.uniform(a, b, size).astype(complex)
        if self.kind == "disk":
            th = rng.uniform(0.0, 2.0 * np.pi, size)
            r = self.radius * np.sqrt(rng.uniform(0.0, 1.0, size))
            return self.center + r * np.exp(1j * th)
        return rng.choice(self.points, size=size, replace=True)

    def sample_near(self, z: complex, r: float, rng: np.random.Generator, size: int) -> np.ndarray:
        """size points of the domain within distance ~r of z.

        z must lie on (or very near) the domain.  For clouds this returns
        draws from the cloud points within r of z.
        """
        z = complex(z)
        if self.kind == "circle":
            c, R = self.center, self.radius
            base = np.angle(z - c) if z != c else 0.0
            half = 2.0 * np.arcsin(min(1.0, r / (2.0 * R)))
            if half <= 0.0:
                raise InsufficientSamplesError("radius too small for the circle sampler")
            th = base + rng.uniform(-half, half, size)
            return c + R * np.exp(1j * th)
        if self.kind == "interval":
            a, b = self.endpoints
            lo, hi = max(a, z.real - r), min(b, z.real + r)
            if not lo < hi:
                raise InsufficientSamplesError("window misses the interval")
            return rng.uniform(lo, hi, size).astype(complex)
        if self.kind == "disk":
            out = np.empty(size, dtype=complex)
            have = 0
            for _ in range(200):
                th = rng.uniform(0.0, 2.0 * np.pi, 2 * size)
                rr = r * np.sqrt(rng.uniform(0.0, 1.0, 2 * size))
                cand = z + rr * np.exp(1j * th)
                keep = cand[np.abs(cand - self.center) <= self.radius]
                take = min(size - have, keep.size)
                out[have : have + take] = keep[:take]
                have += take
                if have == size:
                    return out
            raise InsufficientSamplesError("window barely meets the disk")
        near = self.points[np.abs(self.points - z) <= r]
        if near.size == 0:
            raise InsufficientSamplesError("no cloud points within the window")
        return rng.choice(near, size=size, replace=True)

    def distinct_points_near(self, z: complex, r: float) -> int:
        """How many distinct domain points are available within r of z.

        Infinite for the parametric kinds (reported as a large number).
        """
        if self.kind != "cloud":
            return 1 << 30
        return int(np.count_nonzero(np.abs(self.points - complex(z)) <= r))

    def is_cluster_point(self, z: complex, r: float | None = None) -> bool:
        """Cluster-point proxy: the domain accumulates at z.

        For clouds this is the epsilon-neighbor criterion.
        """
        if self.kind == "cloud":
            rr = self.epsilon if r is None else r
            others = self.points[np.abs(self.points - complex(z)) > 0]
            return bool(np.any(np.abs(others - complex(z)) <= rr))
        return self.distance(z) <= self.membership_tol

    # -- wire format --------------------------------------------------------

    def to_json(self) -> dict:
        if self.kind == "circle":
            return {
                "kind": "circle",
                "center": [self.center.real, self.center.imag],
                "radius": self.radius,
            }
        if self.kind == "interval":
            return {"kind": "interval", "endpoints": list(self.endpoints)}
        if self.kind == "disk":
            return {
                "kind": "disk",
                "center": [self.center.real, self.center.imag],
                "radius": self.radius,
            }
        return {
            "kind": "cloud",
            "points": [[z.real, z.imag] for z in self.points],
            "epsilon": self.epsilon,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SpectralDomain":
        kind = obj["kind"]
        if kind == "circle":
            cx, cy = obj["center"]
            return cls.circle(complex(cx, cy), obj["radius"])
        if kind == "interval":
            a, b = obj["endpoints"]
            return cls.interval(a, b)
        if kind == "disk":
            cx, cy = obj["center"]
            return cls.disk(complex(cx, cy), obj["radius"])
        if kind == "cloud":
            pts = [complex(x, y) for x, y in obj["points"]]
            return cls.from_cloud(pts, obj.get("epsilon", 0.0))
        raise CsLabError(f"unknown domain kind {kind!r}")
