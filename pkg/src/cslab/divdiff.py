"""Divided differences and regularity probes.

The difference operator on symmetric functions, its iterates via the
Newton table, a closed-form oracle for complex conjugation on circles,
and sampling probes that gather numerical evidence for or against local
boundedness / existence of diagonal limits of iterated differences of a
function on a spectral domain.

The probes are falsifiers and evidence gatherers only; the aggregated
verdict is explicitly heuristic.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .domains import SpectralDomain
from .errors import CoincidentPointsError, CsLabError, InsufficientSamplesError

__all__ = [
    "delta",
    "iterated_delta",
    "circle_conj_oracle",
    "boundedness_probe",
    "limit_probe",
    "regularity_verdict",
    "ProbeReport",
    "RegularityVerdict",
    "VerdictThresholds",
    "conj",
]

DEFAULT_SEPARATION_FLOOR = 1e-8  # relative to the probe radius
DEFAULT_RADII = (1e-1, 1e-2, 1e-3, 1e-4)


def conj(z: complex) -> complex:
    """Complex conjugation, the function whose regularity drives the
    preserver trichotomy."""
    return np.conj(z)


def delta(f, points) -> complex:
    """One application of the difference operator to a symmetric
    k-variable function at a (k+1)-tuple:

        (f(z_1..z_k) - f(z_0..z_{k-1})) / (z_k - z_0)
    """
    pts = tuple(complex(z) for z in points)
    if len(pts) < 2:
        raise CsLabError("need at least two points")
    if pts[-1] == pts[0]:
        raise CoincidentPointsError("coincident endpoints")
    return (f(*pts[1:]) - f(*pts[:-1])) / (pts[-1] - pts[0])


def iterated_delta(f, points) -> complex:
    """k-fold iterated difference of a one-variable function at a
    (k+1)-tuple of pairwise-distinct points: the classical divided
    difference f[z_0, ..., z_k].

    Evaluated by the Newton table with the points sorted by argument
    (reduces cancellation near the diagonal); invariant under
    permutations of the points up to rounding.
    """
    z = np.asarray([complex(p) for p in points])
    if z.size < 1:
        raise CsLabError("empty tuple")
    if z.size > 1:
        d = np.abs(z[:, None] - z[None, :])
        np.fill_diagonal(d, np.inf)
        if d.min() == 0.0:
            raise CoincidentPointsError("coincident points in the tuple")
    order = np.lexsort((np.abs(z), np.angle(z)))
    z = z[order]
    table = np.asarray([complex(f(p)) for p in z])
    k = z.size - 1
    for level in range(1, k + 1):
        table = (table[1:] - table[:-1]) / (z[level:] - z[:-level])
    return complex(table[0])


def circle_conj_oracle(points, k: int) -> complex:
    """Closed form for the k-th iterated difference of conjugation at
    points of the unit circle: (-1)^k / prod(z_i).

    (On the unit circle conj(z) = 1/z, whose divided differences have
    this classical closed form.)
    """
    z = np.asarray([complex(p) for p in points])
    if z.size != k + 1:
        raise CsLabError(f"need {k + 1} points for k = {k}")
    if np.any(np.abs(np.abs(z) - 1.0) > 1e-10):
        raise CsLabError("points must lie on the unit circle")
    return complex((-1.0) ** k / np.prod(z))


# ---------------------------------------------------------------------------
# Probes


@dataclass(frozen=True)
class ProbeReport:
    """Per-radius diagnostics of an iterated difference near a diagonal
    point (z, ..., z)."""

    center: complex
    k: int
    radii: tuple
    sup_values: tuple
    oscillation_values: tuple
    kind: str = "boundedness"
    limit_plausible: bool | None = None
    samples_per_radius: int = 0
    seed: int = 0

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=float)
        if r.size == 0 or np.any(np.diff(r) >= 0):
            raise CsLabError("radii must be strictly decreasing")
        if not (len(self.radii) == len(self.sup_values) == len(self.oscillation_values)):
            raise CsLabError("report arrays have mismatched lengths")

    def to_json(self) -> dict:
        return {
            "center": [self.center.real, self.center.imag],
            "k": self.k,
            "kind": self.kind,
            "radii": list(self.radii),
            "sup_values": list(self.sup_values),
            "oscillation_values": list(self.oscillation_values),
            "limit_plausible": self.limit_plausible,
            "samples_per_radius": self.samples_per_radius,
            "seed": self.seed,
        }

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["radius", "sup", "oscillation"])
            for r, s, o in zip(self.radii, self.sup_values, self.oscillation_values):
                w.writerow([repr(r), repr(s), repr(o)])


def _adversarial_tuples(X: SpectralDomain, z: complex, k: int, r: float):
    """Deterministic tuple families injected alongside random samples.

    Random sampling alone can miss blowup directions; each domain kind
    gets families aimed at its known worst case.
    """
    z = complex(z)
    fams = []
    if X.kind == "disk":
        reff = 0.9 * min(r, max(X.radius - abs(z - X.center), 0.0))
        if reff > 0.0:
            if k == 2:
                # the 1/r witness family
                fams.append((z - reff, z + 1j * reff, z + reff))
            roots = z + reff * np.exp(2j * np.pi * np.arange(k + 1) / (k + 1))
            fams.append(tuple(roots))
    elif X.kind == "circle":
        c, R = X.center, X.radius
        base = np.angle(z - c) if z != c else 0.0
        half = 2.0 * np.arcsin(min(1.0, r / (2.0 * R)))
        th = base + np.linspace(-half, half, k + 1)
        fams.append(tuple(c + R * np.exp(1j * th)))
    elif X.kind == "interval":
        a, b = X.endpoints
        lo, hi = max(a, z.real - r), min(b, z.real + r)
        if lo < hi:
            fams.append(tuple(complex(x) for x in np.linspace(lo, hi, k + 1)))
    else:
        near = X.points[np.abs(X.points - z) <= r]
        if near.size >= k + 1:
            order = np.argsort(np.abs(near - z), kind="stable")
            fams.append(tuple(near[order[: k + 1]]))
    good = []
    for t in fams:
        arr = np.asarray(t)
        d = np.abs(arr[:, None] - arr[None, :])
        np.fill_diagonal(d, np.inf)
        if d.min() > 0.0:
            good.append(t)
    return good


def _random_tuples(X, z, k, r, count, rng, floor):
    out = []
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        pts = X.sample_near(z, r, rng, k + 1)
        d = np.abs(pts[:, None] - pts[None, :])
        np.fill_diagonal(d, np.inf)
        if d.min() >= floor * r:
            out.append(tuple(pts))
    return out


def _probe(f, X, z, k, radii, samples_per_radius, seed, kind, floor, limit_threshold):
    radii = tuple(float(r) for r in radii)
    if any(b >= a for a, b in zip(radii, radii[1:])):
        raise CsLabError("radii must be strictly decreasing")
    if X.distinct_points_near(z, max(radii)) < k + 1:
        raise InsufficientSamplesError(
            "domain has fewer than k+1 distinct points within the largest radius"
        )
    if not X.is_cluster_point(z, max(radii)):
        raise InsufficientSamplesError("center is not a cluster point of the domain")
    rng = np.random.default_rng(seed)
    sups, oscs = [], []
    for r in radii:
        tuples = _adversarial_tuples(X, z, k, r)
        tuples += _random_tuples(X, z, k, r, samples_per_radius, rng, floor)
        if not tuples:
            raise InsufficientSamplesError(f"no valid tuples at radius {r:g}")
        vals = np.asarray([iterated_delta(f, t) for t in tuples])
        sups.append(float(np.abs(vals).max()))
        oscs.append(float(np.abs(vals[:, None] - vals[None, :]).max()))
    plausible = None
    if kind == "limit":
        plausible = bool(oscs[-1] < limit_threshold)
    return ProbeReport(
        center=complex(z),
        k=int(k),
        radii=radii,
        sup_values=tuple(sups),
        oscillation_values=tuple(oscs),
        kind=kind,
        limit_plausible=plausible,
        samples_per_radius=samples_per_radius,
        seed=seed,
    )


def boundedness_probe(
    f,
    X: SpectralDomain,
    z: complex,
    k: int,
    radii=DEFAULT_RADII,
    samples_per_radius: int = 64,
    seed: int = 0,
    separation_floor: float = DEFAULT_SEPARATION_FLOOR,
) -> ProbeReport:
    """Record sup |Delta^k f| over sampled (k+1)-tuples of distinct
    domain points within each radius of the diagonal point (z,...,z).

    Deterministic given the seed.  Tuples closer together than
    separation_floor * radius are rejected to keep quotients in
    double-precision range (a probe limitation, not a claim about f).
    """
    return _probe(f, X, z, k, radii, samples_per_radius, seed, "boundedness", separation_floor, 1e-3)


def limit_probe(
    f,
    X: SpectralDomain,
    z: complex,
    k: int,
    radii=DEFAULT_RADII,
    samples_per_radius: int = 64,
    seed: int = 0,
    separation_floor: float = DEFAULT_SEPARATION_FLOOR,
    limit_threshold: float = 1e-3,
) -> ProbeReport:
    """Record the oscillation (max pairwise distance) of Delta^k f over
    sampled tuples within shrinking neighborhoods of (z,...,z); flags
    "limit plausible" when the oscillation falls below limit_threshold
    at the smallest radius."""
    return _probe(f, X, z, k, radii, samples_per_radius, seed, "limit", separation_floor, limit_threshold)


# ---------------------------------------------------------------------------
# Aggregated verdict


@dataclass(frozen=True)
class VerdictThresholds:
    """Documented decision thresholds for the heuristic verdict.

    not_B: sup grows like a negative power of the radius (log-log slope
    at most -slope_cut) across a ladder spanning at least min_decades.
    C: oscillation below oscillation_cut at the smallest radius.
    Anything bounded but still oscillating is B_not_C.
    """

    slope_cut: float = -0.9
    min_decades: float = 2.9
    oscillation_cut: float = 1e-3
    bounded_floor: float = 1e-9
    separation_floor: float = 1e-4  # coarser than the probe default: keeps
    # rounding noise in the Newton table well below oscillation_cut


@dataclass(frozen=True)
class RegularityVerdict:
    """HEURISTIC verdict on the regularity class of complex conjugation
    on a domain: one of not_B, B_not_C, C for the (n-1)-st iterate."""

    verdict: str
    n: int
    centers: tuple
    reports: tuple = field(default=())
    heuristic: bool = True

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "n": self.n,
            "k": self.n - 1,
            "heuristic": True,
            "centers": [[c.real, c.imag] for c in self.centers],
            "reports": [r.to_json() for r in self.reports],
        }


def _default_centers(X: SpectralDomain):
    if X.kind == "circle":
        return (X.center + X.radius, X.center + X.radius * np.exp(2.0j))
    if X.kind == "interval":
        a, b = X.endpoints
        return (complex((a + b) / 2.0), complex(a + 0.25 * (b - a)))
    if X.kind == "disk":
        return (X.center, X.center + 0.5 * X.radius)
    return (X.default_center(),)


def _center_verdict(report_b: ProbeReport, report_l: ProbeReport, th: VerdictThresholds) -> str:
    r = np.asarray(report_b.radii)
    s = np.asarray(report_b.sup_values)
    decades = float(np.log10(r.max() / r.min()))
    if np.all(s <= th.bounded_floor):
        return "C"
    if decades >= th.min_decades:
        mask = s > 0
        slope = float(np.polyfit(np.log10(r[mask]), np.log10(s[mask]), 1)[0])
        if slope <= th.slope_cut:
            return "not_B"
    if report_l.oscillation_values[-1] < th.oscillation_cut:
        return "C"
    return "B_not_C"


def regularity_verdict(
    X: SpectralDomain,
    n: int,
    thresholds: VerdictThresholds | None = None,
    seed: int = 0,
    radii=DEFAULT_RADII,
    samples_per_radius: int = 64,
    centers=None,
) -> RegularityVerdict:
    """Aggregate probes of complex conjugation at diagonal centers of X
    into a verdict on its B/C class for the (n-1)-st iterate.

    The verdict is heuristic: probes can only falsify boundedness or
    exhibit stable oscillation, never prove class membership.  The worst
    center wins (not_B over B_not_C over C).
    """
    if n < 2:
        raise CsLabError("need n >= 2")
    th = thresholds or VerdictThresholds()
    centers = tuple(centers) if centers is not None else _default_centers(X)
    k = n - 1
    reports = []
    ranks = {"C": 0, "B_not_C": 1, "not_B": 2}
    worst = "C"
    for z in centers:
        rb = boundedness_probe(
            conj, X, z, k, radii, samples_per_radius, seed, th.separation_floor
        )
        rl = limit_probe(
            conj, X, z, k, radii, samples_per_radius, seed + 1, th.separation_floor, th.oscillation_cut
        )
        v = _center_verdict(rb, rl, th)
        reports.extend([rb, rl])
        if ranks[v] > ranks[worst]:
            worst = v
    return RegularityVerdict(verdict=worst, n=n, centers=centers, reports=tuple(reports))
