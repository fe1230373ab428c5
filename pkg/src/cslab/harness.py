"""Property harness and scenario runner.

Random commuting pairs with spectra in a domain, spectrum/commutativity
checks for the named preserver maps (with negative controls that must
fail), eigenvalue-collision continuity probes along parametric matrix
paths, and the scenario bundle that writes reproducible JSON/CSV
reports.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.optimize import linear_sum_assignment

from .configspace import hypothesis_report
from .divdiff import boundedness_probe, conj, limit_probe
from .domains import SpectralDomain
from .errors import CsLabError
from .linalg import Frame, as_square_matrix, commutator_norm, matrix_to_json
from .operators import (
    conjugation_preserver,
    exotic_evert,
    exotic_polar,
    from_matrix,
    to_matrix,
    transpose_conjugation_preserver,
)
from .scenarios import scenario_cloud, scenario_domain

__all__ = [
    "ExperimentConfig",
    "CsCheckReport",
    "CollisionReport",
    "random_frame",
    "random_ortho_frame",
    "random_spectrum",
    "random_commuting_pair",
    "random_semisimple",
    "make_preserver",
    "cs_preserver_check",
    "collision_path_probe",
    "run_scenario",
    "PRESERVER_NAMES",
    "NEGATIVE_CONTROLS",
    "COLLISION_FAMILIES",
]

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 2
EXIT_CONFIG_ERROR = 3


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str = "circle"
    n: int = 3
    trials: int = 200
    seed: int = 0
    spectrum_tol: float = 1e-8
    commutator_tol: float = 1e-8
    min_gap: float = 0.1
    out: str | None = None
    fmt: str = "json"

    def __post_init__(self):
        if self.trials <= 0:
            raise CsLabError("trials must be positive")
        if self.n < 2:
            raise CsLabError("n must be at least 2")


# ---------------------------------------------------------------------------
# Random inputs


def random_frame(n: int, rng: np.random.Generator, max_cond: float = 50.0) -> Frame:
    """A random spanning frame with a bounded condition number (keeps
    round-off in simultaneous diagonalization well below the check
    tolerances)."""
    for _ in range(200):
        G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        if np.linalg.cond(G) <= max_cond:
            return Frame.from_matrix(G)
    raise CsLabError("could not draw a well-conditioned frame")


def random_ortho_frame(n: int, rng: np.random.Generator) -> Frame:
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, _ = np.linalg.qr(G)
    from .linalg import OrthoFrame, Line

    return OrthoFrame(tuple(Line(Q[:, i]) for i in range(n)))


def random_spectrum(
    X: SpectralDomain, n: int, rng: np.random.Generator, min_gap: float = 0.0
) -> np.ndarray:
    """n eigenvalues drawn from X, pairwise at least min_gap apart."""
    for _ in range(500):
        lam = X.sample(rng, n)
        if n == 1:
            return lam
        d = np.abs(lam[:, None] - lam[None, :])
        np.fill_diagonal(d, np.inf)
        if d.min() >= min_gap:
            return lam
    raise CsLabError("could not draw a gap-separated spectrum from the domain")


def random_commuting_pair(frame: Frame, X: SpectralDomain, rng: np.random.Generator):
    """Two matrices sharing the eigenframe with spectra drawn from X;
    commuting by construction."""
    from .operators import SemisimpleOp

    n = frame.n
    A = to_matrix(SemisimpleOp(frame, random_spectrum(X, n, rng)))
    B = to_matrix(SemisimpleOp(frame, random_spectrum(X, n, rng)))
    return A, B


def random_semisimple(
    X: SpectralDomain, n: int, rng: np.random.Generator, min_gap: float = 0.1
) -> np.ndarray:
    """A random semisimple matrix with X-spectrum and gap-separated
    eigenvalues (both exotic routes lose accuracy near collisions)."""
    from .operators import SemisimpleOp

    frame = random_frame(n, rng)
    return to_matrix(SemisimpleOp(frame, random_spectrum(X, n, rng, min_gap)))


# ---------------------------------------------------------------------------
# Preserver registry


PRESERVER_NAMES = (
    "identity",
    "conjugation",
    "transpose-conjugation",
    "exotic",
    "exotic-evert",
)
NEGATIVE_CONTROLS = ("shift", "inconsistent-shuffle")


def _spectrum_dependent_permutation(M: np.ndarray, n: int) -> np.ndarray:
    """A permutation matrix chosen from the spectrum of M: different
    commuting inputs generically get different permutations, which
    breaks joint commutativity while preserving each spectrum."""
    lam = np.sort_complex(np.linalg.eigvals(M))
    h = int(abs(float(np.sum(np.abs(lam)) + np.sum(lam.real))) * 1e8)
    perms = list(itertools.permutations(range(n)))
    images = perms[h % len(perms)]
    P = np.zeros((n, n))
    P[np.arange(n), images] = 1.0
    return P


def make_preserver(name: str, n: int, rng: np.random.Generator):
    """Instantiate a named map on M_n(C).  The negative controls are
    deliberately broken and must fail the checks."""
    if name == "identity":
        return lambda M: as_square_matrix(M)
    if name == "conjugation":
        T = random_frame(n, rng).matrix
        return conjugation_preserver(T)
    if name == "transpose-conjugation":
        T = random_frame(n, rng).matrix
        return transpose_conjugation_preserver(T)
    if name == "exotic":
        return exotic_polar
    if name == "exotic-evert":
        return lambda M: to_matrix(exotic_evert(from_matrix(M)))
    if name == "shift":
        return lambda M: as_square_matrix(M) + np.eye(M.shape[0])
    if name == "inconsistent-shuffle":

        def shuffle(M):
            M = as_square_matrix(M)
            P = _spectrum_dependent_permutation(M, M.shape[0])
            return P @ M @ P.T

        return shuffle
    raise CsLabError(f"unknown preserver {name!r}")


# ---------------------------------------------------------------------------
# CS check


def spectrum_drift(A, B) -> float:
    """Max matched distance between the eigenvalue multisets of A and B
    (optimal assignment)."""
    la = np.linalg.eigvals(as_square_matrix(A))
    lb = np.linalg.eigvals(as_square_matrix(B))
    cost = np.abs(la[:, None] - lb[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())


@dataclass
class CsCheckReport:
    map_name: str
    scenario: str
    n: int
    trials: int
    seed: int
    spectrum_tol: float
    commutator_tol: float
    max_spectrum_drift: float
    max_commutator: float
    skipped: int
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.max_spectrum_drift <= self.spectrum_tol
            and self.max_commutator <= self.commutator_tol
        )

    def to_json(self) -> dict:
        return {
            "map": self.map_name,
            "scenario": self.scenario,
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "spectrum_tol": self.spectrum_tol,
            "commutator_tol": self.commutator_tol,
            "max_spectrum_drift": self.max_spectrum_drift,
            "max_commutator": self.max_commutator,
            "skipped": self.skipped,
            "passed": self.passed,
            "records": self.records,
        }


def cs_preserver_check(map_name: str, config: ExperimentConfig, preserver=None) -> CsCheckReport:
    """Exercise a named preserver on random commuting semisimple pairs
    with spectra in the scenario's domain.

    Per trial: spectrum drift of each image against its input and the
    commutator norm of the image pair.  Inapplicable inputs (e.g. a
    generated matrix failing the semisimplicity gate of the exotic map)
    are recorded and skipped, not fatal.  Deterministic given the seed.
    """
    rng = np.random.default_rng(config.seed)
    X = scenario_domain(config.scenario)
    phi = preserver if preserver is not None else make_preserver(map_name, config.n, rng)
    max_drift = 0.0
    max_comm = 0.0
    skipped = 0
    records = []
    for trial in range(config.trials):
        frame = random_frame(config.n, rng)
        A, B = random_commuting_pair(frame, X, rng)
        if commutator_norm(A, B) > 1e-10:
            skipped += 1
            records.append({"trial": trial, "status": "degenerate-input"})
            continue
        try:
            Ap, Bp = phi(A), phi(B)
        except CsLabError as exc:
            skipped += 1
            records.append({"trial": trial, "status": f"inapplicable: {exc}"})
            continue
        drift = max(spectrum_drift(A, Ap), spectrum_drift(B, Bp))
        comm = commutator_norm(Ap, Bp)
        max_drift = max(max_drift, drift)
        max_comm = max(max_comm, comm)
        records.append(
            {"trial": trial, "status": "ok", "spectrum_drift": drift, "commutator": comm}
        )
    return CsCheckReport(
        map_name=map_name,
        scenario=config.scenario,
        n=config.n,
        trials=config.trials,
        seed=config.seed,
        spectrum_tol=config.spectrum_tol,
        commutator_tol=config.commutator_tol,
        max_spectrum_drift=max_drift,
        max_commutator=max_comm,
        skipped=skipped,
        records=records,
    )


# ---------------------------------------------------------------------------
# Collision paths


def _jordan2(t: complex) -> np.ndarray:
    return np.array([[0.0, 1.0], [0.0, t]], dtype=complex)


def _jordan3_disk(t: complex) -> np.ndarray:
    # companion matrix of z^3 - t^3: eigenvalues t times the cube roots of
    # unity, all in the unit disk for |t| <= 1, colliding at 0 with a
    # degenerating Vandermonde eigenvector matrix
    return np.array(
        [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [t**3, 0.0, 0.0]], dtype=complex
    )


COLLISION_FAMILIES = {
    "jordan2": {
        "matrix": _jordan2,
        "n": 2,
        "ladder": tuple(10.0 ** (-0.25 * j) for j in range(25)),  # 1 .. 1e-6
    },
    "jordan3-disk": {
        "matrix": _jordan3_disk,
        "n": 3,
        "ladder": tuple(10.0 ** (-0.25 * j) for j in range(13)),  # 1 .. 1e-3
    },
}

CONVERGE_TOL = 1e-6
DIVERGE_FACTOR_PER_TWO_DECADES = 80.0  # 10x per decade with slack


@dataclass
class CollisionReport:
    family: str
    map_name: str
    rays: tuple
    t_values: tuple  # decreasing moduli
    norms: list  # per t: list per ray
    diagnosis: str
    limit: np.ndarray | None
    images: dict  # selected images, keyed "r=<val>,ray=<val>"

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "map": self.map_name,
            "rays": list(self.rays),
            "t_values": list(self.t_values),
            "norms": self.norms,
            "diagnosis": self.diagnosis,
            "limit": matrix_to_json(self.limit) if self.limit is not None else None,
            "images": {k: matrix_to_json(v) for k, v in self.images.items()},
        }

    def write_csv(self, path) -> None:
        import csv

        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "ray", "norm"])
            for r, row in zip(self.t_values, self.norms):
                for theta, nrm in zip(self.rays, row):
                    w.writerow([repr(r), repr(theta), repr(nrm)])


def collision_path_probe(
    family: str,
    map_name: str = "exotic",
    t_values=None,
    rays=(0.0,),
    seed: int = 0,
) -> CollisionReport:
    """Drive a named preserver along a matrix path with colliding
    eigenvalues and diagnose the limiting behavior.

    diagnosis: "diverges" when image norms grow by ~10x per decade over
    the ladder's last two decades; "converges" when successive images
    (and the across-ray spread) settle below 1e-6; otherwise
    "bounded-oscillates".
    """
    if family not in COLLISION_FAMILIES:
        raise CsLabError(f"unknown family {family!r}")
    fam = COLLISION_FAMILIES[family]
    rng = np.random.default_rng(seed)
    phi = make_preserver(map_name, fam["n"], rng)
    ladder = tuple(float(r) for r in (t_values if t_values is not None else fam["ladder"]))
    if any(b >= a for a, b in zip(ladder, ladder[1:])):
        raise CsLabError("t ladder must be strictly decreasing")
    rays = tuple(float(th) for th in rays)
    norms = []
    images_by_ray = {th: [] for th in rays}
    for r in ladder:
        row = []
        for th in rays:
            t = r * np.exp(1j * th)
            img = phi(fam["matrix"](t))
            row.append(float(np.linalg.norm(img)))
            images_by_ray[th].append(img)
        norms.append(row)
    peak = [max(row) for row in norms]
    # divergence over the ladder's last two decades
    diagnosis = None
    lo = ladder[-1]
    idx2 = next((i for i, r in enumerate(ladder) if r <= 100.0 * lo), 0)
    if peak[-1] >= DIVERGE_FACTOR_PER_TWO_DECADES * peak[idx2] and peak[-1] > peak[0]:
        diagnosis = "diverges"
    limit = None
    if diagnosis is None:
        tail_ok = all(
            np.linalg.norm(images_by_ray[th][-1] - images_by_ray[th][-2]) < CONVERGE_TOL
            for th in rays
        )
        spread_ok = (
            max(
                np.linalg.norm(images_by_ray[a][-1] - images_by_ray[b][-1])
                for a in rays
                for b in rays
            )
            < CONVERGE_TOL
        )
        if tail_ok and spread_ok:
            diagnosis = "converges"
            limit = np.mean([images_by_ray[th][-1] for th in rays], axis=0)
        else:
            diagnosis = "bounded-oscillates"
    images = {}
    for th in rays:
        images[f"r={ladder[0]:g},ray={th:g}"] = images_by_ray[th][0]
        images[f"r={ladder[-1]:g},ray={th:g}"] = images_by_ray[th][-1]
    return CollisionReport(
        family=family,
        map_name=map_name,
        rays=rays,
        t_values=ladder,
        norms=norms,
        diagnosis=diagnosis,
        limit=limit,
        images=images,
    )


# ---------------------------------------------------------------------------
# Scenario bundle


def _dump_json(obj, path: Path) -> None:
    path.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def run_scenario(config: ExperimentConfig, cloud=None, domain=None):
    """Execute the full bundle for a scenario: regime report, divided
    difference probes, CS checks (positives must pass, negative controls
    must fail), and collision probes.  Writes JSON (and CSV tables) to
    config.out when set.

    Returns (exit_code, summary dict); exit code 0 on all-pass, 2 with a
    machine-readable failure list otherwise.
    """
    failures = []
    cloud = cloud if cloud is not None else scenario_cloud(config.scenario)
    domain = domain if domain is not None else (
        cloud.domain() if config.scenario == "custom" else scenario_domain(config.scenario)
    )
    from .configspace import perfectness_check

    perf = perfectness_check(cloud)
    if not perf.perfect:
        # nothing downstream is meaningful on a non-perfect cloud
        failures.append(f"perfectness failure: offending points {list(perf.offenders)}")
        summary = {
            "scenario": config.scenario,
            "n": config.n,
            "seed": config.seed,
            "perfect": False,
            "offenders": list(perf.offenders),
            "failures": failures,
        }
        if config.out:
            outdir = Path(config.out)
            outdir.mkdir(parents=True, exist_ok=True)
            _dump_json(summary, outdir / "summary.json")
        return EXIT_PROPERTY_FAILURE, summary
    report = hypothesis_report(cloud, config.n, seed=config.seed, domain=domain)

    k = config.n - 1
    z = domain.default_center()
    probe_b = boundedness_probe(conj, domain, z, k, seed=config.seed) if domain.kind != "cloud" else None
    probe_l = limit_probe(conj, domain, z, k, seed=config.seed + 1) if domain.kind != "cloud" else None

    checks = {}
    for name in ("conjugation", "transpose-conjugation", "exotic"):
        rep = cs_preserver_check(name, config)
        checks[name] = rep
        if not rep.passed:
            failures.append(f"cs-check failed for {name}")
    for name in NEGATIVE_CONTROLS:
        rep = cs_preserver_check(name, config)
        checks[name] = rep
        if rep.passed:
            failures.append(f"negative control {name} unexpectedly passed")

    collisions = {
        "jordan2-real": collision_path_probe("jordan2", rays=(0.0,), seed=config.seed),
        "jordan2-two-rays": collision_path_probe(
            "jordan2", rays=(0.0, math.pi / 2.0), seed=config.seed
        ),
        "jordan3-disk": collision_path_probe("jordan3-disk", seed=config.seed),
    }

    summary = {
        "scenario": config.scenario,
        "n": config.n,
        "seed": config.seed,
        "regime_report": report.to_json(),
        "probes": {
            "boundedness": probe_b.to_json() if probe_b else None,
            "limit": probe_l.to_json() if probe_l else None,
        },
        "cs_checks": {name: rep.to_json() for name, rep in checks.items()},
        "collision_probes": {name: rep.to_json() for name, rep in collisions.items()},
        "failures": failures,
    }
    if config.out:
        outdir = Path(config.out)
        outdir.mkdir(parents=True, exist_ok=True)
        _dump_json(summary, outdir / "summary.json")
        _dump_json(report.to_json(), outdir / "regime_report.json")
        if probe_b is not None:
            probe_b.write_csv(outdir / "probe_boundedness.csv")
        if probe_l is not None:
            probe_l.write_csv(outdir / "probe_limit.csv")
        for name, rep in collisions.items():
            rep.write_csv(outdir / f"collision_{name}.csv")
    code = EXIT_OK if not failures else EXIT_PROPERTY_FAILURE
    return code, summary
