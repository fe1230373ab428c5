"""Acceptance gate: the ten headline properties, each reported as a
single pass/fail line at its pinned tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as
they are produced (pytest captures stdout of passing tests otherwise).
"""

import json

import numpy as np
import pytest

from cslab.cli import main as cli_main
from cslab.configspace import (
    build_config_complex,
    cn_graph,
    components,
    has_n_cycle,
    hypothesis_report,
    sn_action_on_components,
)
from cslab.divdiff import (
    boundedness_probe,
    circle_conj_oracle,
    conj,
    iterated_delta,
    limit_probe,
    regularity_verdict,
)
from cslab.domains import SpectralDomain
from cslab.frames import evert
from cslab.harness import (
    ExperimentConfig,
    collision_path_probe,
    cs_preserver_check,
    random_frame,
    random_ortho_frame,
    random_semisimple,
)
from cslab.linalg import frame_distance
from cslab.operators import exotic_evert, exotic_polar, from_matrix, to_matrix
from cslab.scenarios import circle_cloud, interval_cloud


def report(num, name, ok):
    print(f"ACCEPTANCE {num:2d} ({name}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"acceptance criterion {num} ({name}) failed"


def test_criterion_1_eversion_involution_and_fixed_points():
    rng = np.random.default_rng(101)
    worst_inv = 0.0
    worst_fix = 0.0
    for n in range(2, 7):
        for _ in range(100):
            F = random_frame(n, rng)
            worst_inv = max(worst_inv, frame_distance(evert(evert(F)), F))
        for _ in range(100):
            Q = random_ortho_frame(n, rng)
            worst_fix = max(worst_fix, frame_distance(evert(Q), Q))
    report(1, "eversion involution & fixed points", worst_inv <= 1e-9 and worst_fix <= 1e-9)


def test_criterion_2_exotic_route_agreement():
    rng = np.random.default_rng(102)
    X = SpectralDomain.circle()
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 6))
        M = random_semisimple(X, n, rng, min_gap=0.1)
        via_evert = to_matrix(exotic_evert(from_matrix(M)))
        worst = max(worst, float(np.linalg.norm(exotic_polar(M) - via_evert)))
    report(2, "exotic-map route agreement", worst <= 1e-8)


def test_criterion_3_cs_preservation_with_negative_controls():
    ok = True
    for scenario in ("circle", "interval", "disk"):
        cfg = ExperimentConfig(
            scenario=scenario, n=3, trials=200, seed=103,
            spectrum_tol=1e-8, commutator_tol=1e-8,
        )
        for name in ("conjugation", "transpose-conjugation", "exotic"):
            ok = ok and cs_preserver_check(name, cfg).passed
        for name in ("shift", "inconsistent-shuffle"):
            ok = ok and not cs_preserver_check(name, cfg).passed
    report(3, "CS preservation of the preserver maps", ok)


def test_criterion_4_divided_difference_oracles():
    rng = np.random.default_rng(104)
    worst_oracle = 0.0
    for _ in range(500):
        k = int(rng.integers(1, 6))
        while True:
            z = np.exp(1j * rng.uniform(0, 2 * np.pi, k + 1))
            d = np.abs(z[:, None] - z[None, :])
            np.fill_diagonal(d, np.inf)
            if d.min() >= 1e-2:
                break
        worst_oracle = max(
            worst_oracle, abs(iterated_delta(conj, z) - circle_conj_oracle(z, k))
        )
    worst_real = 0.0
    for _ in range(100):
        x = np.sort(rng.uniform(-1, 1, 3))
        if np.min(np.diff(x)) < 1e-3:
            continue
        worst_real = max(worst_real, abs(iterated_delta(conj, x.astype(complex))))
    worst_poly = 0.0
    for k in range(2, 6):
        for _ in range(50):
            z = rng.standard_normal(k + 1) + 1j * rng.standard_normal(k + 1)
            worst_poly = max(worst_poly, abs(iterated_delta(lambda w: w ** (k - 1), z)))
    report(
        4,
        "divided-difference oracles",
        worst_oracle <= 1e-9 and worst_real <= 1e-10 and worst_poly <= 1e-9,
    )


def test_criterion_5_regularity_trichotomy():
    circle_v = regularity_verdict(SpectralDomain.circle(), 3).verdict
    interval_v = regularity_verdict(SpectralDomain.interval(-1, 1), 3).verdict
    disk_v = regularity_verdict(SpectralDomain.disk(), 3).verdict
    # witness family (-r, ir, r): second iterate equals i/r exactly
    witness_ok = all(
        abs(iterated_delta(conj, (-r, 1j * r, r)) - 1j / r) <= 1e-9 / r
        for r in (1e-1, 1e-2, 1e-3)
    )
    disk = SpectralDomain.disk()
    rep_b = boundedness_probe(conj, disk, 0j, k=1, seed=105)
    rep_l = limit_probe(conj, disk, 0j, k=1, seed=106)
    k1_bounded = max(rep_b.sup_values) <= 1.0 + 1e-6
    k1_oscillates = min(rep_l.oscillation_values) >= 0.5
    report(
        5,
        "regularity trichotomy",
        circle_v == "C"
        and interval_v == "C"
        and disk_v == "not_B"
        and witness_ok
        and k1_bounded
        and k1_oscillates,
    )


def _counts_and_action(cloud, n):
    decomp = components(build_config_complex(cloud, n))
    action = sn_action_on_components(decomp)
    return decomp, action


def test_criterion_6_configuration_counts_n3():
    dc, ac = _counts_and_action(circle_cloud(), 3)
    di, ai = _counts_and_action(interval_cloud(), 3)
    ok = (
        dc.component_count == 2
        and di.component_count == 6
        and ac.transitive
        and ai.transitive
        and ac.isotropy_orders == (3, 3)
        and not ac.free
        and ai.free
    )
    report(6, "configuration-space counts (n=3)", ok)


@pytest.mark.slow
def test_criterion_6_configuration_counts_n4():
    dc, ac = _counts_and_action(circle_cloud(), 4)
    di, ai = _counts_and_action(interval_cloud(), 4)
    ok = (
        dc.component_count == 6
        and di.component_count == 24
        and ac.transitive
        and ai.transitive
        and ac.isotropy_orders == (4,) * 6
        and ai.free
    )
    report(6, "configuration-space counts (n=4, slow)", ok)


def test_criterion_7_gamma_graphs():
    ok = True
    cloud = circle_cloud()
    d = components(build_config_complex(cloud, 3))
    for comp in range(d.component_count):
        g = cn_graph(d, comp, cloud)
        ok = ok and len(g.edges) == 3 and has_n_cycle(g)
    cloud = interval_cloud()
    d = components(build_config_complex(cloud, 3))
    for comp in range(d.component_count):
        g = cn_graph(d, comp, cloud)
        ok = ok and len(g.edges) == 2 and not has_n_cycle(g)
        ok = ok and sorted(g.degree(i) for i in range(3)) == [1, 1, 2]
    report(7, "index graphs: cycles vs paths", ok)


def test_criterion_8_regime_reports():
    from cslab.scenarios import disk_cloud

    circle = hypothesis_report(circle_cloud(), 3, domain=SpectralDomain.circle())
    disk = hypothesis_report(disk_cloud(), 3, domain=SpectralDomain.disk())
    interval = hypothesis_report(interval_cloud(), 3, domain=SpectralDomain.interval(-1, 1))
    ok = (
        circle.hypotheses_hold
        and circle.regularity.verdict == "C"
        and "exotic" in circle.admissible["semisimple"]
        and "extended_exotic" in circle.admissible["general"]
        and disk.regularity.verdict == "not_B"
        and "exotic" not in disk.admissible["semisimple"]
        and interval.free
        and not interval.theorems_applicable
    )
    report(8, "regime reports", ok)


def test_criterion_9_collision_probe():
    real = collision_path_probe("jordan2", rays=(0.0,))
    two = collision_path_probe("jordan2", rays=(0.0, np.pi / 2))
    disk = collision_path_probe("jordan3-disk")
    # exactness at every ladder point: the image of [[0,1],[0,t]] is
    # [[0,0],[t/conj(t), t]] in closed form
    exact_ok = True
    for r in real.t_values:
        for th in (0.0, np.pi / 2, 0.3):
            t = r * np.exp(1j * th)
            img = exotic_polar(np.array([[0.0, 1.0], [0.0, t]], dtype=complex))
            want = np.array([[0.0, 0.0], [t / np.conj(t), t]])
            exact_ok = exact_ok and np.linalg.norm(img - want) <= 1e-10
    peaks = [max(row) for row in disk.norms]
    decades = np.log10(disk.t_values[0] / disk.t_values[-1])
    monotone = all(b >= a for a, b in zip(peaks, peaks[1:]))
    ok = (
        exact_ok
        and real.diagnosis == "converges"
        and np.linalg.norm(real.limit - np.array([[0.0, 0.0], [1.0, 0.0]])) <= 1e-5
        and two.diagnosis == "bounded-oscillates"
        and disk.diagnosis == "diverges"
        and monotone
        and decades >= 3.0
    )
    report(9, "collision probe diagnoses", ok)


def test_criterion_10_determinism(tmp_path):
    frame_doc = {
        "n": 2,
        "lines": [[[1.0, 0.0], [0.0, 0.0]], [[0.70710678, 0.0], [0.70710678, 0.0]]],
    }
    matrix_doc = {"n": 2, "re": [[1.0, 1.0], [0.0, 2.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}
    (tmp_path / "frame.json").write_text(json.dumps(frame_doc))
    (tmp_path / "matrix.json").write_text(json.dumps(matrix_doc))
    cases = [
        ["evert", "--in", str(tmp_path / "frame.json")],
        ["exotic", "--in", str(tmp_path / "matrix.json")],
        ["delta-probe", "--scenario", "circle", "--n", "3", "--seed", "1"],
        ["config-analyze", "--scenario", "interval", "--n", "3"],
        ["cs-check", "--map", "exotic", "--scenario", "circle", "--trials", "20", "--seed", "1"],
        ["collision-probe", "--family", "jordan2", "--seed", "1"],
    ]
    ok = True
    for i, argv in enumerate(cases):
        outs = []
        for tag in ("a", "b"):
            out = tmp_path / f"case{i}{tag}.json"
            code = cli_main(argv + ["--out", str(out)])
            ok = ok and code in (0, 2)
            outs.append(out.read_bytes())
        ok = ok and outs[0] == outs[1]
    # report writes a directory bundle; compare its summary file
    report_args = ["report", "--scenario", "disk", "--n", "3", "--trials", "10", "--seed", "1"]
    outs = []
    for tag in ("a", "b"):
        outdir = tmp_path / f"report{tag}"
        code = cli_main(report_args + ["--out", str(outdir)])
        ok = ok and code == 0
        outs.append((outdir / "summary.json").read_bytes())
    ok = ok and outs[0] == outs[1]
    report(10, "byte-identical CLI reruns", ok)
