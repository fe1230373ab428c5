import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cslab.divdiff import (
    ProbeReport,
    boundedness_probe,
    circle_conj_oracle,
    conj,
    delta,
    iterated_delta,
    limit_probe,
    regularity_verdict,
)
from cslab.domains import SpectralDomain
from cslab.errors import CoincidentPointsError, CsLabError, InsufficientSamplesError

CIRCLE = SpectralDomain.circle()
INTERVAL = SpectralDomain.interval(-1.0, 1.0)
DISK = SpectralDomain.disk()


class TestDelta:
    def test_first_difference_is_slope(self):
        # (f(b) - f(a)) / (b - a)
        assert delta(lambda z: z * z, (1.0, 3.0)) == pytest.approx(4.0)

    def test_conj_on_circle_pair(self):
        # Delta conj at (1, -1): (conj(-1) - conj(1)) / (-1 - 1) = 1
        assert delta(conj, (1.0, -1.0)) == pytest.approx(1.0)

    def test_symmetric_two_variable_function(self):
        f = lambda a, b: a * b  # symmetric in its arguments
        # (f(z1,z2) - f(z0,z1)) / (z2 - z0) = z1 (z2 - z0) / (z2 - z0)
        assert delta(f, (2.0, 5.0, 7.0)) == pytest.approx(5.0)

    def test_coincident_endpoints_rejected(self):
        with pytest.raises(CoincidentPointsError):
            delta(conj, (1.0, 2.0, 1.0))


class TestIteratedDelta:
    def test_k0_is_evaluation(self):
        assert iterated_delta(conj, (1j,)) == pytest.approx(-1j)

    def test_k1_matches_delta(self):
        assert iterated_delta(conj, (1.0, -1.0)) == pytest.approx(1.0)

    def test_circle_quarter_points(self):
        # Delta^2 conj at (1, i, -1) = (-1)^2 / (1 * i * -1) = i
        assert iterated_delta(conj, (1.0, 1j, -1.0)) == pytest.approx(1j)

    def test_disk_witness_scale(self):
        # the (-r, ir, r) family: Delta^2 conj = i / r
        for r in (1.0, 0.1, 0.01):
            val = iterated_delta(conj, (-r, 1j * r, r))
            assert val == pytest.approx(1j / r, rel=1e-12)

    def test_polynomial_exactness(self):
        # Delta^k of z^k is 1; of lower degree, 0
        rng = np.random.default_rng(0)
        for k in range(1, 6):
            z = rng.standard_normal(k + 1) + 1j * rng.standard_normal(k + 1)
            assert iterated_delta(lambda w: w**k, z) == pytest.approx(1.0, abs=1e-8)
            assert abs(iterated_delta(lambda w: w ** (k - 1), z)) <= 1e-8

    def test_permutation_invariance(self):
        rng = np.random.default_rng(1)
        z = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        base = iterated_delta(np.exp, z)
        for _ in range(10):
            assert iterated_delta(np.exp, rng.permutation(z)) == pytest.approx(base, rel=1e-9)

    def test_coincident_points_rejected(self):
        with pytest.raises(CoincidentPointsError):
            iterated_delta(conj, (1.0, 1j, 1.0))


class TestCircleOracle:
    def test_quarter_points(self):
        assert circle_conj_oracle((1.0, 1j, -1.0), 2) == pytest.approx(1j)

    def test_pair(self):
        assert circle_conj_oracle((1.0, -1.0), 1) == pytest.approx(1.0)

    def test_agreement_random(self):
        rng = np.random.default_rng(2)
        worst = 0.0
        for _ in range(500):
            k = int(rng.integers(1, 6))
            while True:
                z = np.exp(1j * rng.uniform(0, 2 * np.pi, k + 1))
                d = np.abs(z[:, None] - z[None, :])
                np.fill_diagonal(d, np.inf)
                if d.min() >= 1e-2:
                    break
            got = iterated_delta(conj, z)
            want = circle_conj_oracle(z, k)
            worst = max(worst, abs(got - want) / abs(want))
        assert worst <= 1e-9

    def test_off_circle_rejected(self):
        with pytest.raises(CsLabError):
            circle_conj_oracle((2.0, 1j, -1.0), 2)

    @given(k=st.integers(1, 4), seed=st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_oracle_magnitude_one(self, k, seed):
        rng = np.random.default_rng(seed)
        z = np.exp(1j * rng.uniform(0, 2 * np.pi, k + 1))
        assert abs(circle_conj_oracle(z, k)) == pytest.approx(1.0)


class TestProbes:
    def test_circle_bounded(self):
        # exact sup is 1; tight tuples near the separation floor cost a
        # few digits in the Newton table
        rep = boundedness_probe(conj, CIRCLE, 1.0 + 0j, k=2, seed=0)
        assert max(rep.sup_values) <= 1.0 + 1e-5

    def test_disk_blowup_tracks_radius(self):
        rep = boundedness_probe(conj, DISK, 0j, k=2, seed=0)
        sups = np.asarray(rep.sup_values)
        radii = np.asarray(rep.radii)
        # the witness family forces sup >= ~1/r at every rung
        assert np.all(sups >= 0.9 / radii)

    def test_disk_k1_bounded_not_convergent(self):
        rep = limit_probe(conj, DISK, 0j, k=1, seed=0)
        assert max(rep.sup_values) <= 1.0 + 1e-9
        assert rep.limit_plausible is False
        assert rep.oscillation_values[-1] > 1.0

    def test_interval_limit_exists(self):
        rep = limit_probe(conj, INTERVAL, 0j, k=2, seed=0)
        assert rep.limit_plausible is True
        # conj is the identity on the reals, so Delta^2 conj = 0 exactly
        assert max(rep.sup_values) <= 1e-9

    def test_circle_limit_exists(self):
        rep = limit_probe(conj, CIRCLE, 1.0 + 0j, k=2, seed=0, separation_floor=1e-4)
        assert rep.limit_plausible is True

    def test_deterministic_given_seed(self):
        a = boundedness_probe(conj, CIRCLE, 1.0 + 0j, k=2, seed=42)
        b = boundedness_probe(conj, CIRCLE, 1.0 + 0j, k=2, seed=42)
        assert a.to_json() == b.to_json()

    def test_cloud_with_too_few_points_rejected(self):
        X = SpectralDomain.from_cloud([0.0, 1.0], epsilon=0.5)
        with pytest.raises(InsufficientSamplesError):
            boundedness_probe(conj, X, 0j, k=2, radii=(0.25, 0.1))

    def test_non_cluster_center_rejected(self):
        with pytest.raises(InsufficientSamplesError):
            boundedness_probe(conj, CIRCLE, 5.0 + 0j, k=2)

    def test_report_validation(self):
        with pytest.raises(CsLabError):
            ProbeReport(0j, 2, (0.1, 0.2), (1.0, 1.0), (0.0, 0.0))

    def test_report_csv(self, tmp_path):
        rep = boundedness_probe(conj, CIRCLE, 1.0 + 0j, k=2, seed=0)
        path = tmp_path / "probe.csv"
        rep.write_csv(path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "radius,sup,oscillation"
        assert len(lines) == 1 + len(rep.radii)


class TestVerdicts:
    def test_circle(self):
        assert regularity_verdict(CIRCLE, n=3).verdict == "C"

    def test_interval(self):
        assert regularity_verdict(INTERVAL, n=3).verdict == "C"

    def test_disk(self):
        assert regularity_verdict(DISK, n=3).verdict == "not_B"

    def test_disk_first_difference_b_not_c(self):
        assert regularity_verdict(DISK, n=2).verdict == "B_not_C"

    def test_marked_heuristic(self):
        v = regularity_verdict(CIRCLE, n=3)
        assert v.heuristic is True
        assert v.to_json()["heuristic"] is True

    def test_scaled_domains(self):
        assert regularity_verdict(SpectralDomain.circle(1 + 1j, 2.0), n=3).verdict == "C"
        assert regularity_verdict(SpectralDomain.disk(-1j, 0.5), n=3).verdict == "not_B"
