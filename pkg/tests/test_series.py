import numpy as np
import pytest
from fractions import Fraction

from cyclerank import (
    ParameterError,
    SpectralGapError,
    WeightedDigraph,
    ZeroSpectralRadiusError,
    build_graph,
    characteristic_polynomial,
    closed_walk_trace,
    dominant_eigenpair,
    hike_series,
    power_sums_from_charpoly,
    ratio_convergence_check,
    subgraph_centrality,
    viennot_ratio,
)
from conftest import c4, directed_cycle, k3, random_graph


class TestHikeSeries:
    def test_k3(self):
        pair = hike_series(k3(), 5)
        assert np.allclose(pair.h, [1, 0, 3, 2, 9, 12])

    def test_c4(self):
        pair = hike_series(c4(), 4)
        assert np.allclose(pair.h, [1, 0, 4, 0, 16])

    def test_zero_graph(self):
        pair = hike_series(WeightedDigraph(np.zeros((3, 3))), 6)
        assert np.allclose(pair.h, [1, 0, 0, 0, 0, 0, 0])

    def test_rescaled_coefficients(self):
        raw = hike_series(k3(), 8)
        scaled = hike_series(k3(), 8, scale=2.0)
        assert np.allclose(scaled.h, raw.h / 2.0 ** np.arange(9))

    def test_convolution_identity(self):
        # p * h must reproduce (1, 0, 0, ...) coefficient by coefficient
        rng = np.random.default_rng(30)
        for _ in range(15):
            n = int(rng.integers(1, 21))
            g = random_graph(rng, n, directed=bool(rng.integers(2)))
            K = int(rng.integers(n, 101))
            try:
                lam, _ = dominant_eigenpair(g)
            except ZeroSpectralRadiusError:
                lam = 1.0
            pair = hike_series(g, K, scale=max(lam, 1.0))
            conv = np.convolve(pair.p, pair.h)[: K + 1]
            want = np.zeros(K + 1)
            want[0] = 1.0
            assert np.allclose(conv, want, atol=1e-9)

    def test_negative_k_rejected(self):
        with pytest.raises(ParameterError):
            hike_series(k3(), -1)


class TestViennotRatio:
    def test_k3_hand_trace_float(self):
        trace = viennot_ratio(k3(), [0], 8)
        assert np.allclose(trace.f, [1, 0, 2, 2, 6, 10, 22, 42, 86])
        assert np.allclose(trace.h, [1, 0, 3, 2, 9, 12, 31, 54, 117])
        assert trace.target == pytest.approx(0.75, abs=1e-12)

    def test_k3_hand_trace_exact(self):
        trace = viennot_ratio(k3(), [0], 8, exact=True)
        assert trace.f == tuple(Fraction(v) for v in (1, 0, 2, 2, 6, 10, 22, 42, 86))
        assert trace.ratios[-5:] == (
            Fraction(6, 9),
            Fraction(10, 12),
            Fraction(22, 31),
            Fraction(42, 54),
            Fraction(86, 117),
        )

    def test_remove_everything_gives_ratio_one(self):
        trace = viennot_ratio(k3(), [0, 1, 2], 6)
        assert np.allclose(trace.f, trace.h)
        assert all(r == pytest.approx(1.0, abs=1e-12) for r in trace.ratios)

    def test_c4_even_orders_converge_immediately(self):
        trace = viennot_ratio(c4(), [0], 12)
        assert trace.ratio_ks == tuple(range(0, 13, 2))
        assert all(r == pytest.approx(0.5, abs=1e-12) for r in trace.ratios[1:])

    def test_target_matches_centrality_module(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            n = int(rng.integers(2, 16))
            g = random_graph(rng, n, directed=bool(rng.integers(2)))
            try:
                lam, _ = dominant_eigenpair(g)
            except ZeroSpectralRadiusError:
                continue
            s = rng.choice(n, size=int(rng.integers(0, n)), replace=False)
            trace = viennot_ratio(g, s, max(g.n, 20))
            assert trace.target == pytest.approx(
                subgraph_centrality(g, s, lam).value, abs=1e-10
            )

    def test_k_below_n_rejected(self):
        with pytest.raises(ParameterError):
            viennot_ratio(c4(), [0], 2)

    def test_nilpotent_rejected(self):
        g = build_graph(3, [(0, 1, 1), (1, 2, 1)], directed=True)
        with pytest.raises(ZeroSpectralRadiusError):
            viennot_ratio(g, [0], 10)

    def test_large_k_rescales(self):
        trace = viennot_ratio(k3(), [0], 60)
        assert trace.scale == pytest.approx(2.0, abs=1e-9)
        assert np.isfinite(trace.h).all()
        assert trace.ratios[-1] == pytest.approx(0.75, rel=1e-6)

    def test_exact_mode_on_dyadic_weights(self):
        # 0.5 is an exact binary rational, so both paths must agree
        g = build_graph(3, [(0, 1, 0.5), (1, 2, 0.5), (0, 2, 0.5)], directed=False)
        exact = viennot_ratio(g, [0], 10, exact=True)
        approx = viennot_ratio(g, [0], 10)
        assert exact.ratio_ks == approx.ratio_ks
        for a, b in zip(exact.ratios, approx.ratios):
            assert float(a) == pytest.approx(b, abs=1e-12)


class TestConvergenceCheck:
    def test_k3_tight(self):
        report = ratio_convergence_check(k3(), [0], K=60, tol=1e-6)
        assert report.passed
        assert report.spectral_gap == pytest.approx(0.5, abs=1e-9)
        assert report.decay_rate == pytest.approx(0.5, abs=0.1)

    def test_directed_cycle_exact_ratios(self):
        report = ratio_convergence_check(directed_cycle(3), [0], K=30, tol=1e-6)
        assert report.passed
        assert all(r == pytest.approx(1.0, abs=1e-12) for r in report.ratios)

    def test_degenerate_dominant_is_inconclusive(self):
        edges = [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)]
        g = build_graph(6, edges, directed=False)
        with pytest.raises(SpectralGapError):
            ratio_convergence_check(g, [0], K=40, tol=1e-4)

    def test_c4_zero_gap_but_exact(self):
        # modulus gap is 1 (bipartite) yet the defined ratios are exact
        report = ratio_convergence_check(c4(), [0], K=40, tol=1e-6)
        assert report.passed

    def test_random_instances_mostly_pass(self):
        rng = np.random.default_rng(32)
        passed = inconclusive = 0
        total = 30
        for _ in range(total):
            n = int(rng.integers(3, 16))
            g = random_graph(rng, n, directed=bool(rng.integers(2)))
            try:
                dominant_eigenpair(g)
            except ZeroSpectralRadiusError:
                total -= 1
                continue
            s = rng.choice(n, size=int(rng.integers(1, max(2, n // 2))), replace=False)
            try:
                report = ratio_convergence_check(g, s, K=80, tol=1e-4)
            except SpectralGapError:
                inconclusive += 1
                continue
            passed += int(report.passed)
        assert passed + inconclusive == total  # no hard failures
        assert passed >= 0.9 * total


class TestTraces:
    def test_closed_walk_trace_k3(self):
        g = k3()
        assert closed_walk_trace(g, 0) == 3.0
        assert closed_walk_trace(g, 2) == 6.0
        assert closed_walk_trace(g, 3) == 6.0

    def test_newton_identities_match_traces(self):
        rng = np.random.default_rng(33)
        for _ in range(15):
            n = int(rng.integers(1, 13))
            g = random_graph(rng, n, directed=bool(rng.integers(2)))
            p = characteristic_polynomial(g).coeffs
            sums = power_sums_from_charpoly(p, 10)
            for k in range(1, 11):
                want = closed_walk_trace(g, k)
                assert sums[k - 1] == pytest.approx(want, rel=1e-6, abs=1e-6)
