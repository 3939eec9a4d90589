"""Two-pole amplitudes, spectra, extrema, asymptotics and regime labels."""
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from supersplit import (CollectiveParams, Regime, RegimeThresholds,
                        asymptotic_poles, classify_regime, collective_eigenvalues,
                        degenerate_amplitude, measure_splitting, radiation_spectrum)
from supersplit.spectrum import (AsymptoticRangeWarning, DegenerateSystemError,
                                 golden_section, rational_amplitude,
                                 spectral_amplitude)


def brute_intensity(delta, g, big, lamb, phi):
    """|sigma|^2 from numpy.roots of the characteristic polynomial."""
    r = np.roots([1, -(big + g + 1j * lamb), g * big + phi ** 2 / 4 + 1j * lamb * g])
    return np.abs((delta - 1j * g) / ((delta - 1j * r[0]) * (delta - 1j * r[1]))) ** 2


# Two tallest maxima of |sigma|^2 located by successive dense-grid zooms
# (spacing ~1e-9) of brute_intensity; values frozen here.
ORACLE_PEAKS = {
    (19, 0, 15): (17.038816025855038, 0.0, 1.0),
    (19, 0, 62): (62.603390014264875, 0.0, 1.0),
    (3, 20, 30): (36.265692858849775, -9.927399639942847, 0.26328678116305915),
    (1, 6.6, 10): (12.242270379440495, -3.193118807367402, 0.09977664339823596),
    (1, 0, 40): (40.04972034193634, 0.0, 1.0),
}

params_strategy = st.builds(
    CollectiveParams,
    big_gamma=st.floats(1.0, 1e3),
    lamb_shift=st.floats(-1e3, 1e3),
    phi=st.floats(0.0, 1e3),
)


class TestAmplitude:
    def test_single_point_identity(self):
        eig = collective_eigenvalues(CollectiveParams(2, 0, 0))
        two_pole = spectral_amplitude(eig, 0.0)
        assert_allclose(two_pole, 0.5j, rtol=1e-14)
        assert_allclose(two_pole, rational_amplitude(eig, 0.0), rtol=1e-12)

    def test_partial_fractions_random(self):
        rng = np.random.default_rng(5)
        worst = 0.0
        for _ in range(10_000):
            p = CollectiveParams(10 ** rng.uniform(0, 4), rng.uniform(-1e3, 1e3),
                                 rng.uniform(0, 1e3))
            eig = collective_eigenvalues(p)
            d = rng.uniform(-2e3, 2e3)
            a, b = spectral_amplitude(eig, d), rational_amplitude(eig, d)
            worst = max(worst, abs(a - b) / abs(b))
        assert worst <= 1e-12

    def test_zeeman_peak_height(self):
        p = CollectiveParams(19, 0, 62)
        a = asymptotic_poles(p, "ZEEMAN_LIKE")
        two_lorentz = a.a_plus / (31.0 - a.delta_plus) + a.a_minus / (31.0 - a.delta_minus)
        exact = abs(spectral_amplitude(collective_eigenvalues(p), 31.0)) ** 2
        assert exact == pytest.approx(abs(two_lorentz) ** 2, rel=0.15)
        # a single line of weight 1/2 and half-width (Gamma + gamma)/2
        assert exact == pytest.approx(0.25 / (0.5 * 20) ** 2, rel=0.15)

    def test_eit_dip(self):
        eig = collective_eigenvalues(CollectiveParams(19, 0, 15))
        peak = ORACLE_PEAKS[(19, 0, 15)][0] / 2
        assert abs(spectral_amplitude(eig, 0.0)) < abs(spectral_amplitude(eig, peak))

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateSystemError):
            spectral_amplitude(collective_eigenvalues(CollectiveParams(3, 0, 2)), 0.0)

    @settings(max_examples=200)
    @given(params_strategy, st.floats(0, 1e3))
    def test_evenness_without_lamb_shift(self, p, delta):
        p = CollectiveParams(p.big_gamma, 0.0, p.phi)
        eig = collective_eigenvalues(p)
        if eig.degenerate:
            return
        a = abs(spectral_amplitude(eig, delta)) ** 2
        b = abs(spectral_amplitude(eig, -delta)) ** 2
        assert abs(a - b) <= 1e-12 * max(a, b)

    @pytest.mark.parametrize("p", [(19, 0, 15), (19, 5, 62), (3, 20, 30), (1, 6.6, 10)])
    def test_large_detuning_tail(self, p):
        eig = collective_eigenvalues(CollectiveParams(*p))
        tail = [abs(spectral_amplitude(eig, d)) ** 2 * d * d for d in (1e4, 1e6, 1e8)]
        assert abs(tail[-1] - 1) < 1e-6
        assert abs(tail[2] - 1) < abs(tail[1] - 1) < abs(tail[0] - 1)


class TestDegenerate:
    def test_value_at_zero(self):
        assert_allclose(degenerate_amplitude(CollectiveParams(3, 0, 2), 0.0), 0.25j,
                        rtol=1e-15)

    def test_value_at_two(self):
        assert_allclose(degenerate_amplitude(CollectiveParams(3, 0, 2), 2.0),
                        (2 - 1j) / (2 - 2j) ** 2, rtol=1e-15)

    def test_rejects_nondegenerate(self):
        with pytest.raises(ValueError):
            degenerate_amplitude(CollectiveParams(3, 0, 2.5), 0.0)

    def test_tail(self):
        p = CollectiveParams(3, 0, 2)
        d = np.array([1e3, 1e5])
        assert_allclose(np.abs(degenerate_amplitude(p, d)) * d, 1.0, rtol=5e-3)

    def test_limit_from_above(self):
        d = np.linspace(-20, 20, 2001)
        ref = degenerate_amplitude(CollectiveParams(3, 0, 2), d)

        def two_pole(eps):
            return spectral_amplitude(collective_eigenvalues(CollectiveParams(3, 0, 2 + eps)), d)

        # extrapolated limit from offsets 1e-4 and 2e-4
        limit = 2 * two_pole(1e-4) - two_pole(2e-4)
        assert np.max(np.abs(limit - ref)) <= 1e-6
        # the raw gap closes linearly in the offset
        raw = [np.max(np.abs(two_pole(e) - ref)) for e in (1e-4, 1e-5, 1e-6)]
        assert_allclose(np.array(raw[:-1]) / raw[1:], 10, rtol=0.05)

    def test_spectrum_uses_second_order_pole(self):
        grid = radiation_spectrum(CollectiveParams(3, 0, 2), span=20, n_points=401)
        ref = np.abs(degenerate_amplitude(CollectiveParams(3, 0, 2), grid.delta_values)) ** 2
        assert_allclose(grid.intensity, ref, rtol=1e-14)


class TestGrid:
    def test_golden_section(self):
        x, fx = golden_section(lambda t: (t - 0.3) ** 2, -1, 2, tol=1e-9)
        assert abs(x - 0.3) < 1e-8

    def test_invariants(self):
        grid = radiation_spectrum(CollectiveParams(3, 20, 30), span=80)
        assert np.all(np.diff(grid.delta_values) > 0)
        assert np.all(grid.intensity >= 0)
        kinds = [e.kind for e in grid.extrema]
        assert all(a != b for a, b in zip(kinds, kinds[1:]))
        assert all(-80 <= e.position <= 80 for e in grid.extrema)

    @pytest.mark.parametrize("kwargs", [dict(span=0), dict(span=-1), dict(n_points=15)])
    def test_preconditions(self, kwargs):
        with pytest.raises(ValueError):
            radiation_spectrum(CollectiveParams(19, 0, 15), **kwargs)

    def test_normalize(self):
        p = CollectiveParams(19, 0, 15)
        raw = radiation_spectrum(p, span=60)
        norm = radiation_spectrum(p, span=60, normalize=True)
        assert norm.intensity.max() == pytest.approx(1.0)
        assert_allclose(norm.intensity * norm.scale, raw.intensity, rtol=1e-14)

    def test_eit_figure(self):
        grid = radiation_spectrum(CollectiveParams(19, 0, 15), span=60)
        assert len(grid.maxima) == 2
        a, b = sorted(m.position for m in grid.maxima)
        assert abs(a + b) <= 1e-3
        assert len(grid.minima) == 1 and abs(grid.minima[0].position) <= 1e-6

    def test_zeeman_figure(self):
        grid = radiation_spectrum(CollectiveParams(19, 0, 62), span=120)
        assert len(grid.maxima) == 2

    def test_anomalous_figure(self):
        s = measure_splitting(radiation_spectrum(CollectiveParams(3, 20, 30), span=80))
        assert s.splitting == pytest.approx(math.sqrt(1300), rel=0.05)
        assert s.height_ratio < 1

    @pytest.mark.parametrize("key", sorted(ORACLE_PEAKS))
    def test_measure_splitting_against_brute_force(self, key):
        split, mid, ratio = ORACLE_PEAKS[key]
        s = measure_splitting(radiation_spectrum(CollectiveParams(*key)))
        assert s.splitting == pytest.approx(split, abs=1e-6)
        assert s.midpoint == pytest.approx(mid, abs=1e-6)
        assert s.height_ratio == pytest.approx(ratio, abs=1e-6)

    def test_brute_force_oracle_agrees_pointwise(self):
        p = CollectiveParams(3, 20, 30)
        grid = radiation_spectrum(p, span=80, n_points=801)
        ref = brute_intensity(grid.delta_values, 1, 3, 20, 30)
        assert_allclose(grid.intensity, ref, rtol=1e-10)

    def test_zeeman_limit_example(self):
        # two independent Lorentzians pull each other's peaks slightly apart
        s = measure_splitting(radiation_spectrum(CollectiveParams(1, 0, 40)))
        assert s.splitting == pytest.approx(40, rel=2e-3)
        assert abs(s.midpoint) <= 1e-3
        assert s.height_ratio == pytest.approx(1, abs=1e-6)

    def test_single_line(self):
        s = measure_splitting(radiation_spectrum(CollectiveParams(19, 0, 0)))
        assert s.splitting == 0
        assert s.midpoint == pytest.approx(0, abs=1e-6)

    def test_eit_centering_property(self):
        rng = np.random.default_rng(9)
        checked = 0
        for _ in range(200):
            big = rng.uniform(2, 100)
            phi = rng.uniform(0, 0.99) * (big - 1)
            p = CollectiveParams(big, 0, phi)
            eig = collective_eigenvalues(p)
            r = classify_regime(p, grid=radiation_spectrum(p, n_points=16))
            if eig.degenerate or not (r.eit_lower_bound and r.eit_upper_bound):
                continue
            checked += 1
            assert eig.y_param < 1
            assert abs(eig.delta_plus.real) < 1e-12 and abs(eig.delta_minus.real) < 1e-12
            f = [abs(spectral_amplitude(eig, d)) ** 2 for d in (-1e-3, 0, 1e-3)]
            assert f[1] < f[0] and f[1] < f[2]
        assert checked > 20

    def test_weak_splitting_keeps_central_peak(self):
        # y < 1 is not enough: the centre is a dip only once
        # (P + gamma^2)^2 > gamma^2 ((Gamma + gamma)^2 + gamma^2), P = Gamma gamma + phi^2/4
        p = CollectiveParams(19, 0, 0.1)
        assert collective_eigenvalues(p).y_param < 1
        grid = radiation_spectrum(p)
        assert [m.position for m in grid.maxima] == pytest.approx([0], abs=1e-6)


class TestAsymptotics:
    def test_broad_narrow_example(self):
        p = CollectiveParams(101, 0, 10)
        a = asymptotic_poles(p, "BROAD_NARROW")
        assert a.delta_plus == pytest.approx(100.75j)
        eig = collective_eigenvalues(p)
        assert abs(a.delta_plus - eig.delta_plus) <= 100 * 10.0 ** -4
        assert abs(a.delta_minus - eig.delta_minus) <= 100 * 10.0 ** -4

    def test_zeeman_example(self):
        p = CollectiveParams(3, 0, 200)
        a = asymptotic_poles(p, "ZEEMAN_LIKE")
        assert a.delta_plus == pytest.approx(100 - 4 / 800 + 2j)
        assert a.delta_minus == pytest.approx(-(100 - 4 / 800) + 2j)
        eig = collective_eigenvalues(p)
        exact = sorted([eig.delta_plus, eig.delta_minus], key=lambda z: z.real)
        approx = sorted([a.delta_plus, a.delta_minus], key=lambda z: z.real)
        for e, q in zip(exact, approx):
            assert abs(e - q) <= 0.01 ** 2 * abs(e)

    def test_large_lamb_shift_example(self):
        p = CollectiveParams(2, 50, 50)
        a = asymptotic_poles(p, "LARGE_L")
        assert abs((a.delta_plus - a.delta_minus).real) == pytest.approx(math.hypot(50, 50))
        assert collective_eigenvalues(p).pole_splitting == pytest.approx(70.71, rel=0.01)

    def test_broad_narrow_converges(self):
        errs = []
        for x in (4, 8, 16, 32, 64):
            p = CollectiveParams(1 + 10 * x, 0, 10)
            eig, a = collective_eigenvalues(p), asymptotic_poles(p, "BROAD_NARROW")
            errs.append(max(abs(a.delta_plus - eig.delta_plus),
                            abs(a.delta_minus - eig.delta_minus)))
        assert all(b < a for a, b in zip(errs, errs[1:]))

    def test_zeeman_converges(self):
        errs = []
        for x in (0.25, 0.125, 0.0625, 0.03125, 0.015625):
            p = CollectiveParams(1 + 200 * x, 0, 200)
            eig, a = collective_eigenvalues(p), asymptotic_poles(p, "ZEEMAN_LIKE")
            pairs = sorted([eig.delta_plus, eig.delta_minus], key=lambda z: z.real)
            approx = sorted([a.delta_plus, a.delta_minus], key=lambda z: z.real)
            errs.append(max(abs(u - v) for u, v in zip(pairs, approx)))
        assert all(b < a for a, b in zip(errs, errs[1:]))

    def test_zeeman_amplitudes_converge(self):
        # residues approach 1/2 +- i x/2 with error O(x^2)
        for x in (0.125, 0.0625, 0.03125):
            p = CollectiveParams(1 + 200 * x, 0, 200)
            eig, a = collective_eigenvalues(p), asymptotic_poles(p, "ZEEMAN_LIKE")
            got = eig.a_plus if eig.delta_plus.real > 0 else eig.a_minus
            assert abs(got - a.a_plus) <= 0.1 * x * x

    def test_out_of_range_warns(self):
        with pytest.warns(AsymptoticRangeWarning):
            asymptotic_poles(CollectiveParams(19, 0, 62), "BROAD_NARROW")
        with pytest.warns(AsymptoticRangeWarning):
            asymptotic_poles(CollectiveParams(19, 0, 15), "ZEEMAN_LIKE")

    def test_in_range_is_silent(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            asymptotic_poles(CollectiveParams(101, 0, 10), "BROAD_NARROW")


class TestClassification:
    @pytest.mark.parametrize("p,label", [
        ((19, 0, 15), Regime.EIT_LIKE),
        ((19, 0, 62), Regime.ZEEMAN_LIKE),
        ((3, 20, 30), Regime.ANOMALOUS_COLLECTIVE),
        ((3, 0, 2), Regime.DEGENERATE),
        ((19, 30, 15), Regime.UNCLASSIFIED),
    ])
    def test_labels(self, p, label):
        assert classify_regime(CollectiveParams(*p)).label is label

    def test_evidence(self):
        r = classify_regime(CollectiveParams(19, 0, 15))
        assert r.eit_lower_bound and r.eit_upper_bound
        assert r.x == pytest.approx(1.2)
        assert r.measured_splitting == pytest.approx(ORACLE_PEAKS[(19, 0, 15)][0], abs=1e-6)
        assert r.predicted_splitting == 0
        d = r.to_dict()
        assert d["label"] == "EIT_LIKE"
        assert d["thresholds"]["anomalous_ratio"] == 3.0

    def test_thresholds_configurable(self):
        p = CollectiveParams(19, 0, 62)
        strict = RegimeThresholds(zeeman_x_max=0.2)
        assert classify_regime(p, strict).label is Regime.UNCLASSIFIED

    def test_deterministic(self):
        p = CollectiveParams(3, 20, 30)
        assert classify_regime(p).to_dict() == classify_regime(p).to_dict()
