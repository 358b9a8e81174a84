import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quenchkit import well
from quenchkit.numerics import QuadratureSpec, integrate
from quenchkit.well import (
    QuenchRatio,
    Regime,
    WellConfig,
    decompose,
    eigen_energy,
    eigen_wavefunction,
    energy_scan,
    expansion_coefficient,
    force_scan,
    matter_wave_force,
    overlap_oracle,
    population,
    population_scan,
    quench_energy,
)

# frozen quadrature value for the gamma = 0.5, n = 1 overlap
B_HALF_1 = 0.6002108774380708

ALT_CONFIG = WellConfig(mass=3.3e-26, planck=6.626e-34, width=2.5e-9)


class TestConfigAndRatio:
    def test_ground_energy_reference_constants(self):
        # m = 1e-27 kg, h = 6.626e-34 J s, width = 1 nm
        cfg = WellConfig()
        assert cfg.ground_energy == pytest.approx(5.49e-23, rel=5e-3)

    def test_config_validation(self):
        for kwargs in ({"mass": 0.0}, {"planck": -1.0}, {"width": 0.0}):
            with pytest.raises(ValueError):
                WellConfig(**kwargs)

    def test_ratio_validation(self):
        with pytest.raises(ValueError):
            QuenchRatio(0.0)
        with pytest.raises(ValueError):
            QuenchRatio(1.0, resonance_tol=-1e-9)

    @pytest.mark.parametrize(
        "gamma,regime",
        [
            (0.5, Regime.SHRINK),
            (1.0, Regime.IDENTITY),
            (1.0 + 5e-10, Regime.IDENTITY),
            (2.0, Regime.EXPAND_RESONANT),
            (3.0 + 1e-12, Regime.EXPAND_RESONANT),
            (2.5, Regime.EXPAND_GENERIC),
            (4.9, Regime.EXPAND_GENERIC),
        ],
    )
    def test_regime_classification(self, gamma, regime):
        assert QuenchRatio(gamma).regime is regime


class TestEigenstates:
    def test_energy_reference_value(self):
        assert eigen_energy(1, 1e-9) == pytest.approx(5.49e-23, rel=5e-3)

    def test_energy_level_scaling_exact(self):
        assert eigen_energy(2, 1e-9) == 4.0 * eigen_energy(1, 1e-9)

    def test_energy_width_scaling_exact(self):
        assert eigen_energy(1, 2e-9) == eigen_energy(1, 1e-9) / 4.0

    def test_energy_domain_errors(self):
        with pytest.raises(ValueError):
            eigen_energy(0, 1e-9)
        with pytest.raises(ValueError):
            eigen_energy(1, -1e-9)

    def test_wavefunction_maximum(self):
        w = 1e-9
        assert eigen_wavefunction(1, w, w / 2) == pytest.approx(math.sqrt(2.0 / w))

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_wavefunction_boundaries(self, n):
        assert eigen_wavefunction(n, 1e-9, 0.0) == 0.0

    def test_wavefunction_vanishes_outside(self):
        assert eigen_wavefunction(1, 1e-9, 1.5e-9) == 0.0
        assert eigen_wavefunction(1, 1e-9, -1e-12) == 0.0

    @pytest.mark.parametrize("n", [1, 3])
    def test_wavefunction_normalized(self, n):
        w = 1e-9
        density = lambda q: eigen_wavefunction(n, w, q) ** 2
        assert integrate(density, 0.0, w, QuadratureSpec(1e-10)) == pytest.approx(
            1.0, abs=1e-10
        )


class TestExpansionCoefficient:
    def test_identity(self):
        assert expansion_coefficient(1, 1.0) == 1.0
        for n in (2, 3, 10):
            assert expansion_coefficient(n, 1.0) == 0.0

    def test_integer_resonance(self):
        assert expansion_coefficient(2, 2.0) == 1.0 / math.sqrt(2.0)
        assert expansion_coefficient(2, 2.0) == pytest.approx(0.70711, abs=1e-5)

    def test_shrink_value_frozen_from_quadrature(self):
        assert expansion_coefficient(1, 0.5) == pytest.approx(B_HALF_1, abs=1e-6)

    @pytest.mark.parametrize("n", [1, 2, 3, 7])
    def test_resonant_continuity(self, n):
        # approaching an integer ratio from either side (for n = 1 the left
        # side runs through the shrink formula) tends to 1/sqrt(n)
        target = 1.0 / math.sqrt(n)
        for g in (n - 1e-6, n + 1e-6):
            assert abs(expansion_coefficient(n, g) - target) <= 1e-4

    def test_population_is_exact_square(self):
        for n in (1, 2, 5, 9):
            for g in (0.3, 0.5, 1.5, 2.0, 4.9):
                b = expansion_coefficient(n, g)
                assert population(n, g) == b * b
                assert 0.0 <= population(n, g) <= 1.0

    def test_bad_level_rejected(self):
        with pytest.raises(ValueError):
            expansion_coefficient(0, 2.0)


class TestOverlapOracle:
    @pytest.mark.parametrize("gamma", [0.5, 0.9, 1.5, 2.0, 4.9])
    def test_matches_closed_form(self, gamma):
        for n in range(1, 9):
            closed = expansion_coefficient(n, gamma)
            oracle = overlap_oracle(n, gamma)
            assert abs(closed - oracle) <= 1e-9

    def test_identity_case(self):
        assert overlap_oracle(1, 1.0) == pytest.approx(1.0, abs=1e-9)

    def test_resonant_case(self):
        assert overlap_oracle(3, 3.0) == pytest.approx(1.0 / math.sqrt(3.0), abs=1e-9)

    def test_scale_invariance(self):
        for n, g in ((1, 0.5), (2, 1.5), (4, 4.9)):
            assert overlap_oracle(n, g) == pytest.approx(
                overlap_oracle(n, g, ALT_CONFIG), abs=1e-12
            )


class TestDecompose:
    def test_identity_decomposition(self):
        dec = decompose(1.0, 10)
        assert dec.coefficients[0] == 1.0
        assert np.all(dec.coefficients[1:] == 0.0)
        assert dec.captured == 1.0

    def test_captured_matches_quadrature_sum(self):
        dec = decompose(5.0, 10)
        via_oracle = sum(overlap_oracle(n, 5.0) ** 2 for n in range(1, 11))
        assert dec.captured == pytest.approx(via_oracle, abs=1e-8)
        assert dec.captured == pytest.approx(0.989, abs=1e-3)

    @pytest.mark.parametrize("gamma", [1.5, 2.0, 5.0])
    def test_captured_monotone_and_complete(self, gamma):
        caps = [decompose(gamma, n).captured for n in (10, 50, 200, 10_000)]
        assert all(b >= a for a, b in zip(caps, caps[1:]))
        assert caps[-1] <= 1.0 + 1e-12
        assert abs(caps[-1] - 1.0) <= 1e-3

    @pytest.mark.parametrize("gamma", [0.3, 0.5, 0.9])
    def test_shrink_projection_norm(self, gamma):
        # the analytic projection norm, itself checked by quadrature of the
        # ground-state density over the shrunken box
        analytic = gamma - math.sin(2.0 * math.pi * gamma) / (2.0 * math.pi)
        cfg = WellConfig()
        density = lambda q: eigen_wavefunction(1, cfg.width, q) ** 2
        by_quadrature = integrate(density, 0.0, gamma * cfg.width, QuadratureSpec(1e-10))
        assert analytic == pytest.approx(by_quadrature, abs=1e-9)
        assert decompose(gamma, 10_000).captured == pytest.approx(analytic, abs=1e-3)

    def test_dimensionless(self):
        # identical output regardless of physical configuration
        a = decompose(QuenchRatio(2.7), 50)
        b = decompose(QuenchRatio(2.7), 50)
        np.testing.assert_array_equal(a.coefficients, b.coefficients)
        assert a.captured == b.captured

    @settings(max_examples=60, deadline=None)
    @given(
        gamma=st.floats(1.0, 12.0),
        n_levels=st.integers(1, 200),
    )
    def test_expand_captured_bounded_by_completeness(self, gamma, n_levels):
        dec = decompose(gamma, n_levels)
        assert np.all(np.isfinite(dec.coefficients))
        assert 0.0 <= dec.captured <= 1.0 + 1e-12

    def test_bad_levels(self):
        with pytest.raises(ValueError):
            decompose(2.0, 0)


class TestQuenchEnergy:
    def test_identity_energy_is_one(self):
        report = quench_energy(1.0, 10)
        assert report.renormalized == 1.0
        assert report.raw == 1.0

    def test_doubling_quench_matches_oracle_sum(self):
        # independent route: accumulate squared quadrature overlaps
        raw = 0.0
        captured = 0.0
        for n in range(1, 11):
            p = overlap_oracle(n, 2.0) ** 2
            captured += p
            raw += p * n * n / 4.0
        report = quench_energy(2.0, 10)
        assert report.renormalized == pytest.approx(raw / captured, abs=1e-8)
        assert report.renormalized == pytest.approx(0.959, abs=1e-3)

    def test_renormalization_invariant(self):
        for g in (0.4, 1.7, 3.3):
            report = quench_energy(g, 10)
            assert report.renormalized == report.raw / report.captured
            assert report.renormalized > 0.0

    @pytest.mark.parametrize("gamma", [1.5, 2.0, 3.0])
    def test_mean_energy_conservation_expand(self, gamma):
        assert quench_energy(gamma, 10_000).raw == pytest.approx(1.0, abs=1e-3)

    def test_shrink_energy_grows_with_truncation(self):
        # gamma < 1: the frozen state has a kink at the new wall, so the
        # untruncated energy diverges; the truncated sum must keep growing
        assert quench_energy(0.5, 1000).raw > quench_energy(0.5, 10).raw

    def test_config_independence(self):
        assert quench_energy(2.7, 10, WellConfig()) == quench_energy(2.7, 10, ALT_CONFIG)


class TestForce:
    def test_shrink_force_repulsive_and_large(self):
        f = matter_wave_force(0.5)
        assert f > 10.0

    @pytest.mark.parametrize("gamma", [0.5, 2.2])
    def test_sign_anticorrelates_with_energy_slope(self, gamma):
        f = matter_wave_force(gamma)
        h = 0.01
        secant = (
            quench_energy(gamma + h).renormalized - quench_energy(gamma - h).renormalized
        ) / (2.0 * h)
        assert math.copysign(1.0, f) == -math.copysign(1.0, secant)

    def test_triple_width_force_negligible(self):
        assert abs(matter_wave_force(3.0, 10)) < 0.05

    def test_one_sided_rule_is_continuous_across_resonance(self):
        values = [matter_wave_force(g) for g in (1.9999, 2.0, 2.0001)]
        assert all(math.isfinite(v) for v in values)
        assert max(values) - min(values) < 1e-3

    def test_step_must_fit_domain(self):
        with pytest.raises(ValueError):
            matter_wave_force(1e-5, step=1e-4)


class TestScans:
    def test_population_scan_shrink_peaks_at_ground(self):
        table = population_scan(0.5, 10)
        assert table.shape == (10, 2)
        assert int(table[np.argmax(table[:, 1]), 0]) == 1

    def test_population_scan_identity_single_row(self):
        table = population_scan(1.0, 10)
        assert np.count_nonzero(table[:, 1]) == 1

    def test_population_scan_matches_oracle_at_large_ratio(self):
        # quadrature confirms the exact peak structure near n ~ gamma
        table = population_scan(4.9, 10)
        for n in (3, 4, 5, 6):
            assert table[n - 1, 1] == pytest.approx(
                overlap_oracle(n, 4.9) ** 2, abs=1e-8
            )

    @pytest.mark.parametrize("gamma", [1.5, 4.9, 10.1])
    def test_population_scan_peak_agrees_with_oracle(self, gamma):
        # the peak level of the closed form is the peak level of the integrals
        table = population_scan(gamma, 20)
        closed_peak = int(table[np.argmax(table[:, 1]), 0])
        oracle_peak = max(
            range(1, 21), key=lambda n: overlap_oracle(n, gamma) ** 2
        )
        assert closed_peak == oracle_peak

    def test_energy_scan_contains_exact_identity_row(self):
        table = energy_scan(0.5, 1.5, 3)
        assert table[1, 0] == 1.0
        assert table[1, 1] == 1.0

    def test_energy_increases_as_width_shrinks(self):
        e = {g: quench_energy(g).renormalized for g in (0.25, 0.5, 1.0)}
        assert e[0.25] > e[0.5] > e[1.0]

    def test_energy_scan_non_monotonic_between_2p5_and_3p5(self):
        table = energy_scan(2.5, 3.5, 41)
        diffs = np.diff(table[:, 1])
        assert np.any(diffs > 0.0) and np.any(diffs < 0.0)

    def test_energy_scan_validation(self):
        with pytest.raises(ValueError):
            energy_scan(2.0, 1.0, 10)
        with pytest.raises(ValueError):
            energy_scan(1.0, 2.0, 1)

    def test_force_scan_shrink_all_repulsive(self):
        profile = force_scan(0.3, 0.7, 9)
        assert np.all(profile.force > 0.0)
        assert np.all(np.diff(profile.gamma) > 0.0)

    def test_force_scan_expand_fluctuates_small(self):
        profile = force_scan(1.5, 5.0, 50)
        assert np.max(np.abs(profile.force)) < 0.01 * matter_wave_force(0.5)

    def test_force_scan_omits_resonant_grid_points(self):
        profile = force_scan(1.9, 2.1, 3)
        assert profile.gamma.tolist() == [1.9, 2.1]
        assert np.all(np.isfinite(profile.force))

    def test_force_rows_anticorrelate_with_energy_secant(self):
        profile = force_scan(2.5, 3.5, 41)
        for i in range(1, len(profile.gamma) - 1):
            secant = (profile.energy[i + 1] - profile.energy[i - 1]) / (
                profile.gamma[i + 1] - profile.gamma[i - 1]
            )
            if abs(secant) > 1e-3:
                assert math.copysign(1.0, profile.force[i]) == -math.copysign(1.0, secant)
