import numpy as np
import pytest
from numpy.testing import assert_allclose

from varconn import (
    DimensionError,
    DomainError,
    FrequencyGrid,
    NumericalError,
    VarModel,
    evaluate_spectra,
    fixture,
    partial_spectrum_via_lemma,
    partialize,
    random_stable_model,
)

GRID = FrequencyGrid.default(64)


class TestFrequencyGrid:
    def test_default_spans_zero_to_pi(self):
        grid = FrequencyGrid.default(128)
        assert grid.n_points == 128
        assert grid.points[0] == 0.0
        assert_allclose(grid.points[-1], np.pi)

    def test_single_point(self):
        assert FrequencyGrid.default(1).points[0] == 0.0

    def test_rejects_decreasing(self):
        with pytest.raises(DomainError):
            FrequencyGrid([0.0, 2.0, 1.0, np.pi])

    def test_rejects_out_of_range(self):
        with pytest.raises(DomainError):
            FrequencyGrid([0.0, 4.0])

    def test_rejects_missing_endpoints(self):
        with pytest.raises(DomainError):
            FrequencyGrid([0.1, np.pi])
        with pytest.raises(DomainError):
            FrequencyGrid([0.0, 3.0])

    def test_rejects_empty(self):
        with pytest.raises(DimensionError):
            FrequencyGrid([])


class TestEvaluateSpectra:
    def test_two_channel_closed_forms(self):
        alpha = 0.5
        fx = fixture("two_var_alpha", alpha=alpha)
        spectra = evaluate_spectra(fx.model, GRID)
        w = GRID.points
        phase = np.exp(-1j * w)
        assert_allclose(spectra.a_bar[:, 0, 0], 1.0, atol=1e-14)
        assert_allclose(spectra.a_bar[:, 1, 0], -alpha * phase, atol=1e-14)
        assert_allclose(spectra.a_bar[:, 0, 1], 0.0, atol=1e-14)
        assert_allclose(spectra.h_bar[:, 1, 0], alpha * phase, atol=1e-14)
        assert_allclose(spectra.s[:, 0, 0], 1.0, atol=1e-14)
        assert_allclose(spectra.s[:, 1, 1], 1.0 + alpha**2, atol=1e-14)
        assert_allclose(spectra.s[:, 1, 0], alpha * phase, atol=1e-14)
        assert_allclose(spectra.s[:, 0, 1], alpha * np.conj(phase), atol=1e-14)

    def test_order_zero_spectrum_is_sigma(self):
        sigma = np.array([[2.0, 0.3], [0.3, 1.0]])
        spectra = evaluate_spectra(VarModel.white_noise(sigma), GRID)
        assert_allclose(spectra.a_bar, np.broadcast_to(np.eye(2), spectra.a_bar.shape), atol=1e-15)
        assert_allclose(spectra.s, np.broadcast_to(sigma, spectra.s.shape), atol=1e-14)

    def test_inverse_reconstructions(self):
        rng = np.random.default_rng(10)
        eye = None
        for k in (2, 3, 5):
            model = random_stable_model(rng, k)
            spectra = evaluate_spectra(model, GRID)
            eye = np.eye(k)
            assert float(np.max(np.abs(spectra.a_bar @ spectra.h_bar - eye))) < 1e-12
            assert float(np.max(np.abs(spectra.s @ spectra.s_inv - eye))) < 1e-10

    def test_spectrum_is_hermitian_with_positive_diagonal(self):
        model = random_stable_model(np.random.default_rng(11), 4)
        spectra = evaluate_spectra(model, GRID)
        assert_allclose(spectra.s, spectra.s.conj().transpose(0, 2, 1), atol=1e-12)
        diagonal = np.einsum("fii->fi", spectra.s)
        assert np.all(diagonal.real > 0)
        assert float(np.max(np.abs(diagonal.imag))) < 1e-14

    def test_unstable_model_refused(self):
        model = VarModel([[[1.1, 0.0], [0.0, 0.5]]], np.eye(2))
        with pytest.raises(NumericalError, match="stable"):
            evaluate_spectra(model, GRID)

    def test_near_singular_a_bar_refused(self):
        # stable double root at 1 - 2e-8 drives cond(A_bar(0)) past the limit
        r = 1.0 - 2e-8
        coeffs = np.zeros((2, 2, 2))
        coeffs[0, 0, 0] = 2 * r
        coeffs[1, 0, 0] = -r * r
        model = VarModel(coeffs, np.eye(2))
        with pytest.raises(NumericalError, match="singular"):
            evaluate_spectra(model, GRID)


class TestPartialize:
    def test_two_channel_closed_forms(self):
        alpha = 0.5
        fx = fixture("two_var_alpha", alpha=alpha)
        spectra = evaluate_spectra(fx.model, GRID)
        partial = partialize(spectra, fx.model)
        w = GRID.points
        assert_allclose(partial.partial_spectra[:, 0], 1.0 / (1.0 + alpha**2), atol=1e-14)
        assert_allclose(partial.partial_spectra[:, 1], 1.0, atol=1e-14)
        # deduction filter for channel 0 against channel 1
        assert_allclose(
            partial.wiener_filters[:, 0, 0], alpha * np.exp(1j * w) / (1.0 + alpha**2), atol=1e-14
        )
        assert_allclose(partial.rho, [1.0, 1.0], atol=1e-15)

    def test_partial_power_never_exceeds_autospectrum(self):
        rng = np.random.default_rng(12)
        for k in (2, 4):
            model = random_stable_model(rng, k)
            spectra = evaluate_spectra(model, GRID)
            partial = partialize(spectra, model)
            auto = np.einsum("fii->fi", spectra.s).real
            assert np.all(partial.partial_spectra > 0)
            assert np.all(partial.partial_spectra <= auto + 1e-12)

    def test_rho_matches_diagonal_sigma(self):
        model = random_stable_model(np.random.default_rng(13), 3, sigma_kind="diagonal")
        spectra = evaluate_spectra(model, GRID)
        partial = partialize(spectra, model)
        assert_allclose(partial.rho, np.diag(model.sigma), atol=1e-14)

    def test_rho_never_exceeds_sigma_diagonal(self):
        model = random_stable_model(np.random.default_rng(14), 4)
        partial = partialize(evaluate_spectra(model, GRID), model)
        assert np.all(partial.rho > 0)
        assert np.all(partial.rho <= np.diag(model.sigma) + 1e-12)

    def test_single_channel_partialization_is_identity(self):
        model = VarModel(np.array([[[0.5]]]), np.eye(1))
        spectra = evaluate_spectra(model, GRID)
        partial = partialize(spectra, model)
        assert_allclose(partial.partial_spectra[:, 0], spectra.s[:, 0, 0].real, atol=1e-14)
        assert partial.rho[0] == 1.0


class TestPartialSpectrumViaLemma:
    def test_two_channel_closed_form(self):
        alpha = 0.5
        fx = fixture("two_var_alpha", alpha=alpha)
        spectra = evaluate_spectra(fx.model, GRID)
        assert_allclose(
            partial_spectrum_via_lemma(spectra, fx.model, 0), 1.0 / (1.0 + alpha**2), atol=1e-14
        )
        assert_allclose(partial_spectrum_via_lemma(spectra, fx.model, 1), 1.0, atol=1e-14)

    def test_agrees_with_block_elimination(self):
        rng = np.random.default_rng(15)
        for k in (2, 3, 5):
            model = random_stable_model(rng, k)
            spectra = evaluate_spectra(model, GRID)
            partial = partialize(spectra, model)
            for j in range(k):
                lemma = partial_spectrum_via_lemma(spectra, model, j)
                assert float(np.max(np.abs(lemma - partial.partial_spectra[:, j]))) < 1e-10

    def test_index_out_of_range(self):
        fx = fixture("two_var_alpha", alpha=0.5)
        spectra = evaluate_spectra(fx.model, GRID)
        with pytest.raises(DimensionError):
            partial_spectrum_via_lemma(spectra, fx.model, 2)
