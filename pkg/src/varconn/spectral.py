"""Frequency-domain objects of a stable VAR model.

For a grid of normalized angular frequencies omega in [0, pi] this module
evaluates the AR polynomial A_bar(omega) = I - sum_l A(l) exp(-j omega l),
the transfer matrix H_bar = A_bar^-1, the spectral density
S = H_bar sigma H_bar^H and its inverse assembled directly as
A_bar^H sigma^-1 A_bar. It also partializes each channel: the partial
spectrum that remains after the optimal two-sided deduction of all other
channels, the Wiener filter performing that deduction, and the variance of
each innovation after removing its projection onto the other same-time
innovations.
"""

from dataclasses import dataclass

import numpy as np

from ._util import as_readonly
from .errors import DimensionError, DomainError, NumericalError
from .var_model import VarModel, validate

#: Default number of grid points over [0, pi].
DEFAULT_N_POINTS = 512

#: Condition-number limit above which A_bar counts as numerically singular.
CONDITION_LIMIT = 1e12


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Strictly increasing frequencies in [0, pi], endpoints included.

    Frequencies are in radians per sample; pi is the Nyquist frequency.
    Spectra of real-valued processes are conjugate-symmetric, so the
    half-open circle carries all the information.
    """

    points: np.ndarray

    def __post_init__(self):
        points = np.asarray(self.points, dtype=float)
        if points.ndim != 1 or points.size < 1:
            raise DimensionError("grid must be a 1-d array with at least one point")
        if not np.all(np.isfinite(points)):
            raise DomainError("grid points must be finite")
        if np.any(np.diff(points) <= 0):
            raise DomainError("grid points must be strictly increasing")
        if points[0] < 0.0 or points[-1] > np.pi + 1e-12:
            raise DomainError("grid points must lie in [0, pi]")
        if points.size >= 2 and (points[0] != 0.0 or abs(points[-1] - np.pi) > 1e-12):
            raise DomainError("grids with two or more points must include both endpoints 0 and pi")
        object.__setattr__(self, "points", as_readonly(points))

    @property
    def n_points(self) -> int:
        return self.points.size

    @classmethod
    def default(cls, n_points: int = DEFAULT_N_POINTS) -> "FrequencyGrid":
        """Uniform grid of n_points over [0, pi] inclusive."""
        if n_points < 1:
            raise DomainError(f"n_points must be >= 1, got {n_points}")
        if n_points == 1:
            return cls(np.zeros(1))
        return cls(np.linspace(0.0, np.pi, n_points))


@dataclass(frozen=True, eq=False)
class SpectralSet:
    """Per-frequency matrices of a stable model, all shaped (n_points, K, K).

    Attributes
    ----------
    a_bar : ndarray
        AR polynomial I - sum_l A(l) exp(-j omega l).
    h_bar : ndarray
        Transfer matrix, the inverse of a_bar.
    s : ndarray
        Spectral density h_bar sigma h_bar^H (Hermitian, positive definite).
    s_inv : ndarray
        Inverse spectral density a_bar^H sigma^-1 a_bar.
    """

    grid: FrequencyGrid
    a_bar: np.ndarray
    h_bar: np.ndarray
    s: np.ndarray
    s_inv: np.ndarray

    def __post_init__(self):
        for name in ("a_bar", "h_bar", "s", "s_inv"):
            object.__setattr__(self, name, as_readonly(getattr(self, name), dtype=complex))

    @property
    def K(self) -> int:
        return self.a_bar.shape[-1]


@dataclass(frozen=True, eq=False)
class PartializationSet:
    """Per-channel partialization of a spectral set.

    Attributes
    ----------
    partial_spectra : ndarray, shape (n_points, K)
        Column k holds the spectrum of channel k after the optimal
        two-sided deduction of every other channel. Always real, positive,
        and no larger than the corresponding autospectrum.
    wiener_filters : ndarray, shape (n_points, K, K - 1)
        Row k holds the frequency response of the deduction filter for
        channel k against the other channels in ascending index order.
    rho : ndarray, shape (K,)
        Variance of each innovation after removing its projection onto the
        other same-time innovations. Equals diag(sigma) when sigma is
        diagonal.
    sigma : ndarray, shape (K, K)
        Innovation covariance the projections were built from.
    sigma_cross : ndarray, shape (K, K - 1)
        Row k is sigma[k, others].
    sigma_complement : ndarray, shape (K, K - 1, K - 1)
        Entry k is sigma[others, others].
    """

    grid: FrequencyGrid
    partial_spectra: np.ndarray
    wiener_filters: np.ndarray
    rho: np.ndarray
    sigma: np.ndarray
    sigma_cross: np.ndarray
    sigma_complement: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "partial_spectra", as_readonly(self.partial_spectra))
        object.__setattr__(self, "wiener_filters", as_readonly(self.wiener_filters, dtype=complex))
        for name in ("rho", "sigma", "sigma_cross", "sigma_complement"):
            object.__setattr__(self, name, as_readonly(getattr(self, name)))

    @property
    def K(self) -> int:
        return self.partial_spectra.shape[-1]


def evaluate_spectra(model: VarModel, grid: FrequencyGrid) -> SpectralSet:
    """Evaluate A_bar, H_bar, S and S^-1 on a grid.

    H_bar is obtained by inverting A_bar at each frequency, never by
    truncating a moving-average expansion, so it is exact for any stable
    model. S^-1 is assembled from sigma^-1 and A_bar rather than by
    inverting S.

    Raises
    ------
    NumericalError
        If the model is unstable, sigma is not positive definite, or
        A_bar is numerically singular at some grid frequency.
    """
    report = validate(model)
    if not report.stable:
        raise NumericalError(
            f"spectra require a stable model (spectral radius {report.spectral_radius:.6g})"
        )
    if not report.sigma_ok:
        raise NumericalError("innovation covariance is not positive definite")
    k, p = model.K, model.p
    omega = grid.points
    a_bar = np.repeat(np.eye(k, dtype=complex)[None, :, :], omega.size, axis=0)
    if p > 0:
        phases = np.exp(-1j * np.outer(omega, np.arange(1, p + 1)))
        a_bar -= np.einsum("fl,lij->fij", phases, model.coeffs)
    condition = np.linalg.cond(a_bar)
    worst = int(np.argmax(condition))
    if condition[worst] > CONDITION_LIMIT:
        raise NumericalError(
            f"A_bar is numerically singular at omega = {omega[worst]:.6g} "
            f"(condition number {condition[worst]:.3e} exceeds {CONDITION_LIMIT:.0e})"
        )
    h_bar = np.linalg.inv(a_bar)
    sigma_inv = np.linalg.inv(model.sigma)
    s = np.einsum("fik,kl,fjl->fij", h_bar, model.sigma, h_bar.conj())
    s_inv = np.einsum("fki,kl,flj->fij", a_bar.conj(), sigma_inv, a_bar)
    return SpectralSet(grid=grid, a_bar=a_bar, h_bar=h_bar, s=s, s_inv=s_inv)


def partialize(spectra: SpectralSet, model: VarModel) -> PartializationSet:
    """Partialize every channel of a spectral set.

    For channel k the partial spectrum is the Schur complement
    S_kk - S_k,others S_others^-1 S_others,k, the power left after the
    optimal linear deduction of the other channels; the deduction filter is
    the corresponding Wiener solution. rho applies the same construction to
    the innovation covariance.
    """
    s = spectra.s
    n_channels = spectra.K
    if model.K != n_channels:
        raise DimensionError(f"model has {model.K} channels but spectra have {n_channels}")
    n_points = spectra.grid.n_points
    sigma = model.sigma
    partial = np.empty((n_points, n_channels))
    wiener = np.zeros((n_points, n_channels, n_channels - 1), dtype=complex)
    rho = np.empty(n_channels)
    sigma_cross = np.empty((n_channels, n_channels - 1))
    sigma_complement = np.empty((n_channels, n_channels - 1, n_channels - 1))
    for k in range(n_channels):
        auto = s[:, k, k].real
        if n_channels == 1:
            partial[:, 0] = auto
            rho[0] = sigma[0, 0]
            continue
        others = [i for i in range(n_channels) if i != k]
        block = s[:, others, :][:, :, others]
        try:
            solved = np.linalg.solve(block, s[:, others, k][:, :, None])[:, :, 0]
        except np.linalg.LinAlgError:
            worst = int(np.argmax(np.linalg.cond(block)))
            raise NumericalError(
                f"partialization failed for channel {k}: spectral block is singular "
                f"near omega = {spectra.grid.points[worst]:.6g}"
            ) from None
        partial[:, k] = auto - np.einsum("fm,fm->f", s[:, k, others], solved).real
        wiener[:, k, :] = solved.conj()
        sigma_block = sigma[np.ix_(others, others)]
        rho[k] = sigma[k, k] - sigma[k, others] @ np.linalg.solve(sigma_block, sigma[others, k])
        sigma_cross[k] = sigma[k, others]
        sigma_complement[k] = sigma_block
    return PartializationSet(
        grid=spectra.grid,
        partial_spectra=partial,
        wiener_filters=wiener,
        rho=rho,
        sigma=sigma,
        sigma_cross=sigma_cross,
        sigma_complement=sigma_complement,
    )


def partial_spectrum_via_lemma(spectra: SpectralSet, model: VarModel, j: int) -> np.ndarray:
    """Partial spectrum of channel j by an algebraically independent route.

    Returns 1 / (a_j^H sigma^-1 a_j) where a_j is column j of A_bar. The
    partitioned-inverse identity makes this equal to the Schur-complement
    construction in :func:`partialize`; computing both and comparing is a
    strong end-to-end check of the spectral arithmetic.
    """
    if not 0 <= j < spectra.K:
        raise DimensionError(f"channel index {j} out of range for K = {spectra.K}")
    column = spectra.a_bar[:, :, j]
    sigma_inv = np.linalg.inv(model.sigma)
    quad = np.einsum("fi,il,fl->f", column.conj(), sigma_inv, column).real
    if np.any(quad <= 0):
        raise NumericalError(f"non-positive quadratic form for channel {j}")
    return 1.0 / quad
