"""Frequency-domain connectivity measures.

All measures are returned as complex arrays shaped (n_points, K, K); taking
the squared magnitude is left to the caller. Entry (i, j) quantifies the
directed influence of source channel j on target channel i, except for
coherence which is symmetric in magnitude.

Two families are covered. The partial directed coherence family reads
column j of the AR polynomial A_bar: classical PDC normalizes by the
column's Euclidean norm, gPDC weights rows by the innovation standard
deviations, and information PDC (iPDC) scales so that entry (i, j) is the
coherence between target innovation i and the partialized process of
channel j, which makes its squared magnitude integrable into a mutual
information rate. The transfer-function family reads row i of
H_bar = A_bar^-1: DTF normalizes by the row norm, directed coherence (DC)
weights by innovation standard deviations, and information DTF (iDTF)
scales so that entry (i, j) is the coherence between signal i and the
partialized innovation of channel j. With identity innovation covariance
each family collapses to its classical member.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._util import as_readonly
from .errors import DimensionError, DomainError, NumericalError
from .spectral import FrequencyGrid, PartializationSet, SpectralSet, evaluate_spectra, partialize
from .var_model import VarModel


class MeasureKind(str, Enum):
    """Identifier for each supported measure (values double as CLI names)."""

    COHERENCE = "coh"
    PDC = "pdc"
    GPDC = "gpdc"
    IPDC = "ipdc"
    DTF = "dtf"
    DC = "dc"
    IDTF = "idtf"


@dataclass(frozen=True, eq=False)
class MeasureResult:
    """Complex values of one measure on a frequency grid."""

    kind: MeasureKind
    grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", as_readonly(self.values, dtype=complex))

    @property
    def K(self) -> int:
        return self.values.shape[-1]


def _autospectra(spectra: SpectralSet) -> np.ndarray:
    auto = np.einsum("fii->fi", spectra.s).real
    if np.any(auto <= 0):
        raise NumericalError("zero autospectrum: normalization undefined")
    return auto


def coherence(spectra: SpectralSet) -> MeasureResult:
    """Ordinary coherence C_ij = S_ij / sqrt(S_ii S_jj)."""
    auto = _autospectra(spectra)
    denominator = np.sqrt(auto[:, :, None] * auto[:, None, :])
    return MeasureResult(MeasureKind.COHERENCE, spectra.grid, spectra.s / denominator)


def ipdc(spectra: SpectralSet, model: VarModel) -> MeasureResult:
    """Information PDC.

    Entry (i, j) is A_bar_ij / (sigma_ii^1/2 sqrt(a_j^H sigma^-1 a_j)) with
    a_j the j-th column of A_bar. It equals the coherence between the
    innovation of target i and the partialized process of source j, so its
    squared magnitude never exceeds 1 and integrates to a mutual
    information rate.
    """
    _check_channels(spectra, model)
    sigma_inv = np.linalg.inv(model.sigma)
    quad = np.einsum("fij,il,flj->fj", spectra.a_bar.conj(), sigma_inv, spectra.a_bar).real
    if np.any(quad <= 0):
        raise NumericalError("non-positive column quadratic form: iPDC undefined")
    row_weight = 1.0 / np.sqrt(np.diag(model.sigma))
    values = spectra.a_bar * row_weight[None, :, None] / np.sqrt(quad)[:, None, :]
    return MeasureResult(MeasureKind.IPDC, spectra.grid, values)


def pdc_family(spectra: SpectralSet, model: VarModel, kind: MeasureKind = MeasureKind.PDC) -> MeasureResult:
    """Classical PDC or its generalized (gPDC) variant.

    Both normalize column j of A_bar so the squared magnitudes over targets
    sum to 1; gPDC first weights rows by 1 / sigma_ii^1/2, which makes it
    invariant under channel rescaling.
    """
    kind = MeasureKind(kind)
    _check_channels(spectra, model)
    a_bar = spectra.a_bar
    if kind is MeasureKind.PDC:
        quad = np.sum(np.abs(a_bar) ** 2, axis=1)
        values = a_bar / np.sqrt(quad)[:, None, :]
    elif kind is MeasureKind.GPDC:
        variances = np.diag(model.sigma)
        quad = np.einsum("k,fkj->fj", 1.0 / variances, np.abs(a_bar) ** 2)
        values = a_bar / np.sqrt(variances)[None, :, None] / np.sqrt(quad)[:, None, :]
    else:
        raise DomainError(f"pdc_family computes PDC or GPDC, not {kind.value!r}")
    return MeasureResult(kind, spectra.grid, values)


def idtf(spectra: SpectralSet, partial: PartializationSet) -> MeasureResult:
    """Information DTF.

    Entry (i, j) is H_bar_ij rho_j^1/2 / sqrt(h_i sigma h_i^H) with h_i the
    i-th row of H_bar, whose quadratic form is exactly the autospectrum
    S_ii. It equals the coherence between signal i and the partialized
    innovation of source j (the innovation with its projection onto the
    other same-time innovations removed).
    """
    if spectra.K != partial.K:
        raise DimensionError(f"spectra have {spectra.K} channels but partialization has {partial.K}")
    h_bar = spectra.h_bar
    quad = np.einsum("fik,kl,fil->fi", h_bar.conj(), partial.sigma, h_bar).real
    if np.any(quad <= 0):
        raise NumericalError("non-positive row quadratic form: iDTF undefined")
    values = h_bar * np.sqrt(partial.rho)[None, None, :] / np.sqrt(quad)[:, :, None]
    return MeasureResult(MeasureKind.IDTF, spectra.grid, values)


def dtf_family(spectra: SpectralSet, model: VarModel, kind: MeasureKind = MeasureKind.DTF) -> MeasureResult:
    """Classical DTF or directed coherence (DC).

    Both normalize row i of H_bar so the squared magnitudes over sources
    sum to 1; DC first weights columns by sigma_jj^1/2.
    """
    kind = MeasureKind(kind)
    _check_channels(spectra, model)
    h_bar = spectra.h_bar
    if kind is MeasureKind.DTF:
        quad = np.sum(np.abs(h_bar) ** 2, axis=2)
        values = h_bar / np.sqrt(quad)[:, :, None]
    elif kind is MeasureKind.DC:
        variances = np.diag(model.sigma)
        quad = np.einsum("k,fik->fi", variances, np.abs(h_bar) ** 2)
        values = h_bar * np.sqrt(variances)[None, None, :] / np.sqrt(quad)[:, :, None]
    else:
        raise DomainError(f"dtf_family computes DTF or DC, not {kind.value!r}")
    return MeasureResult(kind, spectra.grid, values)


def all_measures(model: VarModel, grid: FrequencyGrid) -> dict[MeasureKind, MeasureResult]:
    """Evaluate every measure from a single spectral evaluation."""
    spectra = evaluate_spectra(model, grid)
    partial = partialize(spectra, model)
    return {
        MeasureKind.COHERENCE: coherence(spectra),
        MeasureKind.PDC: pdc_family(spectra, model, MeasureKind.PDC),
        MeasureKind.GPDC: pdc_family(spectra, model, MeasureKind.GPDC),
        MeasureKind.IPDC: ipdc(spectra, model),
        MeasureKind.DTF: dtf_family(spectra, model, MeasureKind.DTF),
        MeasureKind.DC: dtf_family(spectra, model, MeasureKind.DC),
        MeasureKind.IDTF: idtf(spectra, partial),
    }


def _check_channels(spectra: SpectralSet, model: VarModel) -> None:
    if spectra.K != model.K:
        raise DimensionError(f"spectra have {spectra.K} channels but model has {model.K}")
