"""
Orthonormal filter banks, decimated wavelet transforms and multiresolution analysis.

Single-level filtering and decimation are delegated to PyWavelets; this module owns the
cascade, the one-sample extension of odd-length levels and the per-subband
reconstruction that yields the additive decomposition X = S_J + D_J + ... + D_1.
"""

from functools import lru_cache

import numpy as np
import pywt

from wavelet_regression.constants import SUPPORTED_WAVELETS
from wavelet_regression.data_types import (
    BoundaryMode,
    FilterBank,
    MRADecomposition,
    WaveletCoefficients,
    WaveletName,
)
from wavelet_regression.exceptions import (
    BankMismatch,
    EmptySignal,
    InvalidLevel,
    LevelTooDeep,
    UnknownWavelet,
)


@lru_cache
def filter_bank(name: str | WaveletName) -> FilterBank:
    """Build and verify the orthonormal filter bank of a supported wavelet."""

    key = name.value if isinstance(name, WaveletName) else str(name).lower()
    if key not in SUPPORTED_WAVELETS:
        raise UnknownWavelet(str(name), SUPPORTED_WAVELETS)

    reference = pywt.Wavelet(key)
    # PyWavelets stores reconstruction filters in correlation order
    h = np.asarray(reference.rec_lo, dtype=np.float64)
    g = (-1.0) ** np.arange(len(h)) * h[::-1]
    return FilterBank(
        name=WaveletName(key),
        dec_lo=h,
        dec_hi=g,
        rec_lo=h[::-1],
        rec_hi=g[::-1],
        vanishing_moments=reference.vanishing_moments_psi,
    )


def _kernel(fb: FilterBank) -> pywt.Wavelet:
    # pywt convolves; its analysis filters are our time-reversed ones
    bank = [fb.rec_lo.tolist(), fb.rec_hi.tolist(), fb.dec_lo.tolist(), fb.dec_hi.tolist()]
    return pywt.Wavelet(fb.name.value, filter_bank=bank)


def max_level(n: int, filter_length: int) -> tuple[int, int]:
    """
    Return (j_max, j_clean) for a signal of `n` samples.

    j_max = floor(log2 n) is the hard cap; j_clean = floor(log2(n / (L - 1))), floored at 0,
    is the deepest level whose coefficients are not dominated by the boundary.
    """

    if n < 2 or filter_length < 2:
        raise ValueError(f"max_level needs n >= 2 and L >= 2, got n={n}, L={filter_length}")
    j_max = n.bit_length() - 1
    j_clean = 0
    while (filter_length - 1) << (j_clean + 1) <= n:
        j_clean += 1
    return j_max, j_clean


def _check_level(n: int, fb: FilterBank, levels: int) -> None:
    if n == 0:
        raise EmptySignal("Cannot transform an empty signal")
    if levels < 1:
        raise InvalidLevel(f"Decomposition level must be at least 1, got {levels}")
    if n < 2:
        raise LevelTooDeep(levels, 0)
    j_max, _ = max_level(n, fb.length)
    if levels > j_max:
        raise LevelTooDeep(levels, j_max)


def _extend(x: np.ndarray, boundary: BoundaryMode) -> np.ndarray:
    """Extend an odd-length level by one sample following the boundary rule."""
    extra = x[:1] if boundary is BoundaryMode.PERIODIC else x[-1:]
    return np.concatenate([x, extra])


def dwt_forward(
    signal,
    fb: FilterBank,
    levels: int,
    boundary: BoundaryMode = BoundaryMode.PERIODIC,
) -> WaveletCoefficients:
    """Cascade of filter-and-downsample steps down to level `levels`."""

    x = np.array(signal, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"Expected a 1-d signal, got shape {x.shape}")
    _check_level(len(x), fb, levels)
    if not np.all(np.isfinite(x)):
        raise ValueError("Signal contains non-finite values")

    boundary = BoundaryMode(boundary)
    kernel = _kernel(fb)
    approx = x
    details, lengths, padded = [], [], []
    for _ in range(levels):
        lengths.append(len(approx))
        padded.append(bool(len(approx) % 2))
        if padded[-1]:
            approx = _extend(approx, boundary)
        approx, detail = pywt.dwt(approx, kernel, mode=boundary.pywt_mode)
        details.append(detail)

    return WaveletCoefficients(
        levels=levels,
        approx=approx,
        details=tuple(reversed(details)),
        original_length=len(x),
        boundary=boundary,
        wavelet=fb.name,
        filter_length=fb.length,
        level_lengths=tuple(lengths),
        padded=tuple(padded),
    )


def dwt_inverse(coeffs: WaveletCoefficients, fb: FilterBank) -> np.ndarray:
    """Upsample-and-filter cascade undoing `dwt_forward`, truncating recorded padding."""

    if coeffs.filter_length != fb.length or coeffs.wavelet is not fb.name:
        raise BankMismatch(
            f"Coefficients were produced by {coeffs.wavelet.value} (L={coeffs.filter_length}), "
            f"not {fb.name.value} (L={fb.length})"
        )

    kernel = _kernel(fb)
    approx = coeffs.approx
    for j in range(coeffs.levels, 0, -1):
        length = coeffs.level_lengths[j - 1]
        expected = length + coeffs.padded[j - 1]
        approx = pywt.idwt(np.array(approx), np.array(coeffs.detail(j)), kernel, mode=coeffs.boundary.pywt_mode)
        if len(approx) != expected:
            raise BankMismatch(f"Level {j} reconstructs {len(approx)} samples, bookkeeping expects {expected}")
        approx = approx[:length]
    return approx


def _subband(coeffs: WaveletCoefficients, fb: FilterBank, keep: int | None) -> np.ndarray:
    """Invert with every band zeroed except detail level `keep` (or the approximation when None)."""

    approx = coeffs.approx if keep is None else np.zeros_like(coeffs.approx)
    details = tuple(
        d if keep == j else np.zeros_like(d)
        for j, d in zip(range(coeffs.levels, 0, -1), coeffs.details)
    )
    return dwt_inverse(coeffs.model_copy(update={"approx": approx, "details": details}), fb)


def mra(
    signal,
    fb: FilterBank,
    levels: int,
    boundary: BoundaryMode = BoundaryMode.PERIODIC,
    name: str = "",
) -> MRADecomposition:
    """
    Multiresolution analysis of `signal`.

    D_j inverts the coefficients with only d_j kept, S_J with only s_J kept, and
    S_j = S_J + D_J + ... + D_{j+1}; linearity of the inverse makes X = S_J + sum D_j exact.
    """

    coeffs = dwt_forward(signal, fb, levels, boundary)
    details = [_subband(coeffs, fb, keep=j) for j in range(1, levels + 1)]
    smooth = _subband(coeffs, fb, keep=None)

    approximations = [smooth]
    for j in range(levels - 1, 0, -1):
        approximations.append(approximations[-1] + details[j])
    approximations.reverse()

    return MRADecomposition(
        signal=np.asarray(signal, dtype=np.float64),
        approximations=tuple(approximations),
        details=tuple(details),
        levels=levels,
        source_name=name,
        wavelet=fb.name,
        boundary=coeffs.boundary,
    )
