"""Normalized DFT frames and frequency-smoothed PSD estimation.

The estimation pipeline is: center the series, transform with the
normalized DFT, lay an odd-width window grid over the positive
frequencies (indices ``1 .. n/2 - 1``; the purely real endpoints at
``m = 0`` and ``m = n/2`` are always excluded), and average the
periodogram over each window.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataFormatError, InvalidConfigurationError
from .hermitian import symmetrize


def _as_series(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, np.newaxis]
    if x.ndim != 2:
        raise DataFormatError(f"expected a 2-D time series array, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise DataFormatError("time series contains non-finite values")
    return x


@dataclass(frozen=True)
class DftFrames:
    """Normalized DFT ``d(f_m) = n^{-1/2} sum_t x(t) e^{-j2pi(m/n)t}``.

    ``frames[m]`` is the complex p-vector at frequency ``m/n``.  For real
    input the frames satisfy ``frames[m] == conj(frames[n-m])`` and the
    transform preserves energy (unitary normalization).
    """

    n: int
    p: int
    frames: np.ndarray


@dataclass(frozen=True)
class FrequencyGrid:
    """Tiling of DFT indices ``1 .. num_freqs*width`` into odd-width windows.

    Window ``k`` (1-based) is centered at index ``(k-1)*width + half_width + 1``
    and spans ``width = 2*half_width + 1`` consecutive indices, so the
    windows tile the low half-spectrum without overlap.
    """

    n: int
    width: int
    half_width: int
    num_freqs: int
    centers: np.ndarray

    @property
    def freqs(self) -> np.ndarray:
        """Window-center frequencies (cycles per sample)."""
        return self.centers / self.n

    def window(self, k: int) -> np.ndarray:
        """DFT indices of window ``k`` (1-based)."""
        c = self.centers[k - 1]
        return np.arange(c - self.half_width, c + self.half_width + 1)


@dataclass(frozen=True)
class SmoothedPsdSet:
    """Per-window PSD estimates ``psd[k]`` (Hermitian PSD, ``p x p``)."""

    grid: FrequencyGrid
    psd: np.ndarray

    @property
    def num_freqs(self) -> int:
        return self.psd.shape[0]

    @property
    def dim(self) -> int:
        return self.psd.shape[-1]


def dft(x) -> DftFrames:
    """Normalized DFT of a real time series (rows are time points).

    An odd number of rows is handled by dropping the last sample, per the
    even-length convention of the half-spectrum statistic.
    """
    x = _as_series(x)
    if x.shape[0] % 2 == 1:
        x = x[:-1]
    n = x.shape[0]
    if n < 2:
        raise DataFormatError(f"need at least 2 samples, got {n}")
    frames = np.fft.fft(x, axis=0) / np.sqrt(n)
    return DftFrames(n=n, p=x.shape[1], frames=frames)


def dft_direct(x) -> DftFrames:
    """O(n^2) reference implementation of :func:`dft` by direct summation."""
    x = _as_series(x)
    if x.shape[0] % 2 == 1:
        x = x[:-1]
    n = x.shape[0]
    if n < 2:
        raise DataFormatError(f"need at least 2 samples, got {n}")
    t = np.arange(n)
    kernel = np.exp(-2j * np.pi * np.outer(t, t) / n) / np.sqrt(n)
    return DftFrames(n=n, p=x.shape[1], frames=kernel @ x)


def make_grid(n: int, width: int) -> FrequencyGrid:
    """Build the non-overlapping window grid for an even series length.

    ``num_freqs`` is the largest count whose windows fit inside the index
    range ``1 .. n/2 - 1``, i.e. ``floor((n/2 - 1)/width)``.
    """
    if n < 4 or n % 2 == 1:
        raise InvalidConfigurationError(f"series length must be even and >= 4, got {n}")
    if width < 1 or width % 2 == 0:
        raise InvalidConfigurationError(f"window width must be odd and positive, got {width}")
    half = (width - 1) // 2
    num = (n // 2 - 1) // width
    if num < 1:
        raise InvalidConfigurationError(
            f"window width {width} does not fit in the half-spectrum of length {n // 2 - 1}"
        )
    centers = (np.arange(1, num + 1) - 1) * width + half + 1
    return FrequencyGrid(n=n, width=width, half_width=half, num_freqs=num, centers=centers)


def resolve_width(n: int, num_freqs: int) -> int:
    """Largest odd window width whose grid has exactly ``num_freqs`` windows."""
    if num_freqs < 1:
        raise InvalidConfigurationError(f"need a positive window count, got {num_freqs}")
    if n < 4 or n % 2 == 1:
        raise InvalidConfigurationError(f"series length must be even and >= 4, got {n}")
    half_span = n // 2 - 1
    width = half_span // num_freqs
    if width % 2 == 0:
        width -= 1
    if width < 1 or half_span // width != num_freqs:
        raise InvalidConfigurationError(
            f"no odd window width yields {num_freqs} windows for series length {n}"
        )
    return width


def smoothed_psd(frames: DftFrames, grid: FrequencyGrid) -> SmoothedPsdSet:
    """Average the periodogram ``d d^H`` over each grid window."""
    if grid.n != frames.n:
        raise InvalidConfigurationError(
            f"grid built for length {grid.n} but frames have length {frames.n}"
        )
    p = frames.p
    psd = np.empty((grid.num_freqs, p, p), dtype=complex)
    for k in range(1, grid.num_freqs + 1):
        block = frames.frames[grid.window(k)]
        psd[k - 1] = symmetrize(block.T @ np.conj(block) / grid.width)
    return SmoothedPsdSet(grid=grid, psd=psd)


def smoothed_psd_from_series(x, width: int) -> SmoothedPsdSet:
    """Full pipeline: center, transform, and smooth a raw time series."""
    x = _as_series(x)
    if x.shape[1] < 2:
        raise DataFormatError(f"need at least 2 series components, got {x.shape[1]}")
    x = x - x.mean(axis=0, keepdims=True)
    frames = dft(x)
    grid = make_grid(frames.n, width)
    return smoothed_psd(frames, grid)
