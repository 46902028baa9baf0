"""Seeded Monte Carlo campaigns over channel realizations.

Trials are processed in fixed-size batches; batch b draws its random stream
from SeedSequence([seed, b, purpose]), so results are bit-identical for any
worker count and any batch execution order.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.signal import find_peaks

from .channel import ProfileSpec, sample_profile_arrays
from .pulse import ISI_TRUNCATION_FLOOR, PulseShape

BATCH_SIZE = 4096

# Kernel width (bins) of the histogram smoothing used by the dip detector.
DIP_SMOOTHING_BINS = 3
# Peaks below this prominence (relative to the tallest bin) are noise.
DIP_PEAK_PROMINENCE = 0.02

# Relative-power threshold below which a realization counts as a deep fade.
DEEP_FADE_EPSILON = 0.01


@dataclass(frozen=True)
class CampaignSpec:
    """Monte Carlo campaign over random NLoS profiles."""

    profile_spec: ProfileSpec
    pulse: PulseShape
    trials: int
    seed: int
    histogram_bins: int = 64
    normalize_g: bool = True
    epsilon: float = DEEP_FADE_EPSILON
    grid_oversampling: int = 128

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.histogram_bins < 8:
            raise ValueError(f"histogram_bins must be >= 8, got {self.histogram_bins}")
        if not (0.0 < self.epsilon < 1.0):
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if self.grid_oversampling < 64:
            raise ValueError("grid_oversampling must be >= 64 (resolution <= T_s/64)")


@dataclass(frozen=True)
class PdfEstimate:
    """Histogram density estimate; densities integrate to 1 over the support."""

    bin_edges: np.ndarray
    densities: np.ndarray
    n_samples: int

    @property
    def bin_centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])


@dataclass(frozen=True)
class DipReport:
    """Shape summary of the fading-factor density around zero."""

    density_at_zero: float
    peak_density: float
    dip_depth: float
    dip_width: float
    is_bimodal: bool


@dataclass(frozen=True)
class CampaignResult:
    pdf: PdfEstimate
    dip: DipReport
    deep_fade_prob: float
    g: np.ndarray  # raw fading factors, one per trial
    re_samples: np.ndarray  # histogrammed samples (normalized when requested)
    mean_sir_db: float


def rayleigh_baseline_deep_fade(epsilon: float) -> float:
    """P(|g|^2 / E|g|^2 < epsilon) for a circularly-symmetric Gaussian g."""
    if not (0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    return 1.0 - math.exp(-epsilon)


def _seed_entropy(seed: int) -> int:
    return seed & (2**63 - 1)


def _sync_grid(spec: CampaignSpec) -> np.ndarray:
    t_m = spec.profile_spec.t_m
    step = spec.pulse.symbol_period / spec.grid_oversampling
    n = int(math.floor(t_m / step + 1e-9)) + 1
    return step * np.arange(n)


def _batch_bounds(trials: int) -> list[tuple[int, int]]:
    return [(b, min(b + BATCH_SIZE, trials)) for b in range(0, trials, BATCH_SIZE)]


def _simulate_batch(
    spec: CampaignSpec, batch_index: int, count: int, offsets: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Simulate one batch: returns (g, taps, lags) with taps of shape
    (count, n_lags) covering the decomposition window (lag 0 included)."""
    rng = np.random.default_rng(
        np.random.SeedSequence([_seed_entropy(spec.seed), batch_index, 0])
    )
    delays, gains = sample_profile_arrays(spec.profile_spec, rng, count)
    pulse = spec.pulse

    # Lag-0 tap over the timing grid, per trial.
    field = np.einsum(
        "bgn,bn->bg", pulse(offsets[None, :, None] - delays[:, None, :]), gains
    )
    best = np.argmax(np.abs(field), axis=1)
    tau_hat = offsets[best]

    half = int(math.ceil(2.0 * spec.profile_spec.t_m / pulse.symbol_period)) + 4
    lags = np.arange(-half, half + 1)
    t = (
        tau_hat[:, None, None]
        + lags[None, :, None] * pulse.symbol_period
        - delays[:, None, :]
    )
    taps = np.einsum("bkn,bn->bk", pulse(t), gains)
    g = taps[:, half]
    return g, taps, lags


def _run_batches(spec: CampaignSpec, threads: int):
    offsets = _sync_grid(spec)
    bounds = _batch_bounds(spec.trials)

    def work(item):
        idx, (lo, hi) = item
        return _simulate_batch(spec, idx, hi - lo, offsets)

    items = list(enumerate(bounds))
    if threads <= 1:
        results = [work(it) for it in items]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, items))
    lags = results[0][2]
    g = np.concatenate([r[0] for r in results])
    taps = np.concatenate([r[1] for r in results])
    return g, taps, lags


def estimate_pdf(samples: np.ndarray, bins: int) -> PdfEstimate:
    densities, edges = np.histogram(samples, bins=bins, density=True)
    return PdfEstimate(bin_edges=edges, densities=densities, n_samples=samples.size)


def dip_report(pdf: PdfEstimate) -> DipReport:
    """Detect the deep-fading-avoidance dip: a local density minimum at zero
    flanked by two modes (after light smoothing of the histogram)."""
    kernel = np.ones(DIP_SMOOTHING_BINS) / DIP_SMOOTHING_BINS
    sm = np.convolve(pdf.densities, kernel, mode="same")
    centers = pdf.bin_centers
    i0 = int(np.argmin(np.abs(centers)))
    density_at_zero = float(sm[i0])
    peak = float(np.max(sm))
    dip_depth = max(0.0, 1.0 - density_at_zero / peak) if peak > 0.0 else 0.0

    peaks, _ = find_peaks(sm, prominence=DIP_PEAK_PROMINENCE * peak)
    left = peaks[peaks < i0 - 1]
    right = peaks[peaks > i0 + 1]
    is_bimodal = False
    dip_width = 0.0
    if left.size and right.size:
        l = int(left.max())
        r = int(right.min())
        is_bimodal = bool(density_at_zero < min(sm[l], sm[r]))
        if is_bimodal:
            dip_width = float(centers[r] - centers[l])
    return DipReport(
        density_at_zero=density_at_zero,
        peak_density=peak,
        dip_depth=dip_depth,
        dip_width=dip_width,
        is_bimodal=is_bimodal,
    )


def run_campaign(spec: CampaignSpec, threads: int = 1) -> CampaignResult:
    """Estimate the density of Re(g), the dip shape, and the deep-fade
    probability over `trials` synchronized realizations."""
    if spec.trials < 10 * spec.histogram_bins:
        warnings.warn(
            f"{spec.trials} trials is small for {spec.histogram_bins} histogram "
            "bins; the density estimate will be noisy",
            stacklevel=2,
        )
    g, taps, lags = _run_batches(spec, threads)

    power = np.abs(g) ** 2
    mean_power = float(np.mean(power))
    deep_fade_prob = float(np.mean(power < spec.epsilon * mean_power))

    re_samples = g.real / math.sqrt(mean_power) if spec.normalize_g else g.real.copy()
    pdf = estimate_pdf(re_samples, spec.histogram_bins)
    dip = dip_report(pdf)

    isi_power = np.sum(np.abs(taps) ** 2, axis=1) - power
    isi_power = np.maximum(isi_power, 0.0)
    with np.errstate(divide="ignore"):
        sir_db = 10.0 * np.log10(power / np.where(isi_power > 0, isi_power, np.nan))
    finite = np.isfinite(sir_db)
    mean_sir_db = float(np.mean(sir_db[finite])) if np.any(finite) else math.inf

    return CampaignResult(
        pdf=pdf,
        dip=dip,
        deep_fade_prob=deep_fade_prob,
        g=g,
        re_samples=re_samples,
        mean_sir_db=mean_sir_db,
    )


def _modulate(rng: np.random.Generator, modulation: str, shape) -> tuple[np.ndarray, np.ndarray]:
    """Draw i.i.d. symbols; returns (symbols, bits) with bits of shape
    shape + (bits_per_symbol,)."""
    if modulation == "BPSK":
        bits = rng.integers(0, 2, shape + (1,))
        symbols = 1.0 - 2.0 * bits[..., 0].astype(float) + 0j
    elif modulation == "QPSK":
        bits = rng.integers(0, 2, shape + (2,))
        symbols = (
            (1.0 - 2.0 * bits[..., 0]) + 1j * (1.0 - 2.0 * bits[..., 1])
        ) / math.sqrt(2.0)
    else:
        raise ValueError(f"unknown modulation {modulation!r}")
    return symbols, bits


def _demodulate(z: np.ndarray, modulation: str) -> np.ndarray:
    if modulation == "BPSK":
        return (z.real < 0).astype(np.int64)[..., None]
    return np.stack([(z.real < 0), (z.imag < 0)], axis=-1).astype(np.int64)


def _apply_taps(x: np.ndarray, taps: np.ndarray, lags: np.ndarray) -> np.ndarray:
    """y[b, m] = sum_k taps[b, k] * x[b, m - lag_k], zero-padded outside."""
    y = np.zeros_like(x)
    n = x.shape[1]
    for k, lag in enumerate(lags):
        if lag == 0:
            y += taps[:, k : k + 1] * x
        elif lag > 0:
            if lag < n:
                y[:, lag:] += taps[:, k : k + 1] * x[:, :-lag]
        else:
            if -lag < n:
                y[:, :lag] += taps[:, k : k + 1] * x[:, -lag:]
    return y


def ber_simulation(
    spec: CampaignSpec,
    modulation: str,
    snr_db_list: Sequence[float],
    symbols_per_trial: int,
    threads: int = 1,
) -> list[tuple[float, float]]:
    """Uncoded BER through the symbol-spaced tap channel (g plus ISI), with
    single-tap detection on g and no equalizer.

    SNR is defined on the mean desired-tap power across the campaign.
    """
    if len(snr_db_list) == 0:
        raise ValueError("snr_db_list must not be empty")
    if symbols_per_trial < 1000:
        raise ValueError(f"symbols_per_trial must be >= 1000, got {symbols_per_trial}")
    if modulation not in ("BPSK", "QPSK"):
        raise ValueError(f"unknown modulation {modulation!r}")

    g, taps, lags = _run_batches(spec, threads)
    mean_power = float(np.mean(np.abs(g) ** 2))
    bounds = _batch_bounds(spec.trials)

    def work(item):
        idx, (lo, hi) = item
        count = hi - lo
        rng = np.random.default_rng(
            np.random.SeedSequence([_seed_entropy(spec.seed), idx, 1])
        )
        batch_taps = taps[lo:hi]
        batch_g = g[lo:hi]
        errors = np.zeros(len(snr_db_list), dtype=np.int64)
        for j, snr_db in enumerate(snr_db_list):
            snr = 10.0 ** (snr_db / 10.0)
            sigma2 = mean_power / snr
            x, bits = _modulate(rng, modulation, (count, symbols_per_trial))
            noise = math.sqrt(sigma2 / 2.0) * (
                rng.standard_normal(x.shape) + 1j * rng.standard_normal(x.shape)
            )
            y = _apply_taps(x, batch_taps, lags) + noise
            z = y / batch_g[:, None]
            errors[j] = np.sum(_demodulate(z, modulation) != bits)
        return errors

    items = list(enumerate(bounds))
    if threads <= 1:
        per_batch = [work(it) for it in items]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_batch = list(pool.map(work, items))
    total_errors = np.sum(per_batch, axis=0)
    bits_per_symbol = 1 if modulation == "BPSK" else 2
    total_bits = spec.trials * symbols_per_trial * bits_per_symbol
    return [
        (float(snr_db), float(err) / total_bits)
        for snr_db, err in zip(snr_db_list, total_errors)
    ]
