"""Generalized mediumband for broadband operation: symbol-spaced tap
vectors, frequency-domain subcarrier coefficients, and per-subcarrier
deep-fading statistics."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import DelayProfile, ProfileSpec, sample_profile_arrays
from .montecarlo import (
    DEEP_FADE_EPSILON,
    BATCH_SIZE,
    DipReport,
    PulseShape,
    _seed_entropy,
    dip_report,
    estimate_pdf,
    rayleigh_baseline_deep_fade,
)
from .pulse import effective_tap


@dataclass(frozen=True)
class TapVector:
    """Time-domain symbol-spaced channel coefficients h_0 .. h_{L-1}."""

    taps: np.ndarray
    t_s: float

    def __post_init__(self):
        taps = np.asarray(self.taps, dtype=np.complex128)
        if taps.size == 0:
            raise ValueError("tap vector must be non-empty")
        if not np.all(np.isfinite(taps)):
            raise ValueError("tap values must be finite")
        object.__setattr__(self, "taps", taps)


@dataclass(frozen=True)
class SubcarrierResponse:
    """Frequency-domain coefficients: the n_fft-point DFT of the taps,
    negative exponent, no 1/n scaling."""

    coefficients: np.ndarray
    n_fft: int


def extract_generalized_taps(
    profile: DelayProfile, pulse: PulseShape, tau_hat: float, n_taps: int
) -> TapVector:
    """Taps at lags 0 .. n_taps-1 from the synchronized offset."""
    if n_taps < 1:
        raise ValueError(f"n_taps must be >= 1, got {n_taps}")
    taps = np.array(
        [effective_tap(profile, pulse, tau_hat, lag) for lag in range(n_taps)]
    )
    return TapVector(taps=taps, t_s=pulse.symbol_period)


def to_frequency_domain(taps: TapVector, n_fft: int) -> SubcarrierResponse:
    """Zero-padded DFT; Parseval: sum |H_k|^2 = n_fft * sum |h_l|^2."""
    if n_fft < taps.taps.size:
        raise ValueError(f"n_fft must be >= {taps.taps.size}, got {n_fft}")
    if n_fft < 1 or (n_fft & (n_fft - 1)) != 0:
        raise ValueError(f"n_fft must be a power of two, got {n_fft}")
    return SubcarrierResponse(coefficients=np.fft.fft(taps.taps, n_fft), n_fft=n_fft)


@dataclass(frozen=True)
class OfdmCampaignSpec:
    """Campaign over broadband profiles (dense MPCs spanning roughly
    n_taps symbol periods) or over i.i.d. Gaussian taps as a baseline."""

    profile_spec: ProfileSpec
    pulse: PulseShape
    n_taps: int
    n_fft: int
    trials: int
    seed: int
    epsilon: float = DEEP_FADE_EPSILON
    histogram_bins: int = 64
    iid_taps_baseline: bool = False
    grid_oversampling: int = 128

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.n_taps < 1:
            raise ValueError(f"n_taps must be >= 1, got {self.n_taps}")
        if self.n_fft < self.n_taps or (self.n_fft & (self.n_fft - 1)) != 0:
            raise ValueError("n_fft must be a power of two >= n_taps")
        if not (0.0 < self.epsilon < 1.0):
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")


@dataclass(frozen=True)
class OfdmFadeStats:
    """Per-subcarrier deep-fade probabilities and dip shapes."""

    deep_fade_prob: np.ndarray  # (n_fft,)
    baseline: float
    dip_reports: tuple[DipReport, ...]
    n_trials: int
    epsilon: float


def _tap_batch(spec: OfdmCampaignSpec, batch_index: int, count: int) -> np.ndarray:
    rng = np.random.default_rng(
        np.random.SeedSequence([_seed_entropy(spec.seed), batch_index, 2])
    )
    if spec.iid_taps_baseline:
        return (
            rng.standard_normal((count, spec.n_taps))
            + 1j * rng.standard_normal((count, spec.n_taps))
        ) / math.sqrt(2.0 * spec.n_taps)

    pulse = spec.pulse
    delays, gains = sample_profile_arrays(spec.profile_spec, rng, count)
    # Timing grid chosen so every generalized tap location stays inside the
    # profile's delay support.
    span = max(spec.profile_spec.t_m - (spec.n_taps - 1) * pulse.symbol_period, 0.0)
    step = pulse.symbol_period / spec.grid_oversampling
    offsets = step * np.arange(int(math.floor(span / step + 1e-9)) + 1)
    lags = np.arange(spec.n_taps)
    t = (
        offsets[None, :, None, None]
        + lags[None, None, :, None] * pulse.symbol_period
        - delays[:, None, None, :]
    )
    field = np.einsum("bgkn,bn->bgk", pulse(t), gains)
    # Multicarrier timing rule: maximize the worst subcarrier magnitude over
    # the grid, so no subcarrier is left in a deep fade the timing could have
    # avoided. (The scalar campaigns use the plain lag-0 argmax instead.)
    coeff = np.fft.fft(field, spec.n_fft, axis=2)
    best = np.argmax(np.min(np.abs(coeff), axis=2), axis=1)
    return field[np.arange(count), best, :]


def subcarrier_fade_stats(spec: OfdmCampaignSpec, threads: int = 1) -> OfdmFadeStats:
    """Deep-fade probability and dip report per subcarrier, with the
    closed-form Rayleigh value as the reference baseline."""
    bounds = [
        (b, min(b + BATCH_SIZE, spec.trials))
        for b in range(0, spec.trials, BATCH_SIZE)
    ]

    def work(item):
        idx, (lo, hi) = item
        taps = _tap_batch(spec, idx, hi - lo)
        return np.fft.fft(taps, spec.n_fft, axis=1)

    items = list(enumerate(bounds))
    if threads <= 1:
        chunks = [work(it) for it in items]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(work, items))
    coeff = np.concatenate(chunks)  # (trials, n_fft)

    power = np.abs(coeff) ** 2
    mean_power = np.mean(power, axis=0)
    deep_fade = np.mean(power < spec.epsilon * mean_power[None, :], axis=0)

    reports = []
    for k in range(spec.n_fft):
        samples = coeff[:, k].real / math.sqrt(mean_power[k])
        reports.append(dip_report(estimate_pdf(samples, spec.histogram_bins)))

    return OfdmFadeStats(
        deep_fade_prob=deep_fade,
        baseline=rayleigh_baseline_deep_fade(spec.epsilon),
        dip_reports=tuple(reports),
        n_trials=spec.trials,
        epsilon=spec.epsilon,
    )
