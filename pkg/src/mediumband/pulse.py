"""Pulse autocorrelation, symbol timing search and tap decomposition.

The effective symbol-spaced channel seen by the receiver is formed by
sampling the composite response sum_n gain_n * p(t - delay_n) at offsets
tau_hat + lag * T_s, where p is the (Nyquist) pulse autocorrelation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import DelayProfile, max_excess_delay

# Relative magnitude below which residual ISI taps are dropped.
ISI_TRUNCATION_FLOOR = 1e-6


@dataclass(frozen=True)
class PulseShape:
    """Raised-cosine autocorrelation: peak-normalized Nyquist pulse.

    p(0) = 1 and p(k * symbol_period) = 0 for nonzero integer k, so a
    zero-spread channel contributes no ISI at symbol-spaced sampling.
    """

    symbol_period: float
    rolloff: float = 0.25

    def __post_init__(self):
        if not (self.symbol_period > 0.0):
            raise ValueError(f"symbol_period must be > 0, got {self.symbol_period}")
        if not (0.0 <= self.rolloff <= 1.0):
            raise ValueError(f"rolloff must be in [0, 1], got {self.rolloff}")

    def __call__(self, t):
        """Evaluate p(t); accepts scalars or arrays, vectorized."""
        x = np.asarray(t, dtype=float) / self.symbol_period
        beta = self.rolloff
        with np.errstate(divide="ignore", invalid="ignore"):
            den = 1.0 - (2.0 * beta * x) ** 2
            val = np.sinc(x) * np.cos(np.pi * beta * x) / den
        if beta > 0.0:
            # Removable singularity at |t| = T/(2 beta).
            sing = np.isclose(den, 0.0, atol=1e-12)
            if np.any(sing):
                limit = (np.pi / 4.0) * np.sinc(1.0 / (2.0 * beta))
                val = np.where(sing, limit, val)
        if np.ndim(t) == 0:
            return float(val)
        return val


@dataclass(frozen=True)
class SearchGrid:
    """Uniform timing-offset grid [start, stop] with the given step."""

    start: float
    stop: float
    step: float

    def __post_init__(self):
        if not (self.step > 0.0):
            raise ValueError(f"step must be > 0, got {self.step}")
        if self.stop < self.start:
            raise ValueError("stop must be >= start")

    def offsets(self) -> np.ndarray:
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return self.start + self.step * np.arange(n)

    @classmethod
    def for_profile(
        cls, profile: DelayProfile, pulse: PulseShape, oversampling: int = 128
    ) -> "SearchGrid":
        """Default grid: spans the profile's delay support at T_s/oversampling."""
        return cls(0.0, profile.components[-1].delay, pulse.symbol_period / oversampling)


@dataclass(frozen=True)
class SyncResult:
    """Timing offset, desired fading factor, residual ISI taps and SIR."""

    tau_hat: float
    g: complex
    isi_taps: tuple[tuple[int, complex], ...]
    sir_db: float

    def isi_power(self) -> float:
        return sum(abs(v) ** 2 for _, v in self.isi_taps)

    def to_json(self) -> str:
        return json.dumps({
            "tau_hat_s": self.tau_hat,
            "g_re": self.g.real,
            "g_im": self.g.imag,
            "sir_db": self.sir_db,
            "isi_taps": [
                {"lag": lag, "re": v.real, "im": v.imag} for lag, v in self.isi_taps
            ],
        })


def effective_tap(
    profile: DelayProfile, pulse: PulseShape, tau_hat: float, lag: int = 0
) -> complex:
    """Symbol-spaced channel tap at offset tau_hat + lag * T_s."""
    t = tau_hat + lag * pulse.symbol_period - profile.delays
    return complex(np.sum(profile.gains * pulse(t)))


def isi_window(profile: DelayProfile, pulse: PulseShape) -> int:
    """One-sided lag window: ceil(2 T_m / T_s) + 4, covers the delay support
    plus fast-decaying pulse tails."""
    t_m = max_excess_delay(profile)
    return int(math.ceil(2.0 * t_m / pulse.symbol_period)) + 4


def decompose(profile: DelayProfile, pulse: PulseShape, tau_hat: float) -> SyncResult:
    """Split the sampled response at tau_hat into the desired factor g (lag 0)
    and residual ISI taps (nonzero lags above the truncation floor)."""
    half = isi_window(profile, pulse)
    lags = np.arange(-half, half + 1)
    t = tau_hat + lags[:, None] * pulse.symbol_period - profile.delays[None, :]
    taps = (pulse(t) * profile.gains[None, :]).sum(axis=1)
    g = complex(taps[lags == 0][0])
    floor = ISI_TRUNCATION_FLOOR * abs(g)
    isi = tuple(
        (int(lag), complex(v))
        for lag, v in zip(lags, taps)
        if lag != 0 and abs(v) >= floor
    )
    isi_pow = sum(abs(v) ** 2 for _, v in isi)
    if isi_pow > 0.0:
        sir_db = 10.0 * math.log10(abs(g) ** 2 / isi_pow)
    else:
        sir_db = math.inf
    return SyncResult(tau_hat=tau_hat, g=g, isi_taps=isi, sir_db=sir_db)


def synchronize(
    profile: DelayProfile, pulse: PulseShape, grid: Optional[SearchGrid] = None
) -> SyncResult:
    """Pick tau_hat maximizing |lag-0 tap| over the grid (ties: smallest tau),
    then decompose there."""
    if grid is None:
        grid = SearchGrid.for_profile(profile, pulse)
    offsets = grid.offsets()
    if offsets.size == 0:
        raise ValueError("search grid is empty")
    t = offsets[:, None] - profile.delays[None, :]
    h0 = (pulse(t) * profile.gains[None, :]).sum(axis=1)
    best = int(np.argmax(np.abs(h0)))  # argmax returns the first (smallest tau) tie
    return decompose(profile, pulse, float(offsets[best]))
