"""Multipath delay profiles, delay-spread measures and band classification."""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact


@dataclass(frozen=True)
class MultipathComponent:
    """One resolvable propagation path: complex amplitude and excess delay."""

    gain: complex
    delay: float  # seconds, >= 0

    def __post_init__(self):
        if not (self.delay >= 0.0) or not math.isfinite(self.delay):
            raise ValueError(f"delay must be finite and >= 0, got {self.delay}")
        if not cmath.isfinite(self.gain):
            raise ValueError(f"gain must be finite, got {self.gain}")


@dataclass(frozen=True)
class DelayProfile:
    """Ordered impulse train of multipath components, delays ascending.

    Generated NLoS profiles start at delay 0 and have unit mean total power;
    hand-built profiles only need sorted, non-negative delays.
    """

    components: tuple[MultipathComponent, ...]

    def __post_init__(self):
        if len(self.components) == 0:
            raise ValueError("profile must contain at least one component")
        object.__setattr__(self, "components", tuple(self.components))
        d = [c.delay for c in self.components]
        if any(b < a for a, b in zip(d, d[1:])):
            raise ValueError("component delays must be sorted ascending")

    @property
    def delays(self) -> np.ndarray:
        return np.array([c.delay for c in self.components])

    @property
    def gains(self) -> np.ndarray:
        return np.array([c.gain for c in self.components], dtype=np.complex128)

    def total_power(self) -> float:
        return float(np.sum(np.abs(self.gains) ** 2))

    def scaled(self, factor: complex) -> "DelayProfile":
        return DelayProfile(tuple(
            MultipathComponent(c.gain * factor, c.delay) for c in self.components
        ))

    def with_component(self, mpc: MultipathComponent) -> "DelayProfile":
        comps = sorted(self.components + (mpc,), key=lambda c: c.delay)
        return DelayProfile(tuple(comps))

    def to_json(self) -> str:
        doc = {"components": [
            {"re": c.gain.real, "im": c.gain.imag, "delay_s": c.delay}
            for c in self.components
        ]}
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "DelayProfile":
        doc = json.loads(text)
        comps = tuple(
            MultipathComponent(complex(e["re"], e["im"]), float(e["delay_s"]))
            for e in doc["components"]
        )
        return cls(comps)


class BandClass(Enum):
    NARROWBAND = "narrowband"
    MEDIUMBAND = "mediumband"
    BROADBAND = "broadband"


@dataclass(frozen=True)
class SystemPoint:
    """A system's operating point on the delay-spread / symbol-period plane."""

    t_m: float  # maximum excess delay, seconds
    t_s: float  # symbol period, seconds
    lam: float = 10.0  # narrowband/mediumband boundary ratio

    def __post_init__(self):
        if not (self.t_m >= 0.0):
            raise ValueError(f"t_m must be >= 0, got {self.t_m}")
        if not (self.t_s > 0.0):
            raise ValueError(f"t_s must be > 0, got {self.t_s}")
        if not (self.lam > 1.0):
            raise ValueError(f"lambda must be > 1, got {self.lam}")


def classify(point: SystemPoint) -> BandClass:
    """Partition rule: broadband at t_s <= t_m, narrowband at t_s >= lam*t_m,
    mediumband strictly in between (both boundaries excluded)."""
    if point.t_s <= point.t_m:
        return BandClass.BROADBAND
    if point.t_s >= point.lam * point.t_m:
        return BandClass.NARROWBAND
    return BandClass.MEDIUMBAND


def pds(point: SystemPoint) -> float:
    """Percentage delay spread, 100 * t_m / t_s (degree of mediumbandness)."""
    return 100.0 * point.t_m / point.t_s


def max_excess_delay(profile: DelayProfile) -> float:
    """Last minus first delay (first is 0 by convention for generated profiles)."""
    return profile.components[-1].delay - profile.components[0].delay


def rms_delay_spread(profile: DelayProfile) -> float:
    """Power-weighted standard deviation of the delays (auxiliary measure)."""
    w = np.abs(profile.gains) ** 2
    w = w / np.sum(w)
    d = profile.delays
    mean = float(np.sum(w * d))
    var = float(np.sum(w * (d - mean) ** 2))
    return math.sqrt(max(var, 0.0))


@dataclass(frozen=True)
class ProfileSpec:
    """Parameters of a random NLoS profile: path count, span, power envelope.

    decay is the exponential power-envelope time constant in seconds;
    None means a flat envelope (equal mean path powers).
    """

    n_paths: int
    t_m: float
    decay: Optional[float] = None

    def __post_init__(self):
        if self.n_paths < 1:
            raise ValueError(f"n_paths must be >= 1, got {self.n_paths}")
        if self.n_paths > 1 and not (self.t_m > 0.0):
            raise ValueError(f"t_m must be > 0 for multipath, got {self.t_m}")
        if self.t_m < 0.0:
            raise ValueError(f"t_m must be >= 0, got {self.t_m}")
        if self.decay is not None and not (self.decay > 0.0):
            raise ValueError(f"decay must be > 0 or None, got {self.decay}")


def sample_profile_arrays(
    spec: ProfileSpec, rng: np.random.Generator, size: int
) -> tuple[np.ndarray, np.ndarray]:
    """Draw `size` profile realizations as (delays, gains) arrays of shape
    (size, n_paths).

    First delay is 0 and last is t_m exactly; interior delays are i.i.d.
    uniform on (0, t_m) and sorted. Gains are circularly-symmetric complex
    Gaussian with mean powers following the envelope, normalized so the mean
    total power is 1 per realization spec.
    """
    n = spec.n_paths
    delays = np.zeros((size, n))
    if n >= 2:
        delays[:, -1] = spec.t_m
        if n > 2:
            delays[:, 1:-1] = np.sort(rng.uniform(0.0, spec.t_m, (size, n - 2)), axis=1)
    if spec.decay is None:
        powers = np.full((size, n), 1.0 / n)
    else:
        w = np.exp(-delays / spec.decay)
        powers = w / np.sum(w, axis=1, keepdims=True)
    if n == 1:
        # Degenerate single-path case: unit magnitude, random phase, so the
        # total power is exactly 1 per realization (zero-variance fading).
        gains = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, (size, 1)))
    else:
        scale = np.sqrt(powers / 2.0)
        gains = scale * (
            rng.standard_normal((size, n)) + 1j * rng.standard_normal((size, n))
        )
    return delays, gains


def generate_nlos_profile(spec: ProfileSpec, rng_seed: int) -> DelayProfile:
    """One random NLoS realization, deterministic under the seed."""
    rng = np.random.default_rng(rng_seed)
    delays, gains = sample_profile_arrays(spec, rng, 1)
    comps = tuple(
        MultipathComponent(complex(g), float(d)) for g, d in zip(gains[0], delays[0])
    )
    return DelayProfile(comps)
