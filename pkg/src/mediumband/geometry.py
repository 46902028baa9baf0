"""Reflector geometry for the real-time method: confocal-ellipse delay
bounds, induced multipath components, and greedy reflector selection that
pushes a narrowband link into the mediumband."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .channel import (
    SPEED_OF_LIGHT,
    BandClass,
    DelayProfile,
    MultipathComponent,
    SystemPoint,
    classify,
    max_excess_delay,
    pds,
)


@dataclass(frozen=True)
class Reflector:
    id: str
    position: tuple[float, ...]  # meters, 2D or 3D
    gain: complex


@dataclass(frozen=True)
class ReflectorScene:
    """TX/RX pair with candidate single-bounce reflectors and the two
    confocal ellipse (or ellipsoid) semi-major half-lengths a1 < a2.

    The annulus test is purely delay-based, so 2D and 3D scenes share it.
    """

    tx: tuple[float, ...]
    rx: tuple[float, ...]
    reflectors: tuple[Reflector, ...]
    a1: float  # meters
    a2: float  # meters

    def __post_init__(self):
        if len(self.tx) != len(self.rx) or len(self.tx) not in (2, 3):
            raise ValueError("tx and rx must both be 2D or 3D points")
        f = self.focal_distance()
        if f == 0.0:
            raise ValueError("tx and rx must be distinct")
        if not (self.a2 > self.a1 > f / 2.0):
            raise ValueError(
                "need a2 > a1 > |tx-rx|/2 so both ellipses contain the foci"
            )
        for r in self.reflectors:
            if len(r.position) != len(self.tx):
                raise ValueError(f"reflector {r.id!r} dimension mismatch")

    def focal_distance(self) -> float:
        return _dist(self.tx, self.rx)

    def direct_delay(self) -> float:
        return self.focal_distance() / SPEED_OF_LIGHT

    def reflector(self, reflector_id: str) -> Reflector:
        for r in self.reflectors:
            if r.id == reflector_id:
                return r
        raise KeyError(f"unknown reflector id {reflector_id!r}")

    def to_json(self) -> str:
        return json.dumps({
            "tx": list(self.tx),
            "rx": list(self.rx),
            "a1_m": self.a1,
            "a2_m": self.a2,
            "reflectors": [
                {
                    "id": r.id,
                    "pos": list(r.position),
                    "gain_re": r.gain.real,
                    "gain_im": r.gain.imag,
                }
                for r in self.reflectors
            ],
        })

    @classmethod
    def from_json(cls, text: str) -> "ReflectorScene":
        doc = json.loads(text)
        return cls(
            tx=tuple(float(v) for v in doc["tx"]),
            rx=tuple(float(v) for v in doc["rx"]),
            a1=float(doc["a1_m"]),
            a2=float(doc["a2_m"]),
            reflectors=tuple(
                Reflector(
                    id=str(r["id"]),
                    position=tuple(float(v) for v in r["pos"]),
                    gain=complex(float(r["gain_re"]), float(r["gain_im"])),
                )
                for r in doc["reflectors"]
            ),
        )


@dataclass(frozen=True)
class InducedMpc:
    """Single-bounce component contributed by one reflector; delay is the
    absolute propagation delay via the reflector."""

    reflector_id: str
    delay: float  # seconds
    gain: complex


def _dist(a: Sequence[float], b: Sequence[float]) -> float:
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))


def path_delay(
    tx: Sequence[float], rx: Sequence[float], reflector: Sequence[float]
) -> float:
    """Single-bounce propagation delay tx -> reflector -> rx."""
    return (_dist(tx, reflector) + _dist(reflector, rx)) / SPEED_OF_LIGHT


def in_annulus(scene: ReflectorScene, reflector_id: str) -> bool:
    """True iff the reflector's single-bounce delay falls in
    [2 a1 / c, 2 a2 / c], i.e. the point lies on or between the two
    confocal ellipses (no reflector coordinates needed, only the delay)."""
    r = scene.reflector(reflector_id)
    tau = path_delay(scene.tx, scene.rx, r.position)
    return 2.0 * scene.a1 / SPEED_OF_LIGHT <= tau <= 2.0 * scene.a2 / SPEED_OF_LIGHT


def induce_mpcs(scene: ReflectorScene, active_ids: Iterable[str]) -> list[InducedMpc]:
    """One component per active reflector, gains as configured in the scene
    (no phase adjustment: plain passive reflection)."""
    out = []
    for rid in active_ids:
        r = scene.reflector(rid)
        out.append(InducedMpc(
            reflector_id=r.id,
            delay=path_delay(scene.tx, scene.rx, r.position),
            gain=r.gain,
        ))
    return out


def default_reflection_gain(
    base: DelayProfile, rng: np.random.Generator
) -> complex:
    """Default reflector link budget: half the base profile's RMS path gain,
    uniform random phase. A knob, not a physical claim."""
    rms = math.sqrt(base.total_power() / len(base.components))
    phase = rng.uniform(0.0, 2.0 * math.pi)
    return 0.5 * rms * complex(math.cos(phase), math.sin(phase))


@dataclass(frozen=True)
class SelectionResult:
    feasible: bool
    active_ids: tuple[str, ...]
    profile: DelayProfile
    point: SystemPoint
    band: BandClass
    achieved_pds: float


def select_reflectors(
    base: DelayProfile,
    scene: ReflectorScene,
    t_s: float,
    target_pds: float,
    lam: float = 10.0,
) -> SelectionResult:
    """Greedily activate annulus reflectors (largest excess delay first,
    then id) until the resulting operating point reaches the target PDS.

    Base profile delays must be relative to the direct path, and the inner
    ellipse must sit beyond the base delay spread so every candidate
    genuinely lengthens the profile. Infeasible targets return the
    best-achievable selection with feasible=False.
    """
    direct = scene.direct_delay()
    base_spread = max_excess_delay(base)
    inner_excess = 2.0 * scene.a1 / SPEED_OF_LIGHT - direct
    if inner_excess < base_spread:
        raise ValueError(
            "inner ellipse too small: candidate reflectors would not lengthen "
            f"the profile (excess {inner_excess:.3e} s < spread {base_spread:.3e} s)"
        )

    def point_for(profile: DelayProfile) -> SystemPoint:
        return SystemPoint(t_m=max_excess_delay(profile), t_s=t_s, lam=lam)

    candidates = [
        (r, path_delay(scene.tx, scene.rx, r.position) - direct)
        for r in scene.reflectors
        if in_annulus(scene, r.id)
    ]
    candidates.sort(key=lambda item: (-item[1], item[0].id))

    active: list[str] = []
    profile = base
    point = point_for(profile)
    while pds(point) < target_pds and candidates:
        r, excess = candidates.pop(0)
        if excess <= max_excess_delay(profile):
            # Sorted descending, so no remaining candidate can lengthen the
            # profile further; the target is out of reach.
            break
        profile = profile.with_component(MultipathComponent(r.gain, excess))
        active.append(r.id)
        point = point_for(profile)

    achieved = pds(point)
    return SelectionResult(
        feasible=achieved >= target_pds,
        active_ids=tuple(active),
        profile=profile,
        point=point,
        band=classify(point),
        achieved_pds=achieved,
    )
