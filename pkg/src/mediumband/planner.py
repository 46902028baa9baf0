"""Design-time method: pick the symbol period for a target degree of
mediumbandness given an estimated delay spread."""

from __future__ import annotations

from dataclasses import dataclass

from .channel import BandClass, SystemPoint, classify


@dataclass(frozen=True)
class DesignRequest:
    t_m_estimate: float  # seconds
    target_pds: float  # percent, in (0, 100]
    lam: float = 10.0

    def __post_init__(self):
        if not (self.t_m_estimate > 0.0):
            raise ValueError(f"t_m_estimate must be > 0, got {self.t_m_estimate}")
        if not (0.0 < self.target_pds <= 100.0):
            raise ValueError(
                f"target_pds must be in (0, 100], got {self.target_pds}"
            )
        if not (self.lam > 1.0):
            raise ValueError(f"lambda must be > 1, got {self.lam}")


@dataclass(frozen=True)
class DesignResult:
    t_s: float
    point: SystemPoint
    band: BandClass
    # Set when the requested PDS lands the system outside the mediumband;
    # the request is still honored.
    warning: str | None = None


def choose_symbol_period(req: DesignRequest) -> DesignResult:
    """T_s = 100 * T_m / PDS, classified on the resulting operating point."""
    t_s = 100.0 * req.t_m_estimate / req.target_pds
    point = SystemPoint(t_m=req.t_m_estimate, t_s=t_s, lam=req.lam)
    band = classify(point)
    warning = None
    if band is not BandClass.MEDIUMBAND:
        warning = (
            f"target PDS {req.target_pds:g}% puts the system in the "
            f"{band.value} region, not the mediumband"
        )
    return DesignResult(t_s=t_s, point=point, band=band, warning=warning)
