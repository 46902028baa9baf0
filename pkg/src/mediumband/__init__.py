"""Link-level simulator and design toolkit for mediumband wireless channels."""

from .channel import (
    SPEED_OF_LIGHT,
    BandClass,
    DelayProfile,
    MultipathComponent,
    ProfileSpec,
    SystemPoint,
    classify,
    generate_nlos_profile,
    max_excess_delay,
    pds,
    rms_delay_spread,
)
from .geometry import (
    InducedMpc,
    Reflector,
    ReflectorScene,
    SelectionResult,
    in_annulus,
    induce_mpcs,
    path_delay,
    select_reflectors,
)
from .montecarlo import (
    CampaignResult,
    CampaignSpec,
    DipReport,
    PdfEstimate,
    ber_simulation,
    rayleigh_baseline_deep_fade,
    run_campaign,
)
from .ofdm import (
    OfdmCampaignSpec,
    OfdmFadeStats,
    SubcarrierResponse,
    TapVector,
    extract_generalized_taps,
    subcarrier_fade_stats,
    to_frequency_domain,
)
from .planner import DesignRequest, DesignResult, choose_symbol_period
from .pulse import (
    PulseShape,
    SearchGrid,
    SyncResult,
    decompose,
    effective_tap,
    synchronize,
)

__version__ = "0.1.0"

__all__ = [
    "SPEED_OF_LIGHT",
    "BandClass",
    "DelayProfile",
    "MultipathComponent",
    "ProfileSpec",
    "SystemPoint",
    "classify",
    "generate_nlos_profile",
    "max_excess_delay",
    "pds",
    "rms_delay_spread",
    "InducedMpc",
    "Reflector",
    "ReflectorScene",
    "SelectionResult",
    "in_annulus",
    "induce_mpcs",
    "path_delay",
    "select_reflectors",
    "CampaignResult",
    "CampaignSpec",
    "DipReport",
    "PdfEstimate",
    "ber_simulation",
    "rayleigh_baseline_deep_fade",
    "run_campaign",
    "OfdmCampaignSpec",
    "OfdmFadeStats",
    "SubcarrierResponse",
    "TapVector",
    "extract_generalized_taps",
    "subcarrier_fade_stats",
    "to_frequency_domain",
    "DesignRequest",
    "DesignResult",
    "choose_symbol_period",
    "PulseShape",
    "SearchGrid",
    "SyncResult",
    "decompose",
    "effective_tap",
    "synchronize",
    "__version__",
]
