"""Scenario-driven command line front end.

Every run writes its artifacts atomically (temp file + rename) together with
a manifest JSON carrying the scenario, its hash and the seed, so any output
can be reproduced from the manifest alone.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import tempfile
from pathlib import Path
from typing import Optional

import numpy as np
from jsonschema import Draft202012Validator

from . import __version__
from .channel import DelayProfile, ProfileSpec, SystemPoint, classify, pds
from .geometry import ReflectorScene, select_reflectors
from .montecarlo import (
    CampaignSpec,
    ber_simulation,
    rayleigh_baseline_deep_fade,
    run_campaign,
)
from .ofdm import OfdmCampaignSpec, subcarrier_fade_stats
from .planner import DesignRequest, choose_symbol_period
from .pulse import PulseShape

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_SCHEMA = 2
EXIT_INFEASIBLE = 3

FADE_EPSILONS = [0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1]

_COMMON_PROPS = {
    "t_m_s": {"type": "number", "minimum": 0},
    "t_s_s": {"type": "number", "exclusiveMinimum": 0},
    "lambda": {"type": "number", "exclusiveMinimum": 1},
    "rolloff": {"type": "number", "minimum": 0, "maximum": 1},
}

_MODE_SCHEMAS = {
    "classify": {
        "type": "object",
        "properties": _COMMON_PROPS,
        "required": ["t_m_s", "t_s_s"],
        "additionalProperties": False,
    },
    "plan": {
        "type": "object",
        "properties": {
            "t_m_s": _COMMON_PROPS["t_m_s"],
            "lambda": _COMMON_PROPS["lambda"],
            "target_pds": {"type": "number", "exclusiveMinimum": 0, "maximum": 100},
        },
        "required": ["t_m_s", "target_pds"],
        "additionalProperties": False,
    },
    "campaign": {
        "type": "object",
        "properties": {
            **_COMMON_PROPS,
            "n_paths": {"type": "integer", "minimum": 1},
            "trials": {"type": "integer", "minimum": 1},
            "histogram_bins": {"type": "integer", "minimum": 8},
            "normalize_g": {"type": "boolean"},
            "epsilon": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
            "decay_s": {"type": "number", "exclusiveMinimum": 0},
        },
        "required": ["t_m_s", "t_s_s", "n_paths", "trials"],
        "additionalProperties": False,
    },
    "reflectors": {
        "type": "object",
        "properties": {
            "scene_file": {"type": "string"},
            "base_profile_file": {"type": "string"},
            "t_s_s": _COMMON_PROPS["t_s_s"],
            "lambda": _COMMON_PROPS["lambda"],
            "target_pds": {"type": "number", "exclusiveMinimum": 0, "maximum": 100},
        },
        "required": ["scene_file", "base_profile_file", "t_s_s", "target_pds"],
        "additionalProperties": False,
    },
    "ofdm": {
        "type": "object",
        "properties": {
            **_COMMON_PROPS,
            "n_paths": {"type": "integer", "minimum": 1},
            "trials": {"type": "integer", "minimum": 1},
            "n_taps": {"type": "integer", "minimum": 1},
            "n_fft": {"type": "integer", "minimum": 1},
            "epsilon": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
            "iid_baseline": {"type": "boolean"},
        },
        "required": ["t_m_s", "t_s_s", "n_paths", "trials"],
        "additionalProperties": False,
    },
    "ber": {
        "type": "object",
        "properties": {
            **_COMMON_PROPS,
            "n_paths": {"type": "integer", "minimum": 1},
            "trials": {"type": "integer", "minimum": 1},
            "symbols_per_trial": {"type": "integer", "minimum": 1000},
            "snr_db": {
                "type": "array",
                "items": {"type": "number"},
                "minItems": 1,
            },
            "modulation": {"enum": ["BPSK", "QPSK"]},
        },
        "required": ["t_m_s", "t_s_s", "n_paths", "trials", "symbols_per_trial", "snr_db"],
        "additionalProperties": False,
    },
}

SCENARIO_SCHEMA = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "mode": {"enum": sorted(_MODE_SCHEMAS)},
        "parameters": {"type": "object"},
        "seed": {"type": "integer"},
        "output_dir": {"type": "string"},
    },
    "required": ["name", "mode", "parameters"],
    "additionalProperties": False,
}


class SchemaError(Exception):
    def __init__(self, message: str, field: str):
        super().__init__(message)
        self.field = field


def validate_scenario(doc: dict) -> None:
    for err in Draft202012Validator(SCENARIO_SCHEMA).iter_errors(doc):
        raise SchemaError(err.message, err.json_path)
    for err in Draft202012Validator(_MODE_SCHEMAS[doc["mode"]]).iter_errors(
        doc["parameters"]
    ):
        path = err.json_path.replace("$", "$.parameters", 1)
        raise SchemaError(err.message, path)


def _fmt(value: float) -> str:
    return repr(float(value))


def write_atomic(path: Path, data: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv(rows: list[list], header: list[str]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(
            _fmt(v) if isinstance(v, float) else str(v) for v in row
        ))
    return "\n".join(lines) + "\n"


def scenario_hash(doc: dict) -> str:
    canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def _write_manifest(out: Path, scenario: dict, artifacts: list[str], stats: dict) -> None:
    doc = {
        "scenario": scenario,
        "scenario_sha256": scenario_hash(scenario),
        "seed": scenario.get("seed"),
        "tool_version": __version__,
        "artifacts": artifacts,
        "stats": stats,
    }
    write_atomic(out / "manifest.json", json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _pulse(params: dict, t_s: float) -> PulseShape:
    return PulseShape(symbol_period=t_s, rolloff=params.get("rolloff", 0.25))


def _write_point_csv(out: Path, label: str, point: SystemPoint) -> list[str]:
    rows = [[label, point.t_m, point.t_s, pds(point), classify(point).value]]
    write_atomic(
        out / "points.csv",
        _csv(rows, ["label", "t_m_s", "t_s_s", "pds_percent", "band"]),
    )
    return ["points.csv"]


def _run_classify(
    params: dict, seed: int, out: Optional[Path], threads: int
) -> tuple[list[str], list[str], dict]:
    point = SystemPoint(params["t_m_s"], params["t_s_s"], params.get("lambda", 10.0))
    band = classify(point)
    line = f"{band.value.capitalize()}, PDS={pds(point):g}%"
    artifacts = _write_point_csv(out, "classify", point) if out is not None else []
    return artifacts, [line], {"band": band.value, "pds_percent": pds(point)}


def _run_plan(
    params: dict, seed: int, out: Optional[Path], threads: int
) -> tuple[list[str], list[str], dict]:
    req = DesignRequest(
        t_m_estimate=params["t_m_s"],
        target_pds=params["target_pds"],
        lam=params.get("lambda", 10.0),
    )
    res = choose_symbol_period(req)
    lines = [
        f"T_s = {res.t_s:g} s ({res.band.value.capitalize()}, "
        f"PDS={pds(res.point):g}%)"
    ]
    if res.warning:
        lines.append(f"warning: {res.warning}")
    artifacts = _write_point_csv(out, "plan", res.point) if out is not None else []
    return artifacts, lines, {
        "t_s_s": res.t_s,
        "band": res.band.value,
        "pds_percent": pds(res.point),
    }


def _run_campaign_mode(
    params: dict, seed: int, out: Optional[Path], threads: int
) -> tuple[list[str], list[str], dict]:
    spec = CampaignSpec(
        profile_spec=ProfileSpec(
            n_paths=params["n_paths"],
            t_m=params["t_m_s"],
            decay=params.get("decay_s"),
        ),
        pulse=_pulse(params, params["t_s_s"]),
        trials=params["trials"],
        seed=seed,
        histogram_bins=params.get("histogram_bins", 64),
        normalize_g=params.get("normalize_g", True),
        epsilon=params.get("epsilon", 0.01),
    )
    result = run_campaign(spec, threads=threads)
    artifacts = []
    if out is not None:
        pdf_rows = [
            [float(c), float(d)]
            for c, d in zip(result.pdf.bin_centers, result.pdf.densities)
        ]
        write_atomic(out / "pdf.csv", _csv(pdf_rows, ["bin_center", "density"]))
        power = np.abs(result.g) ** 2
        rel = power / power.mean()
        fade_rows = [
            [eps, float(np.mean(rel < eps)), rayleigh_baseline_deep_fade(eps)]
            for eps in FADE_EPSILONS
        ]
        write_atomic(
            out / "fades.csv",
            _csv(fade_rows, ["epsilon", "empirical", "rayleigh_baseline"]),
        )
        artifacts = ["pdf.csv", "fades.csv"]
    point = SystemPoint(params["t_m_s"], params["t_s_s"], params.get("lambda", 10.0))
    stats = {
        "band": classify(point).value,
        "pds_percent": pds(point),
        "deep_fade_prob": result.deep_fade_prob,
        "rayleigh_baseline": rayleigh_baseline_deep_fade(spec.epsilon),
        "epsilon": spec.epsilon,
        "is_bimodal": result.dip.is_bimodal,
        "dip_depth": result.dip.dip_depth,
        "dip_width": result.dip.dip_width,
        "mean_sir_db": None if math.isinf(result.mean_sir_db) else result.mean_sir_db,
        "re_mean": float(np.mean(result.re_samples)),
        "re_variance": float(np.var(result.re_samples)),
        "n_samples": int(result.re_samples.size),
    }
    lines = [
        f"{classify(point).value.capitalize()} campaign, PDS={pds(point):g}%, "
        f"{spec.trials} trials",
        f"bimodal={result.dip.is_bimodal} dip_depth={result.dip.dip_depth:.4f}",
        f"deep-fade P={result.deep_fade_prob:.3e} "
        f"(Rayleigh {stats['rayleigh_baseline']:.3e} at eps={spec.epsilon:g})",
    ]
    return artifacts, lines, stats


def _run_reflectors(
    params: dict, seed: int, out: Optional[Path], threads: int
) -> tuple[list[str], list[str], dict]:
    scene = ReflectorScene.from_json(Path(params["scene_file"]).read_text())
    base = DelayProfile.from_json(Path(params["base_profile_file"]).read_text())
    result = select_reflectors(
        base,
        scene,
        t_s=params["t_s_s"],
        target_pds=params["target_pds"],
        lam=params.get("lambda", 10.0),
    )
    artifacts = []
    if out is not None:
        write_atomic(out / "selected_profile.json", result.profile.to_json() + "\n")
        write_atomic(out / "selection.json", json.dumps({
            "feasible": result.feasible,
            "active_ids": list(result.active_ids),
            "achieved_pds_percent": result.achieved_pds,
            "band": result.band.value,
            "t_m_s": result.point.t_m,
            "t_s_s": result.point.t_s,
        }, indent=2) + "\n")
        artifacts = ["selected_profile.json", "selection.json"]
    lines = [
        f"selected {len(result.active_ids)} reflector(s): "
        f"{', '.join(result.active_ids) or 'none'}",
        f"resulting PDS={result.achieved_pds:g}% -> {result.band.value}",
    ]
    if not result.feasible:
        lines.append(
            f"infeasible: best achievable PDS {result.achieved_pds:g}% "
            f"< target {params['target_pds']:g}%"
        )
    stats = {
        "feasible": result.feasible,
        "active_ids": list(result.active_ids),
        "achieved_pds_percent": result.achieved_pds,
        "band": result.band.value,
    }
    return artifacts, lines, stats


def _run_ofdm(
    params: dict, seed: int, out: Optional[Path], threads: int
) -> tuple[list[str], list[str], dict]:
    spec = OfdmCampaignSpec(
        profile_spec=ProfileSpec(n_paths=params["n_paths"], t_m=params["t_m_s"]),
        pulse=_pulse(params, params["t_s_s"]),
        n_taps=params.get("n_taps", 2),
        n_fft=params.get("n_fft", 64),
        trials=params["trials"],
        seed=seed,
        epsilon=params.get("epsilon", 0.01),
        iid_taps_baseline=params.get("iid_baseline", False),
    )
    stats = subcarrier_fade_stats(spec, threads=threads)
    artifacts = []
    if out is not None:
        rows = [
            [k, stats.dip_reports[k].dip_depth, float(stats.deep_fade_prob[k]),
             stats.baseline]
            for k in range(spec.n_fft)
        ]
        write_atomic(
            out / "subcarriers.csv",
            _csv(rows, ["subcarrier_index", "dip_depth", "deep_fade_prob", "baseline"]),
        )
        artifacts = ["subcarriers.csv"]
    se = math.sqrt(stats.baseline * (1.0 - stats.baseline) / spec.trials)
    below = int(np.sum(stats.deep_fade_prob < stats.baseline - 3.0 * se))
    lines = [
        f"{spec.n_fft} subcarriers, {spec.trials} trials, "
        f"{'iid-tap baseline' if spec.iid_taps_baseline else 'generalized mediumband'}",
        f"{below}/{spec.n_fft} subcarriers below the Rayleigh baseline by >3 SE",
    ]
    summary = {
        "subcarriers_below_baseline_3se": below,
        "n_fft": spec.n_fft,
        "baseline": stats.baseline,
        "median_deep_fade_prob": float(np.median(stats.deep_fade_prob)),
    }
    return artifacts, lines, summary


def _run_ber(
    params: dict, seed: int, out: Optional[Path], threads: int
) -> tuple[list[str], list[str], dict]:
    spec = CampaignSpec(
        profile_spec=ProfileSpec(n_paths=params["n_paths"], t_m=params["t_m_s"]),
        pulse=_pulse(params, params["t_s_s"]),
        trials=params["trials"],
        seed=seed,
    )
    curve = ber_simulation(
        spec,
        modulation=params.get("modulation", "BPSK"),
        snr_db_list=params["snr_db"],
        symbols_per_trial=params["symbols_per_trial"],
        threads=threads,
    )
    artifacts = []
    if out is not None:
        rows = [[snr, ber, spec.trials] for snr, ber in curve]
        write_atomic(out / "ber.csv", _csv(rows, ["snr_db", "ber", "trials"]))
        artifacts = ["ber.csv"]
    lines = [f"SNR {snr:g} dB: BER {ber:.3e}" for snr, ber in curve]
    return artifacts, lines, {"ber_curve": [[snr, ber] for snr, ber in curve]}


_RUNNERS = {
    "classify": _run_classify,
    "plan": _run_plan,
    "campaign": _run_campaign_mode,
    "reflectors": _run_reflectors,
    "ofdm": _run_ofdm,
    "ber": _run_ber,
}


def execute_scenario(scenario: dict, threads: int = 1) -> int:
    """Validate and run one scenario document; returns the exit status."""
    try:
        validate_scenario(scenario)
    except SchemaError as err:
        print(json.dumps({"error": str(err), "field": err.field}), file=sys.stderr)
        return EXIT_SCHEMA
    out = Path(scenario["output_dir"]) if "output_dir" in scenario else None
    seed = scenario.get("seed", 0)
    try:
        artifacts, lines, stats = _RUNNERS[scenario["mode"]](
            scenario["parameters"], seed, out, threads
        )
    except (ValueError, OSError, KeyError) as err:
        print(json.dumps({"error": str(err)}), file=sys.stderr)
        return EXIT_ERROR
    if out is not None:
        _write_manifest(out, scenario, artifacts, stats)
    print(f"[{scenario['name']}]")
    for line in lines:
        print(f"  {line}")
    if scenario["mode"] == "reflectors" and not stats["feasible"]:
        return EXIT_INFEASIBLE
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--out", type=str, default=None, help="artifact directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mediumband",
        description="Mediumband channel simulator and design toolkit",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a (T_m, T_s) operating point")
    p.add_argument("--tm", type=float, required=True, help="max excess delay, seconds")
    p.add_argument("--ts", type=float, required=True, help="symbol period, seconds")
    p.add_argument("--lam", type=float, default=10.0)
    _add_common(p)

    p = sub.add_parser("plan", help="choose T_s for a target PDS")
    p.add_argument("--tm", type=float, required=True)
    p.add_argument("--target-pds", type=float, required=True)
    p.add_argument("--lam", type=float, default=10.0)
    _add_common(p)

    p = sub.add_parser("campaign", help="Monte Carlo fading-factor campaign")
    p.add_argument("--tm", type=float, required=True)
    p.add_argument("--ts", type=float, required=True)
    p.add_argument("--paths", type=int, default=8)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--bins", type=int, default=64)
    p.add_argument("--rolloff", type=float, default=0.25)
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--no-normalize", action="store_true")
    _add_common(p)

    p = sub.add_parser("reflectors", help="real-time mediumband conversion")
    p.add_argument("--scene", type=str, required=True, help="scene JSON file")
    p.add_argument("--base", type=str, required=True, help="base profile JSON file")
    p.add_argument("--ts", type=float, required=True)
    p.add_argument("--target-pds", type=float, required=True)
    p.add_argument("--lam", type=float, default=10.0)
    _add_common(p)

    p = sub.add_parser("ofdm", help="per-subcarrier deep-fade statistics")
    p.add_argument("--tm", type=float, required=True)
    p.add_argument("--ts", type=float, required=True)
    p.add_argument("--paths", type=int, default=12)
    p.add_argument("--taps", type=int, default=2)
    p.add_argument("--nfft", type=int, default=64)
    p.add_argument("--trials", type=int, default=50_000)
    p.add_argument("--rolloff", type=float, default=0.25)
    p.add_argument("--iid-baseline", action="store_true")
    _add_common(p)

    p = sub.add_parser("ber", help="uncoded BER vs SNR")
    p.add_argument("--tm", type=float, required=True)
    p.add_argument("--ts", type=float, required=True)
    p.add_argument("--paths", type=int, default=8)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--symbols", type=int, default=1000)
    p.add_argument("--snr", type=float, nargs="+", required=True)
    p.add_argument("--modulation", choices=["BPSK", "QPSK"], default="BPSK")
    p.add_argument("--rolloff", type=float, default=0.25)
    _add_common(p)

    p = sub.add_parser("run", help="run a scenario JSON file")
    p.add_argument("scenario_file", type=str)
    p.add_argument("--seed", type=int, default=None, help="override scenario seed")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", type=str, default=None, help="override output_dir")
    return parser


def _scenario_from_args(args: argparse.Namespace) -> dict:
    cmd = args.command
    if cmd == "classify":
        params = {"t_m_s": args.tm, "t_s_s": args.ts, "lambda": args.lam}
    elif cmd == "plan":
        params = {"t_m_s": args.tm, "target_pds": args.target_pds, "lambda": args.lam}
    elif cmd == "campaign":
        params = {
            "t_m_s": args.tm,
            "t_s_s": args.ts,
            "n_paths": args.paths,
            "trials": args.trials,
            "histogram_bins": args.bins,
            "rolloff": args.rolloff,
            "epsilon": args.epsilon,
            "normalize_g": not args.no_normalize,
        }
    elif cmd == "reflectors":
        params = {
            "scene_file": args.scene,
            "base_profile_file": args.base,
            "t_s_s": args.ts,
            "target_pds": args.target_pds,
            "lambda": args.lam,
        }
    elif cmd == "ofdm":
        params = {
            "t_m_s": args.tm,
            "t_s_s": args.ts,
            "n_paths": args.paths,
            "n_taps": args.taps,
            "n_fft": args.nfft,
            "trials": args.trials,
            "rolloff": args.rolloff,
            "iid_baseline": args.iid_baseline,
        }
    elif cmd == "ber":
        params = {
            "t_m_s": args.tm,
            "t_s_s": args.ts,
            "n_paths": args.paths,
            "trials": args.trials,
            "symbols_per_trial": args.symbols,
            "snr_db": list(args.snr),
            "modulation": args.modulation,
        }
    else:
        raise AssertionError(cmd)
    scenario = {"name": cmd, "mode": cmd, "parameters": params, "seed": args.seed}
    if args.out is not None:
        scenario["output_dir"] = args.out
    return scenario


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        try:
            scenario = json.loads(Path(args.scenario_file).read_text())
        except (OSError, json.JSONDecodeError) as err:
            print(json.dumps({"error": str(err), "field": "$"}), file=sys.stderr)
            return EXIT_SCHEMA
        if not isinstance(scenario, dict):
            print(
                json.dumps({"error": "scenario must be a JSON object", "field": "$"}),
                file=sys.stderr,
            )
            return EXIT_SCHEMA
        if args.seed is not None:
            scenario["seed"] = args.seed
        if args.out is not None:
            scenario["output_dir"] = args.out
        return execute_scenario(scenario, threads=args.threads)
    return execute_scenario(_scenario_from_args(args), threads=args.threads)


if __name__ == "__main__":
    sys.exit(main())
