#!/usr/bin/env python3
"""Compare uncoded BPSK BER over NLoS mediumband (high PDS) and narrowband
(low PDS) channels at equal SNR with single-tap detection.  Writes
ber_comparison.csv (snr_db, ber_mediumband, ber_narrowband).
"""

import argparse
import csv
from pathlib import Path

from mediumband.channel import ProfileSpec
from mediumband.montecarlo import CampaignSpec, ber_simulation
from mediumband.pulse import PulseShape


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ts", type=float, default=1e-6, help="symbol period [s]")
    parser.add_argument("--paths", type=int, default=8)
    parser.add_argument("--trials", type=int, default=4000)
    parser.add_argument("--symbols", type=int, default=1000, help="symbols per trial")
    parser.add_argument("--seed", type=int, default=9)
    parser.add_argument("--pds-medium", type=float, default=60.0)
    parser.add_argument("--pds-narrow", type=float, default=4.0)
    parser.add_argument(
        "--snr", type=float, nargs="+", default=[0, 2, 4, 6, 8, 10, 12, 14]
    )
    parser.add_argument("--modulation", choices=["BPSK", "QPSK"], default="BPSK")
    parser.add_argument("--out", type=Path, default=Path("ber_comparison.csv"))
    args = parser.parse_args()

    pulse = PulseShape(symbol_period=args.ts, rolloff=0.25)

    def curve(pds):
        spec = CampaignSpec(
            profile_spec=ProfileSpec(n_paths=args.paths, t_m=pds / 100.0 * args.ts),
            pulse=pulse,
            trials=args.trials,
            seed=args.seed,
        )
        return ber_simulation(spec, args.modulation, args.snr, args.symbols)

    med = curve(args.pds_medium)
    nar = curve(args.pds_narrow)
    with args.out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["snr_db", "ber_mediumband", "ber_narrowband"])
        for (snr, bm), (_, bn) in zip(med, nar):
            writer.writerow([snr, bm, bn])
            print(f"{snr:5.1f} dB  mediumband {bm:.3e}  narrowband {bn:.3e}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
