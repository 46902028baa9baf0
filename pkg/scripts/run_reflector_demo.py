#!/usr/bin/env python3
"""Demonstrate converting a narrowband link into a mediumband one by
activating reflectors inside the confocal-ellipse annulus.  Prints the
selection and the resulting classification.
"""

import argparse

from mediumband.channel import (
    SPEED_OF_LIGHT,
    DelayProfile,
    MultipathComponent,
    classify,
    max_excess_delay,
    pds,
)
from mediumband.geometry import Reflector, ReflectorScene, select_reflectors


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--target-pds", type=float, default=40.0)
    args = parser.parse_args()

    # TX/RX 6 m apart, annulus between path lengths 10 m and 16 m, so induced
    # excess delays span 4/c .. 10/c seconds.
    t_s = 20.0 / SPEED_OF_LIGHT
    scene = ReflectorScene(
        tx=(-3.0, 0.0),
        rx=(3.0, 0.0),
        reflectors=(
            Reflector("wall", (0.0, 7.0), 0.4 + 0.1j),
            Reflector("pillar", (2.0, 5.0), 0.3 - 0.2j),
            Reflector("cabinet", (0.0, 1.0), 0.5 + 0j),  # too close: inside annulus
        ),
        a1=5.0,
        a2=8.0,
    )
    base = DelayProfile((
        MultipathComponent(1.0 + 0j, 0.0),
        MultipathComponent(0.5 + 0.2j, 0.05 * t_s),
    ))

    print(f"base:   T_m={max_excess_delay(base):.3e} s, T_s={t_s:.3e} s")
    result = select_reflectors(base, scene, t_s, target_pds=args.target_pds)
    print(f"target: PDS {args.target_pds:.0f}%  feasible={result.feasible}")
    print(f"active: {list(result.active_ids)}")
    print(
        f"result: {classify(result.point).value}, "
        f"PDS={pds(result.point):.1f}%, "
        f"T_m={max_excess_delay(result.profile):.3e} s"
    )


if __name__ == "__main__":
    main()
