#!/usr/bin/env python3
"""Backward-wave suppression versus transition slowness.

Sweeps tau log-uniformly at fixed kinematics and tabulates both probability
normalizations, optionally cross-checking selected rows against the time
integrator.  Writes CSV to stdout; redirect to keep it.

    python scripts/adiabatic_sweep.py --p 1.7320508 --a2 3.4641016 \
        --start 0.01 --stop 10 --count 25 --oracle-every 6
"""

import argparse
import sys

from diracstep import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--m", type=float, default=1.0)
    parser.add_argument("--q", type=float, default=1.0)
    parser.add_argument("--p", type=float, required=True)
    parser.add_argument("--a1", type=float, default=0.0)
    parser.add_argument("--a2", type=float, required=True)
    parser.add_argument("--start", type=float, default=0.01)
    parser.add_argument("--stop", type=float, default=10.0)
    parser.add_argument("--count", type=int, default=25)
    parser.add_argument("--oracle-every", type=int, default=0)
    args = parser.parse_args()

    argv = [
        "sweep", "--sweep-var", "tau", "--log",
        "--m", str(args.m), "--q", str(args.q), "--p", str(args.p),
        "--a1", str(args.a1), "--a2", str(args.a2),
        "--start", str(args.start), "--stop", str(args.stop),
        "--count", str(args.count),
    ]
    if args.oracle_every:
        argv += ["--oracle-every", str(args.oracle_every)]
    return cli.main(argv)


if __name__ == "__main__":
    sys.exit(main())
