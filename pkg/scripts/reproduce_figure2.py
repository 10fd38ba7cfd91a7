#!/usr/bin/env python3
"""Reproduce the two-panel scattering-probability figure.

Sweeps the step strength q*A2 at fixed incident energy ratio E1/m for a fast
(effectively Heaviside) and a slow transition, writing panel_a.csv,
panel_b.csv and a gnuplot script into --out-dir.  Thin wrapper over
`diracstep figure2` so the figure data can be regenerated with one command:

    python scripts/reproduce_figure2.py --out-dir figure2_out
    (cd figure2_out && gnuplot figure2.gp)   # optional rendering
"""

import sys

from diracstep import cli

if __name__ == "__main__":
    sys.exit(cli.main(["figure2"] + sys.argv[1:]))
