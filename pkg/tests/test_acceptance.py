"""Acceptance suite: every release criterion at its stated tolerance.

Each criterion prints one PASS/FAIL line (run pytest with -s to see them all)
and asserts the same condition.  The closed-form-vs-integrator grid is
computed once in a module fixture and reused by the criteria that share it.
"""

import cmath
import math
import random
import time

import pytest

from diracstep import (
    IntegrationConfig,
    StepParameters,
    compare,
    hyp2f1,
    log_gamma,
    scatter,
    sharp_step,
)
from diracstep import cli
from diracstep.selftest import residual_max

RT3 = math.sqrt(3.0)
GRID_P = (0.5, 1.0, RT3, 2.5, 4.0)
GRID_A2 = (0.5, 1.0, 2 * RT3, 4.0, 5.0)
GRID_TAU = (0.05, 0.1, 0.3, 1.0, 3.0)
ANCHOR = dict(m=1.0, q=1.0, p=RT3, a1=0.0, a2=2 * RT3)

_MODULE_T0 = time.perf_counter()


def report(criterion: int, ok: bool, detail: str) -> bool:
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


@pytest.fixture(scope="module")
def oracle_grid():
    """compare() over the fixed 5x5x5 grid; deviations, drifts, runtime."""
    t0 = time.perf_counter()
    records = []
    for p in GRID_P:
        for a2 in GRID_A2:
            for tau in GRID_TAU:
                params = StepParameters(m=1.0, q=1.0, p=p, a1=0.0, a2=a2, tau=tau)
                rep = compare(params)
                records.append((p, a2, tau, rep))
    return records, time.perf_counter() - t0


def test_criterion_1_normalization_identities():
    rng = random.Random(20260810)
    t0 = time.perf_counter()
    worst_fb = 0.0
    worst_u = 0.0
    for _ in range(500):
        params = StepParameters(
            m=1.0, q=1.0,
            p=rng.uniform(-5.0, 5.0),
            a1=0.0,
            a2=rng.uniform(-5.0, 5.0),
            tau=math.exp(rng.uniform(math.log(1e-4), math.log(10.0))),
        )
        res = scatter(params)
        worst_fb = max(worst_fb, abs(res.F + res.B - 1.0))
        worst_u = max(worst_u, abs(res.F_u + res.B_u - 1.0))
    elapsed = time.perf_counter() - t0
    ok = worst_fb < 1e-12 and worst_u < 1e-9 and elapsed < 10.0
    assert report(1, ok, f"|F+B-1| {worst_fb:.2e} (<1e-12), "
                         f"|F_u+B_u-1| {worst_u:.2e} (<1e-9), {elapsed:.1f}s (<10s)")


def test_criterion_2_analytic_vs_oracle(oracle_grid):
    records, elapsed = oracle_grid
    worst = 0.0
    worst_pt = None
    for p, a2, tau, rep in records:
        bar = 1e-6 * max(1.0, rep.analytic.f, rep.analytic.b)
        dev = max(rep.deviations["f"], rep.deviations["b"])
        if dev / bar > worst:
            worst = dev / bar
            worst_pt = (p, a2, tau)
    ok = worst < 1.0 and elapsed < 60.0
    assert report(2, ok, f"worst |f,b| deviation {worst:.2e} of tolerance at "
                         f"{worst_pt}, grid time {elapsed:.1f}s (<60s)")


def test_criterion_3_sharp_step_limit():
    worst = 0.0
    for p in GRID_P:
        for a2 in GRID_A2:
            soft = scatter(StepParameters(m=1.0, q=1.0, p=p, a1=0.0, a2=a2, tau=1e-4))
            hard = sharp_step(m=1.0, q=1.0, p=p, a1=0.0, a2=a2)
            worst = max(worst, abs(soft.F - hard.F))
    anchor_soft = scatter(StepParameters(tau=1e-4, **ANCHOR))
    anchor_dev = max(
        abs(anchor_soft.F - 0.5), abs(anchor_soft.B - 0.5),
        abs(anchor_soft.F_u - 0.25), abs(anchor_soft.B_u - 0.75),
    )
    ok = worst < 1e-3 and anchor_dev < 1e-3
    assert report(3, ok, f"max |F - F_sharp| {worst:.2e} (<1e-3), "
                         f"anchor (1/2,1/2,1/4,3/4) deviation {anchor_dev:.2e} (<1e-3)")


def test_criterion_4_slow_step_backward_wave(tmp_path, capsys):
    code = cli.main(["figure2", "--out-dir", str(tmp_path), "--count", "81"])
    capsys.readouterr()
    assert code == 0

    def rows(name):
        lines = [l for l in (tmp_path / name).read_text().splitlines()
                 if l and not l.startswith("#")]
        header = lines[0].split(",")
        return [dict(zip(header, l.split(","))) for l in lines[1:]]

    b_slow_max = max(float(r["B"]) for r in rows("panel_b.csv"))
    fast_dev = max(abs(float(r["B"]) - float(r["B_sharp"])) for r in rows("panel_a.csv"))
    ok = b_slow_max > 0.01 and fast_dev < 0.01
    assert report(4, ok, f"slow panel max B {b_slow_max:.3f} (>0.01), "
                         f"fast panel max |B - B_sharp| {fast_dev:.2e} (<0.01)")


def test_criterion_5_adiabatic_suppression():
    taus = (1.25, 1.75, 2.5, 3.5, 5.0, 7.0, 10.0)  # tau*(E1+E2) from 5 to 40
    values = [scatter(StepParameters(tau=tau, **ANCHOR)).B_u for tau in taus]
    decreasing = all(b < a for a, b in zip(values, values[1:]))
    ok = decreasing and values[-1] < 1e-6
    assert report(5, ok, f"B_u strictly decreasing over tau {taus}: {decreasing}, "
                         f"B_u(10) = {values[-1]:.2e} (<1e-6)")


def test_criterion_6_special_functions():
    t0 = time.perf_counter()
    worst = max(
        abs(cmath.exp(log_gamma(1.0)) - 1.0),
        abs(cmath.exp(log_gamma(0.5)) - math.sqrt(math.pi)),
        abs(cmath.exp(log_gamma(4.0)) - 6.0),
        abs(hyp2f1(1, 1, 2, -1.0) - math.log(2.0)),
        abs(hyp2f1(0.5, 0.5, 2.0, 1.0) - 4.0 / math.pi),
    )
    rng = random.Random(6)
    for _ in range(40):
        z = complex(rng.uniform(-20, 20), rng.uniform(0.05, 20))
        refl = cmath.exp(log_gamma(z)) * cmath.exp(log_gamma(1 - z)) * cmath.sin(math.pi * z) / math.pi
        worst = max(worst, abs(refl - 1.0))
    for _ in range(40):
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        c = complex(rng.uniform(1.0, 3.0), rng.uniform(-2, 2))
        z = rng.uniform(-0.9, 0.45)
        base = hyp2f1(a, b, c, z)
        pfaff = (1 - z) ** (-a) * hyp2f1(a, c - b, c, z / (z - 1))
        euler = (1 - z) ** (c - a - b) * hyp2f1(c - a, c - b, c, z)
        scale = max(1.0, abs(base))
        worst = max(worst, abs(pfaff - base) / scale, abs(euler - base) / scale)
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-10 and elapsed < 5.0
    assert report(6, ok, f"worst identity deviation {worst:.2e} (<1e-10), "
                         f"{elapsed:.1f}s (<5s)")


def test_criterion_7_oracle_integrity(oracle_grid):
    records, _ = oracle_grid
    worst_drift = max(rep.outcome.norm_drift for _, _, _, rep in records)
    # stability of a grid subset under a wider window and 10x tighter tolerance
    worst_change = 0.0
    for p, a2, tau in ((0.5, 0.5, 0.1), (RT3, 2 * RT3, 0.3), (2.5, 4.0, 1.0),
                       (4.0, 1.0, 0.05), (1.0, 5.0, 3.0)):
        params = StepParameters(m=1.0, q=1.0, p=p, a1=0.0, a2=a2, tau=tau)
        base = compare(params).outcome
        wider = compare(params, IntegrationConfig(span_factor=24.0)).outcome
        tighter = compare(params, IntegrationConfig(rel_tol=3e-13, abs_tol=3e-15)).outcome
        for other in (wider, tighter):
            worst_change = max(worst_change, abs(other.f_num - base.f_num),
                               abs(other.b_num - base.b_num))
    ok = worst_drift < 1e-9 and worst_change < 1e-7
    assert report(7, ok, f"worst norm drift {worst_drift:.2e} (<1e-9), "
                         f"worst f/b change under N+4 and tol/10 {worst_change:.2e} (<1e-7)")


def test_criterion_8_residual():
    rng = random.Random(8)
    worst = 0.0
    for _ in range(10):
        params = StepParameters(
            m=1.0, q=1.0,
            p=rng.uniform(0.3, 4.0),
            a1=0.0,
            a2=rng.uniform(-4.0, 4.0),
            tau=rng.uniform(0.05, 2.0),
        )
        worst = max(worst, residual_max(params, n_points=20, seed=rng.randrange(1 << 30)))
    ok = worst < 1e-7
    assert report(8, ok, f"worst relative residual {worst:.2e} (<1e-7) "
                         "over 10 random parameter sets x 20 times")


def test_criterion_9_reproducibility(capsys):
    code = cli.main(["selftest"])
    selftest_out = capsys.readouterr().out
    sweep_args = ["sweep", "--sweep-var", "a2", "--start", "-3", "--stop", "5",
                  "--count", "17", "--p", "1.3", "--tau", "0.4"]
    assert cli.main(sweep_args) == 0
    first = capsys.readouterr().out
    assert cli.main(sweep_args) == 0
    second = capsys.readouterr().out
    elapsed = time.perf_counter() - _MODULE_T0
    ok = code == 0 and first == second and elapsed < 120.0
    assert report(9, ok, f"selftest exit {code} (=0), sweep CSV byte-identical: "
                         f"{first == second}, acceptance module time {elapsed:.0f}s (<120s)")
