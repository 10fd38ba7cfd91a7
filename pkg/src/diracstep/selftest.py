"""Built-in verification battery behind `diracstep selftest`.

Each check returns (name, passed, detail).  The battery covers the special
functions, the oscillator-equation residual of the constructed solution, the
closed-form-vs-integrator agreement, the Heaviside and adiabatic limits, the
normalization identities, and the backward-amplitude prefactor convention.
"""

from __future__ import annotations

import cmath
import math
import random
import time
from dataclasses import dataclass

from . import analytic, model, oracle, specfun

ANCHOR = dict(m=1.0, q=1.0, p=math.sqrt(3.0), a1=0.0, a2=2.0 * math.sqrt(3.0))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _check_specfun_values(tol=1e-10):
    worst = 0.0
    cases = [
        (abs(specfun.log_gamma(1.0)), 0.0, 1.0),
        (abs(specfun.log_gamma(0.5) - math.log(math.sqrt(math.pi))), 0.0, 1.0),
        (abs(specfun.log_gamma(4.0) - math.log(6.0)), 0.0, 1.0),
        (abs(specfun.hyp2f1(1, 1, 2, -1.0) - math.log(2.0)), 0.0, 1.0),
        (abs(specfun.hyp2f1(0.5, 0.5, 2, 1.0) - 4.0 / math.pi), 0.0, 1.0),
    ]
    for got, want, scale in cases:
        worst = max(worst, abs(got - want) / scale)
    # Pfaff consistency at z = -1 for a complex triple
    a, b, c = 0.3 + 0.7j, 1.1 + 0.0j, 2.4 - 0.2j
    lhs = specfun.hyp2f1(a, b, c, -1.0)
    rhs = 2.0 ** (-a) * specfun.hyp2f1(a, c - b, c, 0.5)
    worst = max(worst, abs(lhs - rhs) / abs(lhs))
    return worst < tol, f"worst deviation {worst:.2e} (tol {tol:g})"


def _check_reflection(tol=1e-10):
    rng = random.Random(20240811)
    worst = 0.0
    for _ in range(60):
        z = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
        if abs(z.imag) < 0.05:
            continue
        lhs = cmath.exp(specfun.log_gamma(z)) * cmath.exp(specfun.log_gamma(1 - z))
        rhs = math.pi / cmath.sin(math.pi * z)
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return worst < tol, f"worst reflection deviation {worst:.2e} (tol {tol:g})"


def _check_potential(tol=1e-12):
    params = model.StepParameters(m=1, q=1, p=0.3, a1=-0.7, a2=2.1, tau=0.4, t0=0.2)
    worst = abs(model.potential_at(params.t0, params) - 0.5 * (params.a1 + params.a2))
    for s in (-5.0, -1.0, -0.1, 0.0, 0.3, 2.0, 40.0, 250.0):
        t = params.t0 + s * params.tau
        a = model.potential_at(t, params)
        b = model.potential_at_exp_form(t, params)
        worst = max(worst, abs(a - b) / max(abs(a), 1.0))
    return worst < tol, f"worst closed-form deviation {worst:.2e} (tol {tol:g})"


def _check_residual(tol=1e-7):
    worst = 0.0
    for (p, a2, tau) in ((math.sqrt(3.0), 2 * math.sqrt(3.0), 0.3), (1.4, -2.0, 0.8)):
        params = model.StepParameters(m=1, q=1, p=p, a1=0.0, a2=a2, tau=tau)
        worst = max(worst, residual_max(params, n_points=8))
    return worst < tol, f"worst relative residual {worst:.2e} (tol {tol:g})"


def residual_max(params: model.StepParameters, n_points: int = 20,
                 seed: int = 7, span: float = 2.0) -> float:
    """Max relative residual |phi'' + Omega^2 phi| / |Omega^2 phi| on sample times.

    phi'' by central differences of the chart evaluation; the matched solution
    is evaluated with the chart native to each side of t0.
    """
    sol = analytic.match_at_t0(analytic.build_solution(params), params)
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(n_points):
        t = params.t0 + rng.uniform(-span, span) * params.tau
        omega2 = analytic.governing_frequency(t, params)
        # fourth-order five-point stencil; h balances its h^4 truncation
        # against rounding on the local variation scale
        w_eff = math.sqrt(abs(omega2)) + 2.0 / params.tau
        h = 1e-2 / w_eff
        if t <= params.t0:
            ev = lambda tt: analytic.solve_earlier(sol, tt, params).upper
        else:
            ev = lambda tt: analytic.solve_later(sol, tt, params).upper
        phi = [ev(t + k * h) for k in (-2, -1, 0, 1, 2)]
        second = (-phi[0] + 16 * phi[1] - 30 * phi[2] + 16 * phi[3] - phi[4]) / (12 * h * h)
        res = abs(second + omega2 * phi[2]) / abs(omega2 * phi[2])
        worst = max(worst, res)
    return worst


def _check_vs_oracle(tol=1e-6):
    worst = 0.0
    points = [
        dict(ANCHOR, tau=0.1),
        dict(ANCHOR, tau=0.3),
        dict(ANCHOR, tau=1.0),
        dict(m=1.0, q=1.0, p=0.5, a1=0.0, a2=2.0, tau=0.05),
        dict(m=1.0, q=1.0, p=2.5, a1=0.0, a2=-1.0, tau=0.5),
        dict(m=1.0, q=1.0, p=1.0, a1=0.0, a2=5.0, tau=0.3),
    ]
    for kw in points:
        report = oracle.compare(model.StepParameters(**kw), tolerance=tol)
        bar = max(1.0, report.analytic.f, report.analytic.b)
        worst = max(worst, report.deviations["f"] / bar, report.deviations["b"] / bar)
        if not report.passed:
            return False, f"deviation {worst:.2e} at {kw}"
    return worst < tol, f"worst f/b deviation {worst:.2e} (tol {tol:g})"


def _check_sharp_limit(tol=1e-3):
    params = model.StepParameters(tau=1e-4, **ANCHOR)
    soft = analytic.scatter(params)
    hard = analytic.sharp_step(**ANCHOR)
    worst = max(
        abs(soft.F - hard.F),
        abs(soft.B - hard.B),
        abs(hard.F - 0.5),
        abs(hard.B - 0.5),
        abs(hard.F_u - 0.25),
        abs(hard.B_u - 0.75),
    )
    return worst < tol, f"worst sharp-limit deviation {worst:.2e} (tol {tol:g})"


def _check_adiabatic(tol=1e-6):
    taus = (2.0, 4.0, 7.0, 10.0)
    values = [analytic.scatter(model.StepParameters(tau=t, **ANCHOR)).B_u for t in taus]
    decreasing = all(values[i + 1] < values[i] for i in range(len(values) - 1))
    ok = decreasing and values[-1] < tol
    return ok, f"B_u over tau {taus}: {['%.3e' % v for v in values]}"


def _check_normalization(tol_fb=1e-12, tol_u=1e-9, n=60):
    rng = random.Random(515)
    worst_fb = 0.0
    worst_u = 0.0
    for _ in range(n):
        params = model.StepParameters(
            m=1.0,
            q=1.0,
            p=rng.uniform(-5, 5),
            a1=0.0,
            a2=rng.uniform(-5, 5),
            tau=math.exp(rng.uniform(math.log(1e-4), math.log(10.0))),
        )
        res = analytic.scatter(params)
        worst_fb = max(worst_fb, abs(res.F + res.B - 1.0))
        worst_u = max(worst_u, abs(res.F_u + res.B_u - 1.0))
    ok = worst_fb < tol_fb and worst_u < tol_u
    return ok, f"|F+B-1| {worst_fb:.2e} (tol {tol_fb:g}), |F_u+B_u-1| {worst_u:.2e} (tol {tol_u:g})"


def _check_backward_prefactor(tol=1e-6):
    # asymmetric kinematics so the two printed conventions actually differ
    params = model.StepParameters(m=1.0, q=1.0, p=math.sqrt(3.0), a1=0.0, a2=1.0, tau=0.4)
    diag = analytic.backward_prefactor_check(params)
    out = oracle.integrate(params)
    dev_late = abs(diag["b"] - out.b_num)
    dev_early = abs(diag["b_early_variant"] - out.b_num)
    ok = dev_late < tol and dev_early > 100 * tol
    detail = (
        f"late-frequency form agrees with the integrator to {dev_late:.2e}; "
        f"early-frequency variant differs by factor {diag['ratio_early_over_late']:.6f}"
    )
    return ok, detail


_CHECKS = [
    ("special-function reference values", _check_specfun_values),
    ("log-gamma reflection identity", _check_reflection),
    ("potential closed forms", _check_potential),
    ("oscillator-equation residual", _check_residual),
    ("closed form vs integrator", _check_vs_oracle),
    ("sharp-step limit", _check_sharp_limit),
    ("adiabatic suppression", _check_adiabatic),
    ("normalization identities", _check_normalization),
    ("backward-prefactor convention", _check_backward_prefactor),
]


def run_all(break_tolerance: bool = False) -> list[CheckResult]:
    results = []
    for i, (name, fn) in enumerate(_CHECKS):
        start = time.perf_counter()
        try:
            if break_tolerance and i == 0:
                ok, detail = fn(tol=0.0)
            else:
                ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(ok), detail, time.perf_counter() - start))
    return results
