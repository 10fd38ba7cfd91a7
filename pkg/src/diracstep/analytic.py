"""Closed-form scattering solution for the smooth temporal step.

Derivation summary (self-contained; see also model.py for the reduced system).
Eliminating theta from

    i phi' = pi(t) phi + m theta,   i theta' = -pi(t) theta + m phi

gives a single oscillator equation

    phi'' + Omega^2(t) phi = 0,     Omega^2 = pi^2 + m^2 + i pi',

with pi(t) = p - q A(t) and pi' = -q dA/dt.  On each side of t0 the change of
variable

    zeta = -exp(+2 (t - t0)/tau)   ("earlier" chart, t -> -inf gives zeta -> 0-)
    zeta = -exp(-2 (t - t0)/tau)   ("later"   chart, t -> +inf gives zeta -> 0-)

turns the tanh profile into a rational function of zeta; writing
phi = zeta^mu (1 - zeta)^nu f(zeta) with the exponents chosen to cancel the
regular singular points at zeta = 0 and 1 leaves the Gauss hypergeometric
equation for f.  With the shorthand

    eps1 = tau E1 / 2,  eps2 = tau E2 / 2,  d = tau (pi1 - pi2) / 2,

the indicial analysis fixes (verified symbolically and by the residual tests)

    earlier chart: mu = i eps1, nu = i d,
        (a, b, c)    = (i(eps1 + d + eps2), i(eps1 + d - eps2), 1 + 2 i eps1)
        (a', b', c') = (a - 2 mu, b - 2 mu, 1 - 2 i eps1)       [zeta^-mu branch]
    later chart:   mu = i eps2, same nu, with eps1 <-> eps2.

Both charts meet at t = t0, where zeta = -1.  Powers of zeta use the principal
branch with the negative axis approached from above (arg zeta = +pi), so
zeta^(-i eps) carries the real constant e^(pi eps) and, as t -> -/+inf, the
two branches reduce to plane waves e^(-/+ i E (t - t0)).  A pure
positive-frequency incident wave fixes (C1e, C2e) = (0, 1); continuity of
(phi, theta) at t0 is a 2x2 linear solve for (C1l, C2l) whose determinant is
the constant Wronskian -2 E2 / m, so the matching is never ill conditioned.

Output amplitudes are the standard-basis upper components of the asymptotic
plane waves,

    G_i = C2e e^(+pi eps1) (m + E1 - pi1) / (sqrt(2) m)
    G_f = C1l e^(-pi eps2) (m + E2 - pi2) / (sqrt(2) m)
    G_b = C2l e^(+pi eps2) (m - E2 - pi2) / (sqrt(2) m),

giving the amplitude ratios f = |G_f/G_i|, b = |G_b/G_i| and probabilities
F = f^2/(f^2+b^2), B = b^2/(f^2+b^2).  The unitary pair (F_u, B_u) instead
projects onto orthonormalized modes: F_u + B_u = 1 only by norm conservation,
which makes it a working diagnostic rather than an identity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

from .model import (
    SQRT2,
    AsymptoticModes,
    Basis,
    StepParameters,
    TwoSpinor,
    asymptotic_modes,
    dirac_upper,
    potential_at,
    potential_rate,
)
from .specfun import hyp2f1, hyp2f1_derivative

__all__ = [
    "ParameterRangeError",
    "ChartDomainError",
    "MatchingSingularError",
    "ChartExpansion",
    "HypergeometricSolution",
    "ScatteringResult",
    "governing_frequency",
    "build_solution",
    "solve_earlier",
    "solve_later",
    "match_at_t0",
    "asymptotic_amplitudes",
    "scatter",
    "sharp_step",
    "backward_prefactor_check",
    "result_from_mode_amplitudes",
]

# exp(pi*(eps1+eps2)) must stay below the double-precision overflow threshold
_EPS_SUM_LIMIT = 200.0
# |ln zeta| guard: beyond this the chart variable itself overflows
_LOG_ZETA_LIMIT = 690.0


class ParameterRangeError(ValueError):
    """tau * E too large for accurate double-precision evaluation."""


class ChartDomainError(ValueError):
    """Time so deep in the opposite half-line that the chart variable overflows."""


class MatchingSingularError(ArithmeticError):
    """Later-chart basis solutions numerically dependent at t0."""


@dataclass(frozen=True)
class ChartExpansion:
    """Hypergeometric data of one chart.

    sign: +1 for the earlier chart, -1 for the later one; enters both
    d(zeta)/dt = sign * 2 zeta / tau and pi(zeta) = pi_asym + sign * delta *
    zeta / (1 - zeta).  eps = tau * E_asym / 2 is the chart's frequency scale.
    """

    mu: complex
    nu: complex
    rho: complex
    abc: tuple[complex, complex, complex]
    abc_prime: tuple[complex, complex, complex]
    sign: int
    pi_asym: float
    eps: float


@dataclass(frozen=True)
class HypergeometricSolution:
    earlier: ChartExpansion
    later: ChartExpansion
    delta: float  # pi1 - pi2
    c1e: complex | None = None
    c2e: complex | None = None
    c1l: complex | None = None
    c2l: complex | None = None

    @property
    def matched(self) -> bool:
        return self.c1l is not None


@dataclass(frozen=True)
class ScatteringResult:
    """Asymptotic amplitudes and scattering probabilities.

    g_i/g_f/g_b are the standard-basis upper components of the incident and
    later forward/backward plane waves; f, b their moduli relative to g_i.
    (F, B) normalize f^2, b^2 to unity; (F_u, B_u) are the unitary-projection
    probabilities whose sum equals 1 only through norm conservation.
    """

    g_i: complex
    g_f: complex
    g_b: complex
    f: float
    b: float
    F: float
    B: float
    F_u: float
    B_u: float


def governing_frequency(t: float, params: StepParameters) -> complex:
    """Squared complex frequency Omega^2(t) = pi(t)^2 + m^2 + i pi'(t)."""
    piv = params.p - params.q * potential_at(t, params)
    pidot = -params.q * potential_rate(t, params)
    return complex(piv * piv + params.m * params.m, pidot)


def _chart(eps: float, eps_other: float, d: float, sign: int, pi_asym: float) -> ChartExpansion:
    mu = 1j * eps
    nu = 1j * d
    a = 1j * (eps + d + eps_other)
    b = 1j * (eps + d - eps_other)
    c = 1.0 + 2j * eps
    return ChartExpansion(
        mu=mu,
        nu=nu,
        rho=nu,
        abc=(a, b, c),
        abc_prime=(a - 2 * mu, b - 2 * mu, 1.0 - 2j * eps),
        sign=sign,
        pi_asym=pi_asym,
        eps=eps,
    )


def build_solution(params: StepParameters) -> HypergeometricSolution:
    """Construct both chart expansions; coefficients left unset."""
    modes = asymptotic_modes(params)
    eps1 = 0.5 * params.tau * modes.e1
    eps2 = 0.5 * params.tau * modes.e2
    d = 0.5 * params.tau * (modes.pi1 - modes.pi2)
    if eps1 + eps2 > _EPS_SUM_LIMIT or abs(d) > _EPS_SUM_LIMIT:
        raise ParameterRangeError(
            f"tau*(E1+E2)/2 = {eps1 + eps2:.3g} exceeds the supported range "
            f"{_EPS_SUM_LIMIT} for double-precision evaluation"
        )
    return HypergeometricSolution(
        earlier=_chart(eps1, eps2, d, +1, modes.pi1),
        later=_chart(eps2, eps1, d, -1, modes.pi2),
        delta=modes.pi1 - modes.pi2,
    )


def _branch_phi_and_dt(chart: ChartExpansion, tau: float, second: bool,
                       log_abs_zeta: float) -> tuple[complex, complex]:
    """One Frobenius branch: (phi, dphi/dt) at ln|zeta| = log_abs_zeta.

    second=False uses exponent +mu and (a, b, c); second=True the zeta^-mu
    branch with (a', b', c').  Principal branch: ln zeta = ln|zeta| + i pi.
    """
    mu = -chart.mu if second else chart.mu
    a, b, c = chart.abc_prime if second else chart.abc
    ln_zeta = complex(log_abs_zeta, math.pi)
    zeta = -math.exp(log_abs_zeta)
    one_minus = 1.0 - zeta
    head = cmath.exp(mu * ln_zeta + chart.nu * cmath.log(one_minus))
    f_val = hyp2f1(a, b, c, zeta)
    f_der = hyp2f1_derivative(a, b, c, zeta)
    phi = head * f_val
    # dphi/dzeta * zeta, assembled to stay finite as zeta -> 0
    zeta_dphi = phi * (mu - chart.nu * zeta / one_minus) + head * zeta * f_der
    dphi_dt = chart.sign * (2.0 / tau) * zeta_dphi
    return phi, dphi_dt


def _chart_spinor(chart: ChartExpansion, delta: float, params: StepParameters,
                  c_first: complex, c_second: complex, t: float) -> TwoSpinor:
    s = (t - params.t0) / params.tau
    log_abs_zeta = chart.sign * 2.0 * s
    if abs(log_abs_zeta) > _LOG_ZETA_LIMIT:
        raise ChartDomainError(
            f"t - t0 = {t - params.t0:.6g} is too deep in the "
            f"{'later' if chart.sign > 0 else 'earlier'} half-line for the "
            f"{'earlier' if chart.sign > 0 else 'later'} chart (|ln zeta| > "
            f"{_LOG_ZETA_LIMIT})"
        )
    zeta = -math.exp(log_abs_zeta)
    piv = chart.pi_asym + chart.sign * delta * zeta / (1.0 - zeta)
    phi = 0.0 + 0.0j
    dphi = 0.0 + 0.0j
    if c_first != 0:
        p1, d1 = _branch_phi_and_dt(chart, params.tau, False, log_abs_zeta)
        phi += c_first * p1
        dphi += c_first * d1
    if c_second != 0:
        p2, d2 = _branch_phi_and_dt(chart, params.tau, True, log_abs_zeta)
        phi += c_second * p2
        dphi += c_second * d2
    theta = (1j * dphi - piv * phi) / params.m
    return TwoSpinor(upper=phi, lower=theta, basis=Basis.WEYL)


def solve_earlier(sol: HypergeometricSolution, t: float, params: StepParameters,
                  coefficients: tuple[complex, complex] | None = None) -> TwoSpinor:
    """Chiral spinor of the earlier-chart solution at time t.

    Uses the matched (c1e, c2e) unless trial coefficients are supplied.
    """
    if coefficients is None:
        if sol.c1e is None:
            raise ValueError("coefficients unset; run match_at_t0 or pass trial values")
        coefficients = (sol.c1e, sol.c2e)
    return _chart_spinor(sol.earlier, sol.delta, params, coefficients[0], coefficients[1], t)


def solve_later(sol: HypergeometricSolution, t: float, params: StepParameters,
                coefficients: tuple[complex, complex] | None = None) -> TwoSpinor:
    """Chiral spinor of the later-chart solution at time t."""
    if coefficients is None:
        if sol.c1l is None:
            raise ValueError("coefficients unset; run match_at_t0 or pass trial values")
        coefficients = (sol.c1l, sol.c2l)
    return _chart_spinor(sol.later, sol.delta, params, coefficients[0], coefficients[1], t)


def match_at_t0(sol: HypergeometricSolution, params: StepParameters) -> HypergeometricSolution:
    """Fix the incident branch (c1e, c2e) = (0, 1) and solve continuity at t0.

    Both spinor components are matched in the chiral basis; since the basis
    change is unitary this is equivalent to matching in the standard basis.
    """
    t0 = params.t0
    incident = _chart_spinor(sol.earlier, sol.delta, params, 0.0, 1.0, t0)
    f1 = _chart_spinor(sol.later, sol.delta, params, 1.0, 0.0, t0)
    f2 = _chart_spinor(sol.later, sol.delta, params, 0.0, 1.0, t0)
    det = f1.upper * f2.lower - f2.upper * f1.lower
    scale = max(abs(f1.upper * f2.lower), abs(f2.upper * f1.lower), 1e-300)
    if not cmath.isfinite(det) or abs(det) < 1e-10 * scale:
        raise MatchingSingularError(
            "later-chart basis solutions are numerically dependent at t0 "
            f"(|W| = {abs(det):.3g}, scale {scale:.3g})"
        )
    c1l = (incident.upper * f2.lower - incident.lower * f2.upper) / det
    c2l = (f1.upper * incident.lower - f1.lower * incident.upper) / det
    return replace(sol, c1e=0.0 + 0.0j, c2e=1.0 + 0.0j, c1l=c1l, c2l=c2l)


def result_from_mode_amplitudes(gi_w: complex, gf_w: complex, gb_w: complex,
                                m: float, modes: AsymptoticModes) -> ScatteringResult:
    """Assemble a ScatteringResult from chiral-basis mode amplitudes."""
    g_i = gi_w * dirac_upper(modes.pi1, m, True)
    g_f = gf_w * dirac_upper(modes.pi2, m, True)
    g_b = gb_w * dirac_upper(modes.pi2, m, False)
    f = abs(g_f / g_i)
    b = abs(g_b / g_i)
    denom = f * f + b * b
    # squared norms of the unnormalized mode spinors, all safely positive
    n1 = m * m + (modes.e1 - modes.pi1) ** 2
    n2p = m * m + (modes.e2 - modes.pi2) ** 2
    n2m = m * m + (modes.e2 + modes.pi2) ** 2
    r_f = abs(gf_w / gi_w) ** 2
    r_b = abs(gb_w / gi_w) ** 2
    return ScatteringResult(
        g_i=g_i,
        g_f=g_f,
        g_b=g_b,
        f=f,
        b=b,
        F=f * f / denom,
        B=b * b / denom,
        F_u=r_f * n2p / n1,
        B_u=r_b * n2m / n1,
    )


def asymptotic_amplitudes(sol: HypergeometricSolution, params: StepParameters) -> ScatteringResult:
    """Extract plane-wave amplitudes from the matched solution.

    In each chart zeta -> 0 sends 2F1 -> 1 and (1-zeta)^nu -> 1, leaving pure
    plane waves whose constants are the e^(+-pi eps) branch factors of
    zeta^(+-mu); the chiral amplitudes below are exactly those limits.
    """
    if not sol.matched:
        raise ValueError("solution is unmatched; run match_at_t0 first")
    gi_w = sol.c2e * math.exp(math.pi * sol.earlier.eps)
    gf_w = sol.c1l * math.exp(-math.pi * sol.later.eps)
    gb_w = sol.c2l * math.exp(math.pi * sol.later.eps)
    return result_from_mode_amplitudes(gi_w, gf_w, gb_w, params.m, asymptotic_modes(params))


def scatter(params: StepParameters) -> ScatteringResult:
    """Full pipeline: build, match, extract."""
    return asymptotic_amplitudes(match_at_t0(build_solution(params), params), params)


def sharp_step(m: float, q: float, p: float, a1: float, a2: float) -> ScatteringResult:
    """Heaviside-limit scattering from the 2x2 continuity solve.

    The state itself is continuous at the jump; expanding the incident mode in
    the late eigenbasis gives chiral coefficients

        alpha = (E1 + E2 - pi1 + pi2) / (2 E2)      (forward)
        beta  = (E2 - E1 + pi1 - pi2) / (2 E2)      (backward)

    The solve is performed on the always-finite chiral components, so the
    pi2 = 0 kinematics (where the standard-basis component ratios of the
    asymptotic modes degenerate) yields the exact limit: the backward
    upper component vanishes identically and b = 0.
    """
    pi1 = p - q * a1
    pi2 = p - q * a2
    e1 = math.hypot(pi1, m)
    e2 = math.hypot(pi2, m)
    alpha = (e1 + e2 - pi1 + pi2) / (2.0 * e2)
    beta = (e2 - e1 + pi1 - pi2) / (2.0 * e2)
    modes = AsymptoticModes(pi1=pi1, pi2=pi2, e1=e1, e2=e2)
    return result_from_mode_amplitudes(1.0 + 0.0j, complex(alpha), complex(beta), m, modes)


def backward_prefactor_check(params: StepParameters) -> dict:
    """Diagnostic: backward amplitude under both candidate exponent constants.

    The chart limit fixes the backward branch constant to e^(+pi tau E2 / 2),
    built from the late-time frequency.  Swapping in the early frequency E1
    (the only other dimensionally consistent choice) changes the amplitude by
    exactly ratio = e^(pi tau (E1 - E2)/2) and breaks agreement with the time
    integrator.  Both values are reported, not reconciled: `b` is the
    production value, `b_early_variant` the rejected form.
    """
    sol = match_at_t0(build_solution(params), params)
    res = asymptotic_amplitudes(sol, params)
    ratio = math.exp(math.pi * (sol.earlier.eps - sol.later.eps))
    return {
        "b": res.b,
        "b_early_variant": res.b * ratio,
        "ratio_early_over_late": ratio,
    }
