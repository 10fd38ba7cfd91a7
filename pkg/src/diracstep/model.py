"""Physical model: smooth temporal potential step and two-component spinors.

A spatially uniform vector potential A(t) directed along the electron's
propagation axis rises smoothly from A1 to A2 around the transition time t0,

    A(t) = A1 + (A2 - A1)/2 * (1 + tanh((t - t0)/tau)).

Because A is uniform in space, the canonical momentum p is conserved and the
problem reduces, for a fixed spin projection, to a two-component spinor
(phi, theta) evolving in time under

    i phi'   =  pi(t) phi + m theta
    i theta' = -pi(t) theta + m phi,        pi(t) = p - q A(t),

i.e. the chiral-basis Hamiltonian pi*sigma3 + m*sigma1.  The Hadamard-type
rotation U = [[1, 1], [1, -1]]/sqrt(2) maps it to m*sigma3 + pi*sigma1 (the
standard basis), so single-particle energies and the asymptotic mode content
are basis independent.  Natural units hbar = c = 1 throughout; times are in
units of 1/m for m = 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

SQRT2 = math.sqrt(2.0)


class Basis(Enum):
    WEYL = "weyl"
    DIRAC = "dirac"


@dataclass(frozen=True)
class StepParameters:
    """All physical inputs, natural units.

    m: rest mass (> 0); q: signed coupling; p: conserved momentum along the
    potential axis; a1/a2: early/late potential values; tau: transition time
    parameter (> 0; the Heaviside limit is a separate closed form, never
    tau = 0 here); t0: transition time.
    """

    m: float
    q: float
    p: float
    a1: float
    a2: float
    tau: float
    t0: float = 0.0

    def __post_init__(self):
        for name in ("m", "q", "p", "a1", "a2", "tau", "t0"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.m <= 0:
            raise ValueError(f"m must be positive, got {self.m!r}")
        if self.tau <= 0:
            raise ValueError(f"tau must be positive, got {self.tau!r}")


@dataclass(frozen=True)
class AsymptoticModes:
    """Kinetic momenta and mode energies of the two asymptotic plateaus."""

    pi1: float
    pi2: float
    e1: float
    e2: float


@dataclass(frozen=True)
class TwoSpinor:
    upper: complex
    lower: complex
    basis: Basis

    @property
    def norm_sq(self) -> float:
        return abs(self.upper) ** 2 + abs(self.lower) ** 2


def potential_at(t: float, params: StepParameters) -> float:
    """Potential value at time t.  Total function; bounded by [A1, A2]."""
    s = (t - params.t0) / params.tau
    return params.a1 + 0.5 * (params.a2 - params.a1) * (1.0 + math.tanh(s))


def potential_at_exp_form(t: float, params: StepParameters) -> float:
    """Equivalent rational-exponential form of the step, overflow safe.

    (A1 + A2*e^{2s}) / (1 + e^{2s}); for s > 0 evaluated with e^{-2s} so no
    intermediate exponential overflows for |s| up to ~1e4 and beyond.
    """
    s = (t - params.t0) / params.tau
    if s >= 0:
        w = math.exp(-2.0 * s)
        return (params.a1 * w + params.a2) / (w + 1.0)
    w = math.exp(2.0 * s)
    return (params.a1 + params.a2 * w) / (1.0 + w)


def _sech_sq(s: float) -> float:
    # branch on sign so the large-|s| tail underflows cleanly instead of
    # overflowing cosh
    w = math.exp(-2.0 * abs(s))
    return 4.0 * w / (1.0 + w) ** 2


def potential_rate(t: float, params: StepParameters) -> float:
    """dA/dt = (A2 - A1)/(2 tau) * sech^2((t - t0)/tau)."""
    s = (t - params.t0) / params.tau
    return (params.a2 - params.a1) / (2.0 * params.tau) * _sech_sq(s)


def asymptotic_modes(params: StepParameters) -> AsymptoticModes:
    """Kinetic momenta pi_i = p - q*A_i and energies E_i = sqrt(pi_i^2 + m^2)."""
    pi1 = params.p - params.q * params.a1
    pi2 = params.p - params.q * params.a2
    return AsymptoticModes(
        pi1=pi1,
        pi2=pi2,
        e1=math.hypot(pi1, params.m),
        e2=math.hypot(pi2, params.m),
    )


def weyl_to_dirac(s: TwoSpinor) -> TwoSpinor:
    """Rotate a chiral-basis spinor to the standard basis.

    Uses the involutive unitary (1/sqrt(2))[[1, 1], [1, -1]], which conjugates
    pi*sigma3 + m*sigma1 into m*sigma3 + pi*sigma1.  Norm preserving; applying
    it to a standard-basis spinor is rejected.
    """
    if s.basis is not Basis.WEYL:
        raise ValueError("weyl_to_dirac expects a Weyl-basis spinor")
    return TwoSpinor(
        upper=(s.upper + s.lower) / SQRT2,
        lower=(s.upper - s.lower) / SQRT2,
        basis=Basis.DIRAC,
    )


def mode_spinor(pi: float, m: float, positive: bool) -> TwoSpinor:
    """Unnormalized chiral-basis eigenvector of pi*sigma3 + m*sigma1.

    positive=True: eigenvalue +E, components (1, (E - pi)/m);
    positive=False: eigenvalue -E, components (1, -(E + pi)/m).
    Safe for all pi (m > 0 keeps the ratio finite).
    """
    e = math.hypot(pi, m)
    lower = (e - pi) / m if positive else -(e + pi) / m
    return TwoSpinor(upper=1.0 + 0.0j, lower=complex(lower), basis=Basis.WEYL)


def dirac_upper(pi: float, m: float, positive: bool) -> float:
    """Standard-basis upper component of the (unnormalized) mode spinor.

    Equals (m + E - pi)/(sqrt(2) m) for the +E branch and
    (m - E - pi)/(sqrt(2) m) for the -E branch.
    """
    e = math.hypot(pi, m)
    return (m + e - pi) / (SQRT2 * m) if positive else (m - e - pi) / (SQRT2 * m)


def incident_spinor(t: float, params: StepParameters) -> TwoSpinor:
    """Exact early-time plane wave of unit chiral amplitude at time t."""
    modes = asymptotic_modes(params)
    phase = cmath.exp(-1j * modes.e1 * (t - params.t0))
    vec = mode_spinor(modes.pi1, params.m, positive=True)
    return TwoSpinor(upper=vec.upper * phase, lower=vec.lower * phase, basis=Basis.WEYL)
