"""Complex-parameter special functions for the analytic step solution.

Only the arguments the scattering problem actually visits are first class:
the Gauss hypergeometric function 2F1(a, b; c; z) for real z <= 1/2 (reached
directly, through the Pfaff map z -> z/(z-1), or through the inverse-argument
connection formula for deep negative z), plus z = 1 under Gauss summability.
Parameters are generally complex; in production they are purely imaginary
(a, b) with c on the line 1 + i*R.

Accuracy strategy: among the equivalent Maclaurin representations

    direct   F(a, b; c; z)
    Euler    (1-z)^(c-a-b) F(c-a, c-b; c; z)
    Pfaff-a  (1-z)^(-a)    F(a, c-b; c; z/(z-1))
    Pfaff-b  (1-z)^(-b)    F(c-a, b; c; z/(z-1))

the one with the smallest term-growth indicator |A*B*w|/|C| is summed, which
keeps intermediate terms small and avoids the catastrophic cancellation a
naive series suffers for oscillatory parameter sets.
"""

from __future__ import annotations

import cmath
import math

__all__ = [
    "GammaPoleError",
    "DomainError",
    "ConvergenceError",
    "log_gamma",
    "hyp2f1",
    "hyp2f1_derivative",
]


class GammaPoleError(ValueError):
    """log_gamma evaluated at a non-positive integer."""


class DomainError(ValueError):
    """Argument outside the supported evaluation domain."""


class ConvergenceError(ArithmeticError):
    """Series failed to reach tolerance within the iteration cap."""


# Lanczos approximation, g = 7, 9 terms (Godfrey's coefficient set, widely
# reproduced e.g. in Numerical Recipes-derived code); ~1e-15 relative on the
# right half plane.
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LN_SQRT_2PI = 0.9189385332046727417803297364056176

# configurable series controls
SERIES_TOL = 1e-15
MAX_TERMS = 100_000

# switch to the inverse-argument connection formula beyond this |z|
_CONNECTION_CUTOFF = 8.0
# keep the Pfaff series instead when a - b (or c - a - b) is this close to an
# integer, where the connection formula's gamma prefactors degenerate
_DEGENERACY_MARGIN = 0.05


def _is_nonpositive_int(z: complex, tol: float = 0.0) -> bool:
    return z.imag == 0.0 and z.real <= 0.5 and abs(z.real - round(z.real)) <= tol


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma.

    exp(log_gamma) satisfies the recurrence and reflection identities to
    ~1e-14 relative on |Re z|, |Im z| <= 50.  Raises GammaPoleError at the
    poles 0, -1, -2, ...
    """
    z = complex(z)
    if _is_nonpositive_int(z):
        raise GammaPoleError(f"log_gamma pole at z = {z}")
    if z.imag < 0.0:
        return log_gamma(z.conjugate()).conjugate()
    if z.real < 0.5:
        # reflection onto Re >= 0.5 with a continuous branch of log sin(pi z)
        # on the closed upper half plane:
        #   sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) * i/2
        lsin = (
            -1j * math.pi * z
            + cmath.log(1.0 - cmath.exp(2j * math.pi * z))
            - cmath.log(2j)
        )
        return math.log(math.pi) - lsin - log_gamma(1.0 - z) - 1j * math.pi
    w = z - 1.0
    acc = _LANCZOS_C[0]
    for k in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[k] / (w + k)
    t = w + _LANCZOS_G + 0.5
    return _LN_SQRT_2PI + (w + 0.5) * cmath.log(t) - t + cmath.log(acc)


def _series(a: complex, b: complex, c: complex, z: complex, tol: float, nmax: int) -> complex:
    # stop only on two consecutive small terms: a single term may vanish
    # accidentally for oscillatory parameters
    term = 1.0 + 0.0j
    total = term
    prev_small = False
    for n in range(nmax):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        small = abs(term) <= tol * max(abs(total), 1e-300)
        if small and prev_small:
            return total
        prev_small = small
    raise ConvergenceError(
        f"2F1 series did not converge within {nmax} terms "
        f"(a={a}, b={b}, c={c}, z={z})"
    )


def _gauss_limit(a: complex, b: complex, c: complex) -> complex:
    # F(a, b; c; 1) = G(c) G(c-a-b) / (G(c-a) G(c-b)), Re(c-a-b) > 0
    return cmath.exp(log_gamma(c) + log_gamma(c - a - b) - log_gamma(c - a) - log_gamma(c - b))


def _connection_at_minus_inf(a, b, c, z, tol, nmax):
    # inverse-argument expansion for z -> -inf (a - b not an integer):
    # F = G1 (-z)^(-a) F(a, a-c+1; a-b+1; 1/z) + (a <-> b)
    g1 = cmath.exp(log_gamma(c) + log_gamma(b - a) - log_gamma(b) - log_gamma(c - a))
    g2 = cmath.exp(log_gamma(c) + log_gamma(a - b) - log_gamma(a) - log_gamma(c - b))
    inv = 1.0 / z
    s1 = _series(a, a - c + 1.0, a - b + 1.0, inv, tol, nmax)
    s2 = _series(b, b - c + 1.0, b - a + 1.0, inv, tol, nmax)
    return g1 * (-z) ** (-a) * s1 + g2 * (-z) ** (-b) * s2


def _best_representation(a, b, c, z, tol, nmax) -> complex:
    w = z / (z - 1.0)
    one_minus = 1.0 - z
    candidates = []
    if abs(z) <= 0.5:
        candidates.append((a, b, c, z, 1.0 + 0.0j))
        candidates.append((c - a, c - b, c, z, one_minus ** (c - a - b)))
    candidates.append((a, c - b, c, w, one_minus ** (-a)))
    candidates.append((c - a, b, c, w, one_minus ** (-b)))

    def growth(cand):
        aa, bb, cc, zz, _ = cand
        return abs(aa * bb * zz) / max(abs(cc), 1e-30)

    best = min(enumerate(candidates), key=lambda t: (growth(t[1]), t[0]))[1]
    aa, bb, cc, zz, prefactor = best
    return prefactor * _series(aa, bb, cc, zz, tol, nmax)


def hyp2f1(a: complex, b: complex, c: complex, z: complex, *, tol: float | None = None,
           max_terms: int | None = None) -> complex:
    """Gauss hypergeometric function on the domain the step problem visits.

    Supported z: real with Re z <= 1/2 (any magnitude on the negative axis),
    plus z = 1 when Re(c - a - b) > 0.  c must not be zero or a negative
    integer.  Deterministic: identical inputs give identical output bits.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    tol = SERIES_TOL if tol is None else tol
    nmax = MAX_TERMS if max_terms is None else max_terms

    if _is_nonpositive_int(c):
        raise GammaPoleError(f"2F1 parameter c = {c} is a non-positive integer")
    if a == 0 or b == 0:
        return 1.0 + 0.0j
    if z == 0:
        return 1.0 + 0.0j
    if z == 1:
        if (c - a - b).real <= 0:
            raise DomainError(
                "2F1 at z = 1 requires Re(c - a - b) > 0 for Gauss summability"
            )
        return _gauss_limit(a, b, c)
    if z.imag != 0.0:
        raise DomainError(f"2F1 argument must be real (or exactly 1), got z = {z}")
    x = z.real
    if x > 0.5:
        raise DomainError(f"2F1 argument must satisfy z <= 1/2 (or z = 1), got z = {x}")

    if x < -_CONNECTION_CUTOFF:
        ab_gap = a - b
        near_int = abs(ab_gap.imag) < _DEGENERACY_MARGIN and (
            abs(ab_gap.real - round(ab_gap.real)) < _DEGENERACY_MARGIN
        )
        degenerate_params = (
            _is_nonpositive_int(a, _DEGENERACY_MARGIN)
            or _is_nonpositive_int(b, _DEGENERACY_MARGIN)
            or _is_nonpositive_int(c - a, _DEGENERACY_MARGIN)
            or _is_nonpositive_int(c - b, _DEGENERACY_MARGIN)
        )
        if not near_int and not degenerate_params:
            return _connection_at_minus_inf(a, b, c, z, tol, nmax)
        # fall through: the Pfaff argument z/(z-1) < 1 still converges

    return _best_representation(a, b, c, z, tol, nmax)


def hyp2f1_derivative(a: complex, b: complex, c: complex, z: complex, *,
                      tol: float | None = None, max_terms: int | None = None) -> complex:
    """d/dz 2F1(a, b; c; z) = (a b / c) 2F1(a+1, b+1; c+1; z) (exact contiguous form)."""
    a, b, c = complex(a), complex(b), complex(c)
    if a == 0 or b == 0:
        return 0.0 + 0.0j
    return a * b / c * hyp2f1(a + 1, b + 1, c + 1, z, tol=tol, max_terms=max_terms)
