import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diracstep import specfun
from diracstep.specfun import (
    ConvergenceError,
    DomainError,
    GammaPoleError,
    hyp2f1,
    hyp2f1_derivative,
    log_gamma,
)

LN_SQRT_PI = 0.57236494292470009
LN_2 = 0.69314718055994531
FOUR_OVER_PI = 1.2732395447351627

# reference values computed with mpmath (dps=30)
LOGGAMMA_REFERENCE = [
    (3.5 + 20.0j, -21.498922066996628 + 44.404908452981567j),
    (-7.3 + 12.5j, -38.871233213123221 + 4.5256746687863667j),
    (0.25 - 40.0j, -62.835129518830187 - 107.1627395018991j),
    (-20.5 - 3.25j, -51.973777612346531 + 56.065566609912045j),
    (12.0 + 0.0j, 17.502307845873886 + 0.0j),
]

HYP2F1_REFERENCE = [
    ((0.3 + 0.7j), 1.1, (2.4 - 0.2j), -1.0, 0.87908416993188455 - 0.22553554634443061j),
    (2.5j, -1.5j, 1 + 3j, -1.0, 0.50427720534945975 + 0.62245288045336917j),
    (5.5j, 0.5j, 1 + 6j, -0.35, 1.0111006713122916 - 0.13865697354865804j),
    (0.5j, -4j, 1 - 1j, -27.5, -0.49258410869911297 - 0.6018291294773888j),
    ((1.25 + 0.5j), 0.75, 3.0, 0.5, 1.2046995785273498 + 0.10052079954750623j),
    (1.5j, 2.5j, 1 + 1j, -250.0, -11.794719966977374 + 7.1689689713443181j),
]


def reference_series(a, b, c, z, n_terms=400_000):
    """Test-local Maclaurin evaluation, independent of the production path.

    At the alternating boundary case z = -1 the partial sums oscillate around
    the limit, so the mean of the last two partial sums is returned; that
    cancels the leading oscillation and leaves an O(n^-3) tail.
    """
    term = 1.0 + 0j
    partial = term
    previous = 0.0 + 0j
    for n in range(n_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        previous = partial
        partial += term
        if abs(term) < 1e-17 * max(abs(partial), 1.0):
            return partial
    return 0.5 * (partial + previous)


class TestLogGamma:
    def test_factorial_base_case(self):
        assert abs(log_gamma(1.0)) < 1e-14

    def test_half_integer(self):
        assert log_gamma(0.5).real == pytest.approx(LN_SQRT_PI, abs=1e-14)
        assert abs(log_gamma(0.5).imag) < 1e-14

    def test_gamma_four(self):
        assert log_gamma(4.0).real == pytest.approx(math.log(6.0), abs=1e-13)

    def test_poles_raise(self):
        for z in (0.0, -1.0, -2.0, -37.0):
            with pytest.raises(GammaPoleError):
                log_gamma(z)

    @pytest.mark.parametrize("z,expected", LOGGAMMA_REFERENCE)
    def test_principal_branch_box_points(self, z, expected):
        got = log_gamma(z)
        assert got == pytest.approx(expected, rel=1e-12)

    @given(st.floats(min_value=-50, max_value=50), st.floats(min_value=0.05, max_value=50))
    def test_recurrence(self, x, y):
        z = complex(x, y)
        lhs = cmath.exp(log_gamma(z + 1))
        rhs = z * cmath.exp(log_gamma(z))
        assert lhs == pytest.approx(rhs, rel=1e-12)

    @given(st.floats(min_value=-20, max_value=20), st.floats(min_value=0.05, max_value=20))
    def test_reflection(self, x, y):
        z = complex(x, y)
        lhs = cmath.exp(log_gamma(z)) * cmath.exp(log_gamma(1 - z))
        rhs = math.pi / cmath.sin(math.pi * z)
        assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_conjugate_symmetry(self):
        z = 2.25 + 7.5j
        assert log_gamma(z.conjugate()) == log_gamma(z).conjugate()


class TestHyp2F1:
    @given(st.floats(min_value=-3, max_value=3), st.floats(min_value=-3, max_value=3),
           st.floats(min_value=0.3, max_value=3))
    def test_unit_at_origin(self, ar, br, cr):
        assert hyp2f1(complex(ar, 0.4), complex(br, -0.2), complex(cr, 0.1), 0.0) == 1.0

    def test_log_identity(self):
        # 2F1(1,1;2;z) = -ln(1-z)/z
        assert hyp2f1(1, 1, 2, -1.0) == pytest.approx(LN_2, abs=1e-14)

    def test_gauss_summation(self):
        assert hyp2f1(0.5, 0.5, 2.0, 1.0) == pytest.approx(FOUR_OVER_PI, rel=1e-12)

    def test_gauss_summation_requires_convergence(self):
        with pytest.raises(DomainError):
            hyp2f1(2.0, 1.5, 2.0, 1.0)  # Re(c-a-b) = -1.5

    def test_pfaff_consistency_independent_series(self):
        # both sides by series: the left at z = -1 directly, the right at the
        # Pfaff image z/(z-1) = 1/2
        a, b, c = 0.3 + 0.7j, 1.1 + 0j, 2.4 - 0.2j
        lhs = reference_series(a, b, c, -1.0)
        rhs = 2.0 ** (-a) * reference_series(a, c - b, c, 0.5)
        assert lhs == pytest.approx(rhs, rel=1e-10)
        assert hyp2f1(a, b, c, -1.0) == pytest.approx(lhs, rel=1e-10)

    @pytest.mark.parametrize("a,b,c,z,expected", HYP2F1_REFERENCE)
    def test_reference_values(self, a, b, c, z, expected):
        assert hyp2f1(a, b, c, z) == pytest.approx(expected, rel=1e-11)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            hyp2f1(1.0, 1.0, 2.0, 0.75)
        with pytest.raises(DomainError):
            hyp2f1(1.0, 1.0, 2.0, 0.2 + 0.3j)

    def test_c_pole_raises(self):
        with pytest.raises(GammaPoleError):
            hyp2f1(0.5, 0.5, 0.0, -0.5)
        with pytest.raises(GammaPoleError):
            hyp2f1(0.5, 0.5, -3.0, -0.5)

    def test_iteration_cap_raises(self):
        with pytest.raises(ConvergenceError):
            hyp2f1(0.5j, 0.25j, 1 + 1j, -0.49, max_terms=4)

    def test_deterministic(self):
        args = (1.5j, -2.5j, 1 + 3j, -0.8)
        assert hyp2f1(*args) == hyp2f1(*args)

    @given(st.floats(min_value=-4, max_value=4), st.floats(min_value=-4, max_value=4),
           st.floats(min_value=-4, max_value=4),
           st.floats(min_value=-0.99, max_value=0.45))
    def test_symmetric_in_a_b(self, ai, bi, ci, z):
        a, b, c = complex(0.2, ai), complex(-0.1, bi), complex(1.0, ci)
        lhs = hyp2f1(a, b, c, z)
        rhs = hyp2f1(b, a, c, z)
        assert rhs == pytest.approx(lhs, rel=1e-13, abs=1e-13)

    @given(st.floats(min_value=-3, max_value=3), st.floats(min_value=-3, max_value=3),
           st.floats(min_value=-3, max_value=3),
           st.floats(min_value=-0.9, max_value=0.45))
    def test_euler_transformation(self, ai, bi, ci, z):
        a, b, c = complex(0.3, ai), complex(0.6, bi), complex(1.2, ci)
        lhs = hyp2f1(a, b, c, z)
        rhs = (1 - z) ** (c - a - b) * hyp2f1(c - a, c - b, c, z)
        assert rhs == pytest.approx(lhs, rel=1e-9, abs=1e-9)


class TestHyp2F1Derivative:
    @given(st.floats(min_value=-3, max_value=3), st.floats(min_value=-3, max_value=3))
    def test_value_at_origin(self, ai, bi):
        a, b, c = complex(0.5, ai), complex(1.5, bi), 2.0 + 0.5j
        assert hyp2f1_derivative(a, b, c, 0.0) == pytest.approx(a * b / c, rel=1e-14)

    def test_matches_finite_difference(self):
        h = 1e-6
        fd = (hyp2f1(1, 1, 2, -1.0 + h) - hyp2f1(1, 1, 2, -1.0 - h)) / (2 * h)
        got = hyp2f1_derivative(1, 1, 2, -1.0)
        assert got == pytest.approx(fd, abs=1e-7)
        assert got == pytest.approx(0.19314718055994531, abs=1e-13)

    @given(st.floats(min_value=-0.99, max_value=0.45))
    def test_vanishes_for_zero_a(self, z):
        assert hyp2f1_derivative(0.0, 1.5j, 1 + 1j, z) == 0.0
