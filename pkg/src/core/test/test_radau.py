import numpy as np
from numpy.testing import assert_allclose

from django.test import SimpleTestCase

from core.errors import ConfigurationError
from core.integrators import ExplicitODE, SchemeConfig, radau5_step
from core.integrators.radau import RADAU_A, RADAU_B, RADAU_C
from core.system import InputSignal


def linear_ode(rate):
    return ExplicitODE(1, 0, lambda x, u: rate * x, name='linear')


def integrate_to(ode, x0, t_end, steps, u=None):
    if u is None:
        u = InputSignal.zero(ode.m)
    cfg = SchemeConfig('radau5')
    dt = t_end / steps
    x = np.array(x0, dtype=float)
    for k in range(steps):
        x = radau5_step(ode, x, u, k * dt, dt, cfg)
    return x


class Tableau(SimpleTestCase):

    def test_row_sums_are_nodes(self):
        assert_allclose(RADAU_A.sum(axis=1), RADAU_C, rtol=1e-14)

    def test_weights(self):
        assert_allclose(RADAU_B.sum(), 1.0, rtol=1e-15)
        # exact for polynomials up to degree 4
        for k in range(5):
            assert_allclose(RADAU_B.dot(RADAU_C ** k), 1.0 / (k + 1),
                            rtol=1e-13)


class Step(SimpleTestCase):

    def test_exponential_decay(self):
        x = radau5_step(linear_ode(-1.0), np.array([1.0]),
                        InputSignal.zero(0), 0.0, 0.1,
                        SchemeConfig('radau5'))
        assert_allclose(x, [np.exp(-0.1)], atol=1e-9)

    def test_constant_solution(self):
        xk = np.array([0.3, -2.0])
        ode = ExplicitODE(2, 0, lambda x, u: np.zeros(2))
        x = radau5_step(ode, xk, InputSignal.zero(0), 0.0, 0.5,
                        SchemeConfig('radau5'))
        assert_allclose(x, xk)

    def test_time_dependent_input(self):
        # x' = u(t) = cos t integrates to sin t
        ode = ExplicitODE(1, 1, lambda x, u: u)
        u = InputSignal(np.cos, 1)
        x = integrate_to(ode, [0.0], 1.0, 20, u)
        assert_allclose(x, [np.sin(1.0)], atol=1e-9)

    def test_analytic_jacobian_is_used(self):
        ode = linear_ode(-1.0)
        calls = []

        def jacobian(x, u):
            calls.append(x)
            return np.array([[-1.0]])

        ode.jacobian = jacobian
        x = radau5_step(ode, np.array([1.0]), InputSignal.zero(0), 0.0, 0.1,
                        SchemeConfig('radau5'))
        assert_allclose(x, [np.exp(-0.1)], atol=1e-9)
        self.assertEqual(len(calls), 1)

    def test_nonpositive_step_raises(self):
        with self.assertRaises(ConfigurationError):
            radau5_step(linear_ode(-1.0), np.array([1.0]),
                        InputSignal.zero(0), 0.0, -0.1,
                        SchemeConfig('radau5'))

    def test_fifth_order_convergence(self):
        ode = linear_ode(-2.0)
        exact = np.exp(-2.0)
        errors = [abs(integrate_to(ode, [1.0], 1.0, steps)[0] - exact)
                  for steps in (5, 10, 20)]
        orders = np.log2(np.array(errors[:-1]) / np.array(errors[1:]))
        for order in orders:
            self.assertTrue(4.5 <= order <= 5.5)
