import numpy as np
from mock import patch
from numpy.testing import assert_allclose

from django.test import SimpleTestCase

from core.errors import ConfigurationError, NewtonFailure, SingularJacobian
from core.newton import NewtonSettings, fd_jacobian, newton_solve


class Settings(SimpleTestCase):

    def test_defaults_come_from_settings(self):
        newton = NewtonSettings()
        self.assertEqual(newton.tol_residual, 1e-13)
        self.assertEqual(newton.tol_step, 1e-8)
        self.assertEqual(newton.max_iter, 50)

    def test_overrides(self):
        newton = NewtonSettings(tol_residual=1e-10, max_iter=3)
        self.assertEqual(newton.as_dict()['tol_residual'], 1e-10)
        self.assertEqual(newton.as_dict()['max_iter'], 3)

    def test_local_settings_change_defaults(self):
        with patch('core.newton.settings.NEWTON_MAX_ITER', 7):
            self.assertEqual(NewtonSettings().max_iter, 7)

    def test_invalid_values(self):
        for kwargs in ({'tol_residual': 0.0}, {'tol_step': -1.0},
                       {'max_iter': 0}, {'max_iter': 2.5},
                       {'fd_jacobian_h': 0.0}, {'damping': -1},
                       {'polish': -1}, {'polish': 0.5}):
            with self.assertRaises(ConfigurationError):
                NewtonSettings(**kwargs)


class Solve(SimpleTestCase):

    def test_linear_problem(self):
        result = newton_solve(lambda x: x, np.array([5.0]))
        self.assertTrue(result.converged)
        self.assertTrue(result.iterations <= 2)
        assert_allclose(result.solution, [0.0], atol=1e-13)

    def test_cube_root(self):
        result = newton_solve(lambda x: x ** 3 - 8.0, np.array([3.0]))
        self.assertTrue(result.converged)
        assert_allclose(result.solution, [2.0], rtol=1e-12)

    def test_converged_start_takes_no_iteration(self):
        result = newton_solve(lambda x: x - 1.0, np.array([1.0]))
        self.assertTrue(result.converged)
        self.assertEqual(result.iterations, 0)

    def test_scalar_step_equation(self):
        # x(1 + dt/2) = xk (1 - dt/2) for xk = 1, dt = 0.1
        result = newton_solve(lambda x: x * 1.05 - 0.95, np.array([1.0]))
        self.assertTrue(result.converged)
        assert_allclose(result.solution, [0.95 / 1.05], rtol=1e-12)

    def test_analytic_jacobian_is_used(self):
        calls = []

        def jacobian(x):
            calls.append(x.copy())
            return np.diag(2.0 * x)

        result = newton_solve(lambda x: x ** 2 - np.array([4.0, 9.0]),
                              np.array([1.0, 1.0]), jacobian=jacobian)
        self.assertTrue(result.converged)
        assert_allclose(result.solution, [2.0, 3.0], rtol=1e-13)
        self.assertEqual(len(calls), result.iterations)

    def test_system(self):

        def F(x):
            return np.array([x[0] + x[1] - 3.0, x[0] * x[1] - 2.0])

        result = newton_solve(F, np.array([1.8, 1.0]))
        self.assertTrue(result.converged)
        assert_allclose(result.solution, [2.0, 1.0], rtol=1e-12)

    def test_residual_decays_quadratically(self):
        result = newton_solve(lambda x: x ** 3 - 8.0, np.array([3.0]),
                              NewtonSettings(tol_residual=1e-4, polish=0),
                              jacobian=lambda x: np.diag(3.0 * x ** 2))
        history = result.history
        self.assertEqual(len(history), result.iterations + 1)
        # residuals 19, 4.1, 0.45, 8.3e-3, 2.9e-6
        for before, after in zip(history[-3:], history[-2:]):
            self.assertTrue(after <= before ** 2)

    def test_polish_goes_below_tolerance(self):
        newton = NewtonSettings(tol_residual=1e-4, polish=0)
        plain = newton_solve(lambda x: x ** 3 - 8.0, np.array([3.0]), newton,
                             jacobian=lambda x: np.diag(3.0 * x ** 2))
        newton.polish = 1
        polished = newton_solve(lambda x: x ** 3 - 8.0, np.array([3.0]),
                                newton,
                                jacobian=lambda x: np.diag(3.0 * x ** 2))
        self.assertTrue(plain.residual_norm > 1e-12)
        self.assertTrue(polished.converged)
        self.assertEqual(polished.iterations, plain.iterations)
        self.assertTrue(polished.residual_norm <= 1e-8)
        self.assertEqual(len(polished.history), len(plain.history) + 1)

    def test_polish_reuses_last_factorization(self):
        calls = []

        def jacobian(x):
            calls.append(x.copy())
            return np.diag(3.0 * x ** 2)

        result = newton_solve(lambda x: x ** 3 - 8.0, np.array([3.0]),
                              NewtonSettings(polish=2), jacobian=jacobian)
        self.assertTrue(result.converged)
        self.assertEqual(len(calls), result.iterations)

    def test_no_root_reports_non_convergence(self):
        result = newton_solve(lambda x: x ** 2 + 1.0, np.array([0.5]),
                              NewtonSettings(max_iter=5))
        self.assertFalse(result.converged)
        self.assertTrue(result.residual_norm >= 1.0)
        self.assertTrue(result.message)

    def test_best_iterate_is_returned(self):
        result = newton_solve(lambda x: x ** 2 + 1.0, np.array([0.5]),
                              NewtonSettings(max_iter=5))
        # |x^2 + 1| is smallest at 0
        self.assertTrue(result.residual_norm <= 1.25)

    def test_singular_jacobian_raises(self):
        with self.assertRaises(SingularJacobian) as cm:
            newton_solve(lambda x: np.array([x[0] + x[1] - 1.0,
                                             x[0] + x[1] - 2.0]),
                         np.zeros(2), jacobian=lambda x: np.ones((2, 2)))
        self.assertTrue(isinstance(cm.exception, NewtonFailure))
        assert_allclose(cm.exception.solution, np.zeros(2))
        self.assertEqual(cm.exception.residual_norm, 2.0)

    def test_non_finite_jacobian_raises(self):
        with self.assertRaises(SingularJacobian):
            newton_solve(lambda x: x - 1.0, np.zeros(1),
                         jacobian=lambda x: np.array([[np.nan]]))


class FiniteDifferences(SimpleTestCase):

    def test_linear_map(self):
        A = np.array([[1.0, 2.0], [-3.0, 0.5]])
        x = np.array([0.2, -0.1])
        jac = fd_jacobian(A.dot, x, A.dot(x), 1.5e-8)
        assert_allclose(jac, A, rtol=1e-6)
