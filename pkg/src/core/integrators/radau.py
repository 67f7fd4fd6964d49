import numpy as np

from core.errors import ConfigurationError, StepFailure
from core.newton import fd_jacobian, newton_solve

'''
Three stage Radau IIA method of order 5 (Hairer & Wanner, Solving ODEs II,
sec. IV.5). The method is stiffly accurate, so the last stage is the new
state.
'''

SQ6 = np.sqrt(6.0)

RADAU_C = np.array([(4.0 - SQ6) / 10.0, (4.0 + SQ6) / 10.0, 1.0])

RADAU_A = np.array([
    [(88.0 - 7.0 * SQ6) / 360.0, (296.0 - 169.0 * SQ6) / 1800.0,
     (-2.0 + 3.0 * SQ6) / 225.0],
    [(296.0 + 169.0 * SQ6) / 1800.0, (88.0 + 7.0 * SQ6) / 360.0,
     (-2.0 - 3.0 * SQ6) / 225.0],
    [(16.0 - SQ6) / 36.0, (16.0 + SQ6) / 36.0, 1.0 / 9.0],
])

RADAU_B = RADAU_A[-1]

STAGES = 3


def radau5_step(ode, xk, u, t, dt, cfg):
    """
    Advances xk from t to t + dt.

    The stage increments Z_i = X_i - xk solve

        Z_i = dt sum_j a_ij f(t + c_j dt, xk + Z_j)

    by a simplified Newton iteration whose matrix I - dt (A kron Df) is
    frozen at (t, xk).

    Raises ConfigurationError if dt is not positive.
    Raises StepFailure if the Newton iteration does not converge.
    """
    if dt <= 0:
        raise ConfigurationError('dt must be positive, got %r' % dt)
    xk = np.asarray(xk, dtype=float)
    n = xk.size
    f = ode.vector_field(u)
    times = t + RADAU_C * dt

    def residual(Z):
        Z = Z.reshape(STAGES, n)
        F = np.array([f(times[i], xk + Z[i]) for i in range(STAGES)])
        return (Z - dt * RADAU_A.dot(F)).reshape(-1)

    if ode.jacobian is not None:
        Df = np.asarray(ode.jacobian(xk, u(t)))
    else:
        fk = np.asarray(f(t, xk))
        Df = fd_jacobian(lambda x: np.asarray(f(t, x)), xk, fk,
                         cfg.newton.fd_jacobian_h)
    newton_matrix = np.eye(STAGES * n) - dt * np.kron(RADAU_A, Df)

    result = newton_solve(residual, np.zeros(STAGES * n), cfg.newton,
                          jacobian=lambda Z: newton_matrix)
    if not result.converged:
        raise StepFailure(
            'Radau IIA step did not converge (%s), residual %.3e' % (
                result.message, result.residual_norm), result=result)
    return xk + result.solution.reshape(STAGES, n)[-1]
