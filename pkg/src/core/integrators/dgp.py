import numpy as np

from core.errors import ConfigurationError, StepFailure
from core.integrators.schemes import make_predictor, midpoint_jacobian
from core.newton import newton_solve

'''
Discrete gradient pair scheme

    Ebar (xhat - xk) = dt (Jbar - Rbar) zbar + dt Bbar u_mid,
               y_mid = Bbar^T zbar,

with every bar quantity evaluated at (xk, xhat). Along its solutions

    (H(xhat) - H(xk)) / dt = -zbar^T Rbar zbar + y_mid^T u_mid

holds exactly, up to the accuracy of the Newton solve.
'''


def dgp_residual(pair, bars, xk, u_mid, dt):
    """Returns the residual function F(xhat) of one step."""

    def residual(xhat):
        Ebar, zbar = pair.evaluate(xk, xhat)
        return (Ebar.dot(xhat - xk)
                - dt * (bars.Jbar(xk, xhat) - bars.Rbar(xk, xhat)).dot(zbar)
                - dt * bars.Bbar(xk, xhat).dot(u_mid))

    return residual


def dgp_step(sys, pair, bars, xk, u_mid, dt, cfg, predictor=None):
    """
    Advances xk by one step of length dt. predictor, if given, is a
    make_predictor result for sys and cfg.

    Returns (x_next, y_mid).

    Raises ConfigurationError if dt is not positive.
    Raises StepFailure if the Newton iteration does not converge.
    Raises MassMatrixError if the pair meets a non-definite mass matrix.
    """
    if dt <= 0:
        raise ConfigurationError('dt must be positive, got %r' % dt)
    xk = np.asarray(xk, dtype=float)
    u_mid = np.asarray(u_mid, dtype=float).reshape(sys.m)
    if predictor is None:
        predictor = make_predictor(sys, cfg)

    result = newton_solve(
        dgp_residual(pair, bars, xk, u_mid, dt),
        predictor(xk, u_mid, dt), cfg.newton,
        jacobian=midpoint_jacobian(sys, xk, dt))
    if not result.converged:
        raise StepFailure(
            'Discrete gradient pair step did not converge (%s), '
            'residual %.3e' % (result.message, result.residual_norm),
            result=result)

    x_next = result.solution
    zbar = pair.zbar(xk, x_next)
    y_mid = bars.Bbar(xk, x_next).T.dot(zbar)
    return x_next, y_mid
