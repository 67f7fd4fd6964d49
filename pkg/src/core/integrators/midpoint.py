import numpy as np

from core.errors import ConfigurationError, StepFailure
from core.integrators.schemes import make_predictor, midpoint_jacobian
from core.newton import newton_solve


def implicit_midpoint_residual(sys, xk, u_mid, dt):

    def residual(xhat):
        mid = 0.5 * (xk + xhat)
        return (np.asarray(sys.E(mid)).dot(xhat - xk)
                - dt * sys.rhs(mid, u_mid))

    return residual


def implicit_midpoint_step(sys, xk, u_mid, dt, cfg, predictor=None):
    """
    Solves E(mid) (xhat - xk) = dt ((J - R) z + B u_mid)(mid) with
    mid = (xk + xhat) / 2.

    Returns (x_next, y_mid) with y_mid = B(mid)^T z(mid).
    predictor, if given, is a make_predictor result for sys and cfg.

    Raises ConfigurationError if dt is not positive.
    Raises StepFailure if the Newton iteration does not converge.
    """
    if dt <= 0:
        raise ConfigurationError('dt must be positive, got %r' % dt)
    xk = np.asarray(xk, dtype=float)
    u_mid = np.asarray(u_mid, dtype=float).reshape(sys.m)
    if predictor is None:
        predictor = make_predictor(sys, cfg)

    result = newton_solve(
        implicit_midpoint_residual(sys, xk, u_mid, dt),
        predictor(xk, u_mid, dt), cfg.newton,
        jacobian=midpoint_jacobian(sys, xk, dt))
    if not result.converged:
        raise StepFailure(
            'Implicit midpoint step did not converge (%s), residual %.3e' % (
                result.message, result.residual_norm), result=result)

    x_next = result.solution
    return x_next, sys.output(0.5 * (xk + x_next))
