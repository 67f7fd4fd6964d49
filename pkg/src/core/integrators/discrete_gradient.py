import numpy as np

from config import settings
from core.errors import ConfigurationError, StepFailure
from core.newton import newton_solve

'''
Classical discrete gradient schemes.

classical_dg_step treats x' = J grad H with constant skew J and conserves H
exactly. transformed_dg_step treats the explicit pH form obtained for
invertible E,

    xhat = xk + dt ((Jt - Rt)(mid) dg(xk, xhat) + Bt(mid) u_mid),
    y_mid = Bt(mid)^T dg(xk, xhat),

and satisfies the same exact discrete power balance as the discrete
gradient pair scheme with dg in place of zbar.
'''


def classical_dg_step(gradH_bar, Jconst, xk, dt, cfg):
    """
    Solves xhat = xk + dt J dg(xk, xhat) for xhat.

    Raises ConfigurationError if dt is not positive or J is not
    skew-symmetric.
    Raises StepFailure if the Newton iteration does not converge.
    """
    if dt <= 0:
        raise ConfigurationError('dt must be positive, got %r' % dt)
    Jconst = np.asarray(Jconst, dtype=float)
    if np.max(np.abs(Jconst + Jconst.T)) > settings.PH_STRUCTURE_TOL:
        raise ConfigurationError('J must be skew-symmetric')
    xk = np.asarray(xk, dtype=float)

    def residual(xhat):
        return xhat - xk - dt * Jconst.dot(gradH_bar(xk, xhat))

    if cfg.predictor == 'explicit_euler':
        guess = xk + dt * Jconst.dot(gradH_bar.gradH(xk))
    else:
        guess = xk.copy()

    result = newton_solve(residual, guess, cfg.newton)
    if not result.converged:
        raise StepFailure(
            'Discrete gradient step did not converge (%s), residual %.3e' % (
                result.message, result.residual_norm), result=result)
    return result.solution


def transformed_dg_step(ode, gradH_bar, xk, u_mid, dt, cfg):
    """
    One discrete gradient step of the explicit pH form `ode` (see
    transform_to_explicit).

    Returns (x_next, y_mid).

    Raises ConfigurationError if dt is not positive.
    Raises StepFailure if the Newton iteration does not converge.
    Raises MassMatrixError if E is singular at a midpoint.
    """
    if dt <= 0:
        raise ConfigurationError('dt must be positive, got %r' % dt)
    xk = np.asarray(xk, dtype=float)
    u_mid = np.asarray(u_mid, dtype=float).reshape(ode.m)

    def residual(xhat):
        Jt, Rt, Bt = ode.coefficients(0.5 * (xk + xhat))
        dg = gradH_bar(xk, xhat)
        return xhat - xk - dt * ((Jt - Rt).dot(dg) + Bt.dot(u_mid))

    if cfg.predictor == 'explicit_euler':
        guess = xk + dt * ode.rhs(xk, u_mid)
    else:
        guess = xk.copy()

    result = newton_solve(residual, guess, cfg.newton)
    if not result.converged:
        raise StepFailure(
            'Transformed discrete gradient step did not converge (%s), '
            'residual %.3e' % (result.message, result.residual_norm),
            result=result)

    x_next = result.solution
    Bt = ode.coefficients(0.5 * (xk + x_next))[2]
    return x_next, Bt.T.dot(gradH_bar(xk, x_next))
