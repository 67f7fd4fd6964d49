import logging

import numpy as np
from scipy import linalg

from config import settings
from core.errors import ConfigurationError, SingularJacobian

log = logging.getLogger(__name__)

# Armijo sufficient decrease constant of the halving line search.
ARMIJO_ALPHA = 1e-4


class NewtonSettings(object):
    """
    Tolerances of newton_solve. Defaults come from config.settings.

    tol_residual bounds the max norm of the residual, tol_step the max norm
    of an update (relative to 1 + |x|) below which a non-improving
    iteration is considered stalled, damping the number of step halvings
    of the line search and polish the number of corrections taken after
    convergence.

    Raises ConfigurationError on non-positive tolerances or max_iter < 1.
    """

    def __init__(self, tol_residual=None, tol_step=None, max_iter=None,
                 fd_jacobian_h=None, damping=None, polish=None):
        self.tol_residual = (settings.NEWTON_TOL_RESIDUAL
                             if tol_residual is None else tol_residual)
        self.tol_step = (settings.NEWTON_TOL_STEP
                         if tol_step is None else tol_step)
        self.max_iter = (settings.NEWTON_MAX_ITER
                         if max_iter is None else max_iter)
        self.fd_jacobian_h = (settings.NEWTON_FD_STEP
                              if fd_jacobian_h is None else fd_jacobian_h)
        self.damping = (settings.NEWTON_DAMPING
                        if damping is None else damping)
        self.polish = (settings.NEWTON_POLISH
                       if polish is None else polish)

        if self.tol_residual <= 0 or self.tol_step <= 0:
            raise ConfigurationError('Newton tolerances must be positive')
        if self.fd_jacobian_h <= 0:
            raise ConfigurationError('fd_jacobian_h must be positive')
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ConfigurationError('max_iter must be an integer >= 1')
        if int(self.damping) != self.damping or self.damping < 0:
            raise ConfigurationError('damping must be an integer >= 0')
        if int(self.polish) != self.polish or self.polish < 0:
            raise ConfigurationError('polish must be an integer >= 0')

    def __repr__(self):
        return '<NewtonSettings %r>' % self.as_dict()

    def as_dict(self):
        return {
            'tol_residual': self.tol_residual,
            'tol_step': self.tol_step,
            'max_iter': self.max_iter,
            'fd_jacobian_h': self.fd_jacobian_h,
            'damping': self.damping,
            'polish': self.polish,
        }


class NewtonResult(object):
    """
    Outcome of newton_solve. history holds the max norm of the residual at
    the start and after every iteration, polishing corrections included.
    """

    def __init__(self, solution, iterations, residual_norm, converged,
                 step_norm=None, message='', history=None):
        self.solution = solution
        self.iterations = iterations
        self.residual_norm = residual_norm
        self.converged = converged
        self.step_norm = step_norm
        self.message = message
        self.history = list(history) if history is not None else []

    def __repr__(self):
        return '<NewtonResult converged=%s iterations=%d residual=%.3e>' % (
            self.converged, self.iterations, self.residual_norm)


def fd_jacobian(F, x, Fx, h):
    """Forward difference Jacobian with steps h (1 + |x_i|)."""
    n = x.size
    jac = np.empty((Fx.size, n))
    for i in range(n):
        step = h * (1.0 + abs(x[i]))
        xp = x.copy()
        xp[i] += step
        jac[:, i] = (F(xp) - Fx) / (xp[i] - x[i])
    return jac


def _factorize(jac, x, rnorm, iterations):
    try:
        lu, piv = linalg.lu_factor(jac, check_finite=True)
    except ValueError as e:
        raise SingularJacobian(
            'Newton linear solve failed: %s' % e, solution=x,
            residual_norm=rnorm, iterations=iterations)
    pivots = np.abs(np.diag(lu))
    if not np.all(np.isfinite(lu)) or np.min(pivots) == 0.0:
        raise SingularJacobian(
            'Newton linear solve failed: singular Jacobian '
            '(smallest pivot %.3e)' % np.min(pivots), solution=x,
            residual_norm=rnorm, iterations=iterations)
    return lu, piv


def _polish(F, x, fx, rnorm, factorization, count, history):
    """
    Applies up to count corrections with a fixed factorization, keeping
    only those that lower the residual.
    """
    for _ in range(count):
        if rnorm == 0.0:
            break
        x_try = x + linalg.lu_solve(factorization, -fx)
        f_try = np.asarray(F(x_try), dtype=float).reshape(-1)
        r_try = np.max(np.abs(f_try))
        history.append(r_try)
        if not r_try < rnorm:
            break
        x, fx, rnorm = x_try, f_try, r_try
    return x, rnorm


def newton_solve(F, x0, newton=None, jacobian=None):
    """
    Solves F(x) = 0 by a damped Newton iteration started at x0.

    jacobian(x) may supply the Jacobian (or an approximation of it);
    otherwise forward differences are used. Each update is damped by
    halving until the Armijo condition holds, at most newton.damping times.
    Once the residual test passes, newton.polish further corrections with
    the last factorization are taken, each kept only if it lowers the
    residual; they do not count as iterations.

    Returns a NewtonResult. converged is True iff the max norm of F at the
    solution is at most newton.tol_residual. On non-convergence the best
    iterate is returned with converged False.

    Raises SingularJacobian if the Newton matrix cannot be factorized.
    """
    if newton is None:
        newton = NewtonSettings()

    x = np.array(x0, dtype=float).reshape(-1)
    fx = np.asarray(F(x), dtype=float).reshape(-1)
    rnorm = np.max(np.abs(fx)) if fx.size else 0.0
    history = [rnorm]
    best_x, best_rnorm = x, rnorm
    step_norm = None
    factorization = None
    message = 'max_iter reached'

    def converged(iterations):
        solution, residual = x, rnorm
        if newton.polish and residual > 0.0:
            lu = factorization
            if lu is None:
                if jacobian is not None:
                    jac = np.asarray(jacobian(x), dtype=float)
                else:
                    jac = fd_jacobian(F, x, fx, newton.fd_jacobian_h)
                lu = _factorize(jac, x, residual, iterations)
            solution, residual = _polish(F, x, fx, residual, lu,
                                         newton.polish, history)
        return NewtonResult(solution, iterations, residual, True, step_norm,
                            history=history)

    for iteration in range(1, newton.max_iter + 1):
        if rnorm <= newton.tol_residual:
            return converged(iteration - 1)
        if not np.isfinite(rnorm):
            message = 'non-finite residual'
            break

        if jacobian is not None:
            jac = np.asarray(jacobian(x), dtype=float)
        else:
            jac = fd_jacobian(F, x, fx, newton.fd_jacobian_h)
        factorization = _factorize(jac, x, rnorm, iteration - 1)
        delta = linalg.lu_solve(factorization, -fx)

        lam = 1.0
        for halving in range(newton.damping + 1):
            x_try = x + lam * delta
            f_try = np.asarray(F(x_try), dtype=float).reshape(-1)
            r_try = np.max(np.abs(f_try))
            if r_try <= (1.0 - ARMIJO_ALPHA * lam) * rnorm:
                break
            if halving < newton.damping:
                lam *= 0.5

        step_norm = lam * np.max(np.abs(delta))
        log.debug('newton iteration %d: residual %.3e, step %.3e, '
                  'lambda %g', iteration, r_try, step_norm, lam)

        improved = r_try < rnorm
        x, fx, rnorm = x_try, f_try, r_try
        history.append(rnorm)
        if rnorm < best_rnorm:
            best_x, best_rnorm = x, rnorm

        if rnorm <= newton.tol_residual:
            return converged(iteration)
        if (not improved and
                step_norm <= newton.tol_step * (1.0 + np.max(np.abs(x)))):
            log.warning('newton stalled after %d iterations at residual '
                        '%.3e', iteration, best_rnorm)
            return NewtonResult(best_x, iteration, best_rnorm, False,
                                step_norm, 'stalled', history)

    log.warning('newton did not converge (%s), residual %.3e', message,
                best_rnorm)
    return NewtonResult(best_x, iteration, best_rnorm, False, step_norm,
                        message, history)
