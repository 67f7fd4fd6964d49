import logging

import numpy as np

from config import settings
from core.discrete_gradients import (MidpointDiscreteGradient,
                                     midpoint_discrete_gradient_pair)
from core.errors import (ConfigurationError, MassMatrixError, NewtonFailure,
                         StepFailure)
from core.grid import Trajectory
from core.integrators.bars import midpoint_bars
from core.integrators.dgp import dgp_step
from core.integrators.discrete_gradient import (classical_dg_step,
                                                transformed_dg_step)
from core.integrators.explicit import transform_to_explicit
from core.integrators.midpoint import implicit_midpoint_step
from core.integrators.radau import radau5_step
from core.integrators.schemes import make_predictor

log = logging.getLogger(__name__)


def _dgp_stepper(sys, cfg, x0, u):
    pair = midpoint_discrete_gradient_pair(sys.H, sys.E, sys.z, cfg.tau_diag)
    bars = midpoint_bars(sys)
    predictor = make_predictor(sys, cfg)

    def step(xk, u_mid, t, dt):
        return dgp_step(sys, pair, bars, xk, u_mid, dt, cfg, predictor)
    return step


def _implicit_midpoint_stepper(sys, cfg, x0, u):
    predictor = make_predictor(sys, cfg)

    def step(xk, u_mid, t, dt):
        return implicit_midpoint_step(sys, xk, u_mid, dt, cfg, predictor)
    return step


def _classical_dg_stepper(sys, cfg, x0, u):
    tol = settings.PH_STRUCTURE_TOL
    identity = np.eye(sys.n)
    Jconst = np.asarray(sys.J(x0), dtype=float)
    if sys.m != 0:
        raise ConfigurationError(
            'classical_dg requires a system without ports (m = 0)')
    if np.max(np.abs(np.asarray(sys.E(x0)) - identity)) > tol:
        raise ConfigurationError('classical_dg requires E = I')
    if np.max(np.abs(np.asarray(sys.R(x0)))) > tol:
        raise ConfigurationError('classical_dg requires R = 0')
    if np.max(np.abs(np.asarray(sys.J(np.zeros(sys.n))) - Jconst)) > tol:
        raise ConfigurationError('classical_dg requires a constant J')
    dg = MidpointDiscreteGradient(sys.H, sys.gradH, cfg.tau_diag)

    def step(xk, u_mid, t, dt):
        return classical_dg_step(dg, Jconst, xk, dt, cfg), np.zeros(0)
    return step


def _transformed_dg_stepper(sys, cfg, x0, u):
    ode = transform_to_explicit(sys)
    dg = MidpointDiscreteGradient(sys.H, sys.gradH, cfg.tau_diag)

    def step(xk, u_mid, t, dt):
        return transformed_dg_step(ode, dg, xk, u_mid, dt, cfg)
    return step


def _radau5_stepper(sys, cfg, x0, u):
    ode = transform_to_explicit(sys)

    def step(xk, u_mid, t, dt):
        x_next = radau5_step(ode, xk, u, t, dt, cfg)
        # midpoint analog of the output, the method has no discrete one
        return x_next, sys.output(0.5 * (xk + x_next))
    return step


STEPPERS = {
    'dgp': _dgp_stepper,
    'implicit_midpoint': _implicit_midpoint_stepper,
    'classical_dg': _classical_dg_stepper,
    'transformed_dg': _transformed_dg_stepper,
    'radau5': _radau5_stepper,
}


def _partial(grid, states, inputs, outputs, accepted, scheme):
    if accepted < 1:
        return None
    return Trajectory(grid.truncate(accepted + 1), states[:accepted + 1],
                      inputs[:accepted], outputs[:accepted], scheme)


def integrate(sys, cfg, grid, u, x0):
    """
    Integrates sys over grid with the scheme selected by cfg.

    The input is sampled at the interval midpoints; outputs are recorded
    per interval.

    Returns a Trajectory.

    Raises ValueError if x0 does not have length sys.n.
    Raises ConfigurationError if the scheme cannot treat sys.
    Raises StepFailure at the first failing step, carrying its index and
    the partial trajectory.
    Raises MassMatrixError if the mass matrix loses definiteness, with the
    same index and partial trajectory attached.
    """
    x0 = np.array(x0, dtype=float).reshape(-1)
    if x0.shape != (sys.n,):
        raise ValueError('x0 must have length %d' % sys.n)

    stepper = STEPPERS[cfg.scheme](sys, cfg, x0, u)
    q = len(grid)
    states = np.empty((q, sys.n))
    states[0] = x0
    inputs = np.empty((q - 1, sys.m))
    outputs = np.empty((q - 1, sys.m))

    log.info('integrating %s with %s over %d steps',
             sys.name, cfg.scheme, q - 1)
    points = grid.points
    for k in range(q - 1):
        t, dt = points[k], points[k + 1] - points[k]
        u_mid = u(0.5 * (points[k] + points[k + 1]))
        try:
            x_next, y_mid = stepper(states[k], u_mid, t, dt)
        except (StepFailure, NewtonFailure) as e:
            log.warning('%s step %d at t = %g failed: %s',
                        cfg.scheme, k, t, e)
            raise StepFailure(
                'Step %d at t = %g failed: %s' % (k, t, e), index=k,
                result=getattr(e, 'result', None),
                trajectory=_partial(grid, states, inputs, outputs, k,
                                    cfg.scheme))
        except MassMatrixError as e:
            log.warning('%s step %d at t = %g: mass matrix lost '
                        'definiteness', cfg.scheme, k, t)
            e.index = k
            e.trajectory = _partial(grid, states, inputs, outputs, k,
                                    cfg.scheme)
            raise
        states[k + 1] = x_next
        inputs[k] = u_mid
        outputs[k] = y_mid

    log.info('finished %s with %s', sys.name, cfg.scheme)
    return Trajectory(grid, states, inputs, outputs, scheme=cfg.scheme)
