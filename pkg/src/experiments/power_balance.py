import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from config import settings
from core.csvio import write_table
from core.discrete_gradients import (MidpointDiscreteGradient,
                                     midpoint_discrete_gradient_pair)
from core.errors import MassMatrixError, StepFailure
from core.grid import TimeGrid
from core.integrators import (SchemeConfig, integrate, midpoint_bars,
                              transform_to_explicit)

log = logging.getLogger(__name__)

# Schemes whose discrete power balance holds exactly by construction.
BALANCED_SCHEMES = ('dgp', 'transformed_dg', 'classical_dg')

HEADER = ['t_mid', 'lhs', 'dissipation', 'supply', 'residual']


class PowerBalanceReport(object):
    """
    Per-interval terms of the discrete power balance

        lhs = (H(x_k+1) - H(x_k)) / dt,  residual = lhs + dissipation - supply.

    bound is the residual bound declared for the scheme (None if the scheme
    makes no claim).
    """

    def __init__(self, scheme, t_mid, lhs, dissipation, supply, bound=None):
        self.scheme = scheme
        self.t_mid = np.asarray(t_mid, dtype=float)
        self.lhs = np.asarray(lhs, dtype=float)
        self.dissipation = np.asarray(dissipation, dtype=float)
        self.supply = np.asarray(supply, dtype=float)
        self.residual = self.lhs + self.dissipation - self.supply
        self.bound = bound
        self.trajectory = None

    def __len__(self):
        return self.t_mid.size

    def __repr__(self):
        return '<PowerBalanceReport %s max residual %.3e>' % (
            self.scheme, self.max_abs_residual)

    @property
    def max_abs_residual(self):
        return float(np.max(np.abs(self.residual)))

    @property
    def within_bound(self):
        return self.bound is None or self.max_abs_residual <= self.bound

    def dissipation_inequality_holds(self, tol=None):
        """lhs <= supply on every interval, up to tol."""
        if tol is None:
            tol = self.bound if self.bound is not None else 0.0
        return bool(np.all(self.lhs <= self.supply + tol))

    def rows(self):
        return np.column_stack((self.t_mid, self.lhs, self.dissipation,
                                self.supply, self.residual))

    def write_csv(self, path):
        return write_table(path, HEADER, self.rows())


def _dissipation_terms(sys, scheme, tau_diag):
    """
    Returns terms(x, xhat) -> (effort, dissipation matrix) as balanced by
    the scheme.
    """
    if scheme == 'dgp':
        pair = midpoint_discrete_gradient_pair(sys.H, sys.E, sys.z, tau_diag)
        bars = midpoint_bars(sys)
        return lambda x, xhat: (pair.zbar(x, xhat), bars.Rbar(x, xhat))
    if scheme == 'transformed_dg':
        dg = MidpointDiscreteGradient(sys.H, sys.gradH, tau_diag)
        ode = transform_to_explicit(sys)
        return lambda x, xhat: (dg(x, xhat),
                                ode.coefficients(0.5 * (x + xhat))[1])
    if scheme == 'classical_dg':
        dg = MidpointDiscreteGradient(sys.H, sys.gradH, tau_diag)
        return lambda x, xhat: (dg(x, xhat), np.zeros((sys.n, sys.n)))

    def at_midpoint(x, xhat):
        mid = 0.5 * (x + xhat)
        return sys.z(mid), np.asarray(sys.R(mid))
    return at_midpoint


def power_balance_report(sys, trajectory, cfg=None, bound=None):
    """
    Recomputes the discrete power balance of a trajectory from its states,
    midpoint inputs and midpoint outputs.

    For dgp the dissipation is zbar^T Rbar zbar, for transformed_dg
    dg^T Rt(mid) dg, for classical_dg zero and for the remaining schemes
    z(mid)^T R(mid) z(mid).
    """
    scheme = trajectory.scheme
    if cfg is None:
        cfg = SchemeConfig(scheme)
    if bound is None and scheme in BALANCED_SCHEMES:
        bound = settings.POWER_BALANCE_BOUND

    states = trajectory.states
    dts = trajectory.grid.steps
    lhs = np.diff(trajectory.hamiltonian(sys)) / dts

    terms = _dissipation_terms(sys, scheme, cfg.tau_diag)
    dissipation = np.empty(len(dts))
    for k in range(len(dts)):
        effort, R = terms(states[k], states[k + 1])
        dissipation[k] = effort.dot(R.dot(effort))
    supply = np.sum(trajectory.outputs_mid * trajectory.inputs_mid, axis=1)

    report = PowerBalanceReport(scheme, trajectory.grid.midpoints, lhs,
                                dissipation, supply, bound)
    report.trajectory = trajectory
    return report


def run_power_balance(spec, schemes, dt=None, t_end=None, params=None,
                      newton=None, workers=None):
    """
    Integrates the model `spec` with every scheme on a uniform grid and
    returns {scheme: PowerBalanceReport}.

    Raises ConfigurationError if dt does not divide t_end or a scheme is
    unknown.
    Raises the StepFailure (or MassMatrixError) of the first failing scheme,
    in sorted order, once all schemes have run. Its `reports` hold the
    reports of the finished schemes and, where a step was accepted before
    the failure, the partial reports of the failed ones.
    """
    if dt is None:
        dt = settings.POWER_BALANCE_DT
    if t_end is None:
        t_end = settings.POWER_BALANCE_T_END
    if workers is None:
        workers = settings.EXPERIMENT_WORKERS

    sys = spec.build(params)
    grid = TimeGrid.uniform(t_end, dt)
    u = spec.input_signal(sys)
    x0 = spec.initial_state(sys)
    configs = [SchemeConfig(scheme, newton) for scheme in schemes]

    def run(cfg):
        log.info('power balance: %s with %s, dt = %g',
                 spec.name, cfg.scheme, dt)
        try:
            trajectory = integrate(sys, cfg, grid, u, x0)
        except (StepFailure, MassMatrixError) as e:
            report = None
            if e.trajectory is not None:
                report = power_balance_report(sys, e.trajectory, cfg)
            return cfg.scheme, report, e
        return cfg.scheme, power_balance_report(sys, trajectory, cfg), None

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        results = sorted(pool.map(run, configs), key=lambda item: item[0])

    reports = dict((scheme, report) for scheme, report, _ in results
                   if report is not None)
    failures = [e for _, _, e in results if e is not None]
    if failures:
        failures[0].reports = reports
        raise failures[0]
    return reports
