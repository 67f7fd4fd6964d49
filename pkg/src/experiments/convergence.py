import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from config import settings
from core.csvio import write_table
from core.errors import ConfigurationError
from core.grid import TimeGrid
from core.integrators import SchemeConfig, integrate

log = logging.getLogger(__name__)

HEADER = ['dt', 'rel_error', 'eoc']

# Relative slack when checking that dt is a multiple of dt_ref.
ALIGNMENT_TOL = 1e-9


def halving_dt_list(start=None, levels=None):
    """Returns [start, start / 2, ..., start / 2^(levels - 1)]."""
    if start is None:
        start = settings.CONVERGENCE_DT_START
    if levels is None:
        levels = settings.CONVERGENCE_LEVELS
    if start <= 0 or levels < 1:
        raise ConfigurationError('start must be positive and levels >= 1')
    return [start / 2.0 ** k for k in range(levels)]


def eoc(dts, errors):
    """
    Experimental orders of convergence

        log(err_prev / err) / log(dt_prev / dt),

    nan for the first entry.
    """
    dts = np.asarray(dts, dtype=float)
    errors = np.asarray(errors, dtype=float)
    orders = np.full(dts.size, np.nan)
    if dts.size > 1:
        with np.errstate(divide='ignore', invalid='ignore'):
            orders[1:] = (np.log(errors[:-1] / errors[1:])
                          / np.log(dts[:-1] / dts[1:]))
    return orders


class ConvergenceTable(object):
    """
    Relative errors of one scheme against a reference solution, one row
    per step size. dts strictly decrease.
    """

    def __init__(self, scheme, dts, errors, reference_scheme, dt_ref):
        self.scheme = scheme
        self.dts = np.asarray(dts, dtype=float)
        self.errors = np.asarray(errors, dtype=float)
        self.eoc = eoc(self.dts, self.errors)
        self.reference_scheme = reference_scheme
        self.dt_ref = dt_ref

    def __len__(self):
        return self.dts.size

    def __repr__(self):
        return '<ConvergenceTable %s vs %s(dt=%g), %d rows>' % (
            self.scheme, self.reference_scheme, self.dt_ref, len(self))

    def finest_orders(self, count=3):
        """The experimental orders of the `count` smallest step sizes."""
        return self.eoc[-count:]

    def rows(self):
        return np.column_stack((self.dts, self.errors, self.eoc))

    def write_csv(self, path):
        return write_table(path, HEADER, self.rows())


def _check_dt_list(dt_list, dt_ref, t_end):
    if not dt_list:
        raise ConfigurationError('dt_list must not be empty')
    if any(b >= a for a, b in zip(dt_list, dt_list[1:])):
        raise ConfigurationError('dt_list must strictly decrease')
    if dt_ref > min(dt_list) / 4.0 * (1.0 + ALIGNMENT_TOL):
        raise ConfigurationError(
            'dt_ref = %r must be at most min(dt_list) / 4 = %r' % (
                dt_ref, min(dt_list) / 4.0))
    strides = []
    for dt in dt_list:
        stride = int(round(dt / dt_ref))
        if abs(stride * dt_ref - dt) > ALIGNMENT_TOL * dt:
            raise ConfigurationError(
                'dt = %r is not an integer multiple of dt_ref = %r' % (
                    dt, dt_ref))
        TimeGrid.uniform(t_end, dt)
        strides.append(stride)
    return strides


def relative_error(states, reference):
    """|X - X_ref|_F / |X_ref|_F."""
    return (np.linalg.norm(states - reference)
            / np.linalg.norm(reference))


def run_convergence(spec, schemes, dt_list=None, reference=None, dt_ref=None,
                    t_end=None, params=None, newton=None, workers=None):
    """
    Measures the relative error of every scheme for every dt in dt_list
    against one reference solution computed with `reference` at dt_ref
    (default min(dt_list) / CONVERGENCE_REFERENCE_RATIO). Errors are taken
    over the coarse grid nodes.

    Returns {scheme: ConvergenceTable}.

    Raises ConfigurationError if dt_list is not strictly decreasing, a dt
    is not an integer multiple of dt_ref or dt_ref > min(dt_list) / 4.
    Raises StepFailure if an integration fails.
    """
    if dt_list is None:
        dt_list = halving_dt_list()
    dt_list = [float(dt) for dt in dt_list]
    if reference is None:
        reference = settings.CONVERGENCE_REFERENCE_SCHEME
    if t_end is None:
        t_end = settings.CONVERGENCE_T_END
    if workers is None:
        workers = settings.EXPERIMENT_WORKERS
    if dt_ref is None and dt_list:
        dt_ref = min(dt_list) / settings.CONVERGENCE_REFERENCE_RATIO
    strides = _check_dt_list(dt_list, dt_ref, t_end)

    sys = spec.build(params)
    u = spec.input_signal(sys)
    x0 = spec.initial_state(sys)
    base = SchemeConfig(reference, newton)

    log.info('convergence: reference %s with dt_ref = %g', reference, dt_ref)
    reference_states = integrate(
        sys, base, TimeGrid.uniform(t_end, dt_ref), u, x0).states

    def run(job):
        scheme, dt, stride = job
        log.info('convergence: %s with %s, dt = %g', spec.name, scheme, dt)
        states = integrate(sys, base.with_scheme(scheme),
                           TimeGrid.uniform(t_end, dt), u, x0).states
        coarse = reference_states[::stride]
        return (scheme, dt), relative_error(states, coarse)

    jobs = [(scheme, dt, stride) for scheme in schemes
            for dt, stride in zip(dt_list, strides)]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        errors = dict(pool.map(run, jobs))

    tables = {}
    for scheme in sorted(set(schemes)):
        tables[scheme] = ConvergenceTable(
            scheme, dt_list, [errors[(scheme, dt)] for dt in dt_list],
            reference, dt_ref)
    return tables
