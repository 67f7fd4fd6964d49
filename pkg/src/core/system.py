import logging

import numpy as np
from scipy import linalg

from config import settings
from core.errors import StructureError

'''
Nonlinear port-Hamiltonian systems

    E(x) x' = (J(x) - R(x)) z(x) + B(x) u,
          y = B(x)^T z(x)

with J = -J^T, R = R^T >= 0 and E^T z = grad H pointwise.
'''

log = logging.getLogger(__name__)


class PHSystem(object):
    """
    Callback bundle describing a port-Hamiltonian system.

    All callbacks take a state vector of length n. B returns an n x m
    matrix, also for m == 0. residual_jacobian is optional: if given, it
    maps (x_mid, dt) to the Jacobian of the implicit midpoint residual and
    is used as the Newton matrix by the implicit steps.

    Instances are never mutated after construction and may be shared
    between worker threads.
    """

    def __init__(self, n, m, E, J, R, z, B, H, gradH,
                 residual_jacobian=None, name='system'):
        if int(n) != n or n < 1:
            raise StructureError('n must be a positive integer, got %r' % n)
        if int(m) != m or m < 0:
            raise StructureError(
                'm must be a non-negative integer, got %r' % m)
        self.n = int(n)
        self.m = int(m)
        self.E = E
        self.J = J
        self.R = R
        self.z = z
        self.B = B
        self.H = H
        self.gradH = gradH
        self.residual_jacobian = residual_jacobian
        self.name = name

    def __repr__(self):
        return '<PHSystem %s n=%d m=%d>' % (self.name, self.n, self.m)

    def output(self, x):
        return self.B(x).T.dot(self.z(x))

    def rhs(self, x, u):
        """Evaluates (J - R) z + B u at x, i.e. E(x) x'."""
        zx = self.z(x)
        return (self.J(x) - self.R(x)).dot(zx) + self.B(x).dot(u)

    def validate_dimensions(self, x):
        """
        Evaluates every callback at x and checks the result shapes.

        Raises StructureError on any mismatch.
        """
        n, m = self.n, self.m
        x = np.asarray(x, dtype=float)
        if x.shape != (n,):
            raise StructureError(
                'state has shape %s, expected (%d,)' % (x.shape, n))

        expected = (
            ('E', (n, n)),
            ('J', (n, n)),
            ('R', (n, n)),
            ('z', (n,)),
            ('B', (n, m)),
            ('gradH', (n,)),
        )
        for name, shape in expected:
            value = np.asarray(getattr(self, name)(x))
            if value.shape != shape:
                raise StructureError(
                    '%s returned shape %s, expected %s' % (
                        name, value.shape, shape))
        if np.ndim(self.H(x)) != 0:
            raise StructureError('H must return a scalar')


class InputSignal(object):
    """Input u(t) with values in R^m."""

    def __init__(self, u, m):
        self.u = u
        self.m = int(m)

    def __call__(self, t):
        value = np.asarray(self.u(t), dtype=float).reshape(self.m)
        return value

    @classmethod
    def zero(cls, m):
        return cls(lambda t: np.zeros(m), m)

    @classmethod
    def sinusoid(cls, m, amplitude=1.0, frequency=1.0):
        """u_i(t) = amplitude * sin(2 pi frequency t) in every component."""
        return cls(
            lambda t: amplitude * np.sin(2.0 * np.pi * frequency * t)
            * np.ones(m), m)


class StructureReport(object):
    """
    Result of check_ph_structure.

    rows maps a condition name to (defect, worst state, threshold).
    """

    CONDITIONS = ('skew', 'symmetry', 'psd', 'factorization', 'gradient')

    def __init__(self, rows):
        self.rows = rows

    def __getitem__(self, name):
        return self.rows[name][0]

    def worst_state(self, name):
        return self.rows[name][1]

    @property
    def passed(self):
        return all(defect <= threshold
                   for defect, _, threshold in self.rows.values())

    def failures(self):
        return [name for name in self.CONDITIONS
                if self.rows[name][0] > self.rows[name][2]]

    def as_dict(self):
        return dict(
            (name, {'defect': float(defect),
                    'threshold': float(threshold),
                    'state': [float(v) for v in state]})
            for name, (defect, state, threshold) in self.rows.items())


def random_states(n, count, box=None, seed=None):
    """
    Draws `count` states uniformly from the box [low, high]^n.

    box is a (low, high) pair of scalars or of length-n vectors.
    """
    if box is None:
        box = settings.PH_DEFAULT_BOX
    low, high = box
    rng = np.random.default_rng(seed)
    return rng.uniform(low, high, size=(count, n))


def gradient_defect(sys, x, h_fd=None):
    """
    Relative max-norm error of gradH(x) against second order central
    differences of H, with step h_fd scaled by the state magnitude.
    """
    if h_fd is None:
        h_fd = settings.PH_GRADIENT_FD_STEP
    x = np.asarray(x, dtype=float)
    h = h_fd * (1.0 + np.abs(x))
    fd = np.empty(sys.n)
    for i in range(sys.n):
        step = np.zeros(sys.n)
        step[i] = h[i]
        fd[i] = (sys.H(x + step) - sys.H(x - step)) / (2.0 * h[i])
    grad = np.asarray(sys.gradH(x))
    return np.max(np.abs(grad - fd)) / (1.0 + np.max(np.abs(grad)))


def check_ph_structure(sys, samples, tau_struct=None, gradient_tol=None):
    """
    Checks the pH conditions at every sample state.

    Returns a StructureReport with the max skew-symmetry defect of J, the
    symmetry defect of R, the negative part of the smallest eigenvalue of
    sym(R), the factorization defect and the relative error of gradH
    against central differences of H.

    The factorization row is normalized: it holds the max over the samples
    of |E^T z - grad H| / (1 + |grad H|) (Euclidean norms), so passing it
    at tau_struct means |E^T z - grad H| <= tau_struct (1 + |grad H|) at
    every sample.

    Raises ValueError if samples is empty or tau_struct is not positive.
    Raises StructureError if a callback has the wrong dimensions.
    """
    if tau_struct is None:
        tau_struct = settings.PH_STRUCTURE_TOL
    if gradient_tol is None:
        gradient_tol = settings.PH_GRADIENT_TOL
    samples = np.atleast_2d(np.asarray(samples, dtype=float))
    if samples.size == 0:
        raise ValueError('check_ph_structure needs at least one sample')
    if tau_struct <= 0:
        raise ValueError('tau_struct must be positive')

    sys.validate_dimensions(samples[0])

    worst = dict((name, (0.0, samples[0])) for name in
                 StructureReport.CONDITIONS)

    def record(name, defect, x):
        if defect > worst[name][0]:
            worst[name] = (defect, x)

    for x in samples:
        Jx = np.asarray(sys.J(x))
        Rx = np.asarray(sys.R(x))
        record('skew', np.max(np.abs(Jx + Jx.T)), x)
        record('symmetry', np.max(np.abs(Rx - Rx.T)), x)
        lam_min = linalg.eigvalsh(0.5 * (Rx + Rx.T))[0]
        record('psd', max(0.0, -lam_min), x)

        grad = np.asarray(sys.gradH(x))
        factor = np.asarray(sys.E(x)).T.dot(sys.z(x)) - grad
        record('factorization',
               np.linalg.norm(factor) / (1.0 + np.linalg.norm(grad)), x)
        record('gradient', gradient_defect(sys, x), x)

    rows = {}
    for name in StructureReport.CONDITIONS:
        threshold = gradient_tol if name == 'gradient' else tau_struct
        rows[name] = (worst[name][0], worst[name][1], threshold)

    report = StructureReport(rows)
    if not report.passed:
        log.warning('%s fails structure checks: %s',
                    sys.name, ', '.join(report.failures()))
    return report


def continuous_power_residual(sys, x, xdot, u=None):
    """
    Returns grad H(x)^T x' + z^T R z - z^T B u.

    Vanishes when (x, x', u) satisfies the state equation exactly.

    Raises StructureError on dimension mismatches.
    """
    x = np.asarray(x, dtype=float)
    xdot = np.asarray(xdot, dtype=float)
    if u is None:
        u = np.zeros(sys.m)
    u = np.asarray(u, dtype=float).reshape(-1)
    if x.shape != (sys.n,) or xdot.shape != (sys.n,):
        raise StructureError('x and xdot must have length %d' % sys.n)
    if u.shape != (sys.m,):
        raise StructureError('u must have length %d' % sys.m)

    zx = sys.z(x)
    return (sys.gradH(x).dot(xdot) + zx.dot(sys.R(x).dot(zx))
            - zx.dot(sys.B(x).dot(u)))
