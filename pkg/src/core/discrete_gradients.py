import numpy as np

from config import settings
from core.errors import MassMatrixError

'''
Discrete gradients and discrete gradient pairs.

A discrete gradient dg of H satisfies

    dg(x, x) = grad H(x),
    dg(x, xhat)^T (xhat - x) = H(xhat) - H(x).

A discrete gradient pair (Ebar, zbar) for (H, E, z) with E^T z = grad H
satisfies

    Ebar(x, x) = E(x),  zbar(x, x) = z(x),
    zbar(x, xhat)^T Ebar(x, xhat) (xhat - x) = H(xhat) - H(x).

Both are open interfaces: subclasses only have to provide __call__ and
Ebar/zbar respectively.
'''


def _on_diagonal(x, xhat, tau_diag):
    return np.linalg.norm(xhat - x) <= tau_diag * (1.0 + np.linalg.norm(x))


def midpoint_discrete_gradient(H, gradH, x, xhat, tau_diag=None):
    """
    Midpoint discrete gradient

        grad H(mid) + (H(xhat) - H(x) - grad H(mid)^T d) / |d|^2 d

    with mid = (x + xhat) / 2, d = xhat - x. Returns grad H(x) within the
    relative band |d| <= tau_diag (1 + |x|).
    """
    if tau_diag is None:
        tau_diag = settings.DG_DIAGONAL_TOL
    x = np.asarray(x, dtype=float)
    xhat = np.asarray(xhat, dtype=float)
    if _on_diagonal(x, xhat, tau_diag):
        return np.asarray(gradH(x), dtype=float)

    d = xhat - x
    grad_mid = np.asarray(gradH(0.5 * (x + xhat)), dtype=float)
    correction = (H(xhat) - H(x) - grad_mid.dot(d)) / d.dot(d)
    return grad_mid + correction * d


class DiscreteGradient(object):
    """Base class of discrete gradients of (H, gradH)."""

    def __init__(self, H, gradH):
        self.H = H
        self.gradH = gradH

    def __call__(self, x, xhat):
        raise NotImplementedError


class MidpointDiscreteGradient(DiscreteGradient):

    def __init__(self, H, gradH, tau_diag=None):
        DiscreteGradient.__init__(self, H, gradH)
        if tau_diag is None:
            tau_diag = settings.DG_DIAGONAL_TOL
        if tau_diag <= 0:
            raise ValueError('tau_diag must be positive')
        self.tau_diag = tau_diag

    def __call__(self, x, xhat):
        return midpoint_discrete_gradient(
            self.H, self.gradH, x, xhat, self.tau_diag)


class DiscreteGradientPair(object):
    """Base class of discrete gradient pairs for (H, E, z)."""

    def __init__(self, H, E, z):
        self.H = H
        self.E = E
        self.z = z

    def Ebar(self, x, xhat):
        raise NotImplementedError

    def zbar(self, x, xhat):
        raise NotImplementedError

    def evaluate(self, x, xhat):
        """Returns (Ebar, zbar) at (x, xhat)."""
        return self.Ebar(x, xhat), self.zbar(x, xhat)


class MidpointDiscreteGradientPair(DiscreteGradientPair):
    """
    Ebar(x, xhat) = E(mid) and

        zbar = z(mid) + (H(xhat) - H(x) - z(mid)^T Ebar d) / (d^T Ebar d) d

    for pointwise symmetric positive definite E.
    """

    def __init__(self, H, E, z, tau_diag=None):
        DiscreteGradientPair.__init__(self, H, E, z)
        if tau_diag is None:
            tau_diag = settings.DG_DIAGONAL_TOL
        if tau_diag <= 0:
            raise ValueError('tau_diag must be positive')
        self.tau_diag = tau_diag

    def Ebar(self, x, xhat):
        x = np.asarray(x, dtype=float)
        xhat = np.asarray(xhat, dtype=float)
        return np.asarray(self.E(0.5 * (x + xhat)), dtype=float)

    def zbar(self, x, xhat):
        return self.evaluate(x, xhat)[1]

    def evaluate(self, x, xhat):
        """
        Returns (Ebar, zbar) at (x, xhat), sharing the midpoint evaluation.

        Raises MassMatrixError if d^T Ebar d <= 0 off the diagonal.
        """
        x = np.asarray(x, dtype=float)
        xhat = np.asarray(xhat, dtype=float)
        if _on_diagonal(x, xhat, self.tau_diag):
            return np.asarray(self.E(x), dtype=float), \
                np.asarray(self.z(x), dtype=float)

        mid = 0.5 * (x + xhat)
        Ebar = np.asarray(self.E(mid), dtype=float)
        d = xhat - x
        z_mid = np.asarray(self.z(mid), dtype=float)
        Ed = Ebar.dot(d)
        denominator = d.dot(Ed)
        if not denominator > 0:
            raise MassMatrixError(
                'Mass matrix not positive definite at midpoint: '
                'd^T E(mid) d = %r' % denominator, states=(x, xhat))
        correction = (self.H(xhat) - self.H(x) - z_mid.dot(Ed)) / denominator
        return Ebar, z_mid + correction * d


def midpoint_discrete_gradient_pair(H, E, z, tau_diag=None):
    return MidpointDiscreteGradientPair(H, E, z, tau_diag)


def _max_or_zero(values):
    return max(values) if values else 0.0


def verify_pair_axioms(pair, samples):
    """
    Returns the max absolute defects (i, ii, iii) of the pair axioms over
    samples of (x, xhat) pairs.

    Diagonal samples (x == xhat) enter (i) and (ii) only; off-diagonal
    samples enter (i) and (ii) through their first component and (iii)
    through the pair itself.

    Raises ValueError if samples is empty.
    """
    samples = list(samples)
    if not samples:
        raise ValueError('verify_pair_axioms needs at least one sample')

    consistency_E, consistency_z, secant = [], [], []
    for x, xhat in samples:
        x = np.asarray(x, dtype=float)
        xhat = np.asarray(xhat, dtype=float)
        Ex, zx = pair.evaluate(x, x)
        consistency_E.append(np.max(np.abs(Ex - pair.E(x))))
        consistency_z.append(np.max(np.abs(zx - pair.z(x))))
        if np.array_equal(x, xhat):
            continue
        Ebar, zbar = pair.evaluate(x, xhat)
        secant.append(abs(zbar.dot(Ebar.dot(xhat - x))
                          - (pair.H(xhat) - pair.H(x))))

    return (_max_or_zero(consistency_E), _max_or_zero(consistency_z),
            _max_or_zero(secant))


def verify_gradient_axioms(dg, samples):
    """
    Returns the max absolute defects (consistency, secant) of a discrete
    gradient over samples of (x, xhat) pairs.

    Raises ValueError if samples is empty.
    """
    samples = list(samples)
    if not samples:
        raise ValueError('verify_gradient_axioms needs at least one sample')

    consistency, secant = [], []
    for x, xhat in samples:
        x = np.asarray(x, dtype=float)
        xhat = np.asarray(xhat, dtype=float)
        consistency.append(np.max(np.abs(dg(x, x) - dg.gradH(x))))
        if np.array_equal(x, xhat):
            continue
        secant.append(abs(dg(x, xhat).dot(xhat - x)
                          - (dg.H(xhat) - dg.H(x))))
    return _max_or_zero(consistency), _max_or_zero(secant)
