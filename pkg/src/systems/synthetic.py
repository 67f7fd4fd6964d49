import threading

import numpy as np
from scipy import linalg

from core.errors import ConfigurationError
from core.system import PHSystem

'''
Nonlinear pH system with state dependent mass matrix

    E(x) = I + alpha g(x) g(x)^T,  g(x) = sin(x) (componentwise),
    H(x) = |x|^2 / 2 + sum_i cosh(x_i) - n,
    z(x) = E(x)^-1 grad H(x),

constant tridiagonal skew J, R = delta I and B = e_1. E is symmetric with
smallest eigenvalue 1 everywhere.
'''


class _LastState(threading.local):
    key = None
    value = None


def make_synthetic_nonlinear_ph(n=4, alpha=0.5, delta=0.1):
    """
    Raises ConfigurationError unless n >= 2, alpha > 0 and delta >= 0.
    """
    if int(n) != n or n < 2:
        raise ConfigurationError('n must be an integer >= 2')
    if not alpha > 0:
        raise ConfigurationError('alpha must be positive')
    if not delta >= 0:
        raise ConfigurationError('delta must be non-negative')
    n = int(n)

    J = np.diag(np.ones(n - 1), 1) - np.diag(np.ones(n - 1), -1)
    R = delta * np.eye(n)
    B = np.zeros((n, 1))
    B[0, 0] = 1.0
    identity = np.eye(n)

    def E(x):
        g = np.sin(x)
        return identity + alpha * np.outer(g, g)

    def H(x):
        x = np.asarray(x, dtype=float)
        return 0.5 * x.dot(x) + np.sum(np.cosh(x)) - n

    def gradH(x):
        return x + np.sinh(x)

    # z is evaluated repeatedly at the same state within a Newton step
    cache = _LastState()

    def z(x):
        x = np.asarray(x, dtype=float)
        key = x.tobytes()
        if cache.key != key:
            cache.value = linalg.solve(E(x), gradH(x), assume_a='pos')
            cache.key = key
        return cache.value.copy()

    return PHSystem(
        n=n, m=1,
        E=E,
        J=lambda x: J,
        R=lambda x: R,
        z=z,
        B=lambda x: B,
        H=H,
        gradH=gradH,
        name='synthetic')
