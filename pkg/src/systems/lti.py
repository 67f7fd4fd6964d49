import numpy as np

from core.errors import ConfigurationError
from core.system import PHSystem


def make_lti_ph(n=4, seed=0):
    """
    Linear time-invariant pH system with random constant SPD E, skew J,
    PSD R, quadratic H = x^T Q x / 2 (Q SPD), z = E^-1 Q x and B = e_1.

    The implicit midpoint residual is linear, its Jacobian
    E - dt/2 (J - R) E^-1 Q is provided as residual_jacobian.
    """
    if int(n) != n or n < 1:
        raise ConfigurationError('n must be a positive integer')
    n = int(n)
    rng = np.random.default_rng(seed)

    def spd(scale):
        M = rng.standard_normal((n, n))
        return M.dot(M.T) / n + scale * np.eye(n)

    E = spd(1.0)
    Q = spd(1.0)
    S = rng.standard_normal((n, n))
    J = S - S.T
    L = rng.standard_normal((n, n)) / np.sqrt(n)
    R = 0.1 * L.dot(L.T)
    B = np.zeros((n, 1))
    B[0, 0] = 1.0
    # z = E^-1 Q x, E symmetric
    Z = np.linalg.solve(E, Q)

    def residual_jacobian(x_mid, dt):
        return E - 0.5 * dt * (J - R).dot(Z)

    return PHSystem(
        n=n, m=1,
        E=lambda x: E,
        J=lambda x: J,
        R=lambda x: R,
        z=lambda x: Z.dot(x),
        B=lambda x: B,
        H=lambda x: 0.5 * x.dot(Q.dot(x)),
        gradH=lambda x: Q.dot(x),
        residual_jacobian=residual_jacobian,
        name='lti')
