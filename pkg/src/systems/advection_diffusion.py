import numpy as np
from scipy import linalg

from config import settings
from core.errors import ConfigurationError
from core.system import PHSystem

'''
Advection-diffusion on (0, 1)

    x_t = -c x_xi + d x_xixi,
    c x - d x_xi = c g(t)   at xi = 0 (Robin inflow),
    x_xi = 0                at xi = 1 (Neumann),

discretized on N cells of width h = 1/N with unknowns at the cell centers.
The flux F = c x - d x_xi is approximated by centered differences on
interior faces, by the prescribed inflow c g at xi = 0 and by the outflow
c x_N at xi = 1. This gives

    h x' = A x + c g e_1

and the pH form E = h I, z = x, H = h |x|^2 / 2, J = (A - A^T) / 2,
R = -(A + A^T) / 2, B = c e_1.
'''


def advection_diffusion_operator(N, c, d):
    """Assembles A (N x N) of h x' = A x + c g e_1."""
    h = 1.0 / N
    A = np.zeros((N, N))
    for i in range(N - 1):
        # flux through the face between cells i and i + 1
        # F = c (x_i + x_i+1) / 2 - d (x_i+1 - x_i) / h
        flux = np.zeros(N)
        flux[i] = 0.5 * c + d / h
        flux[i + 1] = 0.5 * c - d / h
        A[i] -= flux
        A[i + 1] += flux
    # outflow at xi = 1
    A[N - 1, N - 1] -= c
    return A


def make_advection_diffusion_fd(N=50, c=1.0, d=0.05):
    """
    Raises ConfigurationError if N < 3, d < 0 or the dissipation matrix is
    not positive semi-definite (which happens for c < 0).
    """
    if int(N) != N or N < 3:
        raise ConfigurationError('N must be an integer >= 3')
    if not d >= 0:
        raise ConfigurationError('d must be non-negative')
    N = int(N)
    h = 1.0 / N

    A = advection_diffusion_operator(N, c, d)
    J = 0.5 * (A - A.T)
    R = -0.5 * (A + A.T)
    lam_min = linalg.eigvalsh(R)[0]
    if lam_min < -settings.PH_STRUCTURE_TOL:
        raise ConfigurationError(
            'c = %r, d = %r gives an indefinite dissipation matrix '
            '(smallest eigenvalue %.3e)' % (c, d, lam_min))
    E = h * np.eye(N)
    B = np.zeros((N, 1))
    B[0, 0] = c

    def residual_jacobian(x_mid, dt):
        return E - 0.5 * dt * (J - R)

    return PHSystem(
        n=N, m=1,
        E=lambda x: E,
        J=lambda x: J,
        R=lambda x: R,
        z=lambda x: np.array(x, dtype=float),
        B=lambda x: B,
        H=lambda x: 0.5 * h * np.dot(x, x),
        gradH=lambda x: h * np.asarray(x, dtype=float),
        residual_jacobian=residual_jacobian,
        name='advection_diffusion')
