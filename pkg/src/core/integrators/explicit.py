import numpy as np
from scipy import linalg

from core.errors import MassMatrixError

'''
Transformation of E(x) x' = (J - R) z + B u with invertible E into

    x' = (Jt - Rt) grad H + Bt u,   y = Bt^T grad H

with Jt = E^-1 J E^-T, Rt = E^-1 R E^-T and Bt = E^-1 B. E^-1 is never
formed; every product is a linear solve with E(x).
'''


class ExplicitODE(object):
    """
    x' = rhs(x, u) with output(x).

    coefficients(x), if given, returns (Jt, Rt, Bt) of the classical pH
    form. jacobian(x, u), if given, returns d rhs / dx.
    """

    def __init__(self, n, m, rhs, output=None, coefficients=None,
                 jacobian=None, name='ode'):
        self.n = n
        self.m = m
        self.rhs = rhs
        self.output = output
        self.coefficients = coefficients
        self.jacobian = jacobian
        self.name = name

    def __repr__(self):
        return '<ExplicitODE %s n=%d m=%d>' % (self.name, self.n, self.m)

    def vector_field(self, u):
        """Returns f(t, x) = rhs(x, u(t)) for an InputSignal u."""
        return lambda t, x: self.rhs(x, u(t))


def solve_mass(E, rhs, x):
    """
    Returns E^-1 rhs.

    Raises MassMatrixError if E is singular.
    """
    rhs = np.asarray(rhs, dtype=float)
    if rhs.size == 0:
        return np.zeros(rhs.shape)
    try:
        return linalg.solve(E, rhs, check_finite=True)
    except (linalg.LinAlgError, ValueError) as e:
        raise MassMatrixError('Singular mass matrix at x = %s: %s' % (
            np.array2string(np.asarray(x), precision=6), e), states=(x,))


def transform_to_explicit(sys):
    """
    Returns the ExplicitODE equivalent to sys.

    The returned rhs raises MassMatrixError where E(x) is singular.
    """

    def rhs(x, u):
        x = np.asarray(x, dtype=float)
        return solve_mass(np.asarray(sys.E(x)), sys.rhs(x, u), x)

    def coefficients(x):
        x = np.asarray(x, dtype=float)
        Ex = np.asarray(sys.E(x))
        Jt = solve_mass(Ex, solve_mass(Ex, np.asarray(sys.J(x)), x).T, x).T
        Rt = solve_mass(Ex, solve_mass(Ex, np.asarray(sys.R(x)), x).T, x).T
        Bt = solve_mass(Ex, np.asarray(sys.B(x)), x).reshape(sys.n, sys.m)
        # restore the exact (skew-)symmetry lost to roundoff
        return 0.5 * (Jt - Jt.T), 0.5 * (Rt + Rt.T), Bt

    return ExplicitODE(sys.n, sys.m, rhs, output=sys.output,
                       coefficients=coefficients,
                       name='%s (explicit)' % sys.name)
