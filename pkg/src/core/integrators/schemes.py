import numpy as np

from config import settings
from core.errors import ConfigurationError
from core.integrators.explicit import transform_to_explicit
from core.newton import NewtonSettings


class SchemeConfig(object):
    """
    Selects a one-step scheme and its solver settings.

    scheme is one of settings.SCHEMES, predictor one of settings.PREDICTORS.
    tau_diag is the diagonal band of the midpoint discrete gradient (pair).

    Raises ConfigurationError on an unknown scheme or predictor.
    """

    def __init__(self, scheme=None, newton=None, predictor=None,
                 tau_diag=None):
        if scheme is None:
            scheme = settings.DEFAULT_SCHEME
        if predictor is None:
            predictor = settings.DEFAULT_PREDICTOR
        if scheme not in settings.SCHEMES:
            raise ConfigurationError(
                'Unknown scheme %r. Choose one of %s.' % (
                    scheme, ', '.join(settings.SCHEMES)))
        if predictor not in settings.PREDICTORS:
            raise ConfigurationError(
                'Unknown predictor %r. Choose one of %s.' % (
                    predictor, ', '.join(settings.PREDICTORS)))
        self.scheme = scheme
        self.predictor = predictor
        self.newton = newton if newton is not None else NewtonSettings()
        self.tau_diag = (settings.DG_DIAGONAL_TOL
                         if tau_diag is None else tau_diag)

    def __repr__(self):
        return '<SchemeConfig %s>' % self.scheme

    def with_scheme(self, scheme):
        """Returns a copy of this config running another scheme."""
        return SchemeConfig(scheme, self.newton, self.predictor,
                            self.tau_diag)

    def as_dict(self):
        return {
            'scheme': self.scheme,
            'predictor': self.predictor,
            'tau_diag': self.tau_diag,
            'newton': self.newton.as_dict(),
        }


def make_predictor(sys, cfg):
    """
    Returns guess(xk, u_mid, dt), the initial Newton guess for the next
    state of sys. The explicit form used by explicit_euler is built once.
    """
    if cfg.predictor == 'explicit_euler':
        rhs = transform_to_explicit(sys).rhs
        return lambda xk, u_mid, dt: xk + dt * rhs(xk, u_mid)
    return lambda xk, u_mid, dt: np.array(xk, dtype=float)


def midpoint_jacobian(sys, xk, dt):
    """
    Newton matrix built from sys.residual_jacobian, or None when the
    system does not provide one.
    """
    if sys.residual_jacobian is None:
        return None
    return lambda xhat: sys.residual_jacobian(0.5 * (xk + xhat), dt)
