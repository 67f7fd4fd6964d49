import numpy as np


class BarCoefficients(object):
    """
    Two-point approximations Jbar, Rbar, Bbar of J, R, B.

    Jbar must be pointwise skew-symmetric, Rbar symmetric positive
    semi-definite, and all three must reduce to J, R, B on the diagonal.
    """

    def __init__(self, Jbar, Rbar, Bbar):
        self.Jbar = Jbar
        self.Rbar = Rbar
        self.Bbar = Bbar


class MidpointBars(BarCoefficients):
    """J, R and B evaluated at (x + xhat) / 2."""

    def __init__(self, sys):
        self.sys = sys
        BarCoefficients.__init__(
            self,
            lambda x, xhat: np.asarray(sys.J(_mid(x, xhat))),
            lambda x, xhat: np.asarray(sys.R(_mid(x, xhat))),
            lambda x, xhat: np.asarray(sys.B(_mid(x, xhat))))


def _mid(x, xhat):
    return 0.5 * (np.asarray(x, dtype=float) + np.asarray(xhat, dtype=float))


def midpoint_bars(sys):
    return MidpointBars(sys)
