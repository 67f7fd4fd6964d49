import numpy as np

from core.system import PHSystem

J_CANONICAL = np.array([[0.0, 1.0], [-1.0, 0.0]])


def make_pendulum():
    """
    Mathematical pendulum x = (q, p) with H = p^2 / 2 + 1 - cos q,
    E = I, J canonical, R = 0 and no ports.
    """

    def H(x):
        return 0.5 * x[1] ** 2 + 1.0 - np.cos(x[0])

    def gradH(x):
        return np.array([np.sin(x[0]), x[1]])

    return PHSystem(
        n=2, m=0,
        E=lambda x: np.eye(2),
        J=lambda x: J_CANONICAL,
        R=lambda x: np.zeros((2, 2)),
        z=gradH,
        B=lambda x: np.zeros((2, 0)),
        H=H,
        gradH=gradH,
        name='pendulum')
