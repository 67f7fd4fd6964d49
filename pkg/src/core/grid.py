import numpy as np

from core.errors import ConfigurationError


class TimeGrid(object):
    """
    Strictly increasing time points 0 = t_1 < ... < t_q, q >= 2.

    Raises ConfigurationError on invalid points.
    """

    def __init__(self, points):
        points = np.asarray(points, dtype=float).reshape(-1)
        if points.size < 2:
            raise ConfigurationError('a time grid needs at least 2 points')
        if points[0] != 0.0:
            raise ConfigurationError('a time grid must start at t = 0')
        if not np.all(np.diff(points) > 0):
            raise ConfigurationError('time points must strictly increase')
        self.points = points

    def __len__(self):
        return self.points.size

    def __repr__(self):
        return '<TimeGrid q=%d t_end=%g>' % (len(self), self.t_end)

    @property
    def t_end(self):
        return self.points[-1]

    @property
    def steps(self):
        return np.diff(self.points)

    @property
    def midpoints(self):
        return 0.5 * (self.points[:-1] + self.points[1:])

    @property
    def is_uniform(self):
        steps = self.steps
        return np.allclose(steps, steps[0], rtol=1e-12, atol=0.0)

    def truncate(self, q):
        """Returns the grid of the first q points."""
        return TimeGrid(self.points[:q])

    @classmethod
    def uniform(cls, t_end, dt):
        """
        Uniform grid with step dt on [0, t_end].

        Raises ConfigurationError if dt does not divide t_end.
        """
        if dt <= 0 or t_end <= 0:
            raise ConfigurationError('dt and t_end must be positive')
        steps = int(round(t_end / dt))
        if steps < 1 or abs(steps * dt - t_end) > 1e-9 * t_end:
            raise ConfigurationError(
                'dt = %r does not divide t_end = %r' % (dt, t_end))
        return cls(np.linspace(0.0, t_end, steps + 1))

    @classmethod
    def geometric(cls, t_end, steps, ratio):
        """Grid whose consecutive steps grow by `ratio`."""
        if steps < 1 or ratio <= 0:
            raise ConfigurationError('steps >= 1 and ratio > 0 required')
        widths = ratio ** np.arange(steps)
        points = np.concatenate(([0.0], np.cumsum(widths)))
        return cls(points * (t_end / points[-1]))


class Trajectory(object):
    """
    States at the grid nodes plus port data at the interval midpoints.

    states is q x n, inputs_mid and outputs_mid are (q - 1) x m.
    """

    def __init__(self, grid, states, inputs_mid, outputs_mid, scheme=None):
        states = np.atleast_2d(np.asarray(states, dtype=float))
        q = len(grid)
        if states.shape[0] != q:
            raise ConfigurationError(
                '%d states for a grid of %d points' % (states.shape[0], q))
        inputs_mid = _port_array(inputs_mid, q - 1)
        outputs_mid = _port_array(outputs_mid, q - 1)
        if inputs_mid.shape != outputs_mid.shape:
            raise ConfigurationError('inputs and outputs differ in shape')
        self.grid = grid
        self.states = states
        self.inputs_mid = inputs_mid
        self.outputs_mid = outputs_mid
        self.scheme = scheme

    def __len__(self):
        return self.states.shape[0]

    def __repr__(self):
        return '<Trajectory %s q=%d n=%d>' % (
            self.scheme, len(self), self.n)

    @property
    def n(self):
        return self.states.shape[1]

    @property
    def m(self):
        return self.inputs_mid.shape[1]

    @property
    def times(self):
        return self.grid.points

    def hamiltonian(self, sys):
        return np.array([sys.H(x) for x in self.states])


def _port_array(values, rows):
    values = np.asarray(values, dtype=float)
    if values.ndim < 2:
        values = values.reshape(rows, values.size // rows)
    if values.shape[0] != rows:
        raise ConfigurationError(
            '%d port samples for %d intervals' % (values.shape[0], rows))
    return values
