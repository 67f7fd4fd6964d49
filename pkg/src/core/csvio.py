import csv
import os

import numpy as np

from config import settings
from core.grid import TimeGrid, Trajectory

'''
CSV serialization of trajectories and tables.

Floats are written with settings.CSV_SIGNIFICANT_DIGITS (17) significant
digits, which round-trips IEEE doubles exactly.
'''


def format_float(value):
    return '%.*g' % (settings.CSV_SIGNIFICANT_DIGITS, value)


def write_table(path, header, rows):
    """Writes rows of floats below a header line."""
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_float(v) for v in row])
    return path


def read_table(path):
    """Returns (header, 2d float array) of a table written by write_table."""
    with open(path, newline='') as f:
        reader = csv.reader(f)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader if row]
    values = np.array(rows, dtype=float).reshape(len(rows), len(header))
    return header, values


def trajectory_paths(directory, prefix):
    return (os.path.join(directory, prefix + '_states.csv'),
            os.path.join(directory, prefix + '_ports.csv'))


def write_trajectory(trajectory, directory, prefix='trajectory'):
    """
    Writes the node states to <prefix>_states.csv (header t,x_1,...,x_n)
    and the midpoint port data to <prefix>_ports.csv (header
    t_mid,u_1..u_m,y_1..y_m).

    Returns both paths.
    """
    states_path, ports_path = trajectory_paths(directory, prefix)
    n, m = trajectory.n, trajectory.m

    header = ['t'] + ['x_%d' % (i + 1) for i in range(n)]
    rows = np.column_stack((trajectory.times, trajectory.states))
    write_table(states_path, header, rows)

    header = (['t_mid'] + ['u_%d' % (i + 1) for i in range(m)]
              + ['y_%d' % (i + 1) for i in range(m)])
    rows = np.column_stack((trajectory.grid.midpoints,
                            trajectory.inputs_mid, trajectory.outputs_mid))
    write_table(ports_path, header, rows)
    return states_path, ports_path


def read_trajectory(directory, prefix='trajectory', scheme=None):
    """
    Reads a trajectory written by write_trajectory.

    Raises ValueError if the two files do not belong together.
    """
    states_path, ports_path = trajectory_paths(directory, prefix)
    _, states = read_table(states_path)
    header, ports = read_table(ports_path)
    if ports.shape[0] != states.shape[0] - 1:
        raise ValueError('%s and %s have inconsistent lengths' % (
            states_path, ports_path))
    m = (len(header) - 1) // 2
    grid = TimeGrid(states[:, 0])
    return Trajectory(grid, states[:, 1:], ports[:, 1:1 + m],
                      ports[:, 1 + m:], scheme=scheme)
