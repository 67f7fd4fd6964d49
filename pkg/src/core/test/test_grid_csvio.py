import os
import shutil
import tempfile

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal

from django.test import SimpleTestCase

from core.csvio import (format_float, read_table, read_trajectory,
                        write_table, write_trajectory)
from core.errors import ConfigurationError
from core.grid import TimeGrid, Trajectory


class TimeGrids(SimpleTestCase):

    def test_uniform_grid(self):
        grid = TimeGrid.uniform(1.0, 0.25)
        assert_allclose(grid.points, [0.0, 0.25, 0.5, 0.75, 1.0])
        assert_allclose(grid.midpoints, [0.125, 0.375, 0.625, 0.875])
        self.assertTrue(grid.is_uniform)
        self.assertEqual(len(grid), 5)
        self.assertEqual(grid.t_end, 1.0)

    def test_uniform_grid_needs_dividing_step(self):
        with self.assertRaises(ConfigurationError):
            TimeGrid.uniform(1.0, 0.3)
        with self.assertRaises(ConfigurationError):
            TimeGrid.uniform(1.0, 0.0)

    def test_small_decimal_steps_divide(self):
        grid = TimeGrid.uniform(1.0, 1e-3)
        self.assertEqual(len(grid), 1001)
        self.assertEqual(grid.t_end, 1.0)

    def test_invalid_points(self):
        with self.assertRaises(ConfigurationError):
            TimeGrid([0.0])
        with self.assertRaises(ConfigurationError):
            TimeGrid([0.1, 0.2])
        with self.assertRaises(ConfigurationError):
            TimeGrid([0.0, 0.2, 0.2])

    def test_geometric_grid(self):
        grid = TimeGrid.geometric(3.0, 2, 2.0)
        assert_allclose(grid.points, [0.0, 1.0, 3.0])
        self.assertFalse(grid.is_uniform)

    def test_truncate(self):
        grid = TimeGrid.uniform(1.0, 0.25).truncate(3)
        assert_allclose(grid.points, [0.0, 0.25, 0.5])


class Trajectories(SimpleTestCase):

    def test_shapes_without_ports(self):
        grid = TimeGrid.uniform(1.0, 0.5)
        traj = Trajectory(grid, np.zeros((3, 2)), np.zeros(0), np.zeros(0))
        self.assertEqual(traj.inputs_mid.shape, (2, 0))
        self.assertEqual(traj.m, 0)
        self.assertEqual(traj.n, 2)

    def test_state_count_must_match_grid(self):
        grid = TimeGrid.uniform(1.0, 0.5)
        with self.assertRaises(ConfigurationError):
            Trajectory(grid, np.zeros((2, 2)), np.zeros((2, 1)),
                       np.zeros((2, 1)))


class CsvFiles(SimpleTestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, self.directory)

    def test_floats_keep_every_digit(self):
        value = 0.1 + 0.2
        self.assertEqual(float(format_float(value)), value)
        self.assertEqual(format_float(1.0), '1')

    def test_table_round_trip(self):
        path = os.path.join(self.directory, 'table.csv')
        rows = [[1.0 / 3.0, np.pi], [np.exp(1.0), -1e-300]]
        write_table(path, ['a', 'b'], rows)
        header, values = read_table(path)
        self.assertEqual(header, ['a', 'b'])
        assert_array_equal(values, np.array(rows))

    def test_trajectory_files(self):
        grid = TimeGrid.uniform(0.3, 0.1)
        rng = np.random.default_rng(5)
        traj = Trajectory(grid, rng.standard_normal((4, 3)),
                          rng.standard_normal((3, 1)),
                          rng.standard_normal((3, 1)), scheme='dgp')
        states_path, ports_path = write_trajectory(traj, self.directory)

        with open(states_path) as f:
            self.assertEqual(f.readline().strip(), 't,x_1,x_2,x_3')
        with open(ports_path) as f:
            self.assertEqual(f.readline().strip(), 't_mid,u_1,y_1')

        loaded = read_trajectory(self.directory, scheme='dgp')
        assert_array_equal(loaded.states, traj.states)
        assert_array_equal(loaded.inputs_mid, traj.inputs_mid)
        assert_array_equal(loaded.outputs_mid, traj.outputs_mid)
        assert_array_equal(loaded.times, traj.times)
        self.assertEqual(loaded.scheme, 'dgp')

    def test_trajectory_without_ports(self):
        grid = TimeGrid.uniform(1.0, 0.5)
        traj = Trajectory(grid, np.ones((3, 2)), np.zeros((2, 0)),
                          np.zeros((2, 0)))
        write_trajectory(traj, self.directory, 'free')
        loaded = read_trajectory(self.directory, 'free')
        self.assertEqual(loaded.m, 0)
        assert_array_equal(loaded.states, traj.states)
