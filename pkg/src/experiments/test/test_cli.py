import json
import os
import shutil
import tempfile
from io import StringIO

import numpy as np
from mock import patch

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from core.csvio import read_table
from core.errors import MassMatrixError, StepFailure
from core.grid import TimeGrid, Trajectory
from core.newton import NewtonResult
from core.system import StructureReport
from experiments.cli import USAGE, cli_main
from experiments.outputs import read_manifest

MANIFEST_KEYS = ('model', 'params', 'scheme', 'newton', 'grid', 'seed',
                 'wall_time_s', 'versions', 'timings')


class CommandTestCase(SimpleTestCase):

    def setUp(self):
        self.out = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, self.out)

    def create_patch(self, name, **kwargs):
        # helper method for creating patches
        patcher = patch(name, **kwargs)
        thing = patcher.start()
        self.addCleanup(patcher.stop)
        return thing

    def call(self, name, **options):
        stdout = StringIO()
        call_command(name, out=self.out, stdout=stdout, **options)
        return stdout.getvalue()

    def path(self, name):
        return os.path.join(self.out, name)

    def assertManifest(self):
        manifest = read_manifest(self.out)
        for key in MANIFEST_KEYS:
            self.assertIn(key, manifest)
        return manifest


class Simulate(CommandTestCase):

    def test_writes_trajectory_and_manifest(self):
        output = self.call('simulate', model='lti', dt=0.1, t_end=1.0,
                           scheme='dgp')
        self.assertIn('H(0)', output)
        header, states = read_table(self.path('trajectory_states.csv'))
        self.assertEqual(header, ['t', 'x_1', 'x_2', 'x_3', 'x_4'])
        self.assertEqual(states.shape, (11, 5))
        header, ports = read_table(self.path('trajectory_ports.csv'))
        self.assertEqual(header, ['t_mid', 'u_1', 'y_1'])
        self.assertTrue(os.path.exists(self.path('energy.csv')))

        manifest = self.assertManifest()
        self.assertEqual(manifest['model'], 'lti')
        self.assertEqual(manifest['scheme'], 'dgp')
        self.assertEqual(manifest['grid']['steps'], 10)
        self.assertEqual(manifest['newton']['tol_residual'], 1e-13)
        self.assertEqual(manifest['params'], {'n': 4, 'seed': 0})

    def test_params_and_seed(self):
        self.call('simulate', model='lti', params='{"n": 3}', seed=5,
                  dt=0.5, t_end=1.0)
        manifest = read_manifest(self.out)
        self.assertEqual(manifest['params'], {'n': 3, 'seed': 5})
        self.assertEqual(manifest['seed'], 5)

    def test_newton_tolerance(self):
        self.call('simulate', model='pendulum', dt=0.5, t_end=1.0,
                  newton_tol=1e-11)
        manifest = read_manifest(self.out)
        self.assertEqual(manifest['newton']['tol_residual'], 1e-11)

    def test_unknown_scheme(self):
        with self.assertRaises(CommandError):
            self.call('simulate', model='pendulum', scheme='rk4')

    def test_failed_step_writes_partial_trajectory(self):
        partial = Trajectory(TimeGrid([0.0, 0.5]), [[1.0, 0.0], [0.9, -0.4]],
                             [[]], [[]], 'dgp')
        self.create_patch(
            'experiments.management.commands.simulate.integrate',
            side_effect=StepFailure('diverged', index=1,
                                    trajectory=partial))
        stderr = StringIO()
        with self.assertRaises(CommandError):
            call_command('simulate', model='pendulum', dt=0.5, t_end=1.0,
                         out=self.out, stdout=StringIO(), stderr=stderr)
        self.assertTrue(os.path.exists(self.path('partial_states.csv')))
        self.assertIn('Partial trajectory', stderr.getvalue())

    def test_lost_definiteness_writes_partial_trajectory(self):
        partial = Trajectory(TimeGrid([0.0, 0.5]), [[1.0, 0.0], [0.9, -0.4]],
                             [[]], [[]], 'dgp')
        self.create_patch(
            'experiments.management.commands.simulate.integrate',
            side_effect=MassMatrixError(index=1, trajectory=partial))
        stderr = StringIO()
        with self.assertRaises(CommandError):
            call_command('simulate', model='pendulum', dt=0.5, t_end=1.0,
                         out=self.out, stdout=StringIO(), stderr=stderr)
        _, states = read_table(self.path('partial_states.csv'))
        np.testing.assert_array_equal(states[:, 1:], partial.states)

    def test_repeated_runs_write_identical_files(self):
        again = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, again)
        options = {'model': 'synthetic', 'dt': 0.05, 't_end': 0.5,
                   'seed': 3}
        self.call('simulate', **options)
        call_command('simulate', out=again, stdout=StringIO(), **options)
        for name in ('trajectory_states.csv', 'trajectory_ports.csv',
                     'energy.csv'):
            with open(self.path(name), 'rb') as f:
                first = f.read()
            with open(os.path.join(again, name), 'rb') as f:
                self.assertEqual(f.read(), first)


class PowerBalance(CommandTestCase):

    def test_two_schemes(self):
        output = self.call('power_balance', model='synthetic',
                           scheme='dgp,implicit_midpoint', dt=1e-2,
                           t_end=0.1)
        for scheme in ('dgp', 'implicit_midpoint'):
            header, values = read_table(
                self.path('power_balance_%s.csv' % scheme))
            self.assertEqual(header[-1], 'residual')
            self.assertEqual(values.shape, (10, 5))
            self.assertIn(scheme, output)
        manifest = self.assertManifest()
        self.assertEqual(manifest['scheme'], ['dgp', 'implicit_midpoint'])

    def test_step_failure_becomes_command_error(self):
        self.create_patch(
            'experiments.management.commands.power_balance.'
            'run_power_balance', side_effect=StepFailure('diverged'))
        with self.assertRaises(CommandError) as cm:
            self.call('power_balance', model='synthetic')
        self.assertIn('diverged', str(cm.exception))

    def test_finished_schemes_are_written_on_failure(self):
        self.create_patch(
            'core.integrators.midpoint.newton_solve',
            return_value=NewtonResult(np.zeros(4), 50, 1e-3, False))
        stderr = StringIO()
        with self.assertRaises(CommandError):
            call_command('power_balance', model='synthetic',
                         scheme='dgp,implicit_midpoint', dt=0.1, t_end=0.5,
                         out=self.out, stdout=StringIO(), stderr=stderr)
        _, values = read_table(self.path('power_balance_dgp.csv'))
        self.assertEqual(values.shape, (5, 5))
        self.assertFalse(
            os.path.exists(self.path('power_balance_implicit_midpoint.csv')))
        self.assertIn('Partial reports for dgp', stderr.getvalue())


class Convergence(CommandTestCase):

    def test_table(self):
        self.call('convergence', model='pendulum', scheme='dgp',
                  dt_list='0.1,0.05', dt_ref=0.0125, t_end=0.2)
        header, values = read_table(self.path('convergence_dgp.csv'))
        self.assertEqual(header, ['dt', 'rel_error', 'eoc'])
        self.assertEqual(values.shape, (2, 3))
        manifest = self.assertManifest()
        self.assertEqual(manifest['grid']['dt_ref'], 0.0125)
        self.assertEqual(manifest['reference'], 'radau5')

    def test_misaligned_reference(self):
        with self.assertRaises(CommandError):
            self.call('convergence', model='pendulum', scheme='dgp',
                      dt_list='0.1,0.05', dt_ref=0.03)


class CheckStructure(CommandTestCase):

    def test_pendulum_passes(self):
        output = self.call('check_structure', model='pendulum', samples=50)
        self.assertIn('passes', output)
        with open(self.path('structure.json')) as f:
            self.assertEqual(json.load(f)['skew']['defect'], 0.0)
        self.assertTrue(self.assertManifest()['passed'])

    def test_failing_model(self):
        rows = dict((name, (0.0, np.zeros(2), 1e-8))
                    for name in StructureReport.CONDITIONS)
        rows['skew'] = (1e-3, np.ones(2), 1e-8)
        self.create_patch(
            'experiments.management.commands.check_structure.'
            'check_ph_structure', return_value=StructureReport(rows))
        with self.assertRaises(CommandError) as cm:
            self.call('check_structure', model='pendulum', samples=5)
        self.assertIn('skew', str(cm.exception))
        self.assertFalse(read_manifest(self.out)['passed'])

    def test_invalid_threshold(self):
        with self.assertRaises(CommandError):
            self.call('check_structure', model='pendulum', samples=5,
                      tol=-1.0)


class CommandLine(SimpleTestCase):

    def setUp(self):
        self.out = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, self.out)
        self.stdout = StringIO()
        self.stderr = StringIO()
        for name, stream in (('sys.stdout', self.stdout),
                             ('sys.stderr', self.stderr)):
            patcher = patch(name, stream)
            patcher.start()
            self.addCleanup(patcher.stop)

    def test_no_arguments_print_usage(self):
        self.assertNotEqual(cli_main([]), 0)
        self.assertIn('usage', self.stderr.getvalue())

    def test_help(self):
        self.assertEqual(cli_main(['--help']), 0)
        self.assertEqual(self.stderr.getvalue(), USAGE)

    def test_unknown_command(self):
        self.assertNotEqual(cli_main(['plot']), 0)
        self.assertIn('Unknown command', self.stderr.getvalue())

    def test_power_balance(self):
        status = cli_main(['power-balance', '--model', 'synthetic',
                           '--scheme', 'dgp,implicit_midpoint',
                           '--dt', '1e-2', '--t-end', '0.1',
                           '--out', self.out])
        self.assertEqual(status, 0)
        for scheme in ('dgp', 'implicit_midpoint'):
            self.assertTrue(os.path.exists(os.path.join(
                self.out, 'power_balance_%s.csv' % scheme)))

    def test_check_structure(self):
        status = cli_main(['check-structure', '--model', 'lti',
                           '--samples', '20', '--seed', '3',
                           '--out', self.out])
        self.assertEqual(status, 0)
        self.assertEqual(read_manifest(self.out)['seed'], 3)

    def test_unknown_model(self):
        status = cli_main(['simulate', '--model', 'double_pendulum',
                           '--out', self.out])
        self.assertNotEqual(status, 0)
        self.assertIn('double_pendulum', self.stderr.getvalue())

    def test_invalid_flag_value(self):
        status = cli_main(['simulate', '--dt', 'small', '--out', self.out])
        self.assertNotEqual(status, 0)
