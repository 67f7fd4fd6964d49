import os

from config import settings
from core.csvio import write_table, write_trajectory
from core.errors import MassMatrixError, StepFailure
from core.grid import TimeGrid
from core.integrators import SchemeConfig, integrate
from experiments.management.commands._base import ExperimentCommand
from experiments.outputs import Stopwatch, build_manifest, write_manifest


class Command(ExperimentCommand):
    help = ('Integrates a model with one scheme on a uniform grid and '
            'writes the trajectory, its energy and a manifest.')

    default_scheme = settings.DEFAULT_SCHEME

    def add_arguments(self, parser):
        ExperimentCommand.add_arguments(self, parser)
        parser.add_argument(
            '--predictor', default=settings.DEFAULT_PREDICTOR,
            help='Newton initial guess (%s).' % ', '.join(settings.PREDICTORS))

    def run(self, **options):
        watch = Stopwatch()
        spec, params = self.model(options)
        newton = self.newton(options)
        cfg = SchemeConfig(options['scheme'], newton, options['predictor'])
        dt = self.option(options, 'dt', settings.POWER_BALANCE_DT)
        t_end = self.option(options, 't_end', settings.POWER_BALANCE_T_END)
        grid = TimeGrid.uniform(t_end, dt)
        directory = self.output_directory(options, 'simulate')

        sys = spec.build(params)
        try:
            with watch.measure('integrate'):
                trajectory = integrate(sys, cfg, grid, spec.input_signal(sys),
                                       spec.initial_state(sys))
        except (StepFailure, MassMatrixError) as e:
            if e.trajectory is not None:
                write_trajectory(e.trajectory, directory, 'partial')
                self.stderr.write('Partial trajectory (%d states) written '
                                  'to %s' % (len(e.trajectory), directory))
            raise

        paths = write_trajectory(trajectory, directory)
        energy = trajectory.hamiltonian(sys)
        write_table(os.path.join(directory, 'energy.csv'), ['t', 'H'],
                    zip(trajectory.times, energy))
        manifest = build_manifest(
            spec.name, params, cfg.scheme, newton,
            {'t_end': t_end, 'dt': dt, 'steps': len(grid) - 1},
            self.seed(options), watch.elapsed, watch.timings,
            predictor=cfg.predictor)
        write_manifest(directory, manifest)

        for path in paths:
            self.stdout.write('Wrote %s' % path)
        self.stdout.write('H(0) = %.17g, H(T) = %.17g' % (
            energy[0], energy[-1]))
