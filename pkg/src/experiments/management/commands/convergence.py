import os

from config import settings
from experiments.convergence import halving_dt_list, run_convergence
from experiments.management.commands._base import (ExperimentCommand,
                                                   float_list, scheme_list)
from experiments.outputs import Stopwatch, build_manifest, write_manifest


class Command(ExperimentCommand):
    help = ('Measures relative errors and experimental orders of '
            'convergence against a fine reference solution.')

    default_scheme = ','.join(settings.CONVERGENCE_SCHEMES)

    def add_arguments(self, parser):
        ExperimentCommand.add_arguments(self, parser)
        parser.add_argument(
            '--dt-list', dest='dt_list', default=None,
            help='Comma separated step sizes (default: halvings of --dt).')
        parser.add_argument(
            '--levels', type=int, default=settings.CONVERGENCE_LEVELS,
            help='Number of halvings when --dt-list is not given.')
        parser.add_argument('--dt-ref', dest='dt_ref', type=float,
                            default=None)
        parser.add_argument(
            '--reference', default=settings.CONVERGENCE_REFERENCE_SCHEME,
            help='Scheme computing the reference solution.')

    def run(self, **options):
        watch = Stopwatch()
        spec, params = self.model(options)
        newton = self.newton(options)
        schemes = scheme_list(options['scheme'])
        t_end = self.option(options, 't_end', settings.CONVERGENCE_T_END)
        if options['dt_list']:
            dt_list = float_list(options['dt_list'])
        else:
            dt_list = halving_dt_list(
                self.option(options, 'dt', settings.CONVERGENCE_DT_START),
                options['levels'])
        directory = self.output_directory(options, 'convergence')

        with watch.measure('integrate'):
            tables = run_convergence(
                spec, schemes, dt_list, options['reference'],
                options['dt_ref'], t_end, params, newton)

        for scheme, table in tables.items():
            table.write_csv(
                os.path.join(directory, 'convergence_%s.csv' % scheme))
            self.stdout.write('%s (reference %s, dt_ref = %g)' % (
                scheme, table.reference_scheme, table.dt_ref))
            for dt, error, order in table.rows():
                self.stdout.write('  dt = %-12.6g error = %.6e  eoc = %.3f'
                                  % (dt, error, order))

        dt_ref = list(tables.values())[0].dt_ref if tables else None
        manifest = build_manifest(
            spec.name, params, schemes, newton,
            {'t_end': t_end, 'dt_list': dt_list, 'dt_ref': dt_ref},
            self.seed(options), watch.elapsed, watch.timings,
            reference=options['reference'])
        write_manifest(directory, manifest)
        self.stdout.write('Wrote results to %s' % directory)
