import os

from config import settings
from core.csvio import write_trajectory
from core.errors import MassMatrixError, StepFailure
from experiments.management.commands._base import (ExperimentCommand,
                                                   scheme_list)
from experiments.outputs import Stopwatch, build_manifest, write_manifest
from experiments.power_balance import run_power_balance


class Command(ExperimentCommand):
    help = ('Integrates a model with several schemes and reports the '
            'residual of the discrete power balance per interval.')

    default_scheme = ','.join(settings.CONVERGENCE_SCHEMES)

    def run(self, **options):
        watch = Stopwatch()
        spec, params = self.model(options)
        newton = self.newton(options)
        schemes = scheme_list(options['scheme'])
        dt = self.option(options, 'dt', settings.POWER_BALANCE_DT)
        t_end = self.option(options, 't_end', settings.POWER_BALANCE_T_END)
        directory = self.output_directory(options, 'power_balance')

        with watch.measure('integrate'):
            try:
                reports = run_power_balance(spec, schemes, dt, t_end,
                                            params, newton)
            except (StepFailure, MassMatrixError) as e:
                if e.reports:
                    self.write_reports(e.reports, directory)
                    self.stderr.write('Partial reports for %s written to %s'
                                      % (', '.join(sorted(e.reports)),
                                         directory))
                raise

        self.write_reports(reports, directory)

        manifest = build_manifest(
            spec.name, params, schemes, newton,
            {'t_end': t_end, 'dt': dt, 'steps': int(round(t_end / dt))},
            self.seed(options), watch.elapsed, watch.timings,
            max_abs_residual=dict(
                (scheme, report.max_abs_residual)
                for scheme, report in reports.items()))
        write_manifest(directory, manifest)
        self.stdout.write('Wrote results to %s' % directory)

    def write_reports(self, reports, directory):
        for scheme, report in reports.items():
            report.write_csv(
                os.path.join(directory, 'power_balance_%s.csv' % scheme))
            write_trajectory(report.trajectory, directory,
                             'trajectory_%s' % scheme)
            verdict = ''
            if report.bound is not None:
                verdict = ' (bound %.1e: %s)' % (
                    report.bound, 'ok' if report.within_bound else 'FAILED')
            self.stdout.write('%-18s max |residual| = %.3e%s' % (
                scheme, report.max_abs_residual, verdict))
