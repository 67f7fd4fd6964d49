import json
import os

from django.core.management.base import CommandError

from config import settings
from core.discrete_gradients import (midpoint_discrete_gradient_pair,
                                     verify_pair_axioms)
from core.system import check_ph_structure, random_states
from experiments.management.commands._base import ExperimentCommand
from experiments.outputs import Stopwatch, build_manifest, write_manifest

# Relative size of the perturbations used to sample (x, xhat) pairs.
PAIR_SPREAD = 1e-2


class Command(ExperimentCommand):
    help = ('Checks the pH structure conditions of a model at random '
            'states and the discrete gradient pair axioms along them.')

    def add_arguments(self, parser):
        ExperimentCommand.add_arguments(self, parser)
        parser.add_argument('--samples', type=int,
                            default=settings.PH_STRUCTURE_SAMPLES)
        parser.add_argument('--tol', type=float,
                            default=settings.PH_STRUCTURE_TOL,
                            help='Threshold of the algebraic conditions.')

    def run(self, **options):
        watch = Stopwatch()
        spec, params = self.model(options)
        seed = self.seed(options)
        directory = self.output_directory(options, 'check_structure')

        sys = spec.build(params)
        samples = random_states(sys.n, options['samples'], spec.box, seed)
        with watch.measure('structure'):
            report = check_ph_structure(sys, samples, options['tol'])

        for name in report.CONDITIONS:
            defect, _, threshold = report.rows[name]
            self.stdout.write('%-14s %.3e  (threshold %.1e)' % (
                name, defect, threshold))

        pair = midpoint_discrete_gradient_pair(sys.H, sys.E, sys.z)
        offsets = PAIR_SPREAD * random_states(
            sys.n, len(samples), (-1.0, 1.0), seed + 1)
        with watch.measure('pair_axioms'):
            axioms = verify_pair_axioms(pair, zip(samples, samples + offsets))
        self.stdout.write('pair axioms    Ebar %.3e, zbar %.3e, '
                          'secant %.3e' % axioms)

        with open(os.path.join(directory, 'structure.json'), 'w') as f:
            json.dump(report.as_dict(), f, indent=2, sort_keys=True)
        manifest = build_manifest(
            spec.name, params, None, self.newton(options),
            {'samples': len(samples), 'box': list(spec.box)},
            seed, watch.elapsed, watch.timings,
            passed=report.passed,
            pair_axioms=dict(zip(('Ebar', 'zbar', 'secant'), axioms)))
        write_manifest(directory, manifest)

        if not report.passed:
            raise CommandError('%s fails the structure conditions: %s' % (
                spec.name, ', '.join(report.failures())))
        self.stdout.write('%s passes all structure conditions' % spec.name)
