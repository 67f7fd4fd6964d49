import os

from django.core.management.base import BaseCommand, CommandError

from config import settings
from core.errors import (ConfigurationError, MassMatrixError, NewtonFailure,
                         StepFailure, StructureError)
from core.newton import NewtonSettings
from experiments.outputs import ensure_directory
from systems.registry import get_model, parse_params

# Library errors reported as command failures.
EXPERIMENT_ERRORS = (ConfigurationError, StructureError, MassMatrixError,
                     NewtonFailure, StepFailure, ValueError)


def scheme_list(text):
    """Parses a comma separated list of scheme ids."""
    return [s.strip() for s in text.split(',') if s.strip()]


def float_list(text):
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise ConfigurationError('Invalid number list %r' % text)


class ExperimentCommand(BaseCommand):
    """
    Base class of the experiment commands. Adds the common options and
    turns library errors into CommandError. Subclasses implement run().
    """

    default_scheme = None

    def add_arguments(self, parser):
        parser.add_argument(
            '--model', default='synthetic',
            help='Model name (pendulum, synthetic, advection_diffusion, '
                 'lti).')
        parser.add_argument(
            '--params', default='',
            help='JSON object of model parameters, e.g. \'{"n": 6}\'.')
        parser.add_argument(
            '--scheme', default=self.default_scheme,
            help='Scheme id (comma separated where several are allowed).')
        parser.add_argument('--dt', type=float, default=None)
        parser.add_argument('--t-end', dest='t_end', type=float, default=None)
        parser.add_argument(
            '--out', default=None,
            help='Output directory (default: EXPERIMENT_OUTPUT_DIR/<command>).')
        parser.add_argument(
            '--newton-tol', dest='newton_tol', type=float, default=None,
            help='Newton residual tolerance (max norm).')
        parser.add_argument('--seed', type=int, default=None)

    def handle(self, *args, **options):
        try:
            return self.run(**options)
        except EXPERIMENT_ERRORS as e:
            raise CommandError('%s: %s' % (type(e).__name__, e))

    def run(self, **options):
        raise NotImplementedError

    def model(self, options):
        """
        Returns (spec, params) from --model and --params. --seed fills in
        the seed of models that take one.
        """
        spec = get_model(options['model'])
        params = parse_params(options['params'])
        if options['seed'] is not None and 'seed' in spec.defaults:
            params.setdefault('seed', options['seed'])
        return spec, spec.parameters(params)

    def seed(self, options):
        if options['seed'] is None:
            return settings.DEFAULT_SEED
        return options['seed']

    def newton(self, options):
        return NewtonSettings(tol_residual=options['newton_tol'])

    def output_directory(self, options, name):
        directory = options['out']
        if directory is None:
            directory = os.path.join(settings.EXPERIMENT_OUTPUT_DIR, name)
        return ensure_directory(directory)

    def option(self, options, name, default):
        value = options[name]
        return default if value is None else value
