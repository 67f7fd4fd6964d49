import inspect
import json

import numpy as np

from config import settings
from core.errors import ConfigurationError
from core.system import InputSignal
from systems.advection_diffusion import make_advection_diffusion_fd
from systems.lti import make_lti_ph
from systems.pendulum import make_pendulum
from systems.synthetic import make_synthetic_nonlinear_ph


class ModelSpec(object):
    """
    A named model with documented defaults.

    constructor builds the PHSystem from keyword parameters, initial_state
    maps the built system to the reference initial condition and
    input_signal to the default input. box is the (low, high) box used for
    randomized checks.
    """

    def __init__(self, name, constructor, initial_state, input_signal,
                 box=None, description=''):
        self.name = name
        self.constructor = constructor
        self.initial_state = initial_state
        self.input_signal = input_signal
        self.box = box if box is not None else settings.PH_DEFAULT_BOX
        self.description = description

    def __repr__(self):
        return '<ModelSpec %s>' % self.name

    @property
    def defaults(self):
        """Default parameters, read off the constructor signature."""
        signature = inspect.signature(self.constructor)
        return dict((name, p.default)
                    for name, p in signature.parameters.items())

    def parameters(self, params=None):
        """
        Returns the defaults updated with params.

        Raises ConfigurationError on unknown parameter names.
        """
        merged = self.defaults
        for key, value in (params or {}).items():
            if key not in merged:
                raise ConfigurationError(
                    'Unknown parameter %r for model %s. Known: %s.' % (
                        key, self.name, ', '.join(sorted(merged))))
            merged[key] = value
        return merged

    def build(self, params=None):
        return self.constructor(**self.parameters(params))


def _synthetic_x0(sys):
    return 0.5 * np.sin(np.arange(1, sys.n + 1))


def _advection_diffusion_x0(sys):
    centers = (np.arange(sys.n) + 0.5) / sys.n
    return np.exp(-100.0 * (centers - 0.5) ** 2)


MODELS = dict((spec.name, spec) for spec in (
    ModelSpec(
        'pendulum', make_pendulum,
        initial_state=lambda sys: np.array([1.0, 0.0]),
        input_signal=lambda sys: InputSignal.zero(0),
        box=(-np.pi, np.pi),
        description='Conservative pendulum, canonical J, E = I.'),
    ModelSpec(
        'synthetic', make_synthetic_nonlinear_ph,
        initial_state=_synthetic_x0,
        input_signal=lambda sys: InputSignal.sinusoid(sys.m),
        description='Non-quadratic H with state dependent SPD mass '
                    'matrix.'),
    ModelSpec(
        'advection_diffusion', make_advection_diffusion_fd,
        initial_state=_advection_diffusion_x0,
        input_signal=lambda sys: InputSignal.sinusoid(sys.m),
        description='Centered finite differences of 1D '
                    'advection-diffusion, Robin inflow, Neumann outflow.'),
    ModelSpec(
        'lti', make_lti_ph,
        initial_state=lambda sys: np.ones(sys.n) / np.sqrt(sys.n),
        input_signal=lambda sys: InputSignal.sinusoid(sys.m),
        description='Linear pH system with constant SPD E and quadratic '
                    'H.'),
))


def get_model(name):
    """
    Returns the ModelSpec called name.

    Raises ConfigurationError for unknown names.
    """
    try:
        return MODELS[name]
    except KeyError:
        raise ConfigurationError('Unknown model %r. Choose one of %s.' % (
            name, ', '.join(sorted(MODELS))))


def parse_params(text):
    """
    Parses a JSON object of model parameters ('' or None gives {}).

    Raises ConfigurationError on invalid JSON or a non-object value.
    """
    if not text:
        return {}
    try:
        params = json.loads(text)
    except ValueError as e:
        raise ConfigurationError('Invalid --params JSON: %s' % e)
    if not isinstance(params, dict):
        raise ConfigurationError('--params must be a JSON object')
    return params


def build_model(name, params=None):
    """Returns (spec, system) for the named model."""
    spec = get_model(name)
    return spec, spec.build(params)
