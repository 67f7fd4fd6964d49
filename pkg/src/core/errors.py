class StructureError(ValueError):
    def __init__(self, *args, **kwargs):
        if not args:
            args = ('System callbacks do not match the declared '
                    'dimensions n and m.',)
        ValueError.__init__(self, *args, **kwargs)


class ConfigurationError(ValueError):
    def __init__(self, *args, **kwargs):
        if not args:
            args = ('Invalid configuration.',)
        ValueError.__init__(self, *args, **kwargs)


class MassMatrixError(ArithmeticError):
    """
    Raised when the mass matrix loses the property a construction needs,
    i.e. positive definiteness at a midpoint or invertibility.

    `states` holds the offending state(s). Raised out of integrate it also
    carries the failed interval `index` and the partial `trajectory`, as
    StepFailure does, and `reports` from experiment drivers.
    """

    def __init__(self, *args, **kwargs):
        self.states = kwargs.pop('states', ())
        self.index = kwargs.pop('index', None)
        self.trajectory = kwargs.pop('trajectory', None)
        self.reports = kwargs.pop('reports', None)
        if not args:
            args = ('Mass matrix not positive definite at midpoint.',)
        ArithmeticError.__init__(self, *args, **kwargs)


class NewtonFailure(ArithmeticError):
    """
    Raised when the Newton iteration cannot continue.

    `solution` is the best iterate seen so far and `residual_norm` its
    residual in the max norm.
    """

    def __init__(self, *args, **kwargs):
        self.solution = kwargs.pop('solution', None)
        self.residual_norm = kwargs.pop('residual_norm', None)
        self.iterations = kwargs.pop('iterations', 0)
        if not args:
            args = ('Newton iteration failed.',)
        ArithmeticError.__init__(self, *args, **kwargs)


class SingularJacobian(NewtonFailure):
    def __init__(self, *args, **kwargs):
        if not args:
            args = ('Newton linear solve failed: singular Jacobian.',)
        NewtonFailure.__init__(self, *args, **kwargs)


class StepFailure(RuntimeError):
    """
    Raised when a time step of an integrator fails.

    `index` is the number of the failed interval (0 based), `result` the
    NewtonResult of the failed solve (if any) and `trajectory` the partial
    trajectory up to and including the last accepted state. Experiment
    drivers attach what they finished as `reports`.
    """

    def __init__(self, *args, **kwargs):
        self.index = kwargs.pop('index', None)
        self.result = kwargs.pop('result', None)
        self.trajectory = kwargs.pop('trajectory', None)
        self.reports = kwargs.pop('reports', None)
        if not args:
            args = ('Time step failed to converge.',)
        RuntimeError.__init__(self, *args, **kwargs)
