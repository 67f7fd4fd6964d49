import os

# phdg settings.
# Doubles as the Django settings module used by manage.py and the test
# runner. Library code imports it directly: `from config import settings`.

DEBUG = True

ADMINS = ()

MANAGERS = ADMINS

# No database is involved in any simulation or experiment.
DATABASES = {}

TIME_ZONE = 'UTC'

LANGUAGE_CODE = 'en-us'

USE_I18N = False

USE_TZ = True

# SECRET_KEY is unused but required by Django.
SECRET_KEY = os.environ.get(
    'PHDG_SECRET_KEY', 'phdg-insecure-7q!w8z@k2m#c1r$u5n%0v^e&d*t(b)g')

# /phdg/src/config/settings.py -> /phdg/src/config/ -> /phdg/src/
PROJECT_ROOT = os.path.abspath(os.path.dirname(os.path.dirname(__file__)))

INSTALLED_APPS = (
    'core',
    'systems',
    'experiments',
)

DEFAULT_AUTO_FIELD = 'django.db.models.AutoField'

# Structure checks (core.system)
# Absolute threshold for the skew/symmetry/psd/factorization defects.
PH_STRUCTURE_TOL = 1e-8
# Relative threshold for gradH against central differences of H.
PH_GRADIENT_TOL = 1e-6
PH_GRADIENT_FD_STEP = 1e-5
PH_STRUCTURE_SAMPLES = 1000
# Randomized check states are drawn from [-1, 1]^n unless a model says
# otherwise.
PH_DEFAULT_BOX = (-1.0, 1.0)

# Discrete gradients (core.discrete_gradients)
# Relative band around x == xhat where the diagonal branch is used.
DG_DIAGONAL_TOL = 1e-14

# Newton solver (core.newton)
NEWTON_TOL_RESIDUAL = 1e-13
NEWTON_TOL_STEP = 1e-8
NEWTON_MAX_ITER = 50
NEWTON_FD_STEP = 1.5e-8
NEWTON_DAMPING = 8
# Corrections taken after the residual test passes, reusing the last
# factorization. Step residuals are dt times the balance scale.
NEWTON_POLISH = 1

# Integrators (core.integrators)
SCHEMES = (
    'dgp',
    'classical_dg',
    'implicit_midpoint',
    'radau5',
    'transformed_dg',
)
PREDICTORS = ('previous_state', 'explicit_euler')
DEFAULT_SCHEME = 'dgp'
DEFAULT_PREDICTOR = 'previous_state'

# Experiments (experiments)
POWER_BALANCE_DT = 1e-3
POWER_BALANCE_T_END = 1.0
# Bound declared by power balance reports for the exactly balanced schemes.
POWER_BALANCE_BOUND = 1e-10
CONVERGENCE_DT_START = 1e-1
CONVERGENCE_LEVELS = 10
CONVERGENCE_T_END = 1.0
# Reference step is min(dt_list) / CONVERGENCE_REFERENCE_RATIO.
CONVERGENCE_REFERENCE_RATIO = 8
CONVERGENCE_REFERENCE_SCHEME = 'radau5'
CONVERGENCE_SCHEMES = ('dgp', 'implicit_midpoint')
CSV_SIGNIFICANT_DIGITS = 17
EXPERIMENT_OUTPUT_DIR = os.environ.get(
    'PHDG_OUTPUT_DIR', os.path.join(PROJECT_ROOT, 'output'))
EXPERIMENT_WORKERS = int(os.environ.get('PHDG_WORKERS', '4'))
DEFAULT_SEED = 0

LOG_LEVEL = os.environ.get('PHDG_LOG_LEVEL', 'WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s'
        }
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
            'stream': 'ext://sys.stderr',
        }
    },
    'loggers': {
        'core': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'systems': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'experiments': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    }
}

# Instances may create a local_settings.py to override any of the above.
try:
    from .local_settings import *
except ImportError:
    pass
