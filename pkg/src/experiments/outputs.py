import json
import os
import platform
import time

import django
import numpy as np
import scipy

MANIFEST_NAME = 'manifest.json'


def versions():
    return {
        'python': platform.python_version(),
        'numpy': np.__version__,
        'scipy': scipy.__version__,
        'django': django.get_version(),
    }


def ensure_directory(path):
    if not os.path.isdir(path):
        os.makedirs(path)
    return path


def _plain(value):
    """Converts numpy scalars and arrays for json."""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return dict((str(k), _plain(v)) for k, v in value.items())
    return value


def build_manifest(model, params, scheme, newton, grid, seed, wall_time_s,
                   timings=None, **extra):
    """
    Returns the manifest describing one experiment run.

    scheme is a scheme id or a list of them, newton a NewtonSettings,
    grid a dict describing the time grid(s).
    """
    manifest = {
        'model': model,
        'params': params,
        'scheme': scheme,
        'newton': newton.as_dict(),
        'grid': grid,
        'seed': seed,
        'wall_time_s': wall_time_s,
        'versions': versions(),
        'timings': timings or {},
    }
    manifest.update(extra)
    return _plain(manifest)


def write_manifest(directory, manifest):
    path = os.path.join(directory, MANIFEST_NAME)
    with open(path, 'w') as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write('\n')
    return path


def read_manifest(directory):
    with open(os.path.join(directory, MANIFEST_NAME)) as f:
        return json.load(f)


class Stopwatch(object):
    """Collects named wall clock timings."""

    def __init__(self):
        self.started = time.perf_counter()
        self.timings = {}

    def measure(self, name):
        return _Lap(self, name)

    @property
    def elapsed(self):
        return time.perf_counter() - self.started


class _Lap(object):

    def __init__(self, watch, name):
        self.watch = watch
        self.name = name

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.watch.timings[self.name] = time.perf_counter() - self.start
        return False
