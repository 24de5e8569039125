import os
import sys

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .misc import ConfigurationError
from .utils import _check_bound

DEFAULTS = {
    "hom_bound": 2,
    "lift_size_cap": 200_000,
}

ENVIRONMENT = {
    "hom_bound": "HOM_BOUND",
    "lift_size_cap": "LIFT_SIZE_CAP",
}


class Configuration(object):
    """Search bounds used by the workbench"""

    def __init__(self):
        self._values = dict(DEFAULTS)

    def __getitem__(self, key):
        return self._values[key]

    def add_file(self, path):
        if not os.path.isfile(path):
            raise ConfigurationError(f"no configuration file at '{path}'")
        try:
            with open(path, "rb") as fd:
                data = tomllib.load(fd)
        except tomllib.TOMLDecodeError as e:
            raise ConfigurationError(f"invalid configuration in '{path}': {e}")

        bounds = data.get("bounds", {})
        if not isinstance(bounds, dict):
            raise ConfigurationError(f"[bounds] in '{path}' must be a table")
        for key, value in bounds.items():
            if key not in DEFAULTS:
                raise ConfigurationError(f"unknown key '{key}' in '{path}'")
            self._values[key] = _check_bound(key, value)

    def add_environment(self, environ):
        for key, variable in ENVIRONMENT.items():
            if variable in environ:
                raw = environ[variable]
                try:
                    value = int(raw)
                except ValueError:
                    raise ConfigurationError(
                        f"{variable} must be an integer, got '{raw}'"
                    )
                self._values[key] = _check_bound(variable, value)


class FindConfiguration(object):
    def __init__(self):
        self._cache = None

    def __call__(self):
        if self._cache is None:
            configuration = Configuration()
            # files closer to the working directory take precedence
            for path in reversed(_rc_files(os.getcwd())):
                configuration.add_file(path)
            configuration.add_environment(os.environ)
            self._cache = configuration
        return self._cache

    def reset(self):
        self._cache = None


def _rc_files(directory):
    found = []
    directory = os.path.abspath(directory)
    while True:
        path = os.path.join(directory, ".unrollingrc")
        if os.path.isfile(path):
            found.append(path)
        parent = os.path.dirname(directory)
        if parent == directory:
            return found
        directory = parent


_get_configuration = FindConfiguration()


def hom_bound(value=None):
    """Get the hom bound, using ``value`` when it is given"""
    if value is not None:
        return _check_bound("hom_bound", value)
    return _get_configuration()["hom_bound"]


def lift_size_cap(value=None):
    """Get the lift size cap, using ``value`` when it is given"""
    if value is not None:
        return _check_bound("lift_size_cap", value)
    return _get_configuration()["lift_size_cap"]
