"""Displaced-frame cavity readout simulator (Python front end).

Configs are plain dicts with the same layout as the CLI's JSON files.
"""
import csv
import io
import json

from . import _core
from ._core import ConfigError, IoError, NumericalError, p_displacement, preset_names

__all__ = [
    "ConfigError",
    "IoError",
    "NumericalError",
    "dispersive_summary",
    "normalize_config",
    "p_displacement",
    "preset",
    "preset_names",
    "run",
    "run_spectrum",
    "simulate",
    "sweep",
    "version",
]

__version__ = _core.version().split()[-1]


def version():
    return _core.version()


def _text(config):
    return config if isinstance(config, str) else json.dumps(config)


def normalize_config(config):
    return json.loads(_core.normalize_config(_text(config)))


def run(config, out_dir=""):
    return json.loads(_core.run(_text(config), str(out_dir)))


def run_spectrum(config, out_dir=""):
    return json.loads(_core.run_spectrum(_text(config), str(out_dir)))


def sweep(config, param, values, out_dir, workers=1):
    return json.loads(_core.sweep(_text(config), param, json.dumps(list(values)), str(out_dir), workers))


def preset(name):
    return json.loads(_core.preset(name))


def dispersive_summary(config):
    return json.loads(_core.dispersive_summary(_text(config)))


def simulate(config):
    """Trajectory as a dict of column lists (None where a cell is empty)."""
    rows = list(csv.DictReader(io.StringIO(_core.simulate_csv(_text(config)))))
    cols = {}
    for row in rows:
        for key, value in row.items():
            cols.setdefault(key, []).append(float(value) if value != "" else None)
    return cols
