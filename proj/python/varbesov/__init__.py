"""Variable-exponent Lebesgue and Besov quasi-norms on a periodic grid."""

import json

from ._varbesov import (
    ConfigError,
    GridSpec,
    HypothesisError,
    bessel_potential_norm,
    besov_norm,
    coordinates,
    experiment_names,
    lemma_ids,
    luxemburg_norm,
    modular,
)
from ._varbesov import _run_experiment


def run_experiment(name, config=None, config_path=""):
    """Run a harness experiment and return the report as a dict.

    `config` maps "section.key" to values and overrides the config file.
    """
    overrides = {k: str(v) for k, v in (config or {}).items()}
    return json.loads(_run_experiment(name, overrides, config_path))


__all__ = [
    "ConfigError",
    "GridSpec",
    "HypothesisError",
    "bessel_potential_norm",
    "besov_norm",
    "coordinates",
    "experiment_names",
    "lemma_ids",
    "luxemburg_norm",
    "modular",
    "run_experiment",
]
