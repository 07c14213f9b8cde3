"""Preservation experiments for the five application families."""

from __future__ import annotations

from dataclasses import replace

from . import distance, incidence, matrix, sl2, sumprod
from .common import APPLICATIONS, DOMAINS, HarnessConfig, HarnessReport, TrialRecord, preset, run_trials

RUNNERS = {
    "sumprod": sumprod.trial,
    "incidence": incidence.trial,
    "distance": distance.trial,
    "sl2": sl2.trial,
    "matrix": matrix.trial,
}


def run(cfg: HarnessConfig) -> HarnessReport:
    """Run every trial of cfg; an exhaustive matrix run is a single trial."""
    if cfg.application == "matrix" and cfg.exhaustive and cfg.trials != 1:
        cfg = replace(cfg, trials=1)
    return HarnessReport(cfg.application, cfg, run_trials(cfg, RUNNERS[cfg.application]))


def _runner(name):
    def runner(cfg: HarnessConfig) -> HarnessReport:
        return run(replace(cfg, application=name))

    runner.__name__ = f"run_{name}"
    runner.__doc__ = f"Run the {name} experiment described by cfg."
    return runner


run_sumprod = _runner("sumprod")
run_incidence = _runner("incidence")
run_distance = _runner("distance")
run_sl2 = _runner("sl2")
run_matrix = _runner("matrix")

__all__ = [
    "APPLICATIONS", "DOMAINS", "HarnessConfig", "HarnessReport", "TrialRecord", "preset", "run",
    "run_sumprod", "run_incidence", "run_distance", "run_sl2", "run_matrix",
]
