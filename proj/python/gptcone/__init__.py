"""Python bindings for the gptcone C++ library."""

import json

from . import _core
from ._core import (
    GptconeError,
    aq_advantage,
    appendix_fixture,
    bq_witness,
    classify_dovm,
    err_of_measurement,
    helstrom,
    n_copy_overlap,
    partial_transpose,
    run_cli,
    sep_dual_membership,
    sep_membership,
)

__all__ = [
    "GptconeError",
    "aq_advantage",
    "appendix_fixture",
    "bq_witness",
    "build_pses",
    "classify_dovm",
    "discriminate",
    "err_of_measurement",
    "helstrom",
    "n_copy_overlap",
    "partial_transpose",
    "run_cli",
    "sep_dual_membership",
    "sep_membership",
    "shrunk_bloch",
    "two_symmetry",
    "verify_all",
    "verify_appendix",
]


def discriminate(rho1, rho2):
    return json.loads(_core.discriminate_report(rho1, rho2))


def build_pses(local_dim, r, families=2, seed=5):
    return json.loads(_core.build_pses_report(local_dim, r, families, seed))


def shrunk_bloch(p, samples=1000, seed=13):
    return json.loads(_core.shrunk_bloch_report(p, samples, seed))


def two_symmetry(samples=200, seed=21):
    return json.loads(_core.two_symmetry_report(samples, seed))


def verify_appendix(seed=21):
    return json.loads(_core.verify_appendix_report(seed))


def verify_all(fast=True, seed=21):
    return json.loads(_core.verify_all_report(fast, seed))
