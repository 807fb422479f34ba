"""Binomial tail bounds: bound evaluation, an exact oracle and certification suites."""

import json

from . import _bintail
from ._bintail import (
    PreconditionError,
    crossover_f_star,
    exact_tail,
    gaussian_tail_bounds,
    gaussian_tail_exact,
    mckay_tail_bounds,
    ratio_bounds,
    suite_ids,
    tail_bounds,
    theta,
    zeta,
)

__all__ = [
    "PreconditionError",
    "crossover_f_star",
    "evaluate",
    "exact_tail",
    "gaussian_tail_bounds",
    "gaussian_tail_exact",
    "mckay_tail_bounds",
    "ratio_bounds",
    "run_suite",
    "suite_ids",
    "tail_bounds",
    "theta",
    "zeta",
]


def evaluate(n, k, p, tail="lower", exact=False):
    """All applicable bounds at one point, as a dict. p may be "a/b", a decimal string or a float."""
    return json.loads(_bintail.evaluate(n, k, p, tail, exact))


def run_suite(suite, n_max=60, p_list=(), threads=0):
    """Runs a certification suite and returns its summary dict."""
    return json.loads(_bintail.run_suite(suite, n_max, list(p_list), threads))
