"""Exact embeddability certificates for perturbed Euclidean norms.

Rationals are passed as strings such as ``"1/14"``. Results are plain
dicts decoded from the JSON the C++ core emits.
"""

import json

from . import _lqembed
from ._lqembed import ConsistencyError, DegenerateWindow, Error, InvalidInput, NotANorm

__all__ = [
    "ConsistencyError",
    "DegenerateWindow",
    "Error",
    "InvalidInput",
    "NotANorm",
    "certify",
    "convexity_interval",
    "counterexample",
    "density",
    "is_norm",
    "moment_identity",
    "quadratic_window",
    "quartic_window",
    "rational",
    "run_cli",
    "threshold",
    "validate_representation",
]


def _decoded(fn):
    def call(*args, **kwargs):
        return json.loads(fn(*args, **kwargs))

    call.__name__ = fn.__name__
    call.__doc__ = fn.__doc__
    return call


moment_identity = _decoded(_lqembed.moment_identity)
convexity_interval = _decoded(_lqembed.convexity_interval)
is_norm = _decoded(_lqembed.is_norm)
density = _decoded(_lqembed.density)
certify = _decoded(_lqembed.certify)
threshold = _decoded(_lqembed.threshold)
quadratic_window = _decoded(_lqembed.quadratic_window)
quartic_window = _decoded(_lqembed.quartic_window)
counterexample = _decoded(_lqembed.counterexample)
validate_representation = _decoded(_lqembed.validate_representation)


def run_cli(*args):
    """Runs the command line tool in-process; returns (exit code, stdout, stderr)."""
    return _lqembed.run_cli([str(a) for a in args])


def rational(record):
    """{"num": "1", "den": "14"} -> fractions.Fraction(1, 14)."""
    from fractions import Fraction

    return Fraction(int(record["num"]), int(record["den"]))
