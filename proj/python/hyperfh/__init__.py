"""Fourier-Helgason analysis on the one-sheeted hyperboloid."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import HyperFHError, run_transform as _run_transform, run_verify as _run_verify


def verify(suite="all", tol_scale=1.0, seed=20240607):
    """Run a verification suite and return the report as a dict."""
    return _json.loads(_run_verify(suite, tol_scale, seed))


def transform(config):
    """CSV text for a transform config given as a dict or JSON string."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _run_transform(config)
