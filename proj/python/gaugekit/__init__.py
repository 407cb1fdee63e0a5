"""Finite gauge spaces: metrics, covers, completions and compactifications."""

import json

from ._core import (
    InputError,
    PropertyError,
    greedy_net,
    refine,
    ultrafilters,
    validate_table,
)
from ._core import run as _run

__all__ = [
    "InputError",
    "PropertyError",
    "greedy_net",
    "refine",
    "run",
    "ultrafilters",
    "validate_table",
]


def run(*args):
    """Run a command line; returns (exit code, text, parsed JSON body)."""
    code, text, body = _run([str(a) for a in args])
    return code, text, json.loads(body)
