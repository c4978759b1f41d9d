"""Symbolic checks for complex and Hermitian Lie algebroids."""

import json

from ._core import (
    SCHEMA_VERSION,
    DocumentError,
    Geometry,
    PreconditionError,
    commands,
    fixtures,
)
from . import _core

__all__ = [
    "SCHEMA_VERSION",
    "DocumentError",
    "Geometry",
    "PreconditionError",
    "commands",
    "fixtures",
    "run",
    "schema_errors",
]


def run(command, target="", *, seed=42, samples=8, tol=1e-9, complex_frame=False, direction="",
        orders=(1,), source="both", other="", projector=""):
    """Run a CLI command in-process and return its report as a dict.

    Errors are reported inside the dict (``status`` and ``exit_code``), as with the CLI.
    """
    text = _core.run(command, str(target), seed, samples, tol, complex_frame, direction, list(orders), source,
                     other, str(projector))
    return json.loads(text)


def schema_errors(report):
    return _core.schema_errors(json.dumps(report))
