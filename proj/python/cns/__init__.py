"""Python access to the slab free-surface chemotaxis solver."""

import json

from ._cns import (
    CnsError,
    Grid,
    compatibility,
    extend,
    make_compatible_data,
    mms_order,
    read_field,
    read_surface,
    set_thread_count,
    thread_count,
)
from ._cns import run as _run

__all__ = [
    "CnsError",
    "Grid",
    "compatibility",
    "extend",
    "make_compatible_data",
    "mms_order",
    "read_field",
    "read_surface",
    "run",
    "set_thread_count",
    "thread_count",
]


def run(config, mode=None, out=None):
    """Run a mode from a config dict or JSON string. Returns the exit status (0 on success)."""
    if isinstance(config, str):
        config = json.loads(config)
    config = dict(config)
    if mode is not None:
        config["mode"] = mode
    if out is not None:
        config["out"] = str(out)
    return _run(json.dumps(config))
