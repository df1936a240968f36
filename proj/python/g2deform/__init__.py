"""Exact G2-instanton deformation computations on the normal homogeneous nearly-G2 spaces."""

import json

from ._core import (
    UnknownGroup,
    UnknownSpace,
    branch,
    casimir,
    dimension,
    group_names,
    mixing_block,
    solve,
    space_names,
)

__all__ = [
    "UnknownGroup",
    "UnknownSpace",
    "branch",
    "casimir",
    "deform",
    "dimension",
    "group_names",
    "mixing_block",
    "solve",
    "space_names",
    "verify",
]


def deform(space: str, group: str = "g2", threads: int = 0) -> dict:
    """Full deformation report, in the same layout as ``g2deform deform --format json``."""
    from ._core import deform_json

    return json.loads(deform_json(space, group, threads))


def verify(scope: str = "all") -> list:
    """Run the invariant suites; each entry has suite, name, passed and detail."""
    from ._core import verify_json

    return json.loads(verify_json(scope))
