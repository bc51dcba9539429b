"""Python access to the 2-MAXSAT trie pipeline, the exact oracle and the harness.

Formulas are passed as DIMACS text. Results come back as plain dicts and lists.
"""

import json

from . import _core
from ._core import TriesatError, builtin_names, close_spans, render_cnf

__all__ = [
    "TriesatError",
    "audit",
    "builtin_names",
    "close_spans",
    "export_stages",
    "fuzz",
    "oracle",
    "pipeline",
    "render_cnf",
    "repro",
]


def oracle(cnf, cap=24, threads=1):
    return json.loads(_core.oracle(cnf, cap, threads))


def pipeline(cnf, ordering="frequency", algorithm=1):
    return json.loads(_core.pipeline(cnf, ordering, algorithm))


def export_stages(cnf, stages, format="json", ordering="frequency", algorithm=1):
    return dict(_core.export_stages(cnf, list(stages), format, ordering, algorithm))


def audit(cnf, ordering="frequency", algorithm=1):
    return json.loads(_core.audit(cnf, ordering, algorithm))


def repro(name):
    return json.loads(_core.repro(name))


def fuzz(seed, iterations, max_n0=4, max_m0=3, threads=1):
    return json.loads(_core.fuzz(seed, iterations, max_n0, max_m0, threads))
