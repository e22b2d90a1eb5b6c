"""Exact symbolic algebra of hybrid quantum-classical brackets."""

import json as _json

from ._hqc import (
    Error,
    Expr,
    ParseError,
    SymbolTable,
    ValidationError,
    antisymmetry_defect,
    bracket,
    canonicalize,
    commutator,
    conservation_check,
    dagger,
    eom,
    hermiticity_defect,
    is_hermitian,
    leibniz_defect,
    make_table,
    oracle_equal,
    parse,
    pd_k,
    pd_x,
    poisson,
    pretty,
)
from ._hqc import run_scenario as _run_scenario


def run_scenario(document, name=""):
    """Runs a scenario JSON document and returns the report as a dict."""
    return _json.loads(_run_scenario(document, name))


__all__ = [
    "Error",
    "Expr",
    "ParseError",
    "SymbolTable",
    "ValidationError",
    "antisymmetry_defect",
    "bracket",
    "canonicalize",
    "commutator",
    "conservation_check",
    "dagger",
    "eom",
    "hermiticity_defect",
    "is_hermitian",
    "leibniz_defect",
    "make_table",
    "oracle_equal",
    "parse",
    "pd_k",
    "pd_x",
    "poisson",
    "pretty",
    "run_scenario",
]
