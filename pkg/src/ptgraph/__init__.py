"""Graphical pre-tests for the parallel-trends assumption in 2x2
difference-in-differences designs, with an exact linear-model oracle."""

__version__ = "0.1.0"

from .dsl import parse, serialize
from .errors import ParseError, PtGraphError, ValidationError
from .graph import CausalGraph, Edge, Node, Role, directed, undirected
from .swig import Swig, build_swig
from .dsep import d_separated, open_paths, open_path_witness
from .completion import Choice, enumerate_completions
from .adjustment import (
    common_sufficient_set,
    is_sufficient,
    minimal_sufficient_sets,
)
from .sem import LinearSem, faithfulness_check, pt_gap, random_sem, solve_alpha_star
from .verdict import Verdict, analyze

__all__ = [
    "__version__",
    "CausalGraph",
    "Choice",
    "Edge",
    "LinearSem",
    "Node",
    "ParseError",
    "PtGraphError",
    "Role",
    "Swig",
    "ValidationError",
    "Verdict",
    "analyze",
    "build_swig",
    "common_sufficient_set",
    "d_separated",
    "directed",
    "enumerate_completions",
    "faithfulness_check",
    "is_sufficient",
    "minimal_sufficient_sets",
    "open_path_witness",
    "open_paths",
    "parse",
    "pt_gap",
    "random_sem",
    "serialize",
    "solve_alpha_star",
    "undirected",
]
