"""Subduction coefficients of type-A Iwahori-Hecke algebras at real q."""

__version__ = "0.1.0"

from .tableaux import (  # noqa: E402
    Partition,
    SkewFilling,
    StandardTableau,
    enumerate_skew_fillings,
    enumerate_syt,
    hook_dimension,
    lr_multiplicity,
)
from .hecke_rep import generator_matrix, quantum_number, verify_hecke_relations  # noqa: E402
from .subduction import SubductionProblem, assemble_system, build_graph  # noqa: E402
from .solver import SDCSolution, canonicalize, expand_full, solve, verify_solution  # noqa: E402

__all__ = [
    "Partition",
    "SkewFilling",
    "StandardTableau",
    "SubductionProblem",
    "SDCSolution",
    "assemble_system",
    "build_graph",
    "canonicalize",
    "enumerate_skew_fillings",
    "enumerate_syt",
    "expand_full",
    "generator_matrix",
    "hook_dimension",
    "lr_multiplicity",
    "quantum_number",
    "solve",
    "verify_hecke_relations",
    "verify_solution",
]
