"""Perturbation-tolerant structural controllability verifier."""

try:
    from ._ptsc import (
        StructuredMatrix,
        dm_dump,
        generic_rank,
        is_structurally_controllable,
        oracle_verdict,
        scrp_feasible,
        submatrix,
        vee,
        verify_ptsc,
    )
except ImportError:
    # Not installed as a wheel: pick up the extension from the CMake build
    # tree (put the build directory on PYTHONPATH).
    from _ptsc import (
        StructuredMatrix,
        dm_dump,
        generic_rank,
        is_structurally_controllable,
        oracle_verdict,
        scrp_feasible,
        submatrix,
        vee,
        verify_ptsc,
    )

__all__ = [
    "StructuredMatrix",
    "dm_dump",
    "generic_rank",
    "is_structurally_controllable",
    "oracle_verdict",
    "scrp_feasible",
    "submatrix",
    "vee",
    "verify_ptsc",
]
