from .dense import act_e_dense, seed_pattern
from .dilute import act_e_dilute
from .linkstate import DEFECT, EMPTY, LinkPattern, SectorBasis, translate_two
from .operator import (
    GradedSpace,
    SparseOperator,
    assemble_generator,
    assemble_hamiltonian,
    graded_space,
    sector_basis,
    space_for,
)


def enumerate_sector(spec, j: int) -> SectorBasis:
    """Sector basis of a dense model (2j through-lines)."""
    if spec.kind != "dense":
        return enumerate_dilute(spec, j)
    return sector_basis("dense", spec.L, j)


def enumerate_dilute(spec, j: int) -> SectorBasis:
    """Sector basis of a dilute model (j through-lines)."""
    return sector_basis("dilute", spec.L, j)


def assemble_hamiltonian_dilute(spec, j_max: int):
    return assemble_hamiltonian(spec, j_max)


__all__ = [
    "DEFECT",
    "EMPTY",
    "GradedSpace",
    "LinkPattern",
    "SectorBasis",
    "SparseOperator",
    "act_e_dense",
    "act_e_dilute",
    "assemble_generator",
    "assemble_hamiltonian",
    "assemble_hamiltonian_dilute",
    "enumerate_dilute",
    "enumerate_sector",
    "graded_space",
    "sector_basis",
    "seed_pattern",
    "space_for",
    "translate_two",
]
