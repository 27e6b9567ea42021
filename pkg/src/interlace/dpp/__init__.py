"""Finite determinantal point processes and extended block kernels."""

from .blocks import (
    ExtendedKernel,
    EynardMehtaSpec,
    MinorsSpec,
    SpacelikeSpec,
    biorthogonality_residual,
    enumerate_block_measure,
    enumerate_minors_measure,
    enumerate_spacelike_measure,
    eynard_mehta_kernel,
    minors_kernel,
    spacelike_kernel_general,
)
from .ensembles import (
    GroundSet,
    KernelMatrix,
    LMatrix,
    conditional_kernel,
    conjugate_kernel,
    correlation,
    enumerate_conditional,
    enumerate_lensemble,
    gap_probability,
    lensemble_kernel,
    oracle_correlation,
    oracle_gap,
    rescale_kernel,
)

__all__ = [
    "ExtendedKernel",
    "EynardMehtaSpec",
    "GroundSet",
    "KernelMatrix",
    "LMatrix",
    "MinorsSpec",
    "SpacelikeSpec",
    "biorthogonality_residual",
    "conditional_kernel",
    "conjugate_kernel",
    "correlation",
    "enumerate_block_measure",
    "enumerate_conditional",
    "enumerate_lensemble",
    "enumerate_minors_measure",
    "enumerate_spacelike_measure",
    "eynard_mehta_kernel",
    "gap_probability",
    "lensemble_kernel",
    "minors_kernel",
    "oracle_correlation",
    "oracle_gap",
    "rescale_kernel",
    "spacelike_kernel_general",
]
