"""Single-electron states on a torus surface in a uniform magnetic field.

Computes spectra and wave functions of the dimensionless surface
Hamiltonian obtained by thin-layer reduction, including the curvature
geometric potential and the magnetic geometric potential from the
surface-normal vector-potential component, for fields of arbitrary
orientation.
"""

from .basis import BasisSet, ThetaFunction, gram_schmidt_basis, weighted_inner_product
from .field import FieldConfig, energy_scale_mev, tau_from_tesla, tesla_from_tau
from .geometry import (
    CurvatureData,
    SurfaceProfile,
    TorusGeometry,
    curvatures,
    geometric_potential_vc,
    metric_factor_f,
    torus_curvatures,
)
from .hamiltonian import HamiltonianMatrix, assemble, matrix_element
from .oracle import GridSpec, grid_solve
from .solver import (
    SpectrumResult,
    StateComposition,
    eigensolve,
    eigensolve_general,
    ground_state_composition,
)

__all__ = [
    "BasisSet",
    "ThetaFunction",
    "gram_schmidt_basis",
    "weighted_inner_product",
    "FieldConfig",
    "energy_scale_mev",
    "tau_from_tesla",
    "tesla_from_tau",
    "CurvatureData",
    "SurfaceProfile",
    "TorusGeometry",
    "curvatures",
    "geometric_potential_vc",
    "metric_factor_f",
    "torus_curvatures",
    "HamiltonianMatrix",
    "assemble",
    "matrix_element",
    "GridSpec",
    "grid_solve",
    "SpectrumResult",
    "StateComposition",
    "eigensolve",
    "eigensolve_general",
    "ground_state_composition",
]

__version__ = "0.1.0"
