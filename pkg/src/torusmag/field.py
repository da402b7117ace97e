"""Uniform magnetic field in the torus surface frame.

The field B = B1 x_hat + B0 z_hat is parameterized by the dimensionless
fluxes tau0 (axial) and tau1 (in-plane): tau = flux through a disc of the
major radius, in units of pi*hbar/e.  Internally the natural magnetic unit
is hbar/(e R^2), so B0 = tau0/R^2 and B1 = tau1/R^2 with hbar/e = 1; all
spectra depend on the taus only.

The Coulomb-gauge vector potential A = (1/2) B x r is decomposed along the
surface frame (e_theta, e_phi, e_n).  Its normal component A_N is
independent of the normal coordinate, so the curvature coupling it
generates reduces to a pure surface function proportional to h * A_N,
evaluated here in dimensionless form by `vmag_potential`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

from .geometry import TorusGeometry, metric_factor_f


@dataclass(frozen=True)
class FieldConfig:
    """Dimensionless field strengths and potential toggles.

    tau0 is the axial flux parameter, tau1 the in-plane one; either sign is
    allowed.  vc_on / vmag_on independently enable the curvature potential
    and the magnetic curvature coupling in the assembled Hamiltonian.
    """

    tau0: float
    tau1: float
    vc_on: bool = True
    vmag_on: bool = True

    def __post_init__(self) -> None:
        if not (math.isfinite(self.tau0) and math.isfinite(self.tau1)):
            raise ValueError("tau0 and tau1 must be finite")


@dataclass(frozen=True)
class SurfaceVectorPotential:
    """Vector potential components along (e_theta, e_phi, e_n)."""

    a_theta: float
    a_phi: float
    a_n: float


def field_strengths(geom: TorusGeometry, field: FieldConfig) -> tuple[float, float]:
    """(B0, B1) in units of hbar/(e R^2) times 1/length^2."""
    r2 = geom.major_radius**2
    return field.tau0 / r2, field.tau1 / r2


def vector_potential(
    geom: TorusGeometry,
    field: FieldConfig,
    theta: float,
    phi: float,
    q: float = 0.0,
) -> SurfaceVectorPotential:
    """Coulomb-gauge A at a point (theta, phi, q) near the surface.

    q is the signed distance along the surface normal and must satisfy
    |q| < a.  Note d(a_n)/dq = 0: the normal component of A is constant
    through the layer.
    """
    a = geom.minor_radius
    if not abs(q) < a:
        raise ValueError(f"|q| must be below the minor radius, got q={q}")
    b0, b1 = field_strengths(geom, field)
    r0 = geom.major_radius
    # Shifted frame factors: a_q = a (1 + q/a), W_q = W (1 + q cos(theta)/W).
    a_q = a + q
    w_q = geom.w(theta) + q * math.cos(theta)
    a_theta = 0.5 * b1 * math.sin(phi) * (r0 * math.cos(theta) + a_q)
    a_phi = 0.5 * (b0 * w_q - b1 * a_q * math.sin(theta) * math.cos(phi))
    a_n = 0.5 * b1 * r0 * math.sin(phi) * math.sin(theta)
    return SurfaceVectorPotential(a_theta=a_theta, a_phi=a_phi, a_n=a_n)


def vmag_potential(geom: TorusGeometry, field: FieldConfig, theta, phi):
    """Dimensionless magnitude of the magnetic curvature coupling.

    Equal to (alpha tau1 / 2) sin(theta) sin(phi) (1 + 2 alpha cos(theta))/F,
    which is 2 a^2 (e/hbar) times h(theta) * A_N(theta, phi).  The value is
    real; the imaginary unit it carries in the Hamiltonian is applied at
    assembly time.
    """
    alpha = geom.alpha
    f = metric_factor_f(geom, theta)
    return (
        0.5 * alpha * field.tau1
        * np.sin(theta) * np.sin(phi)
        * (1.0 + 2.0 * alpha * np.cos(theta)) / f
    )


def tau_from_tesla(b_tesla: float, major_radius_m: float) -> float:
    """Dimensionless flux tau = e R^2 B / hbar for a field in tesla.

    For R = 500 angstrom this gives tau ~ 3.80 per tesla.
    """
    return constants.e * major_radius_m**2 * b_tesla / constants.hbar


def tesla_from_tau(tau: float, major_radius_m: float) -> float:
    """Inverse of `tau_from_tesla`."""
    return tau * constants.hbar / (constants.e * major_radius_m**2)


def energy_scale_mev(geom: TorusGeometry, length_unit_m: float = 1e-10) -> float:
    """hbar^2 / (2 m_e a^2) in meV; a is interpreted in units of
    `length_unit_m` (angstrom by default).

    Physical energies are E = -eps * scale for a dimensionless eigenvalue
    eps of the surface Hamiltonian.
    """
    a_m = geom.minor_radius * length_unit_m
    joule = constants.hbar**2 / (2.0 * constants.m_e * a_m**2)
    return joule / constants.e * 1e3
