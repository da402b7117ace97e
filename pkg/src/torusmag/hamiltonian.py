"""Assembly of the dimensionless surface Hamiltonian on the torus.

The operator acts on functions of (theta, phi) and is expanded in the
weighted Gram-Schmidt basis of `basis`.  Every term has the form

    C(theta) * P(phi) * d^j/dtheta^j * d^p/dphi^p

with C a trig polynomial over nonnegative powers of 1/F and P a trig
polynomial in phi of degree at most 2.  Azimuthal integrals are therefore
exact harmonic sums with the selection rule |nu_row - nu_col| <= 2, and the
theta integrals are done by periodic trapezoid quadrature, which converges
geometrically for these analytic periodic integrands.

Matrix elements are taken as <chi_row | H chi_col> over the measure
F(theta) dtheta dphi without symmetrization; the weight itself supplies the
integration by parts that makes the first-derivative kinetic term
self-adjoint.  The magnetic curvature coupling enters as -i times the real
potential from `field.vmag_potential`.  With that sign the term exactly
cancels the anti-self-adjoint residue of the paramagnetic in-plane
couplings, so the assembled matrix is Hermitian to machine precision; with
the opposite sign it is not.  Dropping the term (vmag_on=False) while
tau1 != 0 therefore leaves a slightly non-Hermitian matrix by construction,
which `solver.eigensolve_general` handles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import BasisSet, Label
from .field import FieldConfig
from .geometry import TorusGeometry, metric_factor_f, torus_curvatures

#: Sign of the imaginary unit carried by the magnetic curvature coupling.
#: -1 is the self-adjoint choice (see module docstring).
VMAG_SIGN = -1.0

#: phi-harmonic tables: {m: c_m} meaning P(phi) = sum_m c_m exp(i m phi).
_ONE = {0: 1.0}
_COS = {1: 0.5, -1: 0.5}
_SIN = {1: -0.5j, -1: 0.5j}
_SIN2 = {0: 0.5, 2: -0.25, -2: -0.25}


class ConfigurationError(ValueError):
    """Basis and geometry passed to assembly do not belong together."""


@dataclass(frozen=True)
class HamiltonianMatrix:
    """Dense complex matrix of the surface Hamiltonian in a BasisSet.

    block_index maps a basis label (kind, n, nu) to its row; toggles is the
    FieldConfig the matrix was assembled with.
    """

    entries: np.ndarray
    labels: list[Label]
    block_index: dict[Label, int]
    toggles: FieldConfig

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def hermiticity_defect(self) -> float:
        """max |H - H^dagger| over all entries."""
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def to_csv(self) -> str:
        """Plain-text dump, one line per entry: row, col, re, im."""
        lines = ["row,col,re,im"]
        for i in range(self.dim):
            for j in range(self.dim):
                z = self.entries[i, j]
                lines.append(f"{i},{j},{z.real:.17g},{z.imag:.17g}")
        return "\n".join(lines) + "\n"


def _term_table(
    geom: TorusGeometry,
    field: FieldConfig,
    theta: np.ndarray,
    vc_form: str,
) -> list[tuple[np.ndarray, dict[int, complex], int, int]]:
    """List of (C(theta) samples, phi harmonics, d/dtheta order, d/dphi order)."""
    al = geom.alpha
    t0, t1 = field.tau0, field.tau1
    f = metric_factor_f(geom, theta)
    st, ct = np.sin(theta), np.cos(theta)
    one = np.ones_like(theta)

    terms: list[tuple[np.ndarray, dict[int, complex], int, int]] = [
        (one + 0j, _ONE, 2, 0),
        (-al * st / f + 0j, _ONE, 1, 0),
        (al**2 / f**2 + 0j, _ONE, 0, 2),
        (1j * t0 * al**2 * one, _ONE, 0, 1),
        (-1j * t1 * al**3 * st / f, _COS, 0, 1),
        (1j * al * t1 * (al + ct), _SIN, 1, 0),
        (-0.25 * t0**2 * al**2 * f**2 + 0j, _ONE, 0, 0),
        (-0.25 * t1**2 * al**2 * f**2 + 0j, _SIN2, 0, 0),
        (-0.25 * t1**2 * al**4 * st**2 + 0j, _ONE, 0, 0),
        (0.5 * t0 * t1 * al**3 * f * st + 0j, _COS, 0, 0),
    ]
    if field.vc_on:
        if vc_form == "metric":
            vc = 0.25 / f**2
        elif vc_form == "curvature":
            a = geom.minor_radius
            vc = np.array(
                [
                    a**2 * (c.h**2 - c.k)
                    for c in (torus_curvatures(geom, t) for t in theta)
                ]
            )
        else:
            raise ConfigurationError(
                f"vc_form must be 'metric' or 'curvature', got {vc_form!r}"
            )
        terms.append((vc + 0j, _ONE, 0, 0))
    if field.vmag_on:
        amp = 0.5 * al * t1 * st * (1.0 + 2.0 * al * ct) / f
        terms.append((VMAG_SIGN * 1j * amp, _SIN, 0, 0))
    return terms


def assemble(
    geom: TorusGeometry,
    field: FieldConfig,
    basis: BasisSet,
    n_quad: int = 512,
    vc_form: str = "metric",
) -> HamiltonianMatrix:
    """Dense matrix of the surface Hamiltonian in the given basis.

    vc_form selects how the curvature potential is evaluated when vc_on:
    'metric' uses 1/(4 F^2); 'curvature' uses a^2 (h^2 - k) from the
    principal curvatures.  On the torus the two are algebraically identical
    (a (1/a - cos(theta)/W) = 1/F exactly), so this is a sensitivity knob,
    not a physics switch.
    """
    if abs(basis.alpha - geom.alpha) > 1e-12:
        raise ConfigurationError(
            f"basis built for alpha={basis.alpha}, geometry has {geom.alpha}"
        )
    theta = np.arange(n_quad) * 2.0 * np.pi / n_quad
    f = metric_factor_f(geom, theta)
    funcs = list(basis.even_funcs) + list(basis.odd_funcs)
    nb = len(funcs)
    vals = np.array([u(theta) for u in funcs])
    deriv = {
        0: vals,
        1: np.array([u.derivative(theta, 1) for u in funcs]),
        2: np.array([u.derivative(theta, 2) for u in funcs]),
    }

    nus = basis.nus
    nnu = len(nus)
    dim = nb * nnu
    h = np.zeros((dim, dim), dtype=complex)
    dtheta = 2.0 * np.pi / n_quad
    for coeff, harm, jt, jp in _term_table(geom, field, theta, vc_form):
        # theta integrals for all basis-function pairs at once
        tmat = (vals * (coeff * f)) @ deriv[jt].T * dtheta
        for bc, nu in enumerate(nus):
            phase = (1j * nu) ** jp if jp else 1.0
            for m, cm in harm.items():
                nurow = nu + m
                if not nus[0] <= nurow <= nus[-1]:
                    continue
                br = nurow - nus[0]
                h[br::nnu, bc::nnu] += tmat * (cm * phase)
    labels = basis.labels()
    return HamiltonianMatrix(
        entries=h,
        labels=labels,
        block_index={lab: i for i, lab in enumerate(labels)},
        toggles=field,
    )


def matrix_element(
    geom: TorusGeometry,
    field: FieldConfig,
    basis: BasisSet,
    row_label: Label,
    col_label: Label,
    n_quad: int = 512,
    vc_form: str = "metric",
) -> complex:
    """Single entry <chi_row | H | chi_col>, for property checks."""
    theta = np.arange(n_quad) * 2.0 * np.pi / n_quad
    f = metric_factor_f(geom, theta)
    u_row = basis.theta_function(row_label)(theta)
    col_fn = basis.theta_function(col_label)
    nu_row, nu_col = row_label[2], col_label[2]
    dtheta = 2.0 * np.pi / n_quad
    out = 0.0 + 0.0j
    for coeff, harm, jt, jp in _term_table(geom, field, theta, vc_form):
        m = nu_row - nu_col
        if m not in harm:
            continue
        u_col = col_fn(theta) if jt == 0 else col_fn.derivative(theta, jt)
        phase = (1j * nu_col) ** jp if jp else 1.0
        out += np.sum(u_row * coeff * f * u_col) * dtheta * harm[m] * phase
    return complex(out)
