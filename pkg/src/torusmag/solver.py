"""Dense eigendecomposition and ground-state composition analysis.

The dimensionless eigenvalue convention is eps = -2 m E a^2 / hbar^2, so
the physical ground state is the eigenvector with the LARGEST raw
eigenvalue eps.  `SpectrumResult.ground()` encapsulates that selector so
callers never trip over the sign.

`eigensolve` requires a Hermitian matrix and refuses otherwise.  The
variant with the magnetic curvature coupling removed at nonzero in-plane
field is intrinsically non-Hermitian (the dropped term is exactly the
anti-Hermitian part of the remaining operator); `eigensolve_general`
handles it with a general complex eigensolver.  That operator commutes
with the antiunitary map (complex conjugation composed with phi -> -phi),
so its eigenvalues are real or come in conjugate pairs; in practice the
low spectrum is real to rounding and the real parts are reported.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .basis import Label
from .hamiltonian import HamiltonianMatrix


class HermiticityError(RuntimeError):
    """The matrix handed to the Hermitian solver is not Hermitian."""


@dataclass(frozen=True)
class SpectrumResult:
    """Eigenvalues (ascending in eps) with aligned eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    labels: list[Label]
    max_imag: float = 0.0

    def ground_index(self) -> int:
        """Index of the physical ground state: maximal raw eps."""
        return int(np.argmax(self.eigenvalues))

    def ground(self) -> tuple[float, np.ndarray]:
        i = self.ground_index()
        return float(self.eigenvalues[i]), self.eigenvectors[:, i]

    def residuals(self, h: HamiltonianMatrix) -> np.ndarray:
        """||H v - eps v|| per eigenpair (eigenvectors are unit norm)."""
        hv = h.entries @ self.eigenvectors
        return np.linalg.norm(
            hv - self.eigenvectors * self.eigenvalues[np.newaxis, :], axis=0
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "eigenvalues": list(self.eigenvalues),
                "labels": [list(lab) for lab in self.labels],
                "eigenvectors_re": self.eigenvectors.real.tolist(),
                "eigenvectors_im": self.eigenvectors.imag.tolist(),
                "max_imag": self.max_imag,
            },
            indent=2,
        )


def _order_deterministically(
    w: np.ndarray, v: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigensolve(h: HamiltonianMatrix, tol: float = 1e-8) -> SpectrumResult:
    """Full spectrum of a Hermitian matrix, eigenvalues ascending.

    Raises HermiticityError (with the measured defect) when the matrix is
    not Hermitian within tol, instead of silently symmetrizing.
    """
    defect = h.hermiticity_defect()
    if defect > tol:
        raise HermiticityError(
            f"matrix is not Hermitian: max|H - H^dagger| = {defect:.3e} "
            f"exceeds {tol:.1e}; for the curvature-coupling-off variant at "
            "tau1 != 0 use eigensolve_general"
        )
    w, v = np.linalg.eigh(0.5 * (h.entries + h.entries.conj().T))
    w, v = _order_deterministically(w, v)
    return SpectrumResult(eigenvalues=w, eigenvectors=v, labels=h.labels)


def eigensolve_general(h: HamiltonianMatrix) -> SpectrumResult:
    """Spectrum of a general complex matrix, sorted by real part.

    Eigenvectors are normalized to unit Euclidean norm.  The largest
    imaginary part encountered is recorded in max_imag for diagnostics.
    """
    w, v = np.linalg.eig(h.entries)
    max_imag = float(np.max(np.abs(w.imag))) if w.size else 0.0
    v = v / np.linalg.norm(v, axis=0, keepdims=True)
    wr, v = _order_deterministically(w.real, v)
    return SpectrumResult(
        eigenvalues=wr, eigenvectors=v, labels=h.labels, max_imag=max_imag
    )


@dataclass(frozen=True)
class StateComposition:
    """Eigenvector amplitudes per basis label, largest magnitude first.

    terms keeps every amplitude; display functions apply the threshold.
    The global phase is fixed so the largest amplitude is real positive.
    """

    terms: list[tuple[Label, complex]]
    threshold: float

    def dominant(self) -> list[tuple[Label, complex]]:
        return [(lab, amp) for lab, amp in self.terms if abs(amp) >= self.threshold]

    def amplitude(self, label: Label) -> complex:
        for lab, amp in self.terms:
            if lab == label:
                return amp
        return 0.0

    def norm_sq(self) -> float:
        return float(sum(abs(a) ** 2 for _, a in self.terms))

    def nu_weights(self) -> dict[int, float]:
        """Total |amplitude|^2 per azimuthal index."""
        out: dict[int, float] = {}
        for (_, _, nu), amp in self.terms:
            out[nu] = out.get(nu, 0.0) + abs(amp) ** 2
        return out

    def dominant_nu(self) -> int:
        weights = self.nu_weights()
        return max(sorted(weights), key=lambda nu: weights[nu])

    def circulation(self) -> float:
        """Expectation of -i d/dphi: sum of nu |amplitude|^2."""
        return float(sum(nu * w for nu, w in self.nu_weights().items()))

    def real_combinations(self) -> list[tuple[str, int, int, complex]]:
        """Group nu = +/-m pairs into cos/sin phi form.

        Returns rows (kind, n, m, amplitude) where m >= 0; m = 0 rows are
        plain theta-function amplitudes, and each m > 0 label appears as
        two rows, the coefficient of cos(m phi) and of i sin(m phi):

            c_+ e^{im phi} + c_- e^{-im phi}
                = (c_+ + c_-) cos(m phi) + (c_+ - c_-) i sin(m phi).

        Rows with magnitude below the display threshold are dropped.
        """
        amps: dict[tuple[str, int, int], complex] = {}
        for (kind, n, nu), amp in self.terms:
            amps[(kind, n, nu)] = amps.get((kind, n, nu), 0.0) + amp
        rows: list[tuple[str, int, int, complex]] = []
        seen: set[tuple[str, int, int]] = set()
        for kind, n, nu in amps:
            m = abs(nu)
            key = (kind, n, m)
            if key in seen:
                continue
            seen.add(key)
            if m == 0:
                rows.append((kind, n, 0, amps[(kind, n, 0)]))
            else:
                cp = amps.get((kind, n, m), 0.0)
                cm = amps.get((kind, n, -m), 0.0)
                rows.append((kind, n, m, cp + cm))  # cos(m phi) coefficient
                rows.append((kind, n, -m, cp - cm))  # i sin(m phi) coefficient
        rows = [r for r in rows if abs(r[3]) >= self.threshold]
        rows.sort(key=lambda r: -abs(r[3]))
        return rows

    def format_text(self) -> str:
        """Aligned text in the tables' real-combination notation."""
        parts = []
        for kind, n, m, amp in self.real_combinations():
            name = f"{kind}{n}"
            if m > 0:
                name += f" cos{m if m > 1 else ''}phi"
            elif m < 0:
                name += f" i sin{-m if m < -1 else ''}phi"
            if abs(amp.imag) < 1e-9 * max(1.0, abs(amp.real)):
                parts.append(f"{amp.real:+.3f} {name}")
            else:
                parts.append(f"({amp.real:+.3f}{amp.imag:+.3f}i) {name}")
        return "  ".join(parts) if parts else "(no terms above threshold)"


def state_composition(
    s: SpectrumResult, index: int, threshold: float = 0.09
) -> StateComposition:
    vec = s.eigenvectors[:, index].copy()
    top = int(np.argmax(np.abs(vec)))
    phase = vec[top] / abs(vec[top])
    vec = vec / phase
    order = np.argsort(-np.abs(vec), kind="stable")
    terms = [(s.labels[i], complex(vec[i])) for i in order]
    return StateComposition(terms=terms, threshold=threshold)


def ground_state_composition(
    s: SpectrumResult, threshold: float = 0.09
) -> StateComposition:
    """Composition of the physical ground state (maximal raw eps)."""
    return state_composition(s, s.ground_index(), threshold)
