"""Dense complex linear algebra for finite-dimensional quantum systems.

States are complex vectors, observables are Hermitian matrices, and every
spectral quantity is obtained from a cyclic Jacobi eigensolver so that two
decompositions of the same matrix agree bit-for-bit.  Matrix exponentials are
never formed from power series; the propagator is assembled from the spectral
decomposition directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Hermiticity: max |M_ij - conj(M_ji)| allowed, relative to the Frobenius norm.
HERMITICITY_TOL_FACTOR = 1e-12
# Jacobi convergence: off-diagonal Frobenius norm target, relative to ||A||_F.
JACOBI_TOL_FACTOR = 1e-13
JACOBI_MAX_SWEEPS = 100
# Modulus ties when picking a column's anchor component for the phase fix.
PHASE_TIE_TOL = 1e-12


class ConvergenceError(RuntimeError):
    """Raised when the Jacobi sweep cap is hit before the residual target."""

    def __init__(self, residual: float, sweeps: int):
        super().__init__(
            f"eigensolver did not converge within {sweeps} sweeps "
            f"(off-diagonal residual {residual:.3e})"
        )
        self.residual = residual
        self.sweeps = sweeps


def as_complex_matrix(matrix, name: str = "matrix") -> np.ndarray:
    """Coerce to a square complex128 array with finite entries."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if m.shape[0] < 1:
        raise ValueError(f"{name} must have dimension >= 1")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def hermitian_defect(matrix) -> float:
    """Largest elementwise deviation of M from its conjugate transpose."""
    m = np.asarray(matrix, dtype=np.complex128)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def require_hermitian(matrix, name: str = "matrix") -> np.ndarray:
    """Validate Hermiticity within the relative tolerance; return the array."""
    m = as_complex_matrix(matrix, name)
    defect = hermitian_defect(m)
    tol = HERMITICITY_TOL_FACTOR * float(np.linalg.norm(m))
    if defect > tol:
        i, j = np.unravel_index(np.argmax(np.abs(m - m.conj().T)), m.shape)
        raise ValueError(
            f"{name} is not Hermitian: entry ({i},{j}) deviates from the "
            f"conjugate of ({j},{i}) by {defect:.3e} (tolerance {tol:.3e})"
        )
    return m


def as_state(vector, name: str = "state", norm_tol: float = 1e-9) -> np.ndarray:
    """Coerce to a finite complex vector normalized within norm_tol."""
    v = np.asarray(vector, dtype=np.complex128)
    if v.ndim != 1 or v.size < 1:
        raise ValueError(f"{name} must be a nonempty vector, got shape {v.shape}")
    if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    norm_sq = float(np.real(np.vdot(v, v)))
    if abs(norm_sq - 1.0) > norm_tol:
        raise ValueError(
            f"{name} is not normalized: sum of squared moduli is {norm_sq!r}"
        )
    return v


def inner(a, b) -> complex:
    """Inner product <a|b>, antilinear in the first argument."""
    av = np.asarray(a, dtype=np.complex128)
    bv = np.asarray(b, dtype=np.complex128)
    if av.ndim != 1 or bv.ndim != 1:
        raise ValueError("inner expects vectors")
    if av.shape != bv.shape:
        raise ValueError(f"dimension mismatch: {av.shape[0]} vs {bv.shape[0]}")
    return complex(np.vdot(av, bv))


def commutator(a, b) -> np.ndarray:
    """AB - BA for same-dimension square matrices."""
    am = as_complex_matrix(a, "first operand")
    bm = as_complex_matrix(b, "second operand")
    if am.shape != bm.shape:
        raise ValueError(f"dimension mismatch: {am.shape} vs {bm.shape}")
    return am @ bm - bm @ am


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray   # (n,) float64, ascending
    eigenvectors: np.ndarray  # (n, n) complex128, column k pairs with eigenvalue k

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def span(self) -> float:
        """E_max - E_min."""
        return float(self.eigenvalues[-1] - self.eigenvalues[0])


def _offdiag_norm(a: np.ndarray) -> float:
    n = a.shape[0]
    mask = ~np.eye(n, dtype=bool)
    return float(np.sqrt(np.sum(np.abs(a[mask]) ** 2)))


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Zero a[p,q] (and a[q,p]) with a complex Givens rotation, in place."""
    apq = a[p, q]
    r = abs(apq)
    if r == 0.0:
        return
    w = apq / r  # unit phase of the pivot
    tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
    t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
    c = 1.0 / math.hypot(1.0, t)
    s = t * c
    cw = c * w
    sw = s * w
    # A <- G† A G where G hits columns p, q only
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = cw * col_p - s * col_q
    a[:, q] = sw * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = np.conj(cw) * row_p - s * row_q
    a[q, :] = np.conj(sw) * row_p + c * row_q
    # accumulate eigenvectors: V <- V G
    col_p = v[:, p].copy()
    col_q = v[:, q].copy()
    v[:, p] = cw * col_p - s * col_q
    v[:, q] = sw * col_p + c * col_q


def _fix_column_phases(v: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-modulus component is real >= 0.

    Ties (moduli equal within PHASE_TIE_TOL) break toward the lowest index.
    """
    out = v.copy()
    for k in range(out.shape[1]):
        mods = np.abs(out[:, k])
        top = float(mods.max())
        anchor = int(np.nonzero(top - mods <= PHASE_TIE_TOL)[0][0])
        z = out[anchor, k]
        if abs(z) > 0.0:
            out[:, k] *= np.conj(z) / abs(z)
    return out


def _anchor_index(column: np.ndarray) -> int:
    mods = np.abs(column)
    top = float(mods.max())
    return int(np.nonzero(top - mods <= PHASE_TIE_TOL)[0][0])


def _order_degenerate(evals: np.ndarray, vecs: np.ndarray):
    """Within near-degenerate eigenvalue runs, order columns by anchor index."""
    n = evals.shape[0]
    tol = PHASE_TIE_TOL * max(1.0, float(np.max(np.abs(evals))))
    order = list(range(n))
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and evals[stop] - evals[stop - 1] <= tol:
            stop += 1
        if stop - start > 1:
            group = sorted(order[start:stop], key=lambda j: _anchor_index(vecs[:, j]))
            order[start:stop] = group
        start = stop
    idx = np.asarray(order)
    return evals[idx], vecs[:, idx]


def eigendecompose(matrix) -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian matrix via cyclic Jacobi sweeps.

    Eigenvalues come out ascending; each eigenvector column carries the
    deterministic phase convention of _fix_column_phases, and degenerate
    groups are ordered by the index of their largest-modulus component.

    Raises:
        ValueError: non-Hermitian input.
        ConvergenceError: sweep cap reached before the residual target.
    """
    m = require_hermitian(matrix)
    # symmetrize the sub-tolerance defect so rotations see an exact Hermitian
    a = 0.5 * (m + m.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    target = JACOBI_TOL_FACTOR * float(np.linalg.norm(a))
    sweeps = 0
    while _offdiag_norm(a) > target:
        if sweeps >= JACOBI_MAX_SWEEPS:
            raise ConvergenceError(_offdiag_norm(a), sweeps)
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotate(a, v, p, q)
        sweeps += 1
    evals = np.diag(a).real.copy()
    order = np.argsort(evals, kind="stable")
    evals = evals[order]
    vecs = _fix_column_phases(v[:, order])
    evals, vecs = _order_degenerate(evals, vecs)
    evals.setflags(write=False)
    vecs.setflags(write=False)
    return SpectralDecomposition(evals, vecs)


def propagator(hamiltonian, t: float, hbar: float = 1.0) -> np.ndarray:
    """Unitary time-evolution operator U(t) assembled spectrally.

    U(t) = sum_k exp(-i E_k t / hbar) |E_k><E_k|.  Accepts either a Hermitian
    matrix or an existing SpectralDecomposition.

    Args:
        hamiltonian: Hermitian matrix or SpectralDecomposition.
        t: evolution time (finite real).
        hbar: reduced Planck constant, > 0.
    """
    if not (isinstance(hbar, (int, float)) and math.isfinite(hbar) and hbar > 0):
        raise ValueError(f"hbar must be a positive finite real, got {hbar!r}")
    if not (isinstance(t, (int, float)) and math.isfinite(t)):
        raise ValueError(f"t must be a finite real, got {t!r}")
    spec = (
        hamiltonian
        if isinstance(hamiltonian, SpectralDecomposition)
        else eigendecompose(hamiltonian)
    )
    phases = np.exp(-1j * spec.eigenvalues * (float(t) / float(hbar)))
    return (spec.eigenvectors * phases) @ spec.eigenvectors.conj().T
