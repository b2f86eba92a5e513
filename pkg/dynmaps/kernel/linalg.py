"""Dense complex linear algebra used by the map and witness layers.

Everything here is a pure function of its inputs. Eigendecompositions come from
``scipy.linalg.eigh``; this module adds the conventions the rest of the package relies
on: descending eigenvalues, a fixed eigenvector phase, a deterministic tie-break for
degenerate eigenvalues, and tolerance-aware PSD matrix functions.
"""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
import scipy.linalg

from dynmaps.errors import DimensionMismatch, NotHermitian, NotPSD, NumericalFailure

ComplexMatrix = npt.NDArray[np.complex128]

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
SUPPORT_TOL = 1e-12
RECONSTRUCTION_TOL = 1e-12
PHASE_TOL = 1e-12
TIE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class HermitianEig:
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""

    eigenvalues: npt.NDArray[np.float64]
    eigenvectors: ComplexMatrix

    def reconstruct(self) -> ComplexMatrix:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


@dataclass(frozen=True, eq=False)
class SpectralLog:
    """Logarithm of a PSD matrix restricted to its support.

    ``log`` is zero on the kernel; ``support`` is the orthogonal projector onto the
    eigenvectors with eigenvalue above the support threshold.
    """

    log: ComplexMatrix
    support: ComplexMatrix
    rank: int


def as_matrix(m) -> ComplexMatrix:
    """Copy ``m`` into a 2-D complex128 array."""
    arr = np.array(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatch(f"Expected a 2-D matrix, got shape {arr.shape}")
    return arr


def _require_square(m: ComplexMatrix) -> None:
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"Expected a square matrix, got shape {m.shape}")


def hermiticity_error(m: ComplexMatrix) -> float:
    """Relative Frobenius distance between ``m`` and its adjoint."""
    norm = np.linalg.norm(m)
    if norm == 0.0:
        return 0.0
    return float(np.linalg.norm(m - m.conj().T) / norm)


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = as_matrix(m)
    return m.shape[0] == m.shape[1] and hermiticity_error(m) <= tol


def hermitian_part(m: ComplexMatrix) -> ComplexMatrix:
    return 0.5 * (m + m.conj().T)


def _fix_phases(vectors: ComplexMatrix) -> ComplexMatrix:
    """Rotate each column so its first non-negligible component is real positive."""
    if vectors.size == 0:
        return vectors.copy()
    significant = np.abs(vectors) > PHASE_TOL
    pivot_rows = significant.argmax(axis=0)
    columns = np.arange(vectors.shape[1])
    pivots = vectors[pivot_rows, columns]
    magnitudes = np.abs(pivots)
    phases = np.ones_like(pivots)
    found = significant.any(axis=0)
    phases[found] = np.conj(pivots[found]) / magnitudes[found]
    fixed = vectors * phases
    fixed[pivot_rows[found], columns[found]] = magnitudes[found]
    return fixed


def _column_key(column: np.ndarray) -> tuple[float, ...]:
    return tuple(np.column_stack([column.real, column.imag]).ravel())


def _sort_descending(values: np.ndarray, vectors: ComplexMatrix) -> tuple[np.ndarray, ComplexMatrix]:
    order = np.argsort(-values, kind="stable")
    scale = max(1.0, float(np.max(np.abs(values)))) if values.size else 1.0
    gaps = -np.diff(values[order])
    if np.all(gaps > TIE_TOL * scale):
        return values[order], vectors[:, order]

    # Within runs of (near-)equal eigenvalues order the columns lexicographically.
    order = list(order)
    ranked: list[int] = []
    start = 0
    while start < len(order):
        stop = start + 1
        while stop < len(order) and values[order[stop - 1]] - values[order[stop]] <= TIE_TOL * scale:
            stop += 1
        group = order[start:stop]
        group.sort(key=lambda idx: _column_key(vectors[:, idx]))
        ranked.extend(group)
        start = stop

    return values[ranked], vectors[:, ranked]


def eig_hermitian(m, tol: float = HERMITIAN_TOL) -> HermitianEig:
    """Eigendecomposition of a hermitian matrix with canonical ordering and phases."""
    m = as_matrix(m)
    _require_square(m)
    error = hermiticity_error(m)
    if error > tol:
        raise NotHermitian(f"Matrix is not hermitian (relative deviation {error:.3e} > {tol:.1e})")

    sym = hermitian_part(m)
    try:
        values, vectors = scipy.linalg.eigh(sym)
    except np.linalg.LinAlgError as e:
        raise NumericalFailure(f"Hermitian eigendecomposition failed: {e}") from e

    vectors = _fix_phases(np.asarray(vectors, dtype=np.complex128))
    values, vectors = _sort_descending(np.asarray(values, dtype=np.float64), vectors)
    result = HermitianEig(eigenvalues=values, eigenvectors=vectors)

    norm = np.linalg.norm(sym)
    if norm > 0.0:
        residual = np.linalg.norm(result.reconstruct() - sym) / norm
        if residual > 100 * RECONSTRUCTION_TOL:
            raise NumericalFailure(f"Eigendecomposition reconstruction error {residual:.3e}")
    return result


def kron(a, b) -> ComplexMatrix:
    """Kronecker product, (a⊗b)[(i,k),(j,l)] = a[i,j] b[k,l]."""
    return np.kron(as_matrix(a), as_matrix(b))


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product Tr[a† b]."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"Shapes {a.shape} and {b.shape} differ")
    return complex(np.vdot(a, b))


def partial_trace(m, dims: tuple[int, int], keep: int = 0) -> ComplexMatrix:
    """Trace out one factor of a bipartite operator on C^d0 ⊗ C^d1.

    ``keep=0`` returns the operator on the first factor, ``keep=1`` the second.
    """
    m = as_matrix(m)
    d0, d1 = dims
    if m.shape != (d0 * d1, d0 * d1):
        raise DimensionMismatch(f"Matrix of shape {m.shape} does not match dims {dims}")
    if keep not in (0, 1):
        raise ValueError(f"keep must be 0 or 1, got {keep}")
    tensor = m.reshape(d0, d1, d0, d1)
    if keep == 0:
        return np.einsum("ijkj->ik", tensor)
    return np.einsum("ijil->jl", tensor)


def partial_trace_second(m, dims: tuple[int, int] = (2, 2)) -> ComplexMatrix:
    """Tr_2 in the basis |00>, |01>, |10>, |11> (first index is subsystem 1)."""
    return partial_trace(m, dims, keep=0)


def _clamp_psd(eig: HermitianEig, tol: float) -> HermitianEig:
    lowest = float(eig.eigenvalues[-1]) if eig.eigenvalues.size else 0.0
    if lowest < -tol:
        raise NotPSD(f"Matrix has eigenvalue {lowest:.3e} below -{tol:.1e}")
    clamped = np.clip(eig.eigenvalues, 0.0, None)
    return HermitianEig(eigenvalues=clamped, eigenvectors=eig.eigenvectors)


def spectral_sqrt(eig: HermitianEig, tol: float = PSD_TOL) -> ComplexMatrix:
    """Principal square root rebuilt from an existing PSD eigendecomposition."""
    eig = _clamp_psd(eig, tol)
    root = HermitianEig(eigenvalues=np.sqrt(eig.eigenvalues), eigenvectors=eig.eigenvectors)
    return hermitian_part(root.reconstruct())


def spectral_log(eig: HermitianEig, tol: float = PSD_TOL, support_tol: float = SUPPORT_TOL) -> SpectralLog:
    """Logarithm on the support, rebuilt from an existing PSD eigendecomposition."""
    eig = _clamp_psd(eig, tol)
    mask = eig.eigenvalues > support_tol
    v = eig.eigenvectors[:, mask]
    logs = np.log(eig.eigenvalues[mask])
    log = (v * logs) @ v.conj().T
    support = v @ v.conj().T
    return SpectralLog(log=hermitian_part(log), support=hermitian_part(support), rank=int(mask.sum()))


def psd_eigenvalues(m, tol: float = PSD_TOL) -> npt.NDArray[np.float64]:
    """Eigenvalues of a hermitian PSD matrix, clamped at zero; no eigenvectors."""
    m = as_matrix(m)
    _require_square(m)
    try:
        values = scipy.linalg.eigvalsh(hermitian_part(m))
    except np.linalg.LinAlgError as e:
        raise NumericalFailure(f"Hermitian eigenvalue solve failed: {e}") from e
    if values.size and values[0] < -tol:
        raise NotPSD(f"Matrix has eigenvalue {values[0]:.3e} below -{tol:.1e}")
    return np.clip(values, 0.0, None)


def mat_sqrt_psd(m, tol: float = PSD_TOL) -> ComplexMatrix:
    """Principal square root of a hermitian PSD matrix."""
    return spectral_sqrt(eig_hermitian(m), tol)


def mat_log_spectral(m, tol: float = PSD_TOL, support_tol: float = SUPPORT_TOL) -> SpectralLog:
    """Natural logarithm of a PSD matrix on its support, plus the support projector."""
    return spectral_log(eig_hermitian(m), tol, support_tol)
