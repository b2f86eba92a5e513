"""A-map algebra: validation, realignment, canonical decomposition and application.

An A-map acts on a density matrix flattened row-major, (r, s) -> n*r + s:

    [rho(t)]_{r's'} = sum_{rs} A_{r's';rs} [rho(0)]_{rs}

The canonical form A = sum_mu lambda_mu C_mu ⊗ C_mu* comes from diagonalizing the
hermitian coefficient matrix of A in an orthonormal operator basis. The map is CP iff
every lambda_mu is non-negative.
"""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import numpy as np

from dynmaps.errors import (
    BasisNotOrthonormal,
    DimensionMismatch,
    InvalidTrace,
    NotCompletelyPositive,
    NotHermitian,
    NotPSD,
    NumericalFailure,
)
from dynmaps.flags import Flag
from dynmaps.kernel.linalg import (
    HERMITIAN_TOL,
    ComplexMatrix,
    HermitianEig,
    as_matrix,
    eig_hermitian,
    hermiticity_error,
)

logger = logging.getLogger(__name__)

MAP_TOL = 1e-10
CP_TOL = 1e-10
STATE_TOL = 1e-10


class Classification(str, Enum):
    CP = "CP"
    NCP = "NCP"


# ── States ──────────────────────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian unit-trace matrix; PSD unless flagged PositivityViolation."""

    matrix: ComplexMatrix
    flags: frozenset[Flag] = field(default_factory=frozenset)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def spectrum(self) -> HermitianEig:
        return eig_hermitian(self.matrix)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.spectrum.eigenvalues

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[-1])

    @classmethod
    def from_matrix(cls, m, tol: float = STATE_TOL, allow_negative: bool = False) -> "DensityMatrix":
        """Validate ``m`` as a state.

        With ``allow_negative`` a negative eigenvalue is recorded as a flag instead of
        raising, which is how outputs of NCP maps are reported. The eigendecomposition
        made here is kept as the state's ``spectrum``.
        """
        m = as_matrix(m)
        if m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"Density matrix must be square, got {m.shape}")
        if hermiticity_error(m) > tol:
            raise NotHermitian("Density matrix is not hermitian")
        trace = np.trace(m)
        if abs(trace - 1.0) > tol:
            raise InvalidTrace(f"Density matrix trace is {trace.real:.12g}, expected 1")

        m = 0.5 * (m + m.conj().T)
        spectrum = eig_hermitian(m)
        lowest = float(spectrum.eigenvalues[-1])
        flags: frozenset[Flag] = frozenset()
        if lowest < -tol:
            if not allow_negative:
                raise NotPSD(f"Density matrix has eigenvalue {lowest:.3e}")
            flags = frozenset({Flag.POSITIVITY_VIOLATION})
        state = cls(matrix=m, flags=flags)
        state.__dict__["spectrum"] = spectrum
        return state


# ── Maps ────────────────────────────────────────────────────────────────────────


def _map_dim(m: ComplexMatrix) -> int:
    size = m.shape[0]
    n = int(round(np.sqrt(size)))
    if m.shape != (size, size) or n * n != size:
        raise DimensionMismatch(f"A-map matrix must be n²×n², got shape {m.shape}")
    return n


@dataclass(frozen=True, eq=False)
class AMap:
    """n²×n² matrix A_{r's';rs} acting on row-major flattened density matrices."""

    matrix: ComplexMatrix

    @property
    def dim(self) -> int:
        return _map_dim(self.matrix)

    def tensor(self) -> np.ndarray:
        """View as T[r', s', r, s]."""
        n = self.dim
        return self.matrix.reshape(n, n, n, n)

    def hermiticity_deviation(self) -> float:
        """max |A_{s'r';sr} - A*_{r's';rs}|."""
        t = self.tensor()
        return float(np.max(np.abs(t.transpose(1, 0, 3, 2) - t.conj())))

    def trace_deviation(self) -> float:
        """max |sum_{r'} A_{r'r';rs} - delta_{rs}|."""
        n = self.dim
        partial = np.einsum("iirs->rs", self.tensor())
        return float(np.max(np.abs(partial - np.eye(n))))

    @classmethod
    def from_matrix(cls, m, tol: float = MAP_TOL, check: bool = True) -> "AMap":
        amap = cls(matrix=as_matrix(m))
        _map_dim(amap.matrix)
        if check:
            if amap.hermiticity_deviation() > tol:
                raise NotHermitian("A-map does not preserve hermiticity")
            if amap.trace_deviation() > tol:
                raise InvalidTrace("A-map does not preserve the trace")
        return amap

    @classmethod
    def identity(cls, n: int = 2) -> "AMap":
        return cls(matrix=np.eye(n * n, dtype=np.complex128))


@dataclass(frozen=True, eq=False)
class BMatrix:
    """Realigned map B_{r'r;s's} = A_{r's';rs}; hermitian for valid A-maps."""

    matrix: ComplexMatrix

    @property
    def dim(self) -> int:
        return _map_dim(self.matrix)


@dataclass(frozen=True, eq=False)
class CanonicalDecomposition:
    eigenvalues: np.ndarray
    operators: list[ComplexMatrix]
    classification: Classification
    negativity: float

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[-1])


# ── Bases ───────────────────────────────────────────────────────────────────────

PAULI_I = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def pauli_basis() -> list[ComplexMatrix]:
    """{I, σx, σy, σz}/√2, orthonormal under Tr[a† b]."""
    return [p / np.sqrt(2.0) for p in (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z)]


def matrix_unit_basis(n: int) -> list[ComplexMatrix]:
    """{|r><s|} ordered by n*r + s."""
    units = []
    for r in range(n):
        for s in range(n):
            e = np.zeros((n, n), dtype=np.complex128)
            e[r, s] = 1.0
            units.append(e)
    return units


def default_basis(n: int) -> list[ComplexMatrix]:
    return pauli_basis() if n == 2 else matrix_unit_basis(n)


def _basis_stack(basis: Sequence, n: int, tol: float) -> np.ndarray:
    stack = np.array([as_matrix(t) for t in basis])
    if stack.shape != (n * n, n, n):
        raise DimensionMismatch(f"Basis must hold {n * n} matrices of shape {n}×{n}, got {stack.shape}")
    gram = np.einsum("kij,lij->kl", stack.conj(), stack)
    if np.max(np.abs(gram - np.eye(n * n))) > tol:
        raise BasisNotOrthonormal("Basis matrices are not orthonormal under Tr[T_a† T_b]")
    return stack


# ── Algebra ─────────────────────────────────────────────────────────────────────


def coefficient_matrix(a: AMap, basis: Sequence | None = None, tol: float = MAP_TOL) -> ComplexMatrix:
    """𝒜_{αβ} = Tr[A (T_α† ⊗ T_β^T)]."""
    n = a.dim
    stack = _basis_stack(default_basis(n) if basis is None else basis, n, tol)
    coeffs = np.einsum("abcd,kac,lbd->kl", a.tensor(), stack.conj(), stack)
    if hermiticity_error(coeffs) > HERMITIAN_TOL:
        raise NotHermitian("Coefficient matrix is not hermitian; A does not preserve hermiticity")
    return coeffs


def realign_to_b(a: AMap) -> BMatrix:
    """B_{r'r;s's} = A_{r's';rs}."""
    n = a.dim
    return BMatrix(matrix=a.tensor().transpose(0, 2, 1, 3).reshape(n * n, n * n))


def realign_to_a(b: BMatrix) -> AMap:
    """Inverse of realign_to_b (the realignment is an involution)."""
    n = b.dim
    return AMap(matrix=b.matrix.reshape(n, n, n, n).transpose(0, 2, 1, 3).reshape(n * n, n * n))


def classify(eigenvalues: np.ndarray, tol: float = CP_TOL) -> tuple[Classification, float]:
    """CP/NCP label and negativity -sum of eigenvalues below -tol."""
    negative = eigenvalues[eigenvalues < -tol]
    classification = Classification.NCP if negative.size else Classification.CP
    return classification, float(-negative.sum()) if negative.size else 0.0


def canonical_decompose(a: AMap, basis: Sequence | None = None, tol: float = CP_TOL) -> CanonicalDecomposition:
    """Spectral form A = Σ λ_μ C_μ ⊗ C_μ*, with C_μ = Σ_α 𝒰*_{μα} T_α.

    All n² operators are kept, including those with zero weight.
    """
    n = a.dim
    stack = _basis_stack(default_basis(n) if basis is None else basis, n, MAP_TOL)
    eig = eig_hermitian(coefficient_matrix(a, stack))

    # Column μ of the eigenvector matrix holds 𝒰*_{μα}.
    operators = list(np.einsum("am,aij->mij", eig.eigenvectors, stack))
    classification, negativity = classify(eig.eigenvalues, tol)
    decomposition = CanonicalDecomposition(
        eigenvalues=eig.eigenvalues,
        operators=operators,
        classification=classification,
        negativity=negativity,
    )

    residual = np.linalg.norm(reconstruct(decomposition).matrix - a.matrix)
    if residual > MAP_TOL * max(1.0, float(np.linalg.norm(a.matrix))):
        raise NumericalFailure(f"Canonical form reconstructs A with error {residual:.3e}")
    return decomposition


def reconstruct(d: CanonicalDecomposition) -> AMap:
    """Σ λ_μ C_μ ⊗ C_μ*."""
    matrix = sum(lam * np.kron(c, c.conj()) for lam, c in zip(d.eigenvalues, d.operators))
    return AMap(matrix=np.asarray(matrix, dtype=np.complex128))


def trace_identity_deviation(d: CanonicalDecomposition) -> float:
    """‖Σ λ_μ C_μ† C_μ − I‖_F; zero for trace-preserving maps."""
    total = sum(lam * (c.conj().T @ c) for lam, c in zip(d.eigenvalues, d.operators))
    return float(np.linalg.norm(total - np.eye(d.dim)))


def kraus_operators(d: CanonicalDecomposition, tol: float = CP_TOL) -> list[ComplexMatrix]:
    """√λ_μ C_μ for the non-zero weights of a CP map."""
    if d.classification is Classification.NCP:
        raise NotCompletelyPositive(
            f"Map is not completely positive (min eigenvalue {d.min_eigenvalue:.6g}); no Kraus form"
        )
    return [np.sqrt(lam) * c for lam, c in zip(d.eigenvalues, d.operators) if lam > tol]


def compose(a: AMap, b: AMap) -> AMap:
    """The map 'apply b, then a'."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"Cannot compose maps on dimensions {a.dim} and {b.dim}")
    return AMap(matrix=a.matrix @ b.matrix)


# ── Application ─────────────────────────────────────────────────────────────────


def apply_raw(a: AMap, q) -> ComplexMatrix:
    """Linear action on any n×n matrix, without state validation."""
    q = as_matrix(q)
    n = a.dim
    if q.shape != (n, n):
        raise DimensionMismatch(f"Map on dimension {n} cannot act on shape {q.shape}")
    return (a.matrix @ q.reshape(n * n)).reshape(n, n)


def _as_state(out: ComplexMatrix, source: str) -> DensityMatrix:
    state = DensityMatrix.from_matrix(out, allow_negative=True)
    if Flag.POSITIVITY_VIOLATION in state.flags:
        logger.warning(f"{source} produced a non-positive output (min eigenvalue {state.min_eigenvalue:.3e})")
    return state


def apply_map(a: AMap, rho: DensityMatrix) -> DensityMatrix:
    """ρ(t) = A ρ(0); negative outputs of NCP maps are flagged, not rejected."""
    if rho.dim != a.dim:
        raise DimensionMismatch(f"Map on dimension {a.dim} cannot act on a {rho.dim}-dimensional state")
    return _as_state(apply_raw(a, rho.matrix), "A-map")


def apply_canonical(d: CanonicalDecomposition, rho: DensityMatrix) -> DensityMatrix:
    """ρ(t) = Σ λ_μ C_μ ρ(0) C_μ†."""
    if rho.dim != d.dim:
        raise DimensionMismatch(f"Map on dimension {d.dim} cannot act on a {rho.dim}-dimensional state")
    out = sum(lam * (c @ rho.matrix @ c.conj().T) for lam, c in zip(d.eigenvalues, d.operators))
    return _as_state(np.asarray(out, dtype=np.complex128), "Canonical map")


def check_semigroup(family: Callable[[float], AMap], t: float, tau: float) -> float:
    """‖A(t+τ) − A(t)A(τ)‖_F at a single (t, τ) sample."""
    if t < 0 or tau < 0:
        raise ValueError(f"Semigroup check needs t, tau >= 0, got t={t}, tau={tau}")
    combined = compose(family(t), family(tau))
    return float(np.linalg.norm(family(t + tau).matrix - combined.matrix))


# ── Serialization ───────────────────────────────────────────────────────────────


def complex_to_pairs(m) -> list:
    """Nested row-major lists with each complex entry as [re, im]."""
    arr = np.asarray(m, dtype=np.complex128)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def amap_to_dict(a: AMap) -> dict:
    return {"dim": a.dim, "matrix": complex_to_pairs(a.matrix)}


def decomposition_to_dict(d: CanonicalDecomposition) -> dict:
    return {
        "dim": d.dim,
        "eigenvalues": [float(v) for v in d.eigenvalues],
        "operators": [complex_to_pairs(c) for c in d.operators],
        "classification": d.classification.value,
        "negativity": d.negativity,
    }
