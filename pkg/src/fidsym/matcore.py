"""Complex Hermitian linear-algebra substrate.

Validated matrix types (Hermitian matrices, density operators, pure states),
spectral decomposition with a fixed eigenvalue ordering, and PSD square roots.
All downstream modules build on these primitives.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Tolerances. All relative where a norm is available; double precision with
# d <= 64 leaves at least five digits of headroom.
PSD_TOL = 1e-10
EIG_TOL = 1e-9
SQRT_TOL = 1e-8
UNIT_TOL = 1e-10
PHASE_TOL = 1e-12
TRACE_TOL = 1e-9


class MatcoreError(Exception):
    """Base class for validation and solver errors."""


class SolverFailure(MatcoreError):
    """The eigenvalue iteration did not converge."""


class NotPositive(MatcoreError):
    """A matrix has an eigenvalue below the PSD tolerance band."""


class NotNormalized(MatcoreError):
    """Unit-trace was required but the trace check failed."""


class DimensionMismatch(MatcoreError):
    """Operands live on Hilbert spaces of different dimension."""


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


def hermitize(m: np.ndarray) -> np.ndarray:
    """Return the exactly symmetrized matrix (M + M*)/2.

    The diagonal imaginary parts come out exactly zero, so Hermiticity is an
    invariant of the result, not a hope.
    """
    m = np.ascontiguousarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError("matrix entries must be finite")
    return _freeze((m + m.conj().T) / 2)


def check_same_dim(a, b) -> int:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension mismatch: {a.dim} vs {b.dim}")
    return a.dim


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in non-increasing order with matching orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


@dataclass(frozen=True)
class DensityOperator:
    """Positive-semidefinite Hermitian matrix with finite trace.

    Construct through :func:`validate_density`; ``matrix`` is hermitized and
    eigenvalue-clipped, ``trace`` is cached and real.
    """

    matrix: np.ndarray
    trace: float

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix))

    @staticmethod
    def from_psd(m: np.ndarray) -> "DensityOperator":
        """Wrap a matrix already known to be PSD (e.g. U A U*). Hermitizes only."""
        h = hermitize(m)
        return DensityOperator(matrix=h, trace=float(np.trace(h).real))


@dataclass(frozen=True)
class PureState:
    """Unit vector with canonical phase: the first component of modulus above
    PHASE_TOL is real and positive."""

    amplitudes: np.ndarray

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def projection(self) -> DensityOperator:
        v = self.amplitudes
        return DensityOperator.from_psd(np.outer(v, v.conj()))


def normalize_phase(v: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the first significant component is real positive."""
    v = np.asarray(v, dtype=complex)
    for k, x in enumerate(v):
        if abs(x) > PHASE_TOL:
            if x.imag == 0.0 and x.real > 0.0:
                return v.copy()  # already canonical; keep the bits
            out = v * (x.conjugate() / abs(x))
            # pin the pivot exactly real so the result is a fixed point
            out[k] = abs(x)
            return out
    return v.copy()


def pure_state(v: np.ndarray) -> PureState:
    """Normalize a nonzero vector to a unit, phase-canonical PureState."""
    v = np.asarray(v, dtype=complex).ravel()
    n = np.linalg.norm(v)
    if n <= PHASE_TOL:
        raise ValueError("cannot normalize the zero vector")
    return PureState(amplitudes=_freeze(normalize_phase(v / n)))


def basis_state(dim: int, i: int) -> PureState:
    v = np.zeros(dim, dtype=complex)
    v[i] = 1.0
    return PureState(amplitudes=_freeze(v))


def eig_hermitian(m: np.ndarray) -> Spectrum:
    """Spectral decomposition of a Hermitian matrix.

    Eigenvalues are returned in non-increasing order (ties kept in solver
    order); eigenvectors are the matching orthonormal columns.
    """
    m = hermitize(m)
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise SolverFailure(str(exc)) from exc
    return Spectrum(eigenvalues=_freeze(w[::-1]), eigenvectors=_freeze(v[:, ::-1]))


def validate_density(m: np.ndarray, require_unit_trace: bool = False) -> DensityOperator:
    """Validate a matrix as a density operator.

    Eigenvalues in [-PSD_TOL*||M||, 0) are clipped to zero and the matrix is
    reassembled; anything more negative raises NotPositive. With
    ``require_unit_trace`` the (post-clip) trace must be 1 within TRACE_TOL.
    """
    m = hermitize(m)
    spec = eig_hermitian(m)
    scale = max(np.linalg.norm(m), 1.0)
    w = spec.eigenvalues
    if np.min(w) < -PSD_TOL * scale:
        raise NotPositive(f"eigenvalue {np.min(w):.3e} below tolerance band")
    w = np.clip(w, 0.0, None)
    v = spec.eigenvectors
    rebuilt = hermitize((v * w) @ v.conj().T)
    trace = float(np.sum(w))
    if require_unit_trace and abs(trace - 1.0) > TRACE_TOL:
        raise NotNormalized(f"trace {trace} is not 1 within {TRACE_TOL}")
    return DensityOperator(matrix=rebuilt, trace=trace)


# eigenvalues this far below the largest are rounding noise of
# rank-deficient inputs; sqrt would amplify them to ~1e-8
EIG_FLOOR = 1e-14


def _sqrt_eigs(w: np.ndarray) -> np.ndarray:
    w = np.clip(w, 0.0, None)
    if w[0] > 0.0:
        w[w < EIG_FLOOR * w[0]] = 0.0
    return np.sqrt(w)


def sqrt_psd(a: DensityOperator) -> DensityOperator:
    """Positive square root of a PSD operator, via eigendecomposition with
    clipping at zero."""
    spec = eig_hermitian(a.matrix)
    w = _sqrt_eigs(spec.eigenvalues)
    v = spec.eigenvectors
    root = hermitize((v * w) @ v.conj().T)
    return DensityOperator(matrix=root, trace=float(np.sum(w)))


def sqrtm_psd(m: np.ndarray) -> np.ndarray:
    """Square root of a PSD matrix given as a raw array (internal fast path)."""
    spec = eig_hermitian(m)
    w = _sqrt_eigs(spec.eigenvalues)
    v = spec.eigenvectors
    return (v * w) @ v.conj().T
