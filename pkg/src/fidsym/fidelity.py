"""Uhlmann fidelity, partial fidelities, and the order/orthogonality predicates.

F(A,B) = tr (A^{1/2} B A^{1/2})^{1/2} is computed as an eigenvalue sum rather
than through an explicit matrix square root of the product: fewer matrix
multiplies, same value.
"""
from __future__ import annotations

import numpy as np

from .matcore import (
    DensityOperator,
    PureState,
    _sqrt_eigs,
    check_same_dim,
    eig_hermitian,
    sqrtm_psd,
)

NUM_TOL = 1e-12
SYM_TOL = 1e-8
CROSS_TOL = 1e-8
ORDER_TOL = 1e-8
ORTH_TOL = 1e-8


class BadM(ValueError):
    """Partial-fidelity index m out of range."""


def _fid_eigs(a: DensityOperator, b: DensityOperator) -> np.ndarray:
    """Non-increasing eigenvalues of (A^{1/2} B A^{1/2})^{1/2}, clipped at 0."""
    check_same_dim(a, b)
    ra = sqrtm_psd(a.matrix)
    core = ra @ b.matrix @ ra
    return _sqrt_eigs(eig_hermitian(core).eigenvalues)


def fidelity(a: DensityOperator, b: DensityOperator) -> float:
    """Fidelity F(A,B); symmetric in its arguments and zero iff A, B are
    mutually orthogonal."""
    value = float(np.sum(_fid_eigs(a, b)))
    return 0.0 if -NUM_TOL <= value < 0.0 else value


def partial_fidelity(a: DensityOperator, b: DensityOperator, m: int) -> float:
    """Sum of the m largest eigenvalues (with multiplicity) of
    (A^{1/2} B A^{1/2})^{1/2}; equals fidelity(A, B) at m = dim."""
    if not 1 <= m <= a.dim:
        raise BadM(f"m = {m} out of range 1..{a.dim}")
    eigs = _fid_eigs(a, b)
    value = float(np.sum(eigs[:m]))
    return 0.0 if -NUM_TOL <= value < 0.0 else value


def fidelity_pure(p: PureState, q: PureState) -> float:
    """Fidelity of two pure states: |<x, y>|, the square root of the
    transition probability tr PQ."""
    if p.dim != q.dim:
        from .matcore import DimensionMismatch

        raise DimensionMismatch(f"dimension mismatch: {p.dim} vs {q.dim}")
    return float(abs(np.vdot(p.amplitudes, q.amplitudes)))


def is_leq(a: DensityOperator, b: DensityOperator) -> bool:
    """Operator order A <= B, decided spectrally on B - A."""
    check_same_dim(a, b)
    diff = b.matrix - a.matrix
    w_min = float(np.linalg.eigvalsh(diff)[0])
    return w_min >= -ORDER_TOL * (1.0 + np.linalg.norm(diff))


def is_orthogonal(a: DensityOperator, b: DensityOperator) -> bool:
    """Mutual orthogonality AB = 0; for positive operators this is equivalent
    to F(A,B) = 0."""
    check_same_dim(a, b)
    prod_norm = float(np.linalg.norm(a.matrix @ b.matrix))
    return prod_norm <= ORTH_TOL * (1.0 + a.norm() * b.norm())
