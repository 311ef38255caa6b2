"""Reconstruction of the unitary or antiunitary operator behind a black-box
map on density operators.

The map is probed on a small schedule of rank-one projections (basis states,
two-component real superpositions, one i-superposition), the implementing
operator is assembled column by column with explicit phase fixing, its parity
is classified, and the identity phi(A) = U A U* (or U conj(A) U*) is certified
on random density operators. Bijectivity of the map is never assumed; a map
that fails any stage gets a status flag, not an exception.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import charact
from .matcore import (
    DensityOperator,
    DimensionMismatch,
    PureState,
    eig_hermitian,
    hermitize,
    pure_state,
)
from .sampling import random_density

PROBE_TOL = 1e-7
PHASE_FIX_TOL = 1e-7
CERTIFY_TOL = 1e-7
UNITARY_TOL = 1e-9

UNITARY = "unitary"
ANTIUNITARY = "antiunitary"

STATUS_CERTIFIED = "certified"
STATUS_FAILED_PROJECTION_PROBE = "failed_projection_probe"
STATUS_FAILED_PHASE = "failed_phase"
STATUS_FAILED_PARITY = "failed_parity"
STATUS_FAILED_VERIFICATION = "failed_verification"


@dataclass(frozen=True)
class DensityMapOracle:
    """Executable contract of a candidate map: a pure, deterministic function
    on density operators of a fixed dimension."""

    dim: int
    evaluate: Callable[[DensityOperator], DensityOperator]


@dataclass(frozen=True)
class SymmetryOperator:
    """A unitary matrix plus a parity flag; acts as A -> U A U* (unitary) or
    A -> U conj(A) U* (antiunitary, conjugation in the canonical basis)."""

    parity: str
    u: np.ndarray

    @property
    def dim(self) -> int:
        return self.u.shape[0]


@dataclass(frozen=True)
class ReconstructionReport:
    symmetry: Optional[SymmetryOperator]
    residual_max: float
    probes_used: int
    verification_trials: int
    parity_margin: float
    status: str

    @property
    def certified(self) -> bool:
        return self.status == STATUS_CERTIFIED


def apply_symmetry(s: SymmetryOperator, a: DensityOperator) -> DensityOperator:
    """U A U* or U conj(A) U*; preserves trace and spectrum."""
    if s.dim != a.dim:
        raise DimensionMismatch(f"dimension mismatch: {s.dim} vs {a.dim}")
    m = a.matrix.conj() if s.parity == ANTIUNITARY else a.matrix
    return DensityOperator.from_psd(s.u @ m @ s.u.conj().T)


def symmetry_oracle(s: SymmetryOperator) -> DensityMapOracle:
    return DensityMapOracle(dim=s.dim, evaluate=lambda a: apply_symmetry(s, a))


def symmetry_distance(s1: SymmetryOperator, s2: SymmetryOperator) -> float:
    """min over phases theta of ||U1 - e^{i theta} U2||_F; infinity when the
    parities differ.

    The minimizer is theta = arg tr(U2* U1); the distance is evaluated as a
    direct matrix difference at that phase rather than through the equivalent
    (2d - 2|tr U2* U1|)^{1/2}, whose cancellation floors the result near
    sqrt(d * eps) instead of 0.
    """
    if s1.dim != s2.dim:
        raise DimensionMismatch(f"dimension mismatch: {s1.dim} vs {s2.dim}")
    if s1.parity != s2.parity:
        return math.inf
    t = np.trace(s2.u.conj().T @ s1.u)
    if abs(t) == 0.0:
        return math.sqrt(2.0 * s1.dim)
    phase = t / abs(t)
    return float(np.linalg.norm(s1.u - phase * s2.u))


def extend_normalized(oracle_norm: DensityMapOracle) -> DensityMapOracle:
    """Extend a map defined on unit-trace density operators to all of them by
    homogeneity: 0 -> 0 and A -> (tr A) * phi(A / tr A)."""

    def evaluate(a: DensityOperator) -> DensityOperator:
        t = a.trace
        if t <= 0.0:
            return a
        inner = oracle_norm.evaluate(
            DensityOperator(matrix=a.matrix / t, trace=1.0)
        )
        return DensityOperator(matrix=hermitize(inner.matrix * t), trace=inner.trace * t)

    return DensityMapOracle(dim=oracle_norm.dim, evaluate=evaluate)


def _superposition_projection(dim: int, i: int, j: int, phase: complex = 1.0) -> DensityOperator:
    v = np.zeros(dim, dtype=complex)
    v[i] = 1.0 / math.sqrt(2.0)
    v[j] = phase / math.sqrt(2.0)
    return DensityOperator.from_psd(np.outer(v, v.conj()))


def _extract_state(image: DensityOperator) -> Optional[PureState]:
    """Phase-canonical unit vector of a rank-one projection image, or None if
    the image is not one."""
    if not charact.is_rank_one_projection(image):
        return None
    spec = eig_hermitian(image.matrix)
    return pure_state(spec.eigenvectors[:, 0])


def reconstruct(
    oracle: DensityMapOracle,
    verification_trials: int = 64,
    certify_tol: float = CERTIFY_TOL,
    seed: int = 0,
) -> ReconstructionReport:
    """Probe the oracle on rank-one projections, assemble the implementing
    operator, classify its parity, and certify on random density operators.

    Probe budget: d basis projections, d-1 two-component superpositions for
    phase fixing, one i-superposition for parity, plus cross checks at d >= 3
    and the verification trials.
    """
    d = oracle.dim
    probes = 0

    def fail(status: str, margin: float = 0.0) -> ReconstructionReport:
        return ReconstructionReport(
            symmetry=None,
            residual_max=math.inf,
            probes_used=probes,
            verification_trials=0,
            parity_margin=margin,
            status=status,
        )

    # (1) Basis probes: images must be rank-one projections with the same
    # pairwise transition probabilities as the inputs (zero).
    f = []
    for i in range(d):
        e = np.zeros(d, dtype=complex)
        e[i] = 1.0
        image = oracle.evaluate(DensityOperator.from_psd(np.outer(e, e.conj())))
        probes += 1
        state = _extract_state(image)
        if state is None:
            return fail(STATUS_FAILED_PROJECTION_PROBE)
        f.append(state.amplitudes)
    for i in range(d):
        for j in range(i + 1, d):
            if abs(np.vdot(f[i], f[j])) ** 2 > PROBE_TOL:
                return fail(STATUS_FAILED_PROJECTION_PROBE)

    # (2) Phase fixing: pin each column's phase relative to the first through
    # the images of (e_1 + e_j)/sqrt(2).
    g = [f[0]]
    for j in range(1, d):
        image = oracle.evaluate(_superposition_projection(d, 0, j))
        probes += 1
        state = _extract_state(image)
        if state is None:
            return fail(STATUS_FAILED_PHASE)
        y = state.amplitudes
        c = np.vdot(g[0], y)
        if abs(abs(c) - 1.0 / math.sqrt(2.0)) > PHASE_FIX_TOL:
            return fail(STATUS_FAILED_PHASE)
        y = y * (c.conjugate() / abs(c))
        gj = math.sqrt(2.0) * y - g[0]
        if abs(np.linalg.norm(gj) - 1.0) > PHASE_FIX_TOL:
            return fail(STATUS_FAILED_PHASE)
        if abs(abs(np.vdot(gj, f[j])) - 1.0) > PHASE_FIX_TOL:
            return fail(STATUS_FAILED_PHASE)
        g.append(gj)

    # (3) Cross checks on pairs not involving the first basis vector.
    if d >= 3:
        rng = np.random.default_rng(seed)
        pairs = [(j, k) for j in range(1, d) for k in range(j + 1, d)]
        if len(pairs) > 2 * d:
            idx = rng.choice(len(pairs), size=2 * d, replace=False)
            pairs = [pairs[i] for i in sorted(idx)]
        for j, k in pairs:
            image = oracle.evaluate(_superposition_projection(d, j, k))
            probes += 1
            state = _extract_state(image)
            if state is None:
                return fail(STATUS_FAILED_PHASE)
            target = (g[j] + g[k]) / math.sqrt(2.0)
            if abs(np.vdot(target, state.amplitudes)) ** 2 < 1.0 - PROBE_TOL:
                return fail(STATUS_FAILED_PHASE)

    # (4) Parity from the i-superposition (e_1 + i e_2)/sqrt(2).
    parity = UNITARY
    margin = 0.0
    if d >= 2:
        image = oracle.evaluate(_superposition_projection(d, 0, 1, phase=1j))
        probes += 1
        state = _extract_state(image)
        if state is None:
            return fail(STATUS_FAILED_PARITY)
        w = state.amplitudes
        h_u = (g[0] + 1j * g[1]) / math.sqrt(2.0)
        h_a = (g[0] - 1j * g[1]) / math.sqrt(2.0)
        ov_u = abs(np.vdot(h_u, w)) ** 2
        ov_a = abs(np.vdot(h_a, w)) ** 2
        if max(ov_u, ov_a) < 1.0 - PROBE_TOL:
            return fail(STATUS_FAILED_PARITY, margin=ov_u - ov_a)
        parity = UNITARY if ov_u >= ov_a else ANTIUNITARY
        margin = abs(ov_u - ov_a)
    # d = 1: the two parities coincide on 1x1 matrices; unitary by convention.

    # (5) Assemble U with columns g_i and verify unitarity.
    u = np.column_stack(g)
    if np.linalg.norm(u.conj().T @ u - np.eye(d)) > UNITARY_TOL:
        return fail(STATUS_FAILED_PHASE, margin=margin)
    symmetry = SymmetryOperator(parity=parity, u=u)

    # (6) Verification on random density operators of mixed rank and trace.
    rng = np.random.default_rng(seed + 1)
    residual_max = 0.0
    for _ in range(verification_trials):
        a = random_density(rng, d, trace=float(rng.uniform(0.0, 2.0)) or 1.0)
        expected = apply_symmetry(symmetry, a)
        got = oracle.evaluate(a)
        probes += 1
        res = float(np.linalg.norm(got.matrix - expected.matrix))
        residual_max = max(residual_max, res)
        if res > certify_tol * (1.0 + np.linalg.norm(a.matrix)):
            return ReconstructionReport(
                symmetry=symmetry,
                residual_max=residual_max,
                probes_used=probes,
                verification_trials=verification_trials,
                parity_margin=margin,
                status=STATUS_FAILED_VERIFICATION,
            )
    return ReconstructionReport(
        symmetry=symmetry,
        residual_max=residual_max,
        probes_used=probes,
        verification_trials=verification_trials,
        parity_margin=margin,
        status=STATUS_CERTIFIED,
    )
