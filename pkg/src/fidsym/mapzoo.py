"""A zoo of candidate maps on density operators and an empirical classifier.

Half the zoo (identity, unitary/antiunitary conjugation, transpose) preserves
fidelity and must reconstruct to a certified symmetry; the other half
(depolarizing, mixing, dephasing, spectral scrambling) must be rejected with
a concrete witness pair. verify_theorem runs the whole dichotomy.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .fidelity import fidelity
from .matcore import DensityOperator, eig_hermitian, validate_density
from .sampling import haar_unitary, orthogonal_pure_pair, random_density, random_pure_state
from .wigner import (
    ANTIUNITARY,
    UNITARY,
    DensityMapOracle,
    ReconstructionReport,
    SymmetryOperator,
    reconstruct,
    symmetry_oracle,
)

CLASSIFY_TOL = 1e-6

PRESERVING_KINDS = ("identity", "unitary", "antiunitary", "transpose")
NONPRESERVING_KINDS = ("depolarizing", "mix", "dephase", "spectral_scramble")
ALL_KINDS = PRESERVING_KINDS + NONPRESERVING_KINDS


class BadSpec(ValueError):
    """Malformed or out-of-range map specification."""


class AssertionFailure(AssertionError):
    """The theorem harness found a kind on the wrong side of the dichotomy."""


@dataclass(frozen=True)
class MapSpec:
    kind: str
    dim: int
    params: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class ClassificationReport:
    preserving: bool
    worst_violation: float
    witness_pair: Optional[tuple[DensityOperator, DensityOperator]]
    trials: int
    seed: int
    reconstruction: Optional[ReconstructionReport]


def _unitary_from_params(spec: MapSpec, seed: int) -> np.ndarray:
    params = spec.params
    if "re" in params:
        u = np.asarray(params["re"], dtype=float) + 1j * np.asarray(
            params.get("im", np.zeros((spec.dim, spec.dim))), dtype=float
        )
    else:
        rng = np.random.default_rng(int(params.get("seed", seed)))
        u = haar_unitary(rng, spec.dim)
    if u.shape != (spec.dim, spec.dim):
        raise BadSpec(f"unitary shape {u.shape} does not match dim {spec.dim}")
    if np.linalg.norm(u.conj().T @ u - np.eye(spec.dim)) > 1e-9:
        raise BadSpec("matrix is not unitary")
    return u


def make_map(spec: MapSpec, seed: int = 0) -> DensityMapOracle:
    """Build a deterministic oracle from a map specification."""
    d = spec.dim
    if d < 1:
        raise BadSpec(f"dim must be positive, got {d}")
    kind = spec.kind

    if kind == "identity":
        return DensityMapOracle(dim=d, evaluate=lambda a: a)
    if kind in (UNITARY, ANTIUNITARY):
        u = _unitary_from_params(spec, seed)
        return symmetry_oracle(SymmetryOperator(parity=kind, u=u))
    if kind == "transpose":
        return DensityMapOracle(
            dim=d,
            evaluate=lambda a: DensityOperator.from_psd(a.matrix.T),
        )
    if kind == "depolarizing":
        p = float(spec.params.get("p", 0.0))
        if not 0.0 <= p <= 1.0:
            raise BadSpec(f"depolarizing p = {p} out of [0, 1]")
        eye = np.eye(d)

        def depolarize(a: DensityOperator) -> DensityOperator:
            return DensityOperator.from_psd(
                (1.0 - p) * a.matrix + p * a.trace * eye / d
            )

        return DensityMapOracle(dim=d, evaluate=depolarize)
    if kind == "mix":
        p = float(spec.params.get("p", 0.5))
        if not 0.0 <= p <= 1.0:
            raise BadSpec(f"mix p = {p} out of [0, 1]")
        if "sigma_re" in spec.params:
            sigma = validate_density(
                np.asarray(spec.params["sigma_re"], dtype=float)
                + 1j * np.asarray(spec.params.get("sigma_im", np.zeros((d, d))), dtype=float),
                require_unit_trace=True,
            )
        else:
            rng = np.random.default_rng(int(spec.params.get("seed", seed)))
            sigma = random_density(rng, d, trace=1.0)

        def mix(a: DensityOperator) -> DensityOperator:
            return DensityOperator.from_psd(
                (1.0 - p) * a.matrix + p * a.trace * sigma.matrix
            )

        return DensityMapOracle(dim=d, evaluate=mix)
    if kind == "dephase":
        return DensityMapOracle(
            dim=d,
            evaluate=lambda a: DensityOperator.from_psd(np.diag(np.diag(a.matrix))),
        )
    if kind == "spectral_scramble":
        def scramble(a: DensityOperator) -> DensityOperator:
            w = np.clip(eig_hermitian(a.matrix).eigenvalues, 0.0, None)
            return DensityOperator.from_psd(np.diag(w.astype(complex)))

        return DensityMapOracle(dim=d, evaluate=scramble)
    raise BadSpec(f"unknown map kind {kind!r}")


def _trial_pair(rng: np.random.Generator, dim: int) -> tuple[DensityOperator, DensityOperator]:
    """40% random mixed pairs, 40% random pure pairs, 20% orthogonal pure
    pairs; the orthogonal pairs are the sharpest discriminators (F = 0 must
    map to F = 0)."""
    r = rng.uniform()
    if r < 0.4:
        a = random_density(rng, dim, trace=float(rng.uniform(0.0, 2.0)) or 1.0)
        b = random_density(rng, dim, trace=float(rng.uniform(0.0, 2.0)) or 1.0)
        return a, b
    if r < 0.8:
        return (
            random_pure_state(rng, dim).projection(),
            random_pure_state(rng, dim).projection(),
        )
    p, q = orthogonal_pure_pair(rng, dim)
    return p.projection(), q.projection()


def classify_map(oracle: DensityMapOracle, trials: int = 200, seed: int = 0) -> ClassificationReport:
    """Test fidelity preservation on random pairs; if preserving, run the
    reconstructor and attach its report."""
    if trials < 1:
        raise BadSpec(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    worst = 0.0
    witness: Optional[tuple[DensityOperator, DensityOperator]] = None
    for _ in range(trials):
        a, b = _trial_pair(rng, oracle.dim)
        violation = abs(fidelity(oracle.evaluate(a), oracle.evaluate(b)) - fidelity(a, b))
        if violation > worst:
            worst = violation
            witness = (a, b)
    preserving = worst <= CLASSIFY_TOL
    report = reconstruct(oracle, seed=seed) if preserving else None
    return ClassificationReport(
        preserving=preserving,
        worst_violation=worst,
        witness_pair=None if preserving else witness,
        trials=trials,
        seed=seed,
        reconstruction=report,
    )


def zoo_specs(dim: int) -> list[MapSpec]:
    return [
        MapSpec(kind="identity", dim=dim),
        MapSpec(kind="unitary", dim=dim),
        MapSpec(kind="antiunitary", dim=dim),
        MapSpec(kind="transpose", dim=dim),
        MapSpec(kind="depolarizing", dim=dim, params={"p": 0.5}),
        MapSpec(kind="mix", dim=dim, params={"p": 0.5}),
        MapSpec(kind="dephase", dim=dim),
        MapSpec(kind="spectral_scramble", dim=dim),
    ]


def verify_theorem(dim: int, trials: int = 200, seed: int = 0) -> dict[str, Any]:
    """Run the dichotomy over the whole zoo: every preserving kind must
    certify to a symmetry, every non-preserving kind must be rejected with a
    witness pair."""
    if dim < 2:
        raise BadSpec("theorem check needs dim >= 2 (parity is undetectable at dim 1)")
    results = []
    for spec in zoo_specs(dim):
        oracle = make_map(spec, seed=seed)
        report = classify_map(oracle, trials=trials, seed=seed)
        entry: dict[str, Any] = {
            "kind": spec.kind,
            "preserving": report.preserving,
            "worst_violation": report.worst_violation,
        }
        if spec.kind in PRESERVING_KINDS:
            if not (report.preserving and report.reconstruction is not None
                    and report.reconstruction.certified):
                raise AssertionFailure(
                    f"kind {spec.kind!r} (dim {dim}, seed {seed}) should certify but did not"
                )
            entry["parity"] = report.reconstruction.symmetry.parity
            entry["residual_max"] = report.reconstruction.residual_max
        else:
            if report.preserving:
                raise AssertionFailure(
                    f"kind {spec.kind!r} (dim {dim}, seed {seed}) should be rejected but was not"
                )
        results.append(entry)
    return {"dim": dim, "trials": trials, "seed": seed, "results": results}
