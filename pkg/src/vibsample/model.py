"""Molecular two-state harmonic models: parsing, validation, normalization.

A model bundles the initial/final normal-mode frequencies (cm^-1), the
mode-mixing rotation matrix U, and the geometry displacement between the
two electronic surfaces, given either as the dimensionless vector delta
or as a mass-weighted displacement d together with an hbar-bearing unit
constant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    DimensionMismatchError,
    InconsistentUnitsError,
    MissingFieldError,
    NonPositiveFrequencyError,
    NotBlockDiagonalError,
    NotOrthogonalError,
)

DEFAULT_TOL_U = 5e-3


@dataclass(frozen=True)
class MolecularModel:
    """Validated two-electronic-state harmonic model.

    Exactly one of ``delta`` (dimensionless) or ``displacement``
    (mass-weighted, with ``hbar_constant``) is set.
    """

    omega_initial: np.ndarray
    omega_final: np.ndarray
    duschinsky_u: np.ndarray
    delta: np.ndarray | None = None
    displacement: np.ndarray | None = None
    hbar_constant: float | None = None
    block_labels: tuple[str, ...] | None = None
    tol_u: float = DEFAULT_TOL_U

    @property
    def mode_count(self) -> int:
        return len(self.omega_initial)

    def __post_init__(self):
        for name in ("omega_initial", "omega_final", "duschinsky_u"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        for name in ("delta", "displacement"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, np.asarray(v, dtype=float))
        self._validate()

    def _validate(self):
        m = self.mode_count
        if self.omega_final.shape != (m,):
            raise DimensionMismatchError(
                f"omega_final has shape {self.omega_final.shape}, expected ({m},)"
            )
        if self.duschinsky_u.shape != (m, m):
            raise DimensionMismatchError(
                f"duschinsky matrix has shape {self.duschinsky_u.shape}, expected ({m}, {m})"
            )
        if np.any(self.omega_initial <= 0) or np.any(self.omega_final <= 0):
            raise NonPositiveFrequencyError("all mode frequencies must be strictly positive")
        if (self.delta is None) == (self.displacement is None):
            raise MissingFieldError(
                "exactly one of delta or displacement must be given"
            )
        vec = self.delta if self.delta is not None else self.displacement
        if vec.shape != (m,):
            raise DimensionMismatchError(
                f"displacement vector has shape {vec.shape}, expected ({m},)"
            )
        dev = orthogonality_defect(self.duschinsky_u)
        if dev > self.tol_u:
            raise NotOrthogonalError(
                f"max |U^t U - I| = {dev:.3e} exceeds tolerance {self.tol_u:g}"
            )
        if self.block_labels is not None and len(self.block_labels) != m:
            raise DimensionMismatchError("block_labels length must equal mode count")


@dataclass(frozen=True)
class SymmetryBlockSet:
    """Per-irreducible-representation sub-models of a block-diagonal model."""

    blocks: tuple[MolecularModel, ...]
    labels: tuple[str, ...]


def orthogonality_defect(u: np.ndarray) -> float:
    """Max-norm deviation of U^t U from the identity."""
    u = np.asarray(u, dtype=float)
    return float(np.abs(u.T @ u - np.eye(u.shape[0])).max())


def reorthogonalize(u: np.ndarray) -> np.ndarray:
    """Nearest orthogonal matrix to ``u`` (polar decomposition via SVD)."""
    left, _, right_t = np.linalg.svd(np.asarray(u, dtype=float))
    return left @ right_t


def parse_molecule(path, tol_u: float = DEFAULT_TOL_U,
                   reorthogonalize_u: bool = False) -> MolecularModel:
    """Read a molecule JSON file and return a validated model.

    The file carries ``modes``, ``omega_initial_cm1``, ``omega_final_cm1``,
    ``duschinsky`` (row-major), exactly one of ``delta`` or
    ``displacement`` (+ ``hbar_constant``), and optional ``block_labels``.
    """
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return model_from_dict(doc, tol_u=tol_u, reorthogonalize_u=reorthogonalize_u)


def model_from_dict(doc: dict, tol_u: float = DEFAULT_TOL_U,
                    reorthogonalize_u: bool = False) -> MolecularModel:
    for key in ("modes", "omega_initial_cm1", "omega_final_cm1", "duschinsky"):
        if key not in doc:
            raise MissingFieldError(f"missing required key {key!r}")
    m = int(doc["modes"])
    has_delta = "delta" in doc
    has_disp = "displacement" in doc
    if has_delta == has_disp:
        raise MissingFieldError("exactly one of 'delta' or 'displacement' must be present")
    if has_disp and "hbar_constant" not in doc:
        raise InconsistentUnitsError("'displacement' requires 'hbar_constant'")

    u = np.asarray(doc["duschinsky"], dtype=float)
    if u.shape != (m, m):
        raise DimensionMismatchError(
            f"duschinsky matrix has shape {u.shape}, expected ({m}, {m})"
        )
    if reorthogonalize_u:
        u = reorthogonalize(u)

    def vec(key):
        v = np.asarray(doc[key], dtype=float)
        if v.shape != (m,):
            raise DimensionMismatchError(f"{key} has length {v.shape}, expected ({m},)")
        return v

    labels = doc.get("block_labels")
    return MolecularModel(
        omega_initial=vec("omega_initial_cm1"),
        omega_final=vec("omega_final_cm1"),
        duschinsky_u=u,
        delta=vec("delta") if has_delta else None,
        displacement=vec("displacement") if has_disp else None,
        hbar_constant=float(doc["hbar_constant"]) if has_disp else None,
        block_labels=tuple(labels) if labels is not None else None,
        tol_u=tol_u,
    )


def model_to_dict(model: MolecularModel) -> dict:
    doc = {
        "modes": model.mode_count,
        "omega_initial_cm1": model.omega_initial.tolist(),
        "omega_final_cm1": model.omega_final.tolist(),
        "duschinsky": model.duschinsky_u.tolist(),
    }
    if model.delta is not None:
        doc["delta"] = model.delta.tolist()
    else:
        doc["displacement"] = model.displacement.tolist()
        doc["hbar_constant"] = model.hbar_constant
    if model.block_labels is not None:
        doc["block_labels"] = list(model.block_labels)
    return doc


def serialize_molecule(model: MolecularModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh, indent=1)


def delta_from_displacement(model: MolecularModel) -> np.ndarray:
    """Dimensionless displacement sqrt(omega'/hbar) * d, per mode.

    Idempotent: a model already carrying delta returns it unchanged.
    """
    if model.delta is not None:
        return model.delta
    if model.hbar_constant is None:
        raise InconsistentUnitsError("mass-weighted displacement requires hbar_constant")
    return np.sqrt(model.omega_final / model.hbar_constant) * model.displacement


def with_delta(model: MolecularModel) -> MolecularModel:
    """Return an equivalent model carrying the dimensionless displacement."""
    if model.delta is not None:
        return model
    return replace(model, delta=delta_from_displacement(model),
                   displacement=None, hbar_constant=None)


def split_blocks(model: MolecularModel, assignment: dict[int, str] | None = None
                 ) -> SymmetryBlockSet:
    """Split a block-diagonal model into per-symmetry-label sub-models.

    ``assignment`` maps mode index to label; when omitted the model's own
    ``block_labels`` are used. Cross-block mixing above the model's
    orthogonality tolerance is an error.
    """
    m = model.mode_count
    if assignment is None:
        if model.block_labels is None:
            raise MissingFieldError("no block labels on model and no assignment given")
        assignment = dict(enumerate(model.block_labels))
    if sorted(assignment) != list(range(m)):
        raise DimensionMismatchError("assignment must cover every mode exactly once")

    labels = []
    for i in range(m):
        if assignment[i] not in labels:
            labels.append(assignment[i])
    groups = {lab: [i for i in range(m) if assignment[i] == lab] for lab in labels}

    u = model.duschinsky_u
    for la in labels:
        for lb in labels:
            if la == lb:
                continue
            off = np.abs(u[np.ix_(groups[la], groups[lb])])
            if off.size and off.max() > model.tol_u:
                raise NotBlockDiagonalError(
                    f"coupling {off.max():.3e} between blocks {la!r} and {lb!r} "
                    f"exceeds tolerance {model.tol_u:g}"
                )

    delta = model.delta
    blocks = []
    for lab in labels:
        idx = groups[lab]
        blocks.append(MolecularModel(
            omega_initial=model.omega_initial[idx],
            omega_final=model.omega_final[idx],
            duschinsky_u=u[np.ix_(idx, idx)],
            delta=delta[idx] if delta is not None else None,
            displacement=model.displacement[idx] if delta is None else None,
            hbar_constant=model.hbar_constant if delta is None else None,
            tol_u=model.tol_u,
        ))
    return SymmetryBlockSet(blocks=tuple(blocks), labels=tuple(labels))
