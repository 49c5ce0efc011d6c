"""Compile a molecular model into the Doktorov transformation and the
single-squeezing optical-circuit form.

The frequency-scaled mixing matrix is J = Omega' U Omega^{-1} with
Omega = diag(sqrt(omega)). The Gaussian kernel of the transition
generating function is built from Q = (I + J^t J)^{-1}, P = J Q J^t,
R = Q J^t; its 2M x 2M matrix W is self-inverse. The circuit form comes
from the SVD J = C_L Sigma C_R^t: one rotation C_L after a single layer
of single-mode squeezers ln(Sigma) acting on coherent inputs
C_R^t J^{-1} delta / sqrt(2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import SingularJError
from .model import MolecularModel, delta_from_displacement

CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class DoktorovParameters:
    """Compiled transition parameters for one molecular model."""

    j_matrix: np.ndarray
    delta: np.ndarray
    q_matrix: np.ndarray
    p_matrix: np.ndarray
    r_matrix: np.ndarray
    w_matrix: np.ndarray
    r_vector: np.ndarray
    vacuum_overlap: float

    @property
    def mode_count(self) -> int:
        return len(self.delta)


@dataclass(frozen=True)
class CircuitSpec:
    """Optical-apparatus description: rotation, squeezing, coherent input."""

    rotation_left: np.ndarray
    sigma: np.ndarray
    rotation_right: np.ndarray
    log_squeezing: np.ndarray
    input_coherent: np.ndarray

    @property
    def mode_count(self) -> int:
        return len(self.sigma)


def build_doktorov(model: MolecularModel) -> DoktorovParameters:
    """Compute J, delta, the Gaussian kernel (W, r) and the vacuum overlap."""
    m = model.mode_count
    delta = delta_from_displacement(model)
    omega = np.sqrt(model.omega_initial)
    omega_p = np.sqrt(model.omega_final)
    j = omega_p[:, None] * model.duschinsky_u / omega[None, :]
    _check_conditioning(j)

    eye = np.eye(m)
    q = np.linalg.inv(eye + j.T @ j)
    p = j @ q @ j.T
    r = q @ j.T
    w = np.block([[eye - 2.0 * q, -2.0 * r],
                  [-2.0 * r.T, eye - 2.0 * p]])
    r_vec = np.sqrt(2.0) * np.concatenate([-r @ delta, (eye - p) @ delta])
    overlap = (2.0 ** (m / 2.0)
               * np.sqrt(abs(np.linalg.det(r)))
               * np.exp(-0.5 * delta @ ((eye - p) @ delta)))
    return DoktorovParameters(
        j_matrix=j, delta=delta, q_matrix=q, p_matrix=p, r_matrix=r,
        w_matrix=w, r_vector=r_vec, vacuum_overlap=float(overlap),
    )


def compile_circuit(params: DoktorovParameters) -> CircuitSpec:
    """SVD of J into the two-rotation, one-squeezing circuit form.

    Column signs are fixed so each left singular vector has its
    largest-magnitude entry positive (SVD signs are otherwise arbitrary);
    the flip is applied in pairs so C_L Sigma C_R^t still reconstructs J.
    """
    j = params.j_matrix
    _check_conditioning(j)
    c_left, sigma, c_right_t = np.linalg.svd(j)
    c_right = c_right_t.T
    for k in range(j.shape[0]):
        col = c_left[:, k]
        if col[np.argmax(np.abs(col))] < 0:
            c_left[:, k] = -col
            c_right[:, k] = -c_right[:, k]
    coherent = c_right.T @ np.linalg.solve(j, params.delta) / np.sqrt(2.0)
    return CircuitSpec(
        rotation_left=c_left,
        sigma=sigma,
        rotation_right=c_right,
        log_squeezing=np.log(sigma),
        input_coherent=coherent,
    )


def apparatus_report(spec: CircuitSpec) -> str:
    """Plain-text summary of the per-mode input-state preparation and the
    network rotation."""
    lines = [f"Modified boson-sampling apparatus, {spec.mode_count} modes", ""]
    lines.append("Input state preparation (per mode, after rotation C_R^t):")
    for k in range(spec.mode_count):
        s = spec.log_squeezing[k]
        a = spec.input_coherent[k]
        if abs(s) < 1e-12 and abs(a) < 1e-12:
            desc = "no squeezing, no displacement"
        elif abs(a) < 1e-12:
            desc = f"squeezed vacuum, ln(sigma) = {s:+.4f}"
        else:
            desc = f"squeezed coherent, ln(sigma) = {s:+.4f}, amplitude = {a:+.4f}"
        lines.append(f"  mode {k + 1}: {desc}")
    lines.append("")
    lines.append("Linear network rotation C_L:")
    for row in spec.rotation_left:
        lines.append("  " + "  ".join(f"{x:+.4f}" for x in row))
    lines.append("")
    return "\n".join(lines)


def circuit_to_dict(spec: CircuitSpec) -> dict:
    return {
        "rotation_left": spec.rotation_left.tolist(),
        "sigma": spec.sigma.tolist(),
        "rotation_right": spec.rotation_right.tolist(),
        "log_squeezing": spec.log_squeezing.tolist(),
        "input_coherent": spec.input_coherent.tolist(),
    }


def circuit_to_json(spec: CircuitSpec) -> str:
    return json.dumps(circuit_to_dict(spec), indent=1)


def _check_conditioning(j: np.ndarray) -> None:
    cond = np.linalg.cond(j)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularJError(f"J condition number {cond:.3e} exceeds {CONDITION_LIMIT:g}")
