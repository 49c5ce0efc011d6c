"""Exact Franck-Condon amplitudes and profiles.

Main path: derivatives of the Gaussian generating function
exp(-x^t W x / 2 + r^t x) at x = 0, evaluated by the multivariate
Hermite recursion

    T(k + e_i) = r_i T(k) - sum_j W_ij k_j T(k - e_j),

memoized over the 2M-dimensional multi-index so a whole enumeration
shell shares the work. Two independent cross-checks: the permanent
formula for pure rotations and direct Gauss-Hermite quadrature of the
oscillator-eigenfunction overlap for one and two modes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.hermite import hermgauss, hermval

from .doktorov import DoktorovParameters, build_doktorov
from .errors import (
    DimensionTooLargeError,
    PhotonNumberMismatchError,
    QuantaLimitExceededError,
    SizeLimitExceededError,
)
from .model import MolecularModel, delta_from_displacement

MAX_QUANTA_PER_MODE = 12
MAX_TOTAL_QUANTA = 16
MAX_PERMANENT_SIZE = 20


@dataclass(frozen=True)
class FockState:
    """Occupation-number state over M modes."""

    occupations: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "occupations", tuple(int(x) for x in self.occupations))
        if any(x < 0 for x in self.occupations):
            raise ValueError("occupations must be non-negative")

    @property
    def total_quanta(self) -> int:
        return sum(self.occupations)

    @property
    def mode_count(self) -> int:
        return len(self.occupations)

    def transition_frequency(self, omega_final) -> float:
        """omega_vib = sum_k omega'_k m_k for this occupation pattern."""
        return float(np.dot(self.occupations, omega_final))


def vacuum(modes: int) -> FockState:
    return FockState((0,) * modes)


@dataclass
class GeneratingFunction:
    """Gaussian kernel of the transition generating function.

    ``prefactor`` is the vacuum-vacuum overlap; the derivative table is
    cached across calls so repeated amplitudes over an enumeration shell
    are cheap.
    """

    w_matrix: np.ndarray
    r_vector: np.ndarray
    prefactor: float
    max_quanta_per_mode: int = MAX_QUANTA_PER_MODE
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_doktorov(cls, params: DoktorovParameters,
                      max_quanta_per_mode: int = MAX_QUANTA_PER_MODE
                      ) -> "GeneratingFunction":
        return cls(w_matrix=params.w_matrix, r_vector=params.r_vector,
                   prefactor=params.vacuum_overlap,
                   max_quanta_per_mode=max_quanta_per_mode)

    @classmethod
    def from_model(cls, model: MolecularModel, **kw) -> "GeneratingFunction":
        return cls.from_doktorov(build_doktorov(model), **kw)

    @property
    def mode_count(self) -> int:
        return self.w_matrix.shape[0] // 2

    def derivative(self, index: tuple[int, ...]) -> float:
        """Mixed partial derivative of exp(-x^t W x/2 + r^t x) at 0."""
        cache = self._cache
        w = self.w_matrix
        r = self.r_vector
        dim = len(r)

        def rec(k):
            val = cache.get(k)
            if val is not None:
                return val
            i = next((j for j, x in enumerate(k) if x > 0), None)
            if i is None:
                return 1.0
            km = list(k)
            km[i] -= 1
            km_t = tuple(km)
            val = r[i] * rec(km_t)
            for j in range(dim):
                if km[j] > 0:
                    km[j] -= 1
                    val -= w[i, j] * (km[j] + 1) * rec(tuple(km))
                    km[j] += 1
            cache[k] = val
            return val

        return rec(tuple(index))


def fc_amplitude(gf: GeneratingFunction, n: FockState, m: FockState) -> float:
    """Transition amplitude <m; out | n; in> for the compiled transition."""
    modes = gf.mode_count
    if n.mode_count != modes or m.mode_count != modes:
        raise PhotonNumberMismatchError("state mode count does not match generating function")
    occ = n.occupations + m.occupations
    if max(occ) > gf.max_quanta_per_mode:
        raise QuantaLimitExceededError(
            f"occupation exceeds max_quanta_per_mode = {gf.max_quanta_per_mode}"
        )
    norm = _log_factorial_product(occ)
    return gf.prefactor * gf.derivative(occ) * math.exp(-0.5 * norm)


def ryser_permanent(a: np.ndarray):
    """Permanent of a square matrix by Ryser inclusion-exclusion with
    Gray-code updates, O(2^n * n)."""
    a = np.asarray(a)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError("matrix must be square")
    if n > MAX_PERMANENT_SIZE:
        raise SizeLimitExceededError(f"permanent size {n} exceeds {MAX_PERMANENT_SIZE}")
    if n == 0:
        return 1.0
    row_sums = np.zeros(n, dtype=a.dtype)
    total = 0.0 if not np.iscomplexobj(a) else 0.0j
    sign = -1.0 if n % 2 else 1.0
    gray = 0
    for k in range(1, 1 << n):
        new_gray = k ^ (k >> 1)
        bit = new_gray ^ gray
        j = bit.bit_length() - 1
        if new_gray & bit:
            row_sums += a[:, j]
        else:
            row_sums -= a[:, j]
        gray = new_gray
        parity = -1.0 if (bin(gray).count("1") % 2) else 1.0
        total += parity * np.prod(row_sums)
    return sign * total


def interference_submatrix(u: np.ndarray, n: FockState, m: FockState) -> np.ndarray:
    """N x N submatrix of ``u``: column k repeated n_k times, then row l of
    the result copied m_l times."""
    cols = [k for k, nk in enumerate(n.occupations) for _ in range(nk)]
    rows = [l for l, ml in enumerate(m.occupations) for _ in range(ml)]
    return np.asarray(u)[np.ix_(rows, cols)]


def rotation_amplitude(u: np.ndarray, n: FockState, m: FockState):
    """Fock amplitude through a pure rotation, via the permanent formula."""
    if n.total_quanta != m.total_quanta:
        raise PhotonNumberMismatchError(
            f"photon numbers differ: {n.total_quanta} vs {m.total_quanta}"
        )
    if n.total_quanta > MAX_PERMANENT_SIZE:
        raise SizeLimitExceededError(f"total photon number {n.total_quanta} exceeds 20")
    sub = interference_submatrix(u, n, m)
    norm = _log_factorial_product(n.occupations + m.occupations)
    return np.conj(ryser_permanent(sub)) * math.exp(-0.5 * norm)


def quadrature_overlap(model: MolecularModel, n: FockState, m: FockState,
                       points: int = 80) -> float:
    """Direct Gauss-Hermite integration of the overlap of the two
    oscillator eigenfunctions under q' = U q + d. Independent of the
    generating-function path; one or two modes only."""
    modes = model.mode_count
    if modes > 2:
        raise DimensionTooLargeError("quadrature oracle supports at most 2 modes")
    omega = model.omega_initial
    omega_p = model.omega_final
    u = model.duschinsky_u
    d = delta_from_displacement(model) / np.sqrt(omega_p)

    x, wt = hermgauss(points)
    if modes == 1:
        q = x / np.sqrt(omega[0])
        vals = (_ho_eigenfunction(m.occupations[0], omega_p[0], u[0, 0] * q + d[0])
                * _ho_eigenfunction(n.occupations[0], omega[0], q)
                * np.exp(x ** 2))
        return float(np.sum(wt * vals) / np.sqrt(omega[0]))

    q1, q2 = np.meshgrid(x / np.sqrt(omega[0]), x / np.sqrt(omega[1]), indexing="ij")
    x1, x2 = np.meshgrid(x, x, indexing="ij")
    qp1 = u[0, 0] * q1 + u[0, 1] * q2 + d[0]
    qp2 = u[1, 0] * q1 + u[1, 1] * q2 + d[1]
    vals = (_ho_eigenfunction(m.occupations[0], omega_p[0], qp1)
            * _ho_eigenfunction(m.occupations[1], omega_p[1], qp2)
            * _ho_eigenfunction(n.occupations[0], omega[0], q1)
            * _ho_eigenfunction(n.occupations[1], omega[1], q2)
            * np.exp(x1 ** 2 + x2 ** 2))
    return float(np.sum(np.outer(wt, wt) * vals) / np.sqrt(omega[0] * omega[1]))


def enumerate_shells(modes: int, cutoff: int):
    """Yield all occupation tuples with total quanta <= cutoff, shell by
    shell, lexicographically within each shell."""
    def shell(total, modes_left):
        if modes_left == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in shell(total - first, modes_left - 1):
                yield (first,) + rest
    for total in range(cutoff + 1):
        yield from shell(total, modes)


def fcp_exact(params: DoktorovParameters, cutoff: int = 10,
              prob_floor: float = 0.0,
              max_quanta_per_mode: int = MAX_QUANTA_PER_MODE):
    """Exact 0 K Franck-Condon profile from the vacuum input state.

    Enumerates final states with total quanta <= cutoff and returns
    ``(entries, captured)`` where entries are (FockState, fcf) pairs with
    fcf >= prob_floor, sorted lexicographically by occupation within
    shells, and ``captured`` is the total probability over the whole
    enumeration (before the floor cut).
    """
    if cutoff > MAX_TOTAL_QUANTA:
        raise QuantaLimitExceededError(
            f"cutoff {cutoff} exceeds full-enumeration limit {MAX_TOTAL_QUANTA}"
        )
    gf = GeneratingFunction.from_doktorov(
        params, max_quanta_per_mode=max(max_quanta_per_mode, cutoff))
    modes = params.mode_count
    zero = vacuum(modes)
    entries = []
    captured = 0.0
    for occ in enumerate_shells(modes, cutoff):
        state = FockState(occ)
        amp = fc_amplitude(gf, zero, state)
        fcf = amp * amp
        captured += fcf
        if fcf >= prob_floor:
            entries.append((state, fcf))
    return entries, captured


def estimate_hermite_terms(n: FockState, m: FockState) -> tuple[int, int]:
    """Term counts for the moment-recursion evaluation versus brute-force
    Wick pairing: (1 + [S/2]) prod (n_k+1)(m_k+1) against (S-1)!!,
    S = sum(n_k + m_k), [x] rounded to nearest."""
    total = n.total_quanta + m.total_quanta
    kan = 1 + int(math.floor(total / 2.0 + 0.5))
    for nk in n.occupations:
        kan *= nk + 1
    for mk in m.occupations:
        kan *= mk + 1
    wick = _double_factorial(total - 1)
    return kan, wick


def _double_factorial(k: int) -> int:
    if k <= 0:
        return 1
    out = 1
    while k > 0:
        out *= k
        k -= 2
    return out


def _log_factorial_product(occ) -> float:
    return float(sum(math.lgamma(x + 1) for x in occ))


def _ho_eigenfunction(n: int, omega: float, q):
    """Harmonic-oscillator eigenfunction (hbar = mass = 1) at mass-weighted
    coordinate q."""
    coeffs = np.zeros(n + 1)
    coeffs[n] = 1.0
    norm = (omega / np.pi) ** 0.25 * math.exp(
        -0.5 * (n * math.log(2.0) + math.lgamma(n + 1)))
    return norm * hermval(np.sqrt(omega) * q, coeffs) * np.exp(-0.5 * omega * q * q)


def fcp_to_csv_rows(entries, omega_final):
    """Rows for the CSV export: occupations, omega_vib_cm1, fcf."""
    rows = [("occupations", "omega_vib_cm1", "fcf")]
    for state, fcf in entries:
        occ = " ".join(str(x) for x in state.occupations)
        rows.append((occ, repr(state.transition_frequency(omega_final)), repr(float(fcf))))
    return rows
