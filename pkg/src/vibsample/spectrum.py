"""Stick and binned Franck-Condon profiles: binning, per-bin state
enumeration, symmetry-block convolution, and line broadening."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ExplosionGuardError
from .fcf import FockState

ENUMERATION_LIMIT = 10 ** 7
MERGE_TOL_CM1 = 1e-6


@dataclass(frozen=True)
class Stick:
    omega_vib: float
    intensity: float
    state: FockState | None = None


@dataclass(frozen=True)
class StickSpectrum:
    sticks: tuple[Stick, ...]

    def __post_init__(self):
        for s in self.sticks:
            if s.intensity < 0 or s.omega_vib < 0:
                raise ValueError("sticks require non-negative frequency and intensity")

    @property
    def total_intensity(self) -> float:
        return float(sum(s.intensity for s in self.sticks))

    @classmethod
    def from_fcp(cls, entries, omega_final) -> "StickSpectrum":
        """Build from (FockState, fcf) pairs as produced by the exact
        profile enumeration."""
        return cls(tuple(
            Stick(state.transition_frequency(omega_final), fcf, state)
            for state, fcf in entries))


@dataclass(frozen=True)
class BinnedSpectrum:
    """Uniform half-open bins [origin + k*D, origin + (k+1)*D)."""

    bin_width: float
    origin: float
    values: np.ndarray

    def __post_init__(self):
        if self.bin_width <= 0:
            raise ValueError("bin_width must be positive")
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))

    @property
    def bin_lefts(self) -> np.ndarray:
        return self.origin + self.bin_width * np.arange(len(self.values))


def bin_sticks(sticks: StickSpectrum, bin_width: float) -> BinnedSpectrum:
    """Accumulate sticks into half-open bins with origin 0; intensity is
    conserved exactly."""
    if bin_width <= 0:
        raise ValueError("bin_width must be positive")
    if not sticks.sticks:
        return BinnedSpectrum(bin_width=bin_width, origin=0.0, values=np.zeros(1))
    idx = [int(s.omega_vib // bin_width) for s in sticks.sticks]
    values = np.zeros(max(idx) + 1)
    for k, s in zip(idx, sticks.sticks):
        values[k] += s.intensity
    return BinnedSpectrum(bin_width=float(bin_width), origin=0.0, values=values)


def enumerate_bin_states(omega_final, window: tuple[float, float],
                         max_quanta: int,
                         limit: int = ENUMERATION_LIMIT) -> list[FockState]:
    """All occupation vectors whose transition frequency falls in
    [lo, hi) with at most ``max_quanta`` total quanta.

    Depth-first bounded-knapsack enumeration over modes sorted by
    descending frequency, pruning branches that can no longer reach the
    window. Results are returned in the original mode order.
    """
    lo, hi = window
    if lo < 0 or hi <= lo:
        raise ValueError("window must satisfy 0 <= lo < hi")
    omega_final = np.asarray(omega_final, dtype=float)
    m = len(omega_final)
    order = np.argsort(-omega_final)
    w_sorted = omega_final[order]

    out: list[FockState] = []
    occ = [0] * m

    def dfs(pos: int, remaining: int, acc: float):
        if pos == m:
            if lo <= acc < hi:
                if len(out) >= limit:
                    raise ExplosionGuardError(
                        f"enumeration exceeds limit {limit}")
                full = [0] * m
                for p, mode in enumerate(order):
                    full[mode] = occ[p]
                out.append(FockState(tuple(full)))
            return
        w = w_sorted[pos]
        # even filling all remaining slots with the largest remaining
        # frequency cannot reach lo
        if acc + remaining * w < lo:
            return
        max_here = remaining if w == 0 else min(remaining, int((hi - acc) / w) + 1)
        for count in range(max_here + 1):
            value = acc + count * w
            if value >= hi:
                break
            occ[pos] = count
            dfs(pos + 1, remaining - count, value)
        occ[pos] = 0

    dfs(0, max_quanta, 0.0)
    return out


def convolve_blocks(a: StickSpectrum, b: StickSpectrum,
                    prob_floor: float = 0.0) -> StickSpectrum:
    """Product distribution of two block profiles: sticks at omega_a +
    omega_b with intensity I_a * I_b, merged within 1e-6 cm^-1 and pruned
    below ``prob_floor``."""
    merged: dict[float, float] = {}
    keys: list[float] = []
    for sa in a.sticks:
        for sb in b.sticks:
            w = sa.omega_vib + sb.omega_vib
            i = sa.intensity * sb.intensity
            key = None
            for k in keys:
                if abs(k - w) <= MERGE_TOL_CM1:
                    key = k
                    break
            if key is None:
                keys.append(w)
                merged[w] = i
            else:
                merged[key] += i
    sticks = tuple(Stick(w, i) for w, i in sorted(merged.items())
                   if i >= prob_floor)
    return StickSpectrum(sticks)


def broaden(sticks: StickSpectrum, profile: str, hwhm: float,
            grid: BinnedSpectrum) -> BinnedSpectrum:
    """Replace each stick with a Lorentzian or Gaussian line shape sampled
    on the grid points origin + k * bin_width."""
    if hwhm <= 0:
        raise ValueError("hwhm must be positive")
    if profile not in ("lorentzian", "gaussian"):
        raise ValueError(f"unknown profile {profile!r}")
    points = grid.bin_lefts
    values = np.zeros_like(points)
    for s in sticks.sticks:
        x = points - s.omega_vib
        if profile == "lorentzian":
            line = (hwhm / math.pi) / (x ** 2 + hwhm ** 2)
        else:
            sigma = hwhm / math.sqrt(2.0 * math.log(2.0))
            line = np.exp(-x ** 2 / (2.0 * sigma ** 2)) / (sigma * math.sqrt(2.0 * math.pi))
        values += s.intensity * line
    return BinnedSpectrum(bin_width=grid.bin_width, origin=grid.origin, values=values)


def sticks_to_csv_rows(sticks: StickSpectrum):
    rows = [("omega_cm1", "intensity")]
    rows += [(repr(s.omega_vib), repr(s.intensity)) for s in sticks.sticks]
    return rows


def binned_to_csv_rows(binned: BinnedSpectrum):
    rows = [("bin_left_cm1", "value")]
    rows += [(repr(float(left)), repr(float(v)))
             for left, v in zip(binned.bin_lefts, binned.values)]
    return rows
