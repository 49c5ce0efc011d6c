"""Classical simulation of the modified boson-sampling experiment.

The exact output distribution is truncated shell by shell until the
captured probability mass reaches its target, then sampled by inverse
CDF with a seeded PCG64 generator (numpy ``default_rng``), so runs are
bit-reproducible given (seed, n, distribution) and independent of any
thread count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .doktorov import DoktorovParameters
from .errors import EmptyDistributionError
from .fcf import FockState, GeneratingFunction, enumerate_shells, fc_amplitude, vacuum
from .spectrum import BinnedSpectrum


@dataclass(frozen=True)
class TruncatedDistribution:
    """Truncated exact output distribution over Fock states.

    ``mass_target_met`` is False when the shell cutoff was reached before
    the requested probability mass was captured (truncation warning).
    """

    states: tuple[FockState, ...]
    probabilities: np.ndarray
    captured_mass: float
    cumulative: np.ndarray
    mass_target_met: bool = True

    def binned_probabilities(self, omega_final, bin_width: float,
                             normalized: bool = True) -> BinnedSpectrum:
        """Exact binned transition-frequency distribution of this
        (renormalized when ``normalized``) truncated distribution."""
        freqs = np.array([s.transition_frequency(omega_final) for s in self.states])
        probs = self.probabilities / self.captured_mass if normalized else self.probabilities
        nbins = int(freqs.max() // bin_width) + 1 if len(freqs) else 1
        values = np.zeros(nbins)
        np.add.at(values, (freqs // bin_width).astype(int), probs)
        return BinnedSpectrum(bin_width=bin_width, origin=0.0, values=values)


@dataclass(frozen=True)
class SampleRun:
    """One reproducible batch of Fock-state samples."""

    seed: int
    n_samples: int
    samples: tuple[FockState, ...]
    bin_width: float = 200.0


def build_distribution(params: DoktorovParameters, cutoff: int = 10,
                       epsilon_trunc: float = 0.05) -> TruncatedDistribution:
    """Enumerate output shells until 1 - epsilon_trunc of the probability
    is captured or the shell cutoff is reached."""
    if not 0.0 < epsilon_trunc < 0.5:
        raise ValueError("epsilon_trunc must be in (0, 0.5)")
    gf = GeneratingFunction.from_doktorov(params, max_quanta_per_mode=max(12, cutoff))
    modes = params.mode_count
    zero = vacuum(modes)
    target = 1.0 - epsilon_trunc

    states: list[FockState] = []
    probs: list[float] = []
    captured = 0.0
    shell_iter = enumerate_shells(modes, cutoff)
    current_shell = -1
    for occ in shell_iter:
        total = sum(occ)
        if total != current_shell:
            if captured >= target:
                break
            current_shell = total
        state = FockState(occ)
        amp = fc_amplitude(gf, zero, state)
        p = amp * amp
        states.append(state)
        probs.append(p)
        captured += p
    prob_arr = np.array(probs)
    return TruncatedDistribution(
        states=tuple(states),
        probabilities=prob_arr,
        captured_mass=float(prob_arr.sum()),
        cumulative=np.cumsum(prob_arr),
        mass_target_met=captured >= target,
    )


def draw_samples(dist: TruncatedDistribution, n: int, seed: int,
                 bin_width: float = 200.0) -> SampleRun:
    """Inverse-CDF sampling from the renormalized truncated distribution."""
    if len(dist.states) == 0:
        raise EmptyDistributionError("distribution has no states")
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    u = rng.random(n) * dist.captured_mass
    idx = np.searchsorted(dist.cumulative, u, side="right")
    idx = np.minimum(idx, len(dist.states) - 1)
    return SampleRun(seed=seed, n_samples=n,
                     samples=tuple(dist.states[i] for i in idx),
                     bin_width=bin_width)


def estimate_fcp(run: SampleRun, omega_final, bin_width: float | None = None,
                 counts: bool = False) -> BinnedSpectrum:
    """Histogram the sampled transition frequencies.

    Normalized mode gives each sample weight 1/n_samples; counts mode
    reports raw bin counts (the figure-style presentation).
    """
    if bin_width is None:
        bin_width = run.bin_width
    if bin_width <= 0:
        raise ValueError("bin_width must be positive")
    freqs = np.array([s.transition_frequency(omega_final) for s in run.samples])
    nbins = int(freqs.max() // bin_width) + 1 if len(freqs) else 1
    values = np.zeros(nbins)
    weight = 1.0 if counts else 1.0 / run.n_samples
    np.add.at(values, (freqs // bin_width).astype(int), weight)
    return BinnedSpectrum(bin_width=float(bin_width), origin=0.0, values=values)


def required_samples(epsilon_fcp: float) -> int:
    """Samples needed for target precision under the unit variance bound
    of an indicator-valued estimator: ceil(1 / epsilon^2)."""
    if epsilon_fcp <= 0:
        raise ValueError("epsilon_fcp must be positive")
    return int(np.ceil(1.0 / epsilon_fcp ** 2))


def samples_to_csv_rows(run: SampleRun, omega_final):
    rows = [("sample_index", "occupations", "omega_vib_cm1")]
    for i, state in enumerate(run.samples):
        occ = " ".join(str(x) for x in state.occupations)
        rows.append((str(i), occ, repr(state.transition_frequency(omega_final))))
    return rows
