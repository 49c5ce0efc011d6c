"""Franck-Condon profiles through the boson-sampling compilation:
exact profiles, circuit parameters, and classical sampling simulation."""

from importlib import resources

from .doktorov import (
    CircuitSpec,
    DoktorovParameters,
    apparatus_report,
    build_doktorov,
    compile_circuit,
)
from .fcf import (
    FockState,
    GeneratingFunction,
    estimate_hermite_terms,
    fc_amplitude,
    fcp_exact,
    quadrature_overlap,
    rotation_amplitude,
    ryser_permanent,
    vacuum,
)
from .model import (
    MolecularModel,
    SymmetryBlockSet,
    delta_from_displacement,
    parse_molecule,
    serialize_molecule,
    split_blocks,
)
from .sampler import (
    SampleRun,
    TruncatedDistribution,
    build_distribution,
    draw_samples,
    estimate_fcp,
    required_samples,
)
from .spectrum import (
    BinnedSpectrum,
    Stick,
    StickSpectrum,
    bin_sticks,
    broaden,
    convolve_blocks,
    enumerate_bin_states,
)

__version__ = "0.1.0"


def formic_acid_aprime_path():
    """Path to the bundled formic acid a' fixture model."""
    return resources.files("vibsample.data") / "formic_acid_aprime.json"


def formic_acid_aprime() -> MolecularModel:
    """The bundled seven-mode formic acid a' model."""
    return parse_molecule(formic_acid_aprime_path())
