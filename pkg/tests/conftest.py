import numpy as np
import pytest

import vibsample as vs


@pytest.fixture(scope="session")
def formic_acid():
    return vs.formic_acid_aprime()


@pytest.fixture(scope="session")
def formic_params(formic_acid):
    return vs.build_doktorov(formic_acid)


def random_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def random_model(rng, modes, delta_scale=1.0, freq_range=(500.0, 2000.0)):
    return vs.MolecularModel(
        omega_initial=rng.uniform(*freq_range, modes),
        omega_final=rng.uniform(*freq_range, modes),
        duschinsky_u=random_orthogonal(rng, modes),
        delta=rng.uniform(-delta_scale, delta_scale, modes),
    )


def identity_model(modes=2, omega=None):
    if omega is None:
        omega = np.linspace(100.0, 100.0 * modes, modes)
    omega = np.asarray(omega, dtype=float)
    return vs.MolecularModel(
        omega_initial=omega,
        omega_final=omega.copy(),
        duschinsky_u=np.eye(len(omega)),
        delta=np.zeros(len(omega)),
    )


# Table A.1 of the formic acid a' block: occupation -> Franck-Condon factor
FORMIC_TABLE = {
    (0, 0, 0, 0, 0, 0, 0): 0.2152,
    (0, 0, 1, 0, 0, 0, 0): 0.2717,
    (0, 0, 2, 0, 0, 0, 0): 0.1649,
    (0, 0, 3, 0, 0, 0, 0): 0.0640,
    (0, 0, 4, 0, 0, 0, 0): 0.0178,
    (0, 0, 1, 1, 0, 0, 0): 0.0211,
    (0, 0, 1, 0, 1, 0, 0): 0.0281,
    (0, 0, 1, 0, 0, 1, 0): 0.0145,
    (0, 0, 2, 0, 1, 0, 0): 0.0237,
    (0, 0, 3, 0, 1, 0, 0): 0.0123,
    (0, 0, 0, 1, 0, 0, 0): 0.0242,
    (0, 0, 0, 0, 1, 0, 0): 0.0153,
    (0, 0, 0, 0, 0, 1, 0): 0.0112,
}

FORMIC_LOG_SQUEEZING = (0.10, 0.07, 0.02, -0.06, -0.08, -0.11, -0.19)
FORMIC_SIGMA = (1.1020, 1.0728, 1.0214, 0.9420, 0.9276, 0.8941, 0.8296)

# Published singular-vector matrices for the formic acid a' block
# (column signs are convention-dependent; compare modulo paired flips).
FORMIC_CL = np.array([
    [-0.0786, 0.6624, -0.1910, 0.0194, -0.7022, 0.1170, 0.1069],
    [0.1918, -0.1188, -0.8128, -0.5265, 0.0841, 0.0637, 0.0039],
    [0.6084, 0.0851, -0.1492, 0.3436, -0.0404, -0.6888, 0.0792],
    [0.6373, -0.0386, 0.4649, -0.4920, -0.2417, 0.2050, -0.1839],
    [0.3455, 0.2308, -0.1980, 0.4883, 0.2781, 0.5577, -0.4017],
    [-0.0348, -0.6595, -0.1588, 0.2914, -0.6007, 0.0687, -0.2968],
    [-0.2454, 0.2240, 0.0069, -0.1973, 0.0396, -0.3874, -0.8361],
])

FORMIC_CR = np.array([
    [-0.0691, 0.5634, -0.1635, 0.0188, -0.7859, 0.1322, 0.1248],
    [0.1446, -0.0943, -0.7600, -0.6104, 0.0841, 0.1129, 0.0120],
    [0.1759, 0.0478, -0.2556, 0.1972, -0.0150, -0.8645, 0.3390],
    [0.0237, 0.0326, -0.5446, 0.7256, 0.1295, 0.1946, -0.3474],
    [-0.6311, 0.3592, -0.1218, 0.0398, 0.4392, 0.1241, 0.4979],
    [0.6132, 0.6591, 0.1373, -0.0571, 0.3982, 0.0877, -0.0333],
    [0.4104, -0.3268, -0.0111, 0.2383, -0.0825, 0.4017, 0.7069],
])
