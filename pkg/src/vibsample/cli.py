"""Command-line front end.

Subcommands: compile (circuit JSON + apparatus report), spectrum (exact
stick/binned profile CSVs), sample (Monte Carlo run CSVs), verify
(oracle cross-check suite).

Exit codes: 0 success, 2 file/parse error, 3 model validation error,
4 captured probability below 0.9 without --allow-truncation, 5 oracle
verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .doktorov import apparatus_report, build_doktorov, circuit_to_dict, compile_circuit
from .errors import ModelError, VibsampleError
from .fcf import (
    FockState,
    GeneratingFunction,
    fc_amplitude,
    fcp_exact,
    fcp_to_csv_rows,
    quadrature_overlap,
    rotation_amplitude,
    vacuum,
)
from .model import MolecularModel, parse_molecule
from .sampler import build_distribution, draw_samples, estimate_fcp, samples_to_csv_rows
from .spectrum import StickSpectrum, bin_sticks, binned_to_csv_rows, sticks_to_csv_rows

EXIT_OK = 0
EXIT_IO = 2
EXIT_VALIDATION = 3
EXIT_TRUNCATION = 4
EXIT_VERIFY = 5


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vibsample",
        description="Franck-Condon profiles via boson-sampling compilation",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_input=True):
        if needs_input:
            p.add_argument("input", help="molecule JSON file")
        p.add_argument("--out", default=".", help="output directory (default: .)")

    p = sub.add_parser("compile", help="compile circuit parameters")
    add_common(p)

    p = sub.add_parser("spectrum", help="exact Franck-Condon profile")
    add_common(p)
    p.add_argument("--bin", type=float, default=1.0, dest="bin_width",
                   help="bin width in cm^-1 (default 1.0)")
    p.add_argument("--cutoff", type=int, default=10,
                   help="total-quanta enumeration cutoff (default 10)")
    p.add_argument("--floor", type=float, default=1e-4,
                   help="drop profile entries below this probability (default 1e-4)")
    p.add_argument("--allow-truncation", action="store_true",
                   help="do not fail when captured probability < 0.9")

    p = sub.add_parser("sample", help="simulate the sampling experiment")
    add_common(p)
    p.add_argument("--bin", type=float, default=200.0, dest="bin_width",
                   help="histogram bin width in cm^-1 (default 200)")
    p.add_argument("--cutoff", type=int, default=10)
    p.add_argument("--samples", type=int, default=300, dest="n_samples",
                   help="number of samples (default 300)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--counts", action="store_true",
                   help="raw-count histogram instead of normalized")
    p.add_argument("--allow-truncation", action="store_true")

    p = sub.add_parser("verify", help="run the oracle cross-check suite")
    p.add_argument("input", nargs="?", default=None,
                   help="optional molecule JSON to include in the checks")
    p.add_argument("--oracle", choices=("quadrature", "permanent", "none"),
                   default="quadrature")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default=".")
    return parser


def write_csv(path: Path, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        csv.writer(fh).writerows(rows)


def load_model(path: str) -> MolecularModel:
    try:
        return parse_molecule(path)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"vibsample: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO)
    except ModelError as exc:
        print(f"vibsample: invalid model {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)


def run_compile(args) -> int:
    model = load_model(args.input)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    params = build_doktorov(model)
    spec = compile_circuit(params)
    doc = circuit_to_dict(spec)
    doc["vacuum_overlap"] = params.vacuum_overlap
    (out / "circuit.json").write_text(json.dumps(doc, indent=1), encoding="utf-8")
    (out / "apparatus.txt").write_text(apparatus_report(spec), encoding="utf-8")
    print(f"wrote {out / 'circuit.json'} and {out / 'apparatus.txt'}")
    return EXIT_OK


def run_spectrum(args) -> int:
    model = load_model(args.input)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    params = build_doktorov(model)
    entries, captured = fcp_exact(params, cutoff=args.cutoff, prob_floor=args.floor)
    print(f"captured probability: {captured:.6f}")
    if captured < 0.9 and not args.allow_truncation:
        print("vibsample: captured probability below 0.9 "
              "(re-run with --allow-truncation or raise --cutoff)", file=sys.stderr)
        return EXIT_TRUNCATION
    sticks = StickSpectrum.from_fcp(entries, model.omega_final)
    write_csv(out / "sticks.csv", fcp_to_csv_rows(entries, model.omega_final))
    write_csv(out / "binned.csv", binned_to_csv_rows(bin_sticks(sticks, args.bin_width)))
    print(f"wrote {out / 'sticks.csv'} and {out / 'binned.csv'}")
    return EXIT_OK


def run_sample(args) -> int:
    model = load_model(args.input)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    params = build_doktorov(model)
    dist = build_distribution(params, cutoff=args.cutoff, epsilon_trunc=0.05)
    print(f"captured probability: {dist.captured_mass:.6f}")
    if dist.captured_mass < 0.9 and not args.allow_truncation:
        print("vibsample: captured probability below 0.9 "
              "(re-run with --allow-truncation or raise --cutoff)", file=sys.stderr)
        return EXIT_TRUNCATION
    run = draw_samples(dist, args.n_samples, args.seed, bin_width=args.bin_width)
    hist = estimate_fcp(run, model.omega_final, args.bin_width, counts=args.counts)
    write_csv(out / "samples.csv", samples_to_csv_rows(run, model.omega_final))
    write_csv(out / "histogram.csv", binned_to_csv_rows(hist))
    print(f"wrote {out / 'samples.csv'} and {out / 'histogram.csv'}")
    return EXIT_OK


def run_verify(args) -> int:
    rng = np.random.default_rng(args.seed)
    checks = []

    if args.oracle == "quadrature":
        worst = 0.0
        for _ in range(10):
            model = _random_model(rng, modes=int(rng.integers(1, 3)))
            gf = GeneratingFunction.from_model(model)
            zero = vacuum(model.mode_count)
            for occ in _shells(model.mode_count, 3):
                state = FockState(occ)
                a = fc_amplitude(gf, zero, state)
                q = quadrature_overlap(model, zero, state)
                worst = max(worst, abs(a - q))
        checks.append(("quadrature oracle (random 1-2 mode models)", worst, 1e-8))

    if args.oracle == "permanent":
        worst = 0.0
        for _ in range(10):
            u = _random_orthogonal(rng, 3)
            # pure-rotation limit: one common frequency across modes
            omega = np.full(3, rng.uniform(500.0, 2000.0))
            model = MolecularModel(omega_initial=omega, omega_final=omega.copy(),
                                   duschinsky_u=u, delta=np.zeros(3))
            gf = GeneratingFunction.from_model(model)
            for occ_n in _shells(3, 2):
                n = FockState(occ_n)
                for occ_m in _shells(3, 2):
                    m = FockState(occ_m)
                    if n.total_quanta != m.total_quanta:
                        continue
                    a = fc_amplitude(gf, n, m)
                    p = rotation_amplitude(u, n, m)
                    worst = max(worst, abs(a - np.real(p)))
        checks.append(("permanent oracle (random 3-mode rotations)", worst, 1e-10))

    if args.input is not None:
        model = load_model(args.input)
        params = build_doktorov(model)
        w = params.w_matrix
        err = float(np.abs(w @ w - np.eye(len(w))).max())
        checks.append(("generating-function matrix self-inverse", err, 1e-10))

    failed = False
    for name, err, tol in checks:
        ok = err <= tol
        failed = failed or not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}: max error {err:.3e} (tol {tol:g})")
    return EXIT_VERIFY if failed else EXIT_OK


def _shells(modes: int, cutoff: int):
    from .fcf import enumerate_shells
    return enumerate_shells(modes, cutoff)


def _random_orthogonal(rng, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def _random_model(rng, modes: int) -> MolecularModel:
    return MolecularModel(
        omega_initial=rng.uniform(500.0, 2000.0, modes),
        omega_final=rng.uniform(500.0, 2000.0, modes),
        duschinsky_u=_random_orthogonal(rng, modes),
        delta=rng.uniform(-1.0, 1.0, modes),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "compile": run_compile,
        "spectrum": run_spectrum,
        "sample": run_sample,
        "verify": run_verify,
    }
    try:
        return handlers[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_IO
    except VibsampleError as exc:
        print(f"vibsample: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
