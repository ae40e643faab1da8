"""Command-line scenario runner.

Each subcommand wires one capability into a reproducible experiment that
emits CSV artifacts plus a .meta.json sidecar.  Identical parameters and
seed give byte-identical artifacts (the sidecar timestamp is the single
exception).  Exit codes: 0 success, 1 internal invariant violation,
2 configuration/validation error.

Parameters may also come from an INI-style config file (one section per
scenario, key = value); explicit flags override file values.  The default
output directory is the FOCKFIELD_OUT_DIR environment variable, falling
back to the working directory.
"""

from __future__ import annotations

import argparse
import configparser
import os
import sys

import numpy as np

from . import __version__, artifacts, faults
from .dynamics import TrajectoryRecord, ehrenfest_residuals, evolve, gaussian_packet, trajectory
from .field import (
    Dispersion,
    LatticeSpec,
    WaveAmplitude,
    commutator_sweep,
    default_spacelike_grid,
    number_density,
    prepare_one_particle,
    site_mode_space,
)
from .fock import (
    FockVector,
    ModeSpace,
    Statistics,
    annihilate,
    basis_state,
    create,
    inner,
    vacuum,
)
from .qinfo import (
    GENERATOR_NAME,
    MeasurementModel,
    born_distribution,
    decohere,
    decoherence_time,
    entangled_pair,
    entanglement_entropy,
    pointer_outcome_counts,
    premeasure,
    reduced_density,
    sample_outcomes,
    schmidt,
)
from .wick import LadderKind, evaluate, normal_order, parse as parse_expr, vacuum_expectation

OUT_DIR_ENV = "FOCKFIELD_OUT_DIR"


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; maps to exit code 1."""


def _parse_float_list(text: str):
    return [float(tok) for tok in text.replace(",", " ").split()]


def _parse_times(text: str):
    """'start:stop:step' inclusive range, or a comma/space separated list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"times must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("times step must be positive")
        n = int(round((stop - start) / step))
        return [start + k * step for k in range(n + 1) if start + k * step <= stop + 1e-12]
    return _parse_float_list(text)


def _merged_params(args: argparse.Namespace, scenario: str, schema: dict) -> dict:
    """Resolve parameters: explicit flag > config file entry > default."""
    file_values = {}
    if args.config:
        if not os.path.exists(args.config):
            raise ValueError(f"config file not found: {args.config}")
        ini = configparser.ConfigParser()
        ini.read(args.config)
        if ini.has_section(scenario):
            file_values = dict(ini.items(scenario))
    params = {}
    for name, (caster, default) in schema.items():
        flag_value = getattr(args, name, None)
        key = name.lower()  # configparser lowercases option names
        if flag_value is not None:
            params[name] = flag_value
        elif key in file_values:
            params[name] = caster(file_values[key])
        else:
            params[name] = default
    return params


def _out_path(args, filename: str) -> str:
    base = args.out_dir or os.environ.get(OUT_DIR_ENV) or "."
    return os.path.join(base, filename)


# ----------------------------------------------------------------------
# scenarios


def run_fock_check(args) -> int:
    schema = {
        "modes": (int, 4),
        "nmax": (int, 6),
        "pairs": (int, 200),
        "seed": (int, 0),
    }
    p = _merged_params(args, "fock-check", schema)
    rng = np.random.default_rng(p["seed"])
    rows = []
    worst = 0.0
    for stats in (Statistics.BOSE, Statistics.FERMI):
        space = ModeSpace(p["modes"], stats, nmax=p["nmax"])
        residuals = _ladder_relation_residuals(space, rng, p["pairs"])
        for relation, value in residuals.items():
            rows.append((stats.value, relation, p["pairs"], value))
            worst = max(worst, value)
    path = _out_path(args, "fock_check.csv")
    artifacts.write_csv(path, ("statistics", "relation", "samples", "max_residual"), rows)
    artifacts.write_metadata(path, "fock-check", p, __version__, seed=p["seed"], generator=GENERATOR_NAME)
    print(f"wrote {path} (max residual {worst:.3e})")
    if worst > 1e-12:
        raise InvariantViolation(f"ladder relation residual {worst:.3e} exceeds 1e-12")
    return 0


def _ladder_relation_residuals(space: ModeSpace, rng, n_pairs: int) -> dict:
    """Max deviation of the three exchange relations on random basis pairs."""
    sign = -1.0 if space.statistics is Statistics.BOSE else 1.0
    cap = space.occupation_cap - (1 if space.statistics is Statistics.BOSE else 0)
    states = [occ for occ in space.basis_states() if max(occ) <= cap]
    worst = {"exchange": 0.0, "create-create": 0.0, "annihilate-annihilate": 0.0}
    for _ in range(n_pairs):
        occ = states[rng.integers(len(states))]
        a = int(rng.integers(space.num_modes))
        b = int(rng.integers(space.num_modes))
        s = basis_state(space, occ)
        w = annihilate(create(s, b), a) + sign * create(annihilate(s, a), b)
        expect = s if a == b else FockVector(space, {})
        worst["exchange"] = max(worst["exchange"], (w - expect).norm)
        if space.statistics is Statistics.BOSE and max(occ) > space.nmax - 2:
            continue
        w2 = create(create(s, b), a) + sign * create(create(s, a), b)
        w3 = annihilate(annihilate(s, b), a) + sign * annihilate(annihilate(s, a), b)
        worst["create-create"] = max(worst["create-create"], w2.norm)
        worst["annihilate-annihilate"] = max(worst["annihilate-annihilate"], w3.norm)
    return worst


def run_wick(args) -> int:
    if args.expr is not None:
        text = args.expr
    elif args.file is not None:
        with open(args.file) as handle:
            text = handle.read().strip()
    else:
        raise ValueError("wick needs --expr or --file")
    nf = normal_order(parse_expr(text))
    rendered = str(nf)
    print(rendered)
    if args.out is not None:
        path = _out_path(args, args.out)
        artifacts.write_text(path, rendered + "\n")
        artifacts.write_metadata(path, "wick", {"expr": text}, __version__)
    return 0


def run_causality(args) -> int:
    schema = {
        "M": (int, 512),
        "dx": (float, 0.25),
        "mass": (float, 1.0),
        "dts": (_parse_float_list, None),
        "separations": (_parse_float_list, None),
        "cone_margin": (float, 3.0),
        "workers": (int, 1),
    }
    p = _merged_params(args, "causality", schema)
    lattice = LatticeSpec(p["M"], p["dx"], p["mass"], Dispersion.RELATIVISTIC)
    if (p["dts"] is None) != (p["separations"] is None):
        raise ValueError("--dts and --separations must be given together")
    if p["dts"] is not None:
        pairs = [(dt, dx) for dt in p["dts"] for dx in p["separations"]]
    else:
        pairs = default_spacelike_grid(lattice, cone_margin=p["cone_margin"])
    with_vals = commutator_sweep(lattice, pairs, True, max_workers=p["workers"])
    without_vals = commutator_sweep(lattice, pairs, False, max_workers=p["workers"])
    rows = [
        (dt, dx, w.real, w.imag, abs(w), wo.real, wo.imag, abs(wo))
        for (dt, dx), w, wo in zip(pairs, with_vals, without_vals)
    ]
    path = _out_path(args, "causality.csv")
    artifacts.write_csv(
        path,
        ("dt", "dx", "re_with", "im_with", "abs_with", "re_without", "im_without", "abs_without"),
        rows,
    )
    artifacts.write_metadata(
        path, "causality", p, __version__,
        extra={"k0_excluded": lattice.mass == 0.0},
    )
    print(f"wrote {path} ({len(rows)} points)")
    return 0


def run_wavepacket(args) -> int:
    schema = {
        "M": (int, 256),
        "dx": (float, 1.0),
        "mass": (float, 1.0),
        "sigma0": (float, 8.0),
        "chirp": (float, 0.0),
        "p0": (float, 0.0),
        "x0": (float, 0.0),
        "times": (_parse_times, [k * 0.5 for k in range(101)]),
    }
    p = _merged_params(args, "wavepacket", schema)
    lattice = LatticeSpec(p["M"], p["dx"], p["mass"])
    packet = gaussian_packet(lattice, p["x0"], p["p0"], p["sigma0"], p["chirp"])
    records = trajectory(packet, p["times"], lattice)
    path = _out_path(args, "wavepacket.csv")
    artifacts.write_csv(path, TrajectoryRecord.CSV_HEADER, [r.row() for r in records])
    artifacts.write_metadata(path, "wavepacket", dict(p, times=list(p["times"])), __version__)
    print(f"wrote {path} ({len(records)} samples)")
    if args.density_out is not None:
        final = evolve(packet, p["times"][-1], lattice)
        dpath = _out_path(args, args.density_out)
        artifacts.write_csv(
            dpath,
            ("x", "re_f", "im_f", "density"),
            [
                (float(x), float(v.real), float(v.imag), float(abs(v) ** 2))
                for x, v in zip(lattice.positions, final.values)
            ],
        )
        artifacts.write_metadata(dpath, "wavepacket", dict(p, times=list(p["times"])), __version__)
        print(f"wrote {dpath}")
    return 0


def run_entangle(args) -> int:
    schema = {
        "overlap_a": (float, 0.0),
        "overlap_b": (float, 0.0),
    }
    p = _merged_params(args, "entangle", schema)
    for key in ("overlap_a", "overlap_b"):
        if not -1.0 <= p[key] <= 1.0:
            raise ValueError(f"{key} must lie in [-1, 1]")
    phi1, psi1 = np.array([1.0, 0.0]), np.array([1.0, 0.0])
    phi2 = np.array([p["overlap_a"], np.sqrt(1 - p["overlap_a"] ** 2)])
    psi2 = np.array([p["overlap_b"], np.sqrt(1 - p["overlap_b"] ** 2)])
    state = entangled_pair(phi1, phi2, psi1, psi2)
    coeffs, entropy = schmidt(state)
    rows = [(f"schmidt_{k + 1}", float(c)) for k, c in enumerate(coeffs)]
    rows.append(("entropy", float(entropy)))
    rows.append(("entropy_reduced_a", entanglement_entropy(reduced_density(state, "A"))))
    rows.append(("entropy_reduced_b", entanglement_entropy(reduced_density(state, "B"))))
    rows.append(("purity_reduced_a", reduced_density(state, "A").purity))
    path = _out_path(args, "entangle.csv")
    artifacts.write_csv(path, ("label", "value"), rows)
    artifacts.write_metadata(path, "entangle", p, __version__)
    print(f"wrote {path} (entropy {entropy:.6f})")
    return 0


def run_measure(args) -> int:
    schema = {
        "weights": (_parse_float_list, [0.25, 0.75]),
        "apparatus_energy": (float, 1e6),
        "n_samples": (int, 100000),
        "seed": (int, 0),
    }
    p = _merged_params(args, "measure", schema)
    weights = np.asarray(p["weights"], dtype=float)
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-8:
        raise ValueError("weights must be nonnegative and sum to 1")
    model = MeasurementModel(
        tuple(range(len(weights))), tuple(np.sqrt(weights)), p["apparatus_energy"]
    )
    rho = decohere(premeasure(model))
    counts = pointer_outcome_counts(
        sample_outcomes(rho, p["n_samples"], p["seed"]), (len(weights), len(weights))
    )
    rows = [
        (lam, int(c), c / p["n_samples"])
        for lam, c in zip(model.eigenvalues, counts)
    ]
    path = _out_path(args, "measure.csv")
    artifacts.write_csv(path, ("lambda", "count", "frequency"), rows)
    artifacts.write_metadata(
        path, "measure", dict(p, weights=list(weights)), __version__,
        seed=p["seed"], generator=GENERATOR_NAME,
        extra={"decoherence_time": decoherence_time(p["apparatus_energy"])},
    )
    print(f"wrote {path} ({p['n_samples']} draws)")
    return 0


# ----------------------------------------------------------------------
# verify: reduced-scale invariant sweep keyed by check tags


def _check_eq3() -> tuple:
    rng = np.random.default_rng(0)
    worst = 0.0
    for stats, modes in ((Statistics.BOSE, 4), (Statistics.FERMI, 8)):
        space = ModeSpace(modes, stats, nmax=6)
        residuals = _ladder_relation_residuals(space, rng, 200)
        worst = max(worst, *residuals.values())
    return worst <= 1e-12, f"max ladder-relation residual {worst:.2e} (tol 1e-12)"


def _check_eq8() -> tuple:
    rng = np.random.default_rng(1)
    lattice = LatticeSpec(8, 1.0, 1.0)
    space = site_mode_space(lattice)
    worst = 0.0
    for _ in range(20):
        vals = rng.normal(size=8) + 1j * rng.normal(size=8)
        f = WaveAmplitude(vals / np.linalg.norm(vals), lattice)
        state = prepare_one_particle(f, space)
        for j in range(8):
            worst = max(worst, abs(number_density(state, j) - abs(f.values[j]) ** 2))
    dp = vacuum_expectation(parse_expr("bose: a(xp) a+(x) a(x) a+(xpp)"))
    structure_ok = len(dp.terms) == 1 and dp.terms[0][0] == 1 and set(dp.terms[0][1]) == {("x", "xp"), ("x", "xpp")}
    sym_worst = 0.0
    for text in ("bose: a(x) a(y) a+(x) a+(y)", "fermi: a(x) a(y) a+(x) a+(y)", "bose: a(x) a+(y) a(y) a+(x)"):
        s = parse_expr(text)
        space2 = ModeSpace(3, s.statistics, nmax=6)
        poly = vacuum_expectation(s)
        for _ in range(10):
            assign = {lab: int(rng.integers(0, 3)) for lab in ("x", "y")}
            numeric = inner(vacuum(space2), _apply_symbols(s, assign, space2))
            sym_worst = max(sym_worst, abs(numeric - evaluate(poly, assign)))
    ok = worst <= 1e-12 and structure_ok and sym_worst <= 1e-10
    return ok, (
        f"density residual {worst:.2e} (tol 1e-12), contraction structure "
        f"{'ok' if structure_ok else 'WRONG'}, symbolic-vs-numeric {sym_worst:.2e} (tol 1e-10)"
    )


def _apply_symbols(s, assignment, space):
    v = vacuum(space)
    for sym in reversed(s.symbols):
        mode = assignment[sym.label]
        v = create(v, mode) if sym.kind is LadderKind.CREATE else annihilate(v, mode)
    return v


def _verify_trajectory():
    lattice = LatticeSpec(64, 1.0, 1.0)
    packet = gaussian_packet(lattice, 0.0, 0.0, 3.0, chirp=1.0)
    coarse = trajectory(packet, [k * 0.25 for k in range(49)], lattice)
    fine = trajectory(packet, [k * 1e-3 for k in range(51)], lattice)
    return coarse, fine


def _check_eq12() -> tuple:
    coarse, fine = _verify_trajectory()
    report = ehrenfest_residuals(fine, mass=1.0)
    x20, c0, h0 = coarse[0].mean_x2, coarse[0].mean_c, coarse[0].mean_h
    worst = max(
        abs(r.mean_x2 - (x20 + 2.0 * (c0 * r.t + h0 * r.t**2))) / abs(r.mean_x2)
        for r in coarse
    )
    ok = report.width_residual <= 1e-5 and worst <= 1e-6
    return ok, (
        f"d<X^2>/dt residual {report.width_residual:.2e} (tol 1e-5), "
        f"integrated width law {worst:.2e} (tol 1e-6)"
    )


def _check_eq13() -> tuple:
    coarse, fine = _verify_trajectory()
    report = ehrenfest_residuals(fine, mass=1.0)
    h0 = coarse[0].mean_h
    linear = max(
        abs((r.mean_c - coarse[0].mean_c) - 2 * h0 * r.t) / max(abs(2 * h0 * r.t), 1e-30)
        for r in coarse[1:]
    )
    monotone = all(b.mean_c >= a.mean_c - 1e-10 for a, b in zip(coarse, coarse[1:]))
    heisenberg = min(r.dx * r.dp for r in coarse) >= 0.5 * (1 - 1e-9)
    ok = report.correlation_residual <= 1e-5 and linear <= 1e-6 and monotone and heisenberg
    return ok, (
        f"d<C>/dt residual {report.correlation_residual:.2e} (tol 1e-5), slope law {linear:.2e} "
        f"(tol 1e-6), nondecreasing {monotone}, uncertainty bound {heisenberg}"
    )


def _check_eq14() -> tuple:
    rng = np.random.default_rng(2)
    worst_diag = worst_purity = 0.0
    for _ in range(5):
        f = rng.normal(size=3) + 1j * rng.normal(size=3)
        f = f / np.linalg.norm(f)
        rho = decohere(premeasure(MeasurementModel((0, 1, 2), tuple(f), 1.0)))
        diag = pointer_outcome_counts(rho.diagonal(), (3, 3))
        worst_diag = max(worst_diag, float(np.max(np.abs(diag - born_distribution(f)))))
        worst_purity = max(worst_purity, abs(rho.purity - float(np.sum(np.abs(f) ** 4))))
    probs = np.array([0.25, 0.75])
    model = MeasurementModel((0, 1), tuple(np.sqrt(probs)), 1.0)
    rho = decohere(premeasure(model))
    counts = pointer_outcome_counts(sample_outcomes(rho, 20000, seed=0), (2, 2))
    freq_dev = abs(counts[0] / 20000 - 0.25)
    ok = worst_diag <= 1e-12 and worst_purity <= 1e-12 and freq_dev < 0.01
    return ok, (
        f"diagonal residual {worst_diag:.2e}, purity residual {worst_purity:.2e} "
        f"(tol 1e-12), sampled frequency deviation {freq_dev:.4f} (tol 0.01)"
    )


def _check_comment6() -> tuple:
    lattice = LatticeSpec(64, 0.25, 1.0, Dispersion.RELATIVISTIC)
    grid = default_spacelike_grid(lattice)
    with_max = max(abs(v) for v in commutator_sweep(lattice, grid, True))
    without_max = max(abs(v) for v in commutator_sweep(lattice, grid, False))
    ok = with_max <= 1e-6 and without_max >= 0.05
    return ok, (
        f"spacelike commutator {with_max:.2e} with antiparticles (tol 1e-6) "
        f"vs {without_max:.2e} without (floor 0.05)"
    )


VERIFY_CHECKS = (
    ("eq3", "ladder (anti)commutation relations", _check_eq3),
    ("eq8", "number density = squared intensity, symbolic contraction", _check_eq8),
    ("eq12", "width growth rate d<X^2>/dt = (2/m)<C>", _check_eq12),
    ("eq13", "correlation growth d<C>/dt = 2<H> >= 0", _check_eq13),
    ("eq14", "decoherence diagonal, purity, sampled frequencies", _check_eq14),
    ("comment6", "spacelike commutator cancellation with antiparticles", _check_comment6),
)


def run_verify(args) -> int:
    tags = [t.strip() for t in args.only.split(",")] if args.only else None
    known = {tag for tag, _, _ in VERIFY_CHECKS}
    if tags:
        unknown = set(tags) - known
        if unknown:
            raise ValueError(f"unknown check tags {sorted(unknown)}; known: {sorted(known)}")
    if args.inject_fault:
        faults.activate(args.inject_fault)
    failed = []
    try:
        for tag, description, check in VERIFY_CHECKS:
            if tags and tag not in tags:
                continue
            ok, detail = check()
            status = "pass" if ok else "FAIL"
            print(f"{tag:<9} {status:<5} {description}: {detail}")
            if not ok:
                failed.append(tag)
    finally:
        faults.clear()
    if failed:
        print(f"failed checks: {', '.join(failed)}")
        raise InvariantViolation(f"verify failed: {', '.join(failed)}")
    print("all checks passed")
    return 0


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockfield",
        description="Reproducible second-quantization experiments emitting CSV artifacts.",
    )
    parser.add_argument("--version", action="version", version=f"fockfield {__version__}")
    sub = parser.add_subparsers(dest="scenario", metavar="scenario")

    def common(p):
        p.add_argument("--out-dir", default=None, help=f"output directory (default: ${OUT_DIR_ENV} or cwd)")
        p.add_argument("--config", default=None, help="INI config file with one section per scenario")

    p = sub.add_parser("fock-check", help="ladder-algebra residual sweep")
    common(p)
    p.add_argument("--modes", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--pairs", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=run_fock_check)

    p = sub.add_parser("wick", help="normal-order a ladder-operator expression")
    common(p)
    p.add_argument("--expr", help="expression, e.g. 'bose: a(x1) a+(x2)'")
    p.add_argument("--file", help="read the expression from a file")
    p.add_argument("--out", help="also write the normal form to this artifact file")
    p.set_defaults(func=run_wick)

    p = sub.add_parser("causality", help="spacelike commutator sweep")
    common(p)
    p.add_argument("--M", type=int)
    p.add_argument("--dx", type=float, help="lattice spacing")
    p.add_argument("--mass", type=float)
    p.add_argument("--dts", type=_parse_float_list, help="time separations (comma separated)")
    p.add_argument("--separations", type=_parse_float_list, help="spatial separations (comma separated)")
    p.add_argument("--cone-margin", dest="cone_margin", type=float)
    p.add_argument("--workers", type=int)
    p.set_defaults(func=run_causality)

    p = sub.add_parser("wavepacket", help="chirped-Gaussian trajectory")
    common(p)
    p.add_argument("--M", type=int)
    p.add_argument("--dx", type=float, help="lattice spacing")
    p.add_argument("--mass", type=float)
    p.add_argument("--sigma0", type=float)
    p.add_argument("--chirp", type=float)
    p.add_argument("--p0", type=float)
    p.add_argument("--x0", type=float)
    p.add_argument("--times", type=_parse_times, help="start:stop:step or explicit list")
    p.add_argument("--density-out", dest="density_out", help="also write the final density profile CSV")
    p.set_defaults(func=run_wavepacket)

    p = sub.add_parser("entangle", help="two-term entangled pair report")
    common(p)
    p.add_argument("--overlap-a", dest="overlap_a", type=float, help="overlap of the two A-side states")
    p.add_argument("--overlap-b", dest="overlap_b", type=float, help="overlap of the two B-side states")
    p.set_defaults(func=run_entangle)

    p = sub.add_parser("measure", help="premeasure, decohere, and sample outcomes")
    common(p)
    p.add_argument("--weights", type=_parse_float_list, help="outcome weights |f|^2 (comma separated)")
    p.add_argument("--apparatus-energy", dest="apparatus_energy", type=float)
    p.add_argument("--n-samples", dest="n_samples", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=run_measure)

    p = sub.add_parser("verify", help="reduced-scale invariant suite")
    common(p)
    p.add_argument("--only", help="run only the named checks (comma separated tags)")
    p.add_argument("--inject-fault", dest="inject_fault", help=argparse.SUPPRESS)
    p.set_defaults(func=run_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.scenario is None:
        parser.print_help()
        return 2
    try:
        return args.func(args)
    except InvariantViolation as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
