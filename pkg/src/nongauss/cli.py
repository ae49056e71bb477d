"""``nong`` command line: single-state queries, property suites and figure sweeps.

Exit codes: 0 success, 1 validation error, 2 numerical/truncation failure,
3 property-suite failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

import numpy as np

from . import fock, lemmas, measure, protocols
from .gaussian import entanglement_witness
from .settings import NonGError, ValidationError

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL, EXIT_SUITE = 0, 1, 2, 3
CSV_FLOAT = "%.9e"
LN2 = math.log(2.0)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- parsing helpers


def parse_floats(text: str) -> list[float]:
    """Comma list ``0.1,0.5`` or linspace ``start:stop:num``."""
    if ":" in text:
        start, stop, num = text.split(":")
        return [float(v) for v in np.linspace(float(start), float(stop), int(num))]
    return [float(v) for v in text.split(",") if v.strip()]


def parse_ints(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def log_grid(lo: float, hi: float, per_decade: int) -> list[float]:
    decades = math.log10(hi) - math.log10(lo)
    num = int(round(decades * per_decade)) + 1
    return [float(v) for v in np.logspace(math.log10(lo), math.log10(hi), num)]


def _map(fn: Callable, tasks: Sequence, jobs: int) -> list:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, tasks))
    return [fn(t) for t in tasks]


def _fmt(v: float | None) -> str:
    return "" if v is None else CSV_FLOAT % v


def _open_out(path: str):
    if path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence[str]]):
    handle, close = _open_out(path)
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if close:
            handle.close()


def _unit(args) -> float:
    return LN2 if getattr(args, "bits", False) else 1.0


# ---------------------------------------------------------------- state specs


def _add_state_args(p: argparse.ArgumentParser):
    p.add_argument(
        "--kind",
        required=True,
        choices=["fock", "coherent", "thermal", "cat", "gaussian", "schmidt", "twin-beam", "maxnong"],
        help="state family",
    )
    p.add_argument("--n", type=int, default=0, help="Fock level (fock); base level (maxnong). Default 0")
    p.add_argument("--alpha", type=complex, default=0j, help="coherent amplitude, e.g. 1.0 or 1+0.5j. Default 0")
    p.add_argument("--zeta", type=complex, default=0j, help="squeezing parameter (gaussian). Default 0")
    p.add_argument("--nth", type=float, default=0.0, help="thermal photons (thermal, gaussian). Default 0")
    p.add_argument("--sign", type=int, default=1, choices=[1, -1], help="cat parity sign. Default +1")
    p.add_argument("--lam", type=float, default=0.5, help="Schmidt/twin-beam parameter. Default 0.5")
    p.add_argument("--steps", type=int, default=0, help="Gaussification rounds applied (schmidt). Default 0")
    p.add_argument("--coeffs", type=str, default=None, help="explicit Schmidt coefficients, comma list")
    p.add_argument("--levels", type=str, default="0", help="maxnong level offsets, comma list. Default 0")
    p.add_argument("--amps", type=str, default="1", help="maxnong amplitudes, comma list. Default 1")
    p.add_argument("--dim", type=int, default=None, help="truncation per mode. Default: automatic")


def build_state(args) -> fock.FockState:
    kind, dim = args.kind, args.dim
    if kind == "fock":
        return fock.make_fock(args.n, dim or max(args.n + 4, 8))
    if kind == "coherent":
        return fock.make_coherent(args.alpha, dim)
    if kind == "thermal":
        return fock.make_thermal(args.nth, dim)
    if kind == "cat":
        return fock.make_cat(args.alpha, args.sign, dim)
    if kind == "gaussian":
        return fock.make_gaussian(args.alpha, args.zeta, args.nth, dim)
    if kind == "schmidt":
        if args.coeffs:
            coeffs = np.array(parse_floats(args.coeffs))
            c = protocols.SchmidtCoeffs(coeffs / np.linalg.norm(coeffs))
            if dim:
                c = c.padded(dim)
        else:
            c = protocols.SchmidtCoeffs.initial(args.lam, dim or 32)
        for _ in range(args.steps):
            c = protocols.gaussification_step(c)
        return c.state()
    if kind == "twin-beam":
        if not 0 <= args.lam < 1:
            raise ValidationError("twin-beam parameter must lie in [0, 1)")

        def make(d):
            c = protocols.SchmidtCoeffs.twin_beam(args.lam, d)
            fock._check_tail(c.state(), args.lam ** (2 * d), 1e-12, "twin beam")
            return c.state()

        return make(dim) if dim else fock.escalate(make, start=8)
    if kind == "maxnong":
        spec = measure.MaxNonGSpec(args.n, tuple(parse_ints(args.levels)), tuple(complex(a) for a in args.amps.split(",")))
        return measure.make_max_nong_state(spec, dim)
    raise ValidationError(f"unknown kind {kind}")


# ---------------------------------------------------------------- commands


def cmd_delta(args) -> int:
    rep = measure.delta(build_state(args))
    u = _unit(args)
    print(f"delta={rep.value / u:.6f}")
    print(f"s_tau={rep.s_tau / u:.6f}")
    print(f"s_rho={rep.s_rho / u:.6f}")
    print(f"dim_used={rep.dim_used}")
    print(f"tail_mass={rep.tail_mass:.3e}")
    print("nus=" + ",".join(f"{v:.6f}" for v in rep.nus))
    return EXIT_OK


def _gaussify_task(task):
    """Trajectory up to the largest requested step that certifies; missing steps stay empty."""
    lam, steps, dim = task
    for top in sorted(set(steps), reverse=True):
        try:
            return dict(protocols.gaussification_trajectory(lam, top, dim))
        except NonGError:
            continue
    return {}


def cmd_gaussify(args) -> int:
    lams = parse_floats(args.lambdas)
    steps = parse_ints(args.steps)
    if any(not 0 <= lam <= 1 for lam in lams):
        raise ValidationError("lambda grid must lie within [0, 1]")
    if not steps or min(steps) < 0:
        raise ValidationError("steps must be non-negative integers")
    results = _map(_gaussify_task, [(lam, steps, args.dim) for lam in lams], args.jobs)
    u, rows, failed = _unit(args), [], 0
    for lam, traj in zip(lams, results):
        for s in steps:
            value = traj[s] / u if s in traj else None
            failed += value is None
            rows.append([_fmt(lam), str(s), _fmt(value)])
    _write_csv(args.out, ["lambda", "step", "delta"], rows)
    if failed:
        print(f"warning: {failed} rows failed truncation certification", file=sys.stderr)
    return EXIT_OK


def _kerr_task(task):
    nbar, gamma, method = task
    try:
        return protocols.kerr_delta(nbar, gamma, method)
    except NonGError:
        return None


def cmd_kerr(args) -> int:
    gammas = parse_floats(args.gammas)
    nbars = parse_floats(args.nbar) if args.nbar else log_grid(args.nbar_min, args.nbar_max, args.per_decade)
    if any(n < 0 for n in nbars):
        raise ValidationError("nbar must be non-negative")
    tasks = [(n, g, args.method) for g in gammas for n in nbars]
    results = _map(_kerr_task, tasks, args.jobs)
    u, rows, failed = _unit(args), [], 0
    for (n, g, _), value in zip(tasks, results):
        failed += value is None
        rows.append([_fmt(n), _fmt(g), _fmt(None if value is None else value / u), _fmt(measure.max_nong_bound(n, 1) / u)])
    _write_csv(args.out, ["nbar", "gamma", "delta", "delta_max"], rows)
    if failed:
        print(f"warning: {failed} rows failed (numeric path beyond budget?)", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = lemmas.run_suite(args.suite, args.samples, args.seed)
    for r in results:
        print(r.line())
    bad = sum(not r.ok for r in results)
    print(f"{len(results) - bad}/{len(results)} properties passed (suite={args.suite}, seed={args.seed})")
    return EXIT_SUITE if bad else EXIT_OK


def cmd_witness(args) -> int:
    state = build_state(args)
    if state.modes != 2:
        raise ValidationError("the witness needs a two-mode state (schmidt, twin-beam)")
    res = entanglement_witness(state)
    u = _unit(args)
    print(f"verdict={res.verdict.value}")
    print(f"s_a_given_b={res.s_a_given_b / u:.6f}")
    print(f"s_b_given_a={res.s_b_given_a / u:.6f}")
    return EXIT_OK


def _member(text: str, dim: int) -> tuple[float, fock.FockState]:
    try:
        p, kind, value = text.split(":")
    except ValueError:
        raise ValidationError(f"member {text!r} is not p:kind:value") from None
    makers = {
        "fock": lambda v: fock.make_fock(int(v), dim),
        "coherent": lambda v: fock.make_coherent(complex(v), dim),
        "thermal": lambda v: fock.make_thermal(float(v), dim),
        "cat": lambda v: fock.make_cat(complex(v), 1, dim),
    }
    if kind not in makers:
        raise ValidationError(f"unknown member kind {kind!r}")
    return float(p), makers[kind](value)


def cmd_holevo(args) -> int:
    if args.thermal_encoding is not None:
        ens = measure.thermal_encoding(args.thermal_encoding, args.dim)
    elif args.member:
        ens = measure.Ensemble(tuple(_member(m, args.dim) for m in args.member))
    else:
        raise ValidationError("give --member entries or --thermal-encoding")
    res = measure.holevo_bound(ens)
    u = _unit(args)
    print(f"chi={res.chi / u:.9f}")
    print(f"s_tau={res.s_tau / u:.9f}")
    print(f"delta_bar={res.delta_bar / u:.9f}")
    print(f"mean_member_entropy={res.mean_member_entropy / u:.9f}")
    return EXIT_OK


def cmd_channel(args) -> int:
    channels = {
        "identity": lambda: measure.identity_channel,
        "kerr": lambda: measure.KerrChannel(args.gamma),
        "attenuation": lambda: measure.AttenuationChannel(args.eta),
        "thermal": lambda: measure.BeamsplitterChannel(args.eta, args.nenv),
    }
    grid = measure.ChannelGrid(args.energies, args.splits, args.phases)
    res = measure.channel_nong(channels[args.channel](), args.nmax, grid, args.jobs)
    energy, alpha, zeta, nth = res.argmax
    u = _unit(args)
    print(f"lower_bound={res.lower_bound / u:.9f}")
    print(f"argmax_energy={energy:.6f}")
    print(f"argmax_alpha={alpha.real:.6f}{alpha.imag:+.6f}j")
    print(f"argmax_zeta={zeta.real:.6f}{zeta.imag:+.6f}j")
    print(f"argmax_nth={nth:.6f}")
    print(f"evaluated={res.evaluated}")
    print(f"skipped={res.skipped}")
    return EXIT_OK


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = _Parser(prog="nong", description="Relative-entropy non-Gaussianity of CV states (nats).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("delta", help="non-Gaussianity of one state", formatter_class=fmt)
    _add_state_args(p)
    p.add_argument("--bits", action="store_true", help="report entropies in bits")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("gaussify", help="Gaussification sweep (CSV lambda,step,delta)", formatter_class=fmt)
    p.add_argument("--lambdas", default="0:1:101", help="start:stop:num or comma list")
    p.add_argument("--steps", default="0,1,2,3", help="comma list of rounds to report")
    p.add_argument("--dim", type=int, default=None, help="fixed Schmidt truncation (default: doubling ladder)")
    p.add_argument("--out", default="-", help="output CSV path, - for stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes; output order is unchanged")
    p.add_argument("--bits", action="store_true", help="report entropies in bits")
    p.set_defaults(func=cmd_gaussify)

    p = sub.add_parser("kerr", help="Kerr de-Gaussification sweep (CSV nbar,gamma,delta,delta_max)", formatter_class=fmt)
    p.add_argument("--gammas", default="1e-2,1e-4,1e-6", help="comma list of Kerr couplings")
    p.add_argument("--nbar", default=None, help="explicit nbar grid (overrides the log grid)")
    p.add_argument("--nbar-min", type=float, default=0.1, help="lower end of the log grid")
    p.add_argument("--nbar-max", type=float, default=1e9, help="upper end of the log grid")
    p.add_argument("--per-decade", type=int, default=10, help="log-grid points per decade")
    p.add_argument("--method", choices=["auto", "numeric", "analytic"], default="auto",
                   help="auto: Fock numerics below nbar=100, analytic moments above")
    p.add_argument("--out", default="-", help="output CSV path, - for stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes; output order is unchanged")
    p.add_argument("--bits", action="store_true", help="report entropies in bits")
    p.set_defaults(func=cmd_kerr)

    p = sub.add_parser("verify", help="randomized lemma property suites", formatter_class=fmt)
    p.add_argument("--suite", required=True, choices=[*lemmas.SUITES, "all"], help="property suite to run")
    p.add_argument("--seed", type=int, default=0, help="RNG seed")
    p.add_argument("--samples", type=int, default=20, help="random samples per property")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="Gaussian conditional-entropy entanglement witness", formatter_class=fmt)
    _add_state_args(p)
    p.add_argument("--bits", action="store_true", help="report entropies in bits")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("holevo", help="Holevo bound and its non-Gaussianity decomposition", formatter_class=fmt)
    p.add_argument("--member", action="append", help="p:kind:value with kind in fock|coherent|thermal|cat")
    p.add_argument("--thermal-encoding", type=float, default=None, help="Fock eigen-ensemble of nu(NTH)")
    p.add_argument("--dim", type=int, default=64, help="Fock truncation for ensemble members")
    p.add_argument("--bits", action="store_true", help="report entropies in bits")
    p.set_defaults(func=cmd_holevo)

    p = sub.add_parser("channel-nong", help="grid lower bound on a channel's non-Gaussianity", formatter_class=fmt)
    p.add_argument("--channel", choices=["identity", "kerr", "attenuation", "thermal"], required=True, help="channel to probe")
    p.add_argument("--nmax", type=float, required=True, help="energy cap on Gaussian inputs (mandatory)")
    p.add_argument("--gamma", type=float, default=0.1, help="Kerr coupling")
    p.add_argument("--eta", type=float, default=0.5, help="transmissivity (attenuation, thermal)")
    p.add_argument("--nenv", type=float, default=0.5, help="environment thermal photons (thermal)")
    p.add_argument("--energies", type=int, default=4, help="energy levels in (0, nmax]")
    p.add_argument("--splits", type=int, default=3, help="simplex resolution of the energy split")
    p.add_argument("--phases", type=int, default=3, help="displacement phases in [0, pi)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes; output order is unchanged")
    p.add_argument("--bits", action="store_true", help="report entropies in bits")
    p.set_defaults(func=cmd_channel)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except (NonGError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NUMERICAL if isinstance(err, NonGError) else EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
