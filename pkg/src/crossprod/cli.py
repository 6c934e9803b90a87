"""Command-line entry point: ``crossprod <command> ...``.

Human-readable summaries go to stdout (suppressed by --quiet); machine
output goes to --out as JSON (CSV for ``structure spectrum``). Exit codes:
0 success, 1 invalid arguments or unreadable input, 2 domain error,
3 a verification check failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys as _sys
import tempfile
from pathlib import Path

import numpy as np

from . import commutant, dynsys, ideals, representations, structure, verify, wiener
from .algebra import e_project, element_from_json, element_to_json
from .dynsys import DomainError, DynSys, bundled_systems

LOGGER = logging.getLogger("crossprod")

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CHECK = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# config validation -----------------------------------------------------------

def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return v


def _grid(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 64 or v & (v - 1):
        raise argparse.ArgumentTypeError(f"grid must be a power of two >= 64, got {v}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


# I/O -------------------------------------------------------------------------

def resolve_system(spec: str) -> Path:
    """A path to an existing file, or the name of a bundled system (with or without .json)."""
    path = Path(spec)
    if path.is_file():
        return path
    known = bundled_systems()
    name = path.stem if path.suffix == ".json" else path.name
    if name in known:
        return known[name]
    raise UsageError(f"system file {spec!r} not found; bundled systems: {', '.join(sorted(known))}")


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None


def load_system(spec: str) -> DynSys:
    return DynSys.from_json(_read_json(str(resolve_system(spec))))


def load_element(sys: DynSys, path: str):
    try:
        return element_from_json(sys, _read_json(path))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"{path}: malformed element file ({exc})") from None


def load_series(path: str) -> wiener.FourierSeries:
    try:
        return wiener.series_from_json(_read_json(path))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"{path}: malformed series file ({exc})") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def write_atomic(path: str, text: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class _Output:
    def __init__(self, args):
        self.quiet = args.quiet
        self.out = args.out

    def say(self, line: str) -> None:
        if not self.quiet:
            print(line)

    def emit(self, payload, text: str | None = None) -> None:
        """Write payload to --out, or print it when no --out was given."""
        text = dumps(payload) if text is None else text
        if self.out:
            write_atomic(self.out, text)
            self.say(f"wrote {self.out}")
        elif not self.quiet:
            _sys.stdout.write(text)


def _cfun_json(f) -> dict:
    f = np.asarray(f)
    return {"re": [float(v) for v in f.real], "im": [float(v) for v in f.imag]}


# commands --------------------------------------------------------------------

def cmd_dynsys_analyze(args, out: _Output) -> int:
    s = load_system(args.system)
    rep = dynsys.analyze(s)
    out.say(f"{s.size} points, {len(rep.orbits)} orbit(s), periods {list(s.periods)}")
    out.emit(rep.to_json())
    return EXIT_OK


def cmd_calc(args, out: _Output) -> int:
    s = load_system(args.system)
    a = load_element(s, args.a)
    if args.op in ("mul", "add"):
        if not args.b:
            raise UsageError(f"--op {args.op} needs --b")
        b = load_element(s, args.b)
        res = a * b if args.op == "mul" else a + b
        payload = element_to_json(res)
        out.say(f"{args.op}: result has {len(res.support)} term(s), norm {res.norm():.17g}")
    elif args.op == "adj":
        res = a.adjoint()
        payload = element_to_json(res)
        out.say(f"adj: result has {len(res.support)} term(s)")
    elif args.op == "norm":
        payload = {"norm": a.norm()}
        out.say(f"norm: {payload['norm']:.17g}")
    else:
        payload = {"E": _cfun_json(e_project(a))}
        out.say("E: degree-0 coefficient")
    out.emit(payload)
    return EXIT_OK


def cmd_commutant_check(args, out: _Output) -> int:
    s = load_system(args.system)
    a = load_element(s, args.element)
    res = commutant.in_commutant(a)
    out.say("in commutant" if res.in_commutant else f"not in commutant, witness (k, x) = {res.witness}")
    out.emit(res.to_json())
    return EXIT_OK


def cmd_ideals_kill(args, out: _Output) -> int:
    s = load_system(args.system)
    a = load_element(s, args.element)
    kit, a_prime = ideals.kill_coefficients(a, args.x0, args.n0, args.klist)
    rep = ideals.killer_report(a, a_prime, kit)
    out.say(f"killed degrees {list(kit.klist)} near x0={args.x0}: max residual {rep['max_killed']:.3g}")
    payload = element_to_json(a_prime)
    payload["report"] = rep
    payload["U"] = kit.U.to_list()
    out.emit(payload)
    return EXIT_OK


def cmd_ideals_vanishing(args, out: _Output) -> int:
    s = load_system(args.system)
    ideal = ideals.vanishing_ideal(s, args.orbits)
    payload = ideal.to_json()
    if args.member:
        payload["member"] = ideal.contains(load_element(s, args.member))
        out.say(f"I(S) with S={payload['S']}: member {payload['member']}")
    else:
        out.say(f"I(S) with S={payload['S']}")
    out.emit(payload)
    return EXIT_OK


def cmd_wiener_invert(args, out: _Output) -> int:
    u = load_series(args.series)
    tol = args.tol if args.tol is not None else 1e-9
    inv = wiener.invert_report(u, tol=tol)
    out.say(f"inverse with {len(inv.series.support)} coefficients, residual {inv.residual:.3g}")
    payload = wiener.series_to_json(inv.series)
    payload["inversion"] = inv.to_json()
    out.emit(payload)
    return EXIT_OK


def cmd_structure_psi(args, out: _Output) -> int:
    s = load_system(args.system)
    a = load_element(s, args.element)
    A = structure.psi(a, args.x0)
    out.say(f"psi(a): {A.p}x{A.p} matrix, mat_norm {structure.mat_norm(A):.17g}")
    out.emit(structure.matrix_to_json(A))
    return EXIT_OK


def cmd_structure_spectrum(args, out: _Output) -> int:
    s = load_system(args.system)
    a = load_element(s, args.element)
    cloud = structure.spectrum(a, args.x0, args.grid or 1024)
    out.say(f"{cloud.grid_size} grid points, max |Im| {cloud.max_imag():.3g}")
    if cloud.failures:
        LOGGER.warning("eigensolver failed at %d grid point(s)", len(cloud.failures))
    out.emit(None, "theta,re,im\n" + "".join(r + "\n" for r in cloud.csv_rows()))
    return EXIT_OK


def cmd_rep_finite(args, out: _Output) -> int:
    s = load_system(args.system)
    a = load_element(s, args.element)
    M = representations.pi_finite(s, args.x, args.n, args.theta, a)
    out.say(f"pi_(x={args.x}, n={args.n}, theta={args.theta:g}): operator norm {M.op_norm():.17g}")
    out.emit(M.to_json())
    return EXIT_OK


def cmd_rep_window(args, out: _Output) -> int:
    s = load_system(args.system)
    a = load_element(s, args.element)
    M = representations.pi_window(s, args.x, a, args.lo, args.hi)
    out.say(f"pi_x window [{args.lo}, {args.hi}] at x={args.x}: operator norm {M.op_norm():.17g}")
    out.emit(M.to_json())
    return EXIT_OK


def cmd_verify(args, out: _Output) -> int:
    s = load_system(args.system)
    reports = verify.run_suite(args.suite, s, trials=args.trials, grid=args.grid or 1024,
                               tol=args.tol if args.tol is not None else 1e-8,
                               seed=args.seed if args.seed is not None else 42)
    for rep in reports:
        for line in rep.summary_lines():
            out.say(line)
    passed = all(r.passed for r in reports)
    total = {k: sum(r.counts()[k] for r in reports) for k in ("pass", "fail", "skip")}
    out.say(f"{'PASSED' if passed else 'FAILED'}: {total['pass']} pass, "
            f"{total['fail']} fail, {total['skip']} skip")
    payload = {"system": s.to_json(), "suite": args.suite, "passed": passed, "counts": total,
               "reports": [r.to_json() for r in reports]}
    if args.out:
        write_atomic(args.out, dumps(payload))
        out.say(f"wrote {args.out}")
    return EXIT_OK if passed else EXIT_CHECK


# parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--out", help="output file (JSON, or CSV for spectrum)")
    g.add_argument("--seed", type=int, default=None, help="random seed (verify)")
    g.add_argument("--tol", type=_positive_float, default=None, help="tolerance")
    g.add_argument("--grid", type=_grid, default=None, help="sample grid size (power of two >= 64)")
    g.add_argument("--quiet", action="store_true", help="no summary on stdout")
    g.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    p = _Parser(prog="crossprod",
                description="Crossed-product algebra workbench for finite dynamical systems.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(parent, name, func, help_text):
        q = parent.add_parser(name, parents=[common], help=help_text)
        q.set_defaults(func=func)
        return q

    def with_system(q):
        q.add_argument("--system", required=True, help="system JSON file or bundled system name")
        return q

    ds = sub.add_parser("dynsys", help="dynamical-system queries").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    with_system(leaf(ds, "analyze", cmd_dynsys_analyze, "orbit and freeness report"))

    q = with_system(leaf(sub, "calc", cmd_calc, "algebra operations on element files"))
    q.add_argument("--op", required=True, choices=["mul", "add", "adj", "norm", "E"])
    q.add_argument("--a", required=True)
    q.add_argument("--b")

    cm = sub.add_parser("commutant", help="commutant membership").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    q = with_system(leaf(cm, "check", cmd_commutant_check, "test membership in C(X)'"))
    q.add_argument("--element", required=True)

    idl = sub.add_parser("ideals", help="coefficient killing and vanishing ideals").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    q = with_system(leaf(idl, "kill", cmd_ideals_kill, "kill selected coefficients near x0"))
    q.add_argument("--element", required=True)
    q.add_argument("--x0", type=int, required=True)
    q.add_argument("--n0", type=int, required=True)
    q.add_argument("--klist", type=_int_list, required=True)
    q = with_system(leaf(idl, "vanishing", cmd_ideals_vanishing, "vanishing ideal of orbits"))
    q.add_argument("--orbits", type=_int_list, required=True, help="comma-separated orbit indices")
    q.add_argument("--member", help="element file to test for membership")

    wn = sub.add_parser("wiener", help="Wiener algebra").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    q = leaf(wn, "invert", cmd_wiener_invert, "invert an absolutely convergent series")
    q.add_argument("--series", required=True)

    st = sub.add_parser("structure", help="matrix picture over the Wiener algebra").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    q = with_system(leaf(st, "psi", cmd_structure_psi, "psi(a) as a matrix of series"))
    q.add_argument("--x0", type=int, default=0)
    q.add_argument("--element", required=True)
    q = with_system(leaf(st, "spectrum", cmd_structure_spectrum, "sampled eigenvalues as CSV"))
    q.add_argument("--x0", type=int, default=0)
    q.add_argument("--element", required=True)

    rp = sub.add_parser("rep", help="representation matrices").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    q = with_system(leaf(rp, "finite", cmd_rep_finite, "finite-dimensional representation"))
    q.add_argument("--x", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--theta", type=float, default=0.0, help="corner phase in radians")
    q.add_argument("--element", required=True)
    q = with_system(leaf(rp, "window", cmd_rep_window, "window of the l2(Z) representation"))
    q.add_argument("--x", type=int, default=0)
    q.add_argument("--lo", type=int, required=True)
    q.add_argument("--hi", type=int, required=True)
    q.add_argument("--element", required=True)

    q = with_system(leaf(sub, "verify", cmd_verify, "run verification suites"))
    q.add_argument("--suite", required=True, choices=[*verify.SUITES, "all"])
    q.add_argument("--trials", type=_positive_int, default=50)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, _Output(args))
    except UsageError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    _sys.exit(main())
