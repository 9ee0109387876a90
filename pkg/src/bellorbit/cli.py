"""Command-line interface.

Exit codes: 0 success (a Boundary verdict included), 1 I/O error,
2 validation or usage error, 3 state not detectable by a witness.
"""

import argparse
import shlex
import sys

from . import __version__, kernels
from .chsh import analyze_chsh, evaluate_witness
from .documents import FORMAT_VERSION, dumps, matrix_to_json, read_state, write_state, write_witness
from .errors import BellOrbitError, NotDetectable
from .families import CHECKS, Family, build_state, parse_grid_spec, sweep_family
from .orbit import OrbitConfig, Verdict, classify_al
from .states import is_absolutely_separable, is_entangled_ppt, to_hilbert_schmidt
from .witness import build_conjugated_witness

EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_UNDETECTABLE = 0, 1, 2, 3


def _base_analyses(rho):
    ch = analyze_chsh(rho)
    hs = to_hilbert_schmidt(rho)
    ent, lam_pt = is_entangled_ppt(rho)
    as_ok, margin = is_absolutely_separable(rho)
    return {
        "m_value": ch.m_value,
        "max_chsh": ch.max_chsh,
        "local": ch.local,
        "top_eigenvalues": list(ch.top_eigenvalues),
        "bloch_u": hs.u.tolist(),
        "bloch_v": hs.v.tolist(),
        "correlation_matrix": hs.T.tolist(),
        "ppt_entangled": ent,
        "ppt_min_eigenvalue": lam_pt,
        "absolutely_separable": as_ok,
        "absolute_separability_margin": margin,
    }


def _orbit_block(cls, config):
    res = cls.result
    block = {
        "verdict": res.verdict.value,
        "m_max": res.m_max,
        "m_initial": res.m_initial,
        "spectral_cap": res.spectral_cap,
        "converged": res.converged,
        "diagnostic": res.diagnostic,
        "best_params": res.best_params.as_dict(),
        "config": config.as_dict(),
    }
    if cls.certificate is not None:
        block["certifying_unitary"] = matrix_to_json(cls.certificate)
    return block


def _report(command, digest, analyses, **extra):
    doc = {
        "format_version": FORMAT_VERSION,
        "tool": "bellorbit",
        "tool_version": __version__,
        "backend": kernels.BACKEND,
        "command": command,
        "input_digest": digest,
        "analyses": analyses,
    }
    doc.update(extra)
    return doc


def _emit(text, out=None):
    sys.stdout.write(text)
    if out:
        with open(out, "w") as fh:
            fh.write(text)


def _config(args):
    return OrbitConfig(starts=args.starts, max_iter=args.iters, seed=args.seed)


def _command_line(args):
    parts = ["bellorbit", args.command, args.state]
    if args.command in ("orbit-max", "witness"):
        parts += ["--starts", str(args.starts), "--iters", str(args.iters), "--seed", str(args.seed)]
    if args.command == "witness":
        parts += ["--out", _witness_path(args)]
    return shlex.join(parts)


def _witness_path(args):
    path = args.out or args.witness_out
    if not path:
        raise BellOrbitError("witness needs an output file (positional or --out)")
    return path


def cmd_analyze(args):
    rho, _, dig = read_state(args.state)
    text = dumps(_report(_command_line(args), dig, _base_analyses(rho)))
    _emit(text, args.out)
    return EXIT_OK


def cmd_orbit_max(args):
    rho, _, dig = read_state(args.state)
    config = _config(args)
    cls = classify_al(rho, config)
    analyses = _base_analyses(rho)
    analyses["orbit"] = _orbit_block(cls, config)
    _emit(dumps(_report(_command_line(args), dig, analyses)), args.out)
    return EXIT_OK


def cmd_witness(args):
    out = _witness_path(args)
    rho, _, dig = read_state(args.state)
    config = _config(args)
    cls = classify_al(rho, config)
    if cls.verdict is not Verdict.NON_ABSOLUTELY_LOCAL:
        raise NotDetectable(f"state classified {cls.verdict.value} (M_max = {cls.m_max:.6g})")
    w = build_conjugated_witness(rho, certificate=cls.certificate)
    value = evaluate_witness(w, rho)
    write_witness(out, w, value_on_input=value)
    analyses = _base_analyses(rho)
    analyses["orbit"] = _orbit_block(cls, config)
    analyses["witness"] = {
        "file": out,
        "kind": w.kind.value,
        "bound": w.bound,
        "value_on_input": value,
        "margin": abs(value),
    }
    sys.stdout.write(dumps(_report(_command_line(args), dig, analyses)))
    return EXIT_OK


def cmd_sweep(args):
    grid = {}
    for spec in args.param_grid:
        name, values = parse_grid_spec(spec)
        grid[name] = values
    fixed = {}
    for spec in args.fixed:
        name, values = parse_grid_spec(spec)
        if len(values) != 1:
            raise BellOrbitError(f"--fixed {spec!r} must give exactly one value")
        fixed[name] = values[0]
    checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
    bad = [c for c in checks if c not in CHECKS]
    if bad:
        raise BellOrbitError(f"unknown checks {bad}; choose from {list(CHECKS)}")
    table = sweep_family(args.family, grid, checks, fixed, _config(args))
    text = table.to_text()
    _emit(text, args.out)
    return EXIT_OK


def cmd_make_state(args):
    params = {}
    for spec in args.param:
        name, values = parse_grid_spec(spec)
        params[name] = values[0]
    rho = build_state(args.family, params)
    meta = {"family": Family(args.family).value, "params": params}
    if args.label:
        meta["label"] = args.label
    if args.out:
        write_state(args.out, rho, meta)
    else:
        from .documents import state_document

        sys.stdout.write(dumps(state_document(rho, meta)))
    return EXIT_OK


def _add_orbit_flags(p):
    d = OrbitConfig()
    p.add_argument("--starts", type=int, default=d.starts, help="optimizer starts (default %(default)s)")
    p.add_argument("--iters", type=int, default=d.max_iter, help="iterations per start (default %(default)s)")
    p.add_argument("--seed", type=int, default=d.seed, help="master seed (default %(default)s)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bellorbit",
        description="Bell-CHSH locality of two-qubit states under global unitaries.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="M(rho), CHSH, PPT and absolute separability")
    p.add_argument("state")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("orbit-max", help="maximize M over the unitary orbit and classify")
    p.add_argument("state")
    p.add_argument("--out")
    _add_orbit_flags(p)
    p.set_defaults(func=cmd_orbit_max)

    p = sub.add_parser("witness", help="write a conjugated witness detecting the state")
    p.add_argument("state")
    p.add_argument("witness_out", nargs="?")
    p.add_argument("--out")
    _add_orbit_flags(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("sweep", help="tabulate checks over a family parameter grid")
    p.add_argument("--family", required=True)
    p.add_argument("--param-grid", action="append", default=[], help="name=start:stop:step or name=v1,v2")
    p.add_argument("--fixed", action="append", default=[], help="name=value held constant")
    p.add_argument("--checks", default="chsh,ppt,as")
    p.add_argument("--out")
    _add_orbit_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("make-state", help="write a state document for a named family")
    p.add_argument("--family", required=True)
    p.add_argument("--param", action="append", default=[], help="name=value")
    p.add_argument("--label")
    p.add_argument("--out")
    p.set_defaults(func=cmd_make_state)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotDetectable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDETECTABLE
    except (BellOrbitError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
