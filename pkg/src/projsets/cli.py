"""Command-line front end.

Subcommands::

    projsets generate --family mub-prime --dim 5 --out set.json
    projsets generate --family compose --sets a.json,b.json --out ab.json
    projsets classify --set set.json
    projsets tomo-sim --set set.json --state rho.json --shots 10000 --seed 7 --out-dir run/
    projsets decompose --sets a.json,b.json --state rho.json
    projsets robustness --sets a.json,b.json --state rho.json

Output goes to ``--out`` (or stdout). On failure a JSON error object is
written to stderr; exit status 2 means invalid input, 3 a numerical
failure. ``PROJSETS_TOL`` overrides the default predicate tolerance.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .classify import classify
from . import sets as sets_mod
from .errors import NumericalError, ValidationError
from .linalg import DEFAULT_TOL
from .separability import minimize_beta_lp, separable_form
from .serialize import dumps, matrix_from_dict, matrix_to_dict, read_json
from .sets import ProjectorSet
from .tomography import estimate, sample_counts, trace_distance

FAMILIES = {
    "standard-rep": sets_mod.standard_representative,
    "standard-complete": sets_mod.standard_complete,
    "mub-prime": sets_mod.mub_prime,
    "weyl-complete": sets_mod.weyl_complete,
}


def _tolerance(args) -> float:
    if args.tol is not None:
        return args.tol
    env = os.environ.get("PROJSETS_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        tol = float(env)
    except ValueError as exc:
        raise ValidationError(f"PROJSETS_TOL={env!r} is not a number") from exc
    if not tol > 0:
        raise ValidationError("PROJSETS_TOL must be positive")
    return tol


def _emit(obj, out: str | None) -> None:
    text = dumps(obj)
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _load_set(path: str) -> ProjectorSet:
    return ProjectorSet.from_dict(read_json(path))


def _load_sets(joined: str) -> ProjectorSet:
    paths = [p for p in joined.split(",") if p]
    if len(paths) < 1:
        raise ValidationError("--sets needs at least one file")
    return sets_mod.compose(*(_load_set(p) for p in paths))


def _load_state(path: str) -> np.ndarray:
    return matrix_from_dict(read_json(path))


def cmd_generate(args) -> None:
    if args.family == "compose":
        if not args.sets:
            raise ValidationError("--family compose requires --sets FILE,FILE")
        pset = _load_sets(args.sets)
    else:
        if args.dim is None:
            raise ValidationError(f"--family {args.family} requires --dim")
        if args.dim < 2:
            raise ValidationError("--dim must be >= 2")
        pset = FAMILIES[args.family](args.dim)
    _emit(pset.to_dict(), args.out)


def cmd_classify(args) -> None:
    report = classify(_load_set(args.set), tol=_tolerance(args))
    _emit(report.to_dict(), args.out)


def cmd_tomo_sim(args) -> None:
    pset = _load_set(args.set)
    rho = _load_state(args.state)
    if args.shots < 0:
        raise ValidationError("--shots must be nonnegative")
    counts = sample_counts(pset, rho, args.shots, args.seed)
    est = estimate(pset, counts)
    metrics = {
        "trace_distance": trace_distance(est, rho),
        "frobenius_error": float(np.linalg.norm(est - rho)),
        "shots_per_basis": args.shots,
        "seed": args.seed,
    }
    outputs = {
        "counts": counts.to_dict(),
        "estimate": matrix_to_dict(est),
        "metrics": metrics,
    }
    if args.out_dir is None:
        _emit(outputs, None)
        return
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, obj in outputs.items():
        _emit(obj, str(out_dir / f"{name}.json"))


def cmd_decompose(args) -> None:
    form = separable_form(_load_sets(args.sets), _load_state(args.state))
    _emit(form.to_dict(), args.out)


def cmd_robustness(args) -> None:
    pset = _load_sets(args.sets)
    rho = _load_state(args.state)
    beta_star, form = minimize_beta_lp(pset, rho)
    out = form.to_dict()
    out["beta_star"] = beta_star
    out["constructive_beta"] = separable_form(pset, rho).beta
    _emit(out, args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="projsets", description=__doc__.split("\n")[0])
    parser.add_argument("--tol", type=float, default=None, help="predicate tolerance override")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build a projector set")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES) + ["compose"])
    p.add_argument("--dim", type=int)
    p.add_argument("--sets", help="comma-separated set files (compose only)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("classify", help="classify a projector set")
    p.add_argument("--set", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("tomo-sim", help="simulate finite-shot tomography")
    p.add_argument("--set", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--shots", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_tomo_sim)

    for name, func, text in (
        ("decompose", cmd_decompose, "constructive separable form"),
        ("robustness", cmd_robustness, "LP-optimal separable form"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--sets", required=True, help="comma-separated per-factor set files")
        p.add_argument("--state", required=True)
        p.add_argument("--out")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except ValidationError as exc:
        sys.stderr.write(dumps({"error": "validation", "message": str(exc)}))
        return 2
    except (NumericalError, np.linalg.LinAlgError) as exc:
        sys.stderr.write(dumps({"error": "numerical", "message": str(exc)}))
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
