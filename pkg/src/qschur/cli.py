"""Command line interface.

Every subcommand reads one JSON file and writes one JSON report, to
``--out`` (atomically) or to stdout.  Exit status is 0 on pass, 1 on a
failure backed by a witness, 2 on bad input or any other error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from . import __version__
from .exceptions import QSchurError
from .pick import (
    CorruptedFunction,
    HarnessConfig,
    PickProblem,
    SeriesFunction,
    dual_certify,
    hindmarsh_certify,
    pick_matrix,
    stein_data,
)
from .qlinalg import psd_check, stein_residual
from .quaternion import ZERO, Quaternion
from .series import (
    QPowerSeries,
    block_criterion,
    certify_schur,
    eval_left,
    eval_right,
    slice_decompose,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

SEED_ENV = "QSCHUR_SEED"


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    tol: float = 1e-9
    order: int = 64
    samples: int = 1000
    seed: int = 0
    radius: float = 0.5
    dft_points: int = 256
    recon_order: int = 16

    def validate(self) -> RunConfig:
        if not self.tol > 0:
            raise InputError("config field 'tol' must be positive")
        for name in ("order", "samples", "dft_points", "recon_order"):
            if getattr(self, name) < 1:
                raise InputError(f"config field {name!r} must be positive")
        if not 0 <= self.seed < 2**64:
            raise InputError("config field 'seed' must be a 64-bit non-negative integer")
        if not 0.0 < self.radius < 1.0:
            raise InputError("config field 'radius' must lie in (0, 1)")
        if self.dft_points <= 2 * self.recon_order:
            raise InputError("config field 'dft_points' must exceed 2 * recon_order")
        return self

    def harness(self) -> HarnessConfig:
        return HarnessConfig(
            samples=self.samples,
            seed=self.seed,
            tol=self.tol,
            radius=self.radius,
            dft_points=self.dft_points,
            order=self.recon_order,
        )


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def resolve_config(args: argparse.Namespace, file_cfg: dict | None) -> RunConfig:
    """Defaults < ``QSCHUR_SEED`` (seed only) < config in the input file < flags."""
    values = asdict(RunConfig())
    env_seed = os.environ.get(SEED_ENV)
    if env_seed is not None:
        try:
            values["seed"] = int(env_seed)
        except ValueError:
            raise InputError(f"environment variable {SEED_ENV} must be an integer") from None
    if file_cfg is not None:
        if not isinstance(file_cfg, dict):
            raise InputError("field 'config' must be an object")
        for key, raw in file_cfg.items():
            if key not in values:
                raise InputError(f"unknown config field {key!r}")
            values[key] = _convert(key, raw)
    for key in values:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    return RunConfig(**values).validate()


def _convert(key: str, raw):
    kind = float if _FIELD_TYPES[key] in (float, "float") else int
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise InputError(f"config field {key!r} must be a number")
    if kind is int and raw != int(raw):
        raise InputError(f"config field {key!r} must be an integer")
    return kind(raw)


# io ------------------------------------------------------------------------------


def _load(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from None
    if not isinstance(obj, dict):
        raise InputError(f"{path} must contain a JSON object")
    return obj


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(report: dict, out: str | None) -> None:
    text = dumps(report)
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _series(obj: dict, where: str = "series") -> QPowerSeries:
    try:
        g = QPowerSeries.from_dict(obj)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None
    try:
        g.check_growth()
    except QSchurError as exc:
        raise InputError(f"{where}: {exc}") from None
    return g


def _quaternion(raw, where: str) -> Quaternion:
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return Quaternion(float(raw))
    if isinstance(raw, list) and len(raw) == 4 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw
    ):
        return Quaternion.from_sequence(raw)
    raise InputError(f"field {where!r} must be a number or a list of 4 numbers")


def _q(v: Quaternion) -> list[float]:
    return list(v.as_tuple())


# subcommands ---------------------------------------------------------------------


def cmd_certify_series(args) -> int:
    obj = _load(args.input)
    cfg = resolve_config(args, obj.get("config"))
    g = _series(obj)
    report = certify_schur(g, cfg.order, cfg.tol)
    out = report.to_dict()
    out["config"] = asdict(cfg)
    _emit(out, args.out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_pick(args) -> int:
    obj = _load(args.input)
    cfg = resolve_config(args, obj.get("config"))
    try:
        problem = PickProblem.from_dict(obj)
    except (ValueError, QSchurError) as exc:
        raise InputError(f"problem: {exc}") from None
    p = pick_matrix(problem)
    size = p.max_abs()
    herm = (p - p.adjoint()).max_abs()
    stein = stein_residual(p, *stein_data(problem))
    ok, lo, scale = psd_check(0.5 * (p + p.adjoint()), cfg.tol)
    out = {
        "kind": "pick",
        "side": problem.side.value,
        "matrix": p.to_dict(),
        "hermitian_residual": herm,
        "stein_residual": stein,
        "stein_relative": stein / (1.0 + size),
        "min_eigenvalue": lo,
        "scale": scale,
        "psd": ok,
        "config": asdict(cfg),
    }
    _emit(out, args.out)
    return EXIT_PASS if ok else EXIT_FAIL


def _sampled_function(obj: dict, dual: bool):
    side = "right" if dual else "left"
    if "series" in obj:
        base = SeriesFunction(_series(obj["series"]), side)
    elif "constant" in obj:
        base = SeriesFunction(QPowerSeries((_quaternion(obj["constant"], "constant"),)), side)
    else:
        raise InputError("input needs a 'series' or a 'constant' field")
    corruption = obj.get("corruption")
    if corruption is None:
        return base
    if not isinstance(corruption, dict):
        raise InputError("field 'corruption' must be an object")
    unknown = set(corruption) - {"offslice_offset", "scale"}
    if unknown:
        raise InputError(f"unknown corruption field {sorted(unknown)[0]!r}")
    offset = _quaternion(corruption.get("offslice_offset", 0.0), "corruption.offslice_offset")
    scale = corruption.get("scale", 1.0)
    if isinstance(scale, bool) or not isinstance(scale, (int, float)):
        raise InputError("field 'corruption.scale' must be a number")
    return CorruptedFunction(base, offset, float(scale))


def cmd_hindmarsh(args) -> int:
    obj = _load(args.input)
    cfg = resolve_config(args, obj.get("config"))
    f = _sampled_function(obj, args.dual)
    harness = cfg.harness()
    report = (dual_certify if args.dual else hindmarsh_certify)(f, harness)
    out = report.to_dict()
    out["config"] = asdict(cfg)
    _emit(out, args.out)
    return EXIT_FAIL if report.failed else EXIT_PASS


def cmd_decompose(args) -> int:
    obj = _load(args.input)
    cfg = resolve_config(args, obj.get("config"))
    g = _series(obj)
    s, h = slice_decompose(g)
    rng = np.random.default_rng([cfg.seed, 7])
    residual = 0.0
    count = min(cfg.samples, 256)
    for _ in range(count):
        while True:
            zeta = complex(*rng.uniform(-1.0, 1.0, size=2))
            if abs(zeta) < 0.95:
                break
        lhs = eval_left(g, Quaternion.from_complex(zeta))
        sv, hv = s(zeta), h(zeta)
        rhs = Quaternion(sv.real, sv.imag, hv.real, hv.imag)
        residual = max(residual, abs(lhs - rhs))
    ok, lo, scale = psd_check(block_criterion(s, h, cfg.order), cfg.tol)
    schur = certify_schur(g, cfg.order, cfg.tol)
    out = {
        "kind": "decompose",
        "s": s.to_dict(),
        "h": h.to_dict(),
        "slice_identity_residual": residual,
        "slice_samples": count,
        "block_criterion": {"order": cfg.order, "psd": ok, "min_eigenvalue": lo, "scale": scale},
        "certify_schur_verdict": schur.verdict.value,
        "verdicts_agree": ok == schur.passed,
        "config": asdict(cfg),
    }
    if args.s_out:
        write_atomic(args.s_out, dumps(s.to_dict()))
    if args.h_out:
        write_atomic(args.h_out, dumps(h.to_dict()))
    _emit(out, args.out)
    return EXIT_PASS if ok else EXIT_FAIL


def _point(text: str) -> Quaternion:
    try:
        parts = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad point {text!r}") from None
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"point {text!r} needs 4 comma-separated numbers")
    return Quaternion(*parts)


def cmd_eval(args) -> int:
    obj = _load(args.input)
    g = _series(obj)
    evaluate = eval_right if args.side == "right" else eval_left
    points = args.at or [ZERO]
    out = {
        "kind": "eval",
        "side": args.side,
        "results": [{"point": _q(a), "value": _q(evaluate(g, a))} for a in points],
    }
    _emit(out, args.out)
    return EXIT_PASS


# parser ------------------------------------------------------------------------------


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, help="PSD tolerance (default 1e-9)")
    p.add_argument("--order", type=int, help="Toeplitz / block-criterion order (default 64)")
    p.add_argument("--samples", type=int, help="random samples (default 1000)")
    p.add_argument("--seed", type=int, help=f"RNG seed (default 0, or ${SEED_ENV})")
    p.add_argument("--radius", type=float, help="reconstruction circle radius (default 0.5)")
    p.add_argument("--dft-points", dest="dft_points", type=int, help="reconstruction samples (default 256)")
    p.add_argument("--recon-order", dest="recon_order", type=int, help="reconstruction degree (default 16)")
    p.add_argument("--out", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qschur", description="Quaternionic Schur-class certification.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify-series", help="Toeplitz contractivity up to --order")
    p.add_argument("input")
    _add_run_flags(p)
    p.set_defaults(func=cmd_certify_series)

    p = sub.add_parser("pick", help="Pick matrix of point/value data")
    p.add_argument("input")
    _add_run_flags(p)
    p.set_defaults(func=cmd_pick)

    p = sub.add_parser("hindmarsh", help="sampled three-point certification of a function")
    p.add_argument("input")
    p.add_argument("--dual", action="store_true", help="right evaluation / dual Pick matrices")
    _add_run_flags(p)
    p.set_defaults(func=cmd_hindmarsh)

    p = sub.add_parser("decompose", help="slice decomposition g = s + h j")
    p.add_argument("input")
    p.add_argument("--s-out", dest="s_out")
    p.add_argument("--h-out", dest="h_out")
    _add_run_flags(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("eval", help="left or right evaluation of a series")
    p.add_argument("input")
    p.add_argument("--at", type=_point, action="append", help="point as w,x,y,z (repeatable)")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else EXIT_PASS
    try:
        return args.func(args)
    except (InputError, QSchurError, ValueError) as exc:
        print(f"qschur: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # noqa: BLE001 - the exit-code contract forbids tracebacks
        print(f"qschur: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
