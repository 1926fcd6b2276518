"""Command-line front end.

Subcommands::

    ffkronecker solve <file>                    rational point (JSON)
    ffkronecker geosol <file>                   lifting fiber of the whole system
    ffkronecker fiber-check <file> <geosol.json>
    ffkronecker oracle <file>                   exhaustive enumeration
    ffkronecker bench <file>                    timings and program sizes

Exit status: 0 success, 1 usage or parse error, 2 failed precondition
(field too small, inconsistent system, oracle guard), 3 retries exhausted,
4 a fiber that does not validate. Output is deterministic in (input, seed)
except for ``bench``. The JSON layout is described in docs/schema.md.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Sequence

from .errors import CountUnstable, FFKError, ParseError, PreconditionError, InconsistentSystem, RetriesExhausted, TooLarge
from .field import FieldEmbedding, field_from_json
from .geosol import SCHEMA, LiftingFiber, validate_fiber
from .kronecker import SolverConfig, Trace, solve_to_lifting_fiber
from .oracle import enumerate_solutions
from .ratpoint import compute_rational_point
from .slp import ParsedSystem, combine, map_field, parse_system_full

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_RETRIES, EXIT_INVALID = 0, 1, 2, 3, 4

EMIT_TARGETS = {
    "solve": ("point", "trace"),
    "geosol": ("geosol", "fiber", "trace"),
    "fiber-check": ("fiber",),
    "oracle": ("oracle",),
    "bench": ("trace",),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        raise UsageError(message)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0, help="64-bit seed (default 0)")
    common.add_argument("--max-retries", type=_positive, default=16, help="global attempts before giving up")
    common.add_argument("--parallel-trials", type=_positive, default=1, help="independent trials raced in worker processes")
    common.add_argument("--emit", default=None, help="output target: point, geosol, fiber, trace or oracle")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--lambda-budget", type=_positive, default=8)
    common.add_argument("--lambda2-budget", type=_positive, default=8)
    common.add_argument("--alpha-budget", type=_positive, default=8)
    common.add_argument("--nu-budget", type=_positive, default=8)
    common.add_argument("--omega-budget", type=_positive, default=8)
    common.add_argument("--point-budget", type=_positive, default=None, help="abscissae per slice (default delta)")
    common.add_argument("--extension-degree", type=_positive, default=None, help="force [K : F_q]")
    common.add_argument("--allow-small-field", action="store_true", help="skip the field size requirement")
    common.add_argument("--no-preconditions", action="store_true", help="accept any n, d and r")

    p = _Parser(prog="ffkronecker", description="Rational points of varieties over finite fields.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, helptext in (
        ("solve", "compute a rational point"),
        ("geosol", "geometric solution of the lifting fiber"),
        ("oracle", "enumerate all rational solutions"),
        ("bench", "time the pipeline"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("file", help="system file, or - for stdin")
    fc = sub.add_parser("fiber-check", parents=[common], help="validate a serialized fiber")
    fc.add_argument("file")
    fc.add_argument("fiber", help="JSON written by geosol")
    return p


def config_from_args(args: argparse.Namespace) -> SolverConfig:
    return SolverConfig(
        max_global_retries=args.max_retries,
        lambda_budget=args.lambda_budget,
        lambda2_budget=args.lambda2_budget,
        alpha_budget=args.alpha_budget,
        nu_budget=args.nu_budget,
        omega_budget=args.omega_budget,
        point_budget=args.point_budget,
        check_preconditions=not args.no_preconditions,
        enforce_field_size=not args.allow_small_field,
        extension_degree=args.extension_degree,
    )


def _read(path: str, stdin: Any) -> str:
    if path == "-":
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def trial_rng(seed: int, index: int) -> random.Random:
    """Trial 0 uses the seed itself; later trials use derived string seeds."""
    return random.Random(seed) if index == 0 else random.Random(f"ffkronecker:{seed}:{index}")


# ---------------------------------------------------------------------------
# commands; each returns a JSON-ready dict
# ---------------------------------------------------------------------------


def _solve_trial(text: str, config: SolverConfig, seed: int, index: int) -> dict:
    ps = parse_system_full(text)
    pt, trace = compute_rational_point(ps.polys, config, trial_rng(seed, index), Trace())
    return {"point": pt.to_json(), "trace": trace.to_json(), "field": ps.field.descriptor_json()}


def _race(text: str, config: SolverConfig, seed: int, trials: int) -> tuple[int, dict]:
    if trials == 1:
        return 0, _solve_trial(text, config, seed, 0)
    first_error: BaseException | None = None
    with ProcessPoolExecutor(max_workers=trials) as pool:
        futures = [pool.submit(_solve_trial, text, config, seed, i) for i in range(trials)]
        # lowest successful index wins, so the output does not depend on scheduling
        for i, fut in enumerate(futures):
            try:
                res = fut.result()
            except RetriesExhausted as exc:
                first_error = first_error or exc
                continue
            for later in futures[i + 1 :]:
                later.cancel()
            return i, res
    assert first_error is not None
    raise first_error


def cmd_solve(ps: ParsedSystem, text: str, args: argparse.Namespace) -> dict:
    config = config_from_args(args)
    index, res = _race(text, config, args.seed, args.parallel_trials)
    if args.emit == "trace":
        return {"schema": SCHEMA, "kind": "trace", "seed": args.seed, "trial": index, "trace": res["trace"]}
    out = {"schema": SCHEMA, "kind": "point", "field": res["field"], "seed": args.seed, "trace": res["trace"]}
    out.update(res["point"])
    if args.parallel_trials > 1:
        out["trial"] = index
    return out


def cmd_geosol(ps: ParsedSystem, text: str, args: argparse.Namespace) -> dict:
    trace = Trace()
    fiber, state = solve_to_lifting_fiber(ps.polys, config_from_args(args), random.Random(args.seed), trace)
    emb = state.embedding
    base = {
        "schema": SCHEMA,
        "seed": args.seed,
        "base_field": ps.field.descriptor_json(),
        "embedding": None if emb.theta is None else state.field.to_json(emb.theta),
    }
    if args.emit == "trace":
        return {"schema": SCHEMA, "kind": "trace", "seed": args.seed, "trace": trace.to_json()}
    if args.emit == "fiber":
        return dict(base, kind="fibers", fibers=[fb.to_json() for fb in state.fibers])
    return dict(base, kind="geosol", degrees=list(trace.degrees), fiber=fiber.to_json(), trace=trace.to_json())


def load_fiber(obj: dict, ps: ParsedSystem) -> tuple[LiftingFiber, list]:
    """The fiber and the system carried to the fiber's field."""
    if obj.get("schema") != SCHEMA:
        raise UsageError(f"expected schema {SCHEMA!r}")
    emb_json = None
    if obj.get("kind") == "geosol":
        emb_json = obj.get("embedding")
        obj = obj["fiber"]
    elif obj.get("kind") != "fiber":
        raise UsageError("expected a geosol or fiber document")
    K = field_from_json(obj["field"])
    Fq = ps.field
    theta = None if emb_json is None else K.from_json(emb_json)
    try:
        emb = FieldEmbedding(Fq, K, theta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fiber = LiftingFiber.from_json(obj, K)
    system = [map_field(s, K, emb.embed) for s in ps.polys] if K != Fq else list(ps.polys)
    return fiber, system[: fiber.stage]


def cmd_fiber_check(ps: ParsedSystem, text: str, args: argparse.Namespace) -> dict:
    raw = _read(args.fiber, sys.stdin)
    try:
        obj = json.loads(raw)
        fiber, system = load_fiber(obj, ps)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad fiber document: {exc}") from None
    if fiber.n != len(ps.var_names):
        raise UsageError("fiber and system have different numbers of variables")
    return validate_fiber(fiber, system).to_json()


def cmd_oracle(ps: ParsedSystem, text: str, args: argparse.Namespace) -> dict:
    sols = enumerate_solutions(ps.polys, ps.field)
    return dict({"schema": SCHEMA, "kind": "oracle", "field": ps.field.descriptor_json()}, **sols.to_json())


def cmd_bench(ps: ParsedSystem, text: str, args: argparse.Namespace) -> dict:
    trace = Trace()
    t0 = time.perf_counter()
    pt, _ = compute_rational_point(ps.polys, config_from_args(args), random.Random(args.seed), trace)
    total = time.perf_counter() - t0
    prog = combine(ps.polys)
    return {
        "schema": SCHEMA,
        "kind": "bench",
        "seed": args.seed,
        "total_seconds": round(total, 6),
        "slp": {"time": prog.time, "space": prog.space, "nodes": len(prog.nodes)},
        "trace": trace.to_json(timings=True),
        "verified": pt.verified,
    }


COMMANDS = {
    "solve": cmd_solve,
    "geosol": cmd_geosol,
    "fiber-check": cmd_fiber_check,
    "oracle": cmd_oracle,
    "bench": cmd_bench,
}


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def render_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _flat(v: Any) -> str:
    if isinstance(v, list):
        return "(" + ", ".join(_flat(x) for x in v) + ")"
    return str(v)


def render_text(obj: dict) -> str:
    lines = []
    kind = obj.get("kind")
    if kind == "point":
        lines.append("point: " + _flat(obj["point"]))
        lines.append("residuals: " + " ".join(_flat(r) for r in obj["residuals"]))
        lines.append("degrees: " + " ".join(str(d) for d in obj["trace"]["degrees"]))
    elif kind == "oracle":
        lines.append(f"count: {obj['count']}")
        lines.extend(_flat(pt) for pt in obj["points"])
    elif kind == "fiber-report":
        lines.append("ok" if obj["ok"] else "FAILED")
        lines.extend(obj.get("messages", []))
    else:
        for key in sorted(obj):
            if key != "schema":
                lines.append(f"{key}: {json.dumps(obj[key], sort_keys=True)}")
    return "\n".join(lines) + "\n"


def run(argv: Sequence[str], stdout: Any = None, stderr: Any = None, stdin: Any = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    stdin = stdin or sys.stdin
    try:
        args = build_parser().parse_args(list(argv))
        allowed = EMIT_TARGETS[args.command]
        if args.emit is None:
            args.emit = allowed[0]
        if args.emit not in allowed:
            raise UsageError(f"--emit {args.emit} is not available for {args.command} (choose from {', '.join(allowed)})")
        text = _read(args.file, stdin)
        ps = parse_system_full(text)
        out = COMMANDS[args.command](ps, text, args)
    except UsageError as exc:
        print(f"ffkronecker: error: {exc}", file=stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"ffkronecker: parse error: {exc}", file=stderr)
        return EXIT_USAGE
    except (PreconditionError, InconsistentSystem, TooLarge, CountUnstable) as exc:
        print(f"ffkronecker: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_PRECONDITION
    except RetriesExhausted as exc:
        print(f"ffkronecker: RetriesExhausted: {exc}", file=stderr)
        return EXIT_RETRIES
    except FFKError as exc:  # pragma: no cover - every stage converts to the above
        print(f"ffkronecker: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_RETRIES
    stdout.write(render_text(out) if args.format == "text" else render_json(out))
    if out.get("kind") == "fiber-report" and not out["ok"]:
        return EXIT_INVALID
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
