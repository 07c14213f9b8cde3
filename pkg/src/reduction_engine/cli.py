"""Command line: reduce, density and harness subcommands writing JSON reports.

Exit status is 0 on success, 1 when nothing was found or a trial failed,
and 2 for usage or validation errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction
from typing import Sequence

from . import __version__
from .domain import ParseError, PresentationError, load_problem
from .harness import APPLICATIONS, DOMAINS, HarnessConfig, run
from .reduce import RELAXED, STRICT, PrimeSearchConfig, density_scan, parse_predictions, run_pipeline
from .specialize import SpecializationError

EXIT_OK, EXIT_NOT_FOUND, EXIT_INVALID = 0, 1, 2
SEED_ENV = "REDUCTION_ENGINE_SEED"


class UsageError(ValueError):
    pass


def prime_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None
    if lo < 2 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad prime range {text!r}")
    return lo, hi


def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _option_primes(value) -> tuple[int, int]:
    if value is None:
        return (2, 10**5)
    try:
        if isinstance(value, str):
            return prime_range(value)
        lo, hi = (int(v) for v in value)
    except (argparse.ArgumentTypeError, TypeError, ValueError):
        raise UsageError(f"bad primes option {value!r}") from None
    if lo < 2 or hi < lo:
        raise UsageError(f"bad primes option {value!r}")
    return lo, hi


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer") from None


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, default=_jsonable) + "\n"


def manifest(command: str, options: dict, digest: str | None, started: float) -> dict:
    return {
        "command": command,
        "options": options,
        "input_digest": digest,
        "version": __version__,
        "duration_seconds": round(time.monotonic() - started, 6),
    }


def emit(doc: dict, out: str | None) -> None:
    text = dumps(doc)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_reduce(args, started) -> int:
    try:
        with open(args.input, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    digest = hashlib.sha256(raw).hexdigest()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.input} is not valid JSON: {exc}") from None
    pres, named, constraints, options = load_problem(doc)
    mode = args.mode or options.get("mode", STRICT)
    primes = args.primes or _option_primes(options.get("primes"))
    max_maps = args.max_maps if args.max_maps is not None else int(options.get("max_maps", 1))
    seed = resolve_seed(args.seed if args.seed is not None else options.get("seed"))
    cfg = PrimeSearchConfig(primes[0], primes[1], mode, max_maps, workers=args.workers)
    resolved = {"mode": mode, "primes": list(primes), "max_maps": max_maps, "seed": seed, "workers": args.workers}
    report = {"presentation": pres.to_json(), "constraints": len(constraints),
              "attested": pres.attested, "set": {k: str(v) for k, v in named.items()}}
    try:
        result = run_pipeline(pres, constraints, cfg, seed)
    except SpecializationError as exc:
        report.update(status="specialization-failed", diagnostic=str(exc), transcript=exc.transcript)
        report["manifest"] = manifest("reduce", resolved, digest, started)
        emit(report, args.output)
        return EXIT_NOT_FOUND
    report.update(result.to_json())
    if result.maps:
        report["status"] = "found"
    else:
        report["status"] = "not-found"
        report["suggestion"] = "enlarge the prime range or switch to relaxed mode"
    report["manifest"] = manifest("reduce", resolved, digest, started)
    emit(report, args.output)
    return EXIT_OK if result.maps else EXIT_NOT_FOUND


def cmd_density(args, started) -> int:
    predicted = parse_predictions(args.predict) if args.predict else None
    rep = density_scan(args.poly, args.bound, predicted, workers=args.workers)
    doc = rep.to_json()
    resolved = {"poly": list(args.poly), "bound": args.bound, "predict": args.predict, "workers": args.workers}
    doc["manifest"] = manifest("density", resolved, None, started)
    emit(doc, args.output)
    return EXIT_OK


def cmd_harness(args, started) -> int:
    support = tuple(s.strip() for s in args.support.split(",")) if args.support else ("-1", "1")
    cfg = HarnessConfig(
        application=args.name,
        size=args.size,
        trials=args.trials,
        seed=resolve_seed(args.seed),
        domain=args.domain,
        primes=args.primes or (2, 10**6),
        mode=args.mode or STRICT,
        enforce_prime_bound=not args.no_prime_bound,
        exhaustive=args.exhaustive,
        support=support,
        samples=args.samples,
        workers=args.workers,
    )
    rep = run(cfg)
    doc = rep.to_json()
    doc["manifest"] = manifest("harness", cfg.to_json(), None, started)
    emit(doc, args.output)
    return EXIT_OK if rep.ok else EXIT_NOT_FOUND


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reduction-engine", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None, help=f"random seed (falls back to ${SEED_ENV})")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("-o", "--output", default=None, help="report path (default: stdout)")

    p = sub.add_parser("reduce", help="find verified maps for a problem file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--mode", choices=(STRICT, RELAXED), default=None)
    p.add_argument("--primes", type=prime_range, default=None, help="inclusive range lo:hi")
    p.add_argument("--max-maps", type=int, default=None)
    common(p)

    p = sub.add_parser("density", help="decomposition types of a polynomial modulo primes")
    p.add_argument("-f", "--poly", type=int_list, required=True, help="coefficients low to high, e.g. -2,0,1")
    p.add_argument("--bound", type=int, default=10**5)
    p.add_argument("--predict", default=None, help='e.g. "1,1=1/2;2=1/2"')
    common(p)

    p = sub.add_parser("harness", help="run a preservation experiment")
    p.add_argument("name", choices=APPLICATIONS)
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--domain", choices=DOMAINS, default="gaussian")
    p.add_argument("--primes", type=prime_range, default=None)
    p.add_argument("--mode", choices=(STRICT, RELAXED), default=None)
    p.add_argument("--no-prime-bound", action="store_true", help="do not require p > size^2")
    p.add_argument("--exhaustive", action="store_true", help="matrix: enumerate every matrix")
    p.add_argument("--support", default=None, help='matrix entries, e.g. "1,1+r2"')
    p.add_argument("--samples", type=int, default=1000)
    common(p)
    return parser


def _join_negative(argv: Sequence[str]) -> list[str]:
    # let "-f -2,0,1" through argparse, which would read -2,0,1 as a flag
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in ("-f", "--poly"):
            nxt = next(it, None)
            if nxt is not None:
                out.append(f"--poly={nxt}")
                continue
        out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.monotonic()
    handlers = {"reduce": cmd_reduce, "density": cmd_density, "harness": cmd_harness}
    try:
        return handlers[args.command](args, started)
    except (UsageError, PresentationError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
