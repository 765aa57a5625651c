"""Command line front end.

    preoperad laws    [--backend B]
    preoperad verify  [--law ID|all] [--backend B] [--prime P] [--dim D]
                      [--trials N] [--seed S] [--max-degree K]
                      [--mutate NAME]... [--config FILE] [--report FILE]
    preoperad eval    --script FILE [--backend B] [--prime P] [--dim D]
                      [--seed S]

Exit codes: 0 all checks pass, 1 at least one law failed, 2 usage or input
problem.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import laws, script as script_mod
from .backends import EndoBackend, FreeBackend
from .calculus import KNOWN_MUTATIONS
from .errors import PreOperadError
from .free import Signature
from .rings import CoefficientRing

_CONFIG_KEYS = ("backend", "prime", "dim", "trials", "seed",
                "degree_min", "degree_max", "mutations")


def _add_backend_flags(p: argparse.ArgumentParser):
    p.add_argument("--backend", choices=("endo", "free"), default=None,
                   help="element representation (default endo)")
    p.add_argument("--prime", type=int, default=None,
                   help="coefficient field modulus (default 97)")
    p.add_argument("--dim", type=int, default=None,
                   help="dimension of the underlying module (default 2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="preoperad",
        description="exact checks for graded composition calculus")
    sub = parser.add_subparsers(dest="command", required=True)

    p_laws = sub.add_parser("laws", help="list the registered laws")
    p_laws.add_argument("--backend", choices=("endo", "free"), default=None,
                        help="only laws available on this backend")

    p_verify = sub.add_parser("verify", help="run laws over random trials")
    _add_backend_flags(p_verify)
    p_verify.add_argument("--law", default="all",
                          help="law id, or 'all' (default)")
    p_verify.add_argument("--trials", type=int, default=None,
                          help="trials per law (default 200)")
    p_verify.add_argument("--seed", type=int, default=None,
                          help="master seed (default 0)")
    p_verify.add_argument("--max-degree", type=int, default=None,
                          help="largest degree drawn per input (default 4)")
    p_verify.add_argument("--mutate", action="append", default=None,
                          choices=sorted(KNOWN_MUTATIONS), metavar="NAME",
                          help="enable a canary mutation (repeatable)")
    p_verify.add_argument("--config", default=None, metavar="FILE",
                          help="JSON file with trial settings; flags override")
    p_verify.add_argument("--report", default=None, metavar="FILE",
                          help="write the full JSON report here")

    p_eval = sub.add_parser("eval", help="evaluate a script file")
    _add_backend_flags(p_eval)
    p_eval.add_argument("--script", required=True, metavar="FILE",
                        help="script path, or '-' for stdin")
    p_eval.add_argument("--seed", type=int, default=None,
                        help="draw undeclared names at random (endo only)")
    return parser


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise PreOperadError("config file must hold a JSON object")
    unknown = set(data) - set(_CONFIG_KEYS)
    if unknown:
        raise PreOperadError(f"unknown config keys: {sorted(unknown)}")
    return data


def _trial_config(args) -> laws.TrialConfig:
    settings = {"backend": "endo", "prime": 97, "dim": 2, "trials": 200,
                "seed": 0, "degree_min": 1, "degree_max": 4, "mutations": ()}
    settings.update(_load_config(args.config))
    overrides = {"backend": args.backend, "prime": args.prime,
                 "dim": args.dim, "trials": args.trials, "seed": args.seed,
                 "degree_max": args.max_degree, "mutations": args.mutate}
    for key, value in overrides.items():
        if value is not None:
            settings[key] = value
    settings["mutations"] = tuple(settings["mutations"])
    return laws.TrialConfig(**settings)


def _cmd_laws(args) -> int:
    chosen = (laws.laws_for_backend(args.backend) if args.backend
              else laws.list_laws())
    for law in chosen:
        backends = ",".join(law.backends)
        print(f"{law.law_id:28s} [{backends}] {law.description}")
    return 0


def _cmd_verify(args) -> int:
    cfg = _trial_config(args)
    ids = None if args.law == "all" else [args.law]
    suite = laws.run_suite(cfg, ids)
    for rep in suite["laws"]:
        flags = []
        if rep["vacuous"]:
            flags.append(f"vacuous={rep['vacuous']}")
        if rep["underpowered"]:
            flags.append("underpowered")
        tail = (" " + " ".join(flags)) if flags else ""
        print(f"{rep['status'].upper():4s} {rep['law_id']:28s} "
              f"trials={rep['trials']} millis={rep['millis']}{tail}")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(suite, fh, indent=2, sort_keys=True)
            fh.write("\n")
    print(f"suite: {suite['status']}")
    return 0 if suite["status"] == "pass" else 1


def _cmd_eval(args) -> int:
    if args.script == "-":
        text = sys.stdin.read()
    else:
        with open(args.script, "r", encoding="utf-8") as fh:
            text = fh.read()
    parsed = script_mod.parse_script(text)
    ring = CoefficientRing.prime_field(args.prime or 97)
    backend_kind = args.backend or "endo"
    if backend_kind == "endo":
        backend = EndoBackend(ring, args.dim or 2)
    else:
        gens = tuple((d.name, d.degree) for d in parsed.decls)
        if "mu" not in {d.name for d in parsed.decls}:
            gens += (("mu", 2),)
        backend = FreeBackend(ring, Signature(gens))
    rng = np.random.default_rng(args.seed) if args.seed is not None else None
    value = script_mod.eval_script(parsed, backend, rng=rng)
    if backend_kind == "endo":
        payload = value.serialize()["entries"]
    else:
        payload = value.serialize()["terms"]
    print(json.dumps({"degree": value.degree, "backend": backend_kind,
                      "payload": payload}, sort_keys=True))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "laws":
            return _cmd_laws(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_eval(args)
    except PreOperadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
