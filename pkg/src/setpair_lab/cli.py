"""``setpair-lab`` command line: verify, replay, search, conjecture, lym, wedge.

Every subcommand reads one JSON document (``--input PATH``, ``--input -`` for
stdin, or ``--json TEXT``) and writes one JSON document. Exit codes:

    0   success
    1   a conclusion or proof invariant failed (should never happen)
    2   hypotheses or preconditions fail
    3   search truncated by the node budget
    64  malformed input
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import proof, search, serialize, verifiers
from .combinatorics import local_lym_intersecting_check
from .errors import (ChainInvariantError, HypothesisViolation, PreconditionError,
                     ReductionFailure, ResampleFailure, StabilityFailure)
from .exterior import wedge
from .serialize import FormatError

EXIT_OK, EXIT_CONCLUSION, EXIT_HYPOTHESIS, EXIT_TRUNCATED, EXIT_USAGE = 0, 1, 2, 3, 64

VERIFIERS = {
    "bollobas": verifiers.check_bollobas,
    "hemibundled": verifiers.check_hemibundled,
    "furedi": verifiers.check_furedi_subspaces,
    "weighted-space": verifiers.check_weighted_space,
}


class _Exit(Exception):
    def __init__(self, code: int, payload: Optional[dict] = None):
        self.code = code
        self.payload = payload


def _load(args) -> object:
    if args.json is not None:
        text = args.json
    elif args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as exc:
            raise _Exit(EXIT_USAGE, {"error": f"cannot read {args.input}: {exc.strerror}"})
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _Exit(EXIT_USAGE, {"error": f"parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"})


def _int_field(d, key, default=None):
    if not isinstance(d, dict):
        raise FormatError("", "expected an object")
    if key not in d:
        if default is None:
            raise FormatError(key, "missing")
        return default
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(key, "expected int")
    return v


def _budget(args) -> int:
    return args.node_budget if args.node_budget is not None else search.budget_from_env()


def cmd_verify(args) -> tuple[int, dict]:
    inst = serialize.instance_from_json(_load(args))
    try:
        rep = VERIFIERS[args.theorem](inst)
    except PreconditionError as exc:
        return EXIT_HYPOTHESIS, {"error": str(exc)}
    out = serialize.report_to_json(rep)
    if not rep.hypotheses_hold:
        return EXIT_HYPOTHESIS, out
    return (EXIT_OK if rep.conclusion_holds else EXIT_CONCLUSION), out


def cmd_replay(args) -> tuple[int, dict]:
    inst = serialize.instance_from_json(_load(args))
    try:
        trace = proof.replay(inst, seed=args.seed)
    except (HypothesisViolation, PreconditionError) as exc:
        return EXIT_HYPOTHESIS, {"error": str(exc)}
    except (ChainInvariantError, ReductionFailure, ResampleFailure) as exc:
        return EXIT_CONCLUSION, {"error": str(exc), "step": getattr(exc, "bullet", None)}
    return EXIT_OK, serialize.trace_to_json(trace)


def _search_spec(d, args) -> search.SearchSpec:
    profile = d.get("profile", "hemibundled") if isinstance(d, dict) else None
    try:
        profile = search.Profile(profile)
    except ValueError:
        raise FormatError("profile", f"unknown profile {profile!r}") from None
    ordering = d.get("ordering", search.QUANTIFIED)
    iso = d.get("isomorphism_reduction", True)
    if not isinstance(iso, bool):
        raise FormatError("isomorphism_reduction", "expected bool")
    a, b = _int_field(d, "a"), _int_field(d, "b")
    return search.SearchSpec(a, b, _int_field(d, "t", 0), _int_field(d, "n_max", a + b), profile,
                             iso, ordering, _budget(args))


def cmd_search(args) -> tuple[int, dict]:
    d = _load(args)
    try:
        spec = _search_spec(d, args)
        res = search.search_max_family(spec, jobs=args.jobs)
    except FormatError:
        raise
    except PreconditionError as exc:
        return EXIT_HYPOTHESIS, {"error": str(exc)}
    return (EXIT_TRUNCATED if res.truncated else EXIT_OK), serialize.search_result_to_json(res)


def cmd_conjecture(args) -> tuple[int, dict]:
    d = _load(args)
    a, b, t = _int_field(d, "a"), _int_field(d, "b"), _int_field(d, "t", 0)
    n_max = _int_field(d, "n_max", a + b)
    try:
        probe = search.conjecture41_probe(a, b, t, n_max, _budget(args), jobs=args.jobs)
    except PreconditionError as exc:
        return EXIT_HYPOTHESIS, {"error": str(exc)}
    out = {"max_m": probe.max_m, "ak": probe.ak, "consistent": probe.consistent,
           "profile": probe.profile.value, "truncated": probe.result.truncated,
           "counterexample": serialize.instance_to_json(probe.counterexample) if probe.counterexample else None,
           "search": serialize.search_result_to_json(probe.result)}
    if probe.result.truncated:
        return EXIT_TRUNCATED, out
    return (EXIT_OK if probe.consistent else EXIT_CONCLUSION), out


def cmd_lym(args) -> tuple[int, dict]:
    h = serialize.hypergraph_from_json(_load(args))
    try:
        rep = local_lym_intersecting_check(h, args.b)
    except PreconditionError as exc:
        return EXIT_HYPOTHESIS, {"error": str(exc)}
    return (EXIT_OK if rep.holds else EXIT_CONCLUSION), serialize.lym_to_json(rep)


def cmd_wedge(args) -> tuple[int, dict]:
    d = _load(args)
    if isinstance(d, list) and len(d) == 2:
        u_raw, v_raw = d
    elif isinstance(d, dict) and "u" in d and "v" in d:
        u_raw, v_raw = d["u"], d["v"]
    else:
        raise FormatError("", "expected [u, v] or {\"u\": ..., \"v\": ...}")
    u = serialize.multivector_from_json(u_raw, "u")
    v = serialize.multivector_from_json(v_raw, "v")
    try:
        return EXIT_OK, serialize.multivector_to_json(wedge(u, v))
    except PreconditionError as exc:
        return EXIT_HYPOTHESIS, {"error": str(exc)}


COMMANDS = {
    "verify": cmd_verify,
    "replay": cmd_replay,
    "search": cmd_search,
    "conjecture": cmd_conjecture,
    "lym": cmd_lym,
    "wedge": cmd_wedge,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="setpair-lab", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON input file, '-' for stdin (default)")
    common.add_argument("--json", help="inline JSON input")
    common.add_argument("--output", help="write the JSON result here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--node-budget", type=int, default=None,
                        help="search node budget (fallback: $SETPAIR_LAB_BUDGET, then 10^8)")
    common.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="check a theorem on an instance")
    v.add_argument("--theorem", choices=sorted(VERIFIERS), default="hemibundled")
    sub.add_parser("replay", parents=[common], help="replay the exterior-algebra proof")
    sub.add_parser("search", parents=[common], help="exhaustive extremal search")
    sub.add_parser("conjecture", parents=[common], help="probe the AK-type conjecture")
    lym = sub.add_parser("lym", parents=[common], help="local LYM check for an intersecting hypergraph")
    lym.add_argument("--b", type=int, required=True, help="upper shadow depth")
    sub.add_parser("wedge", parents=[common], help="wedge two multivectors")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        code, payload = COMMANDS[args.command](args)
    except _Exit as exc:
        code, payload = exc.code, exc.payload
    except FormatError as exc:
        code, payload = EXIT_USAGE, {"error": str(exc), "field": exc.field}
    except StabilityFailure as exc:
        code, payload = EXIT_CONCLUSION, {"error": str(exc)}
    text = serialize.dumps(payload)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
