"""JSON encodings for hypergraphs, multivectors, instances, reports, traces and
search results. Big integers and rationals travel as decimal strings."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import combinatorics as cb
from .combinatorics import Hypergraph
from .errors import PreconditionError
from .exterior import Multivector
from .linalg import RationalSubspace
from .verifiers import SETS, SUBSPACES, PairFamilyInstance, VerifierReport


class FormatError(PreconditionError):
    """Malformed JSON input; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def ratio(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def ratio_or_none(x):
    return None if x is None else ratio(x)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _get(d: dict, key: str, where: str, kind=None):
    if not isinstance(d, dict):
        raise FormatError(where, "expected an object")
    if key not in d:
        raise FormatError(f"{where}.{key}" if where else key, "missing")
    val = d[key]
    if kind is not None and (not isinstance(val, kind) or isinstance(val, bool) and kind is int):
        raise FormatError(f"{where}.{key}" if where else key, f"expected {kind.__name__}")
    return val


def _rational(s, where: str) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (int, str)):
        raise FormatError(where, "expected an integer or a rational string")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise FormatError(where, f"not a rational: {s!r}") from None


# -- hypergraphs ---------------------------------------------------------------

def hypergraph_to_json(h: Hypergraph) -> dict:
    return {"n": h.n, "r": h.r, "edges": [list(e) for e in h.sets()]}


def hypergraph_from_json(d: dict) -> Hypergraph:
    n = _get(d, "n", "", int)
    r = _get(d, "r", "", int)
    edges = _get(d, "edges", "", list)
    try:
        return Hypergraph.from_sets(n, edges, r)
    except (PreconditionError, TypeError) as exc:
        raise FormatError("edges", str(exc)) from None


# -- multivectors --------------------------------------------------------------

def multivector_to_json(w: Multivector) -> dict:
    terms = []
    for key in sorted(w.terms):
        c = w.terms[key]
        terms.append({"set": list(cb.elements(key)), "num": str(c.numerator), "den": str(c.denominator)})
    return {"n": w.n, "r": w.grade, "terms": terms}


def multivector_from_json(d: dict, where: str = "") -> Multivector:
    n = _get(d, "n", where, int)
    r = _get(d, "r", where, int)
    terms = {}
    for i, t in enumerate(_get(d, "terms", where, list)):
        tw = f"{where}.terms[{i}]"
        elems = _get(t, "set", tw, list)
        num = _rational(_get(t, "num", tw), tw + ".num")
        den = _rational(_get(t, "den", tw), tw + ".den")
        if den == 0:
            raise FormatError(tw + ".den", "zero denominator")
        try:
            key = cb.mask(elems)
        except (PreconditionError, TypeError) as exc:
            raise FormatError(tw + ".set", str(exc)) from None
        terms[key] = terms.get(key, 0) + num / den
    try:
        return Multivector(n, r, terms)
    except PreconditionError as exc:
        raise FormatError(where or "terms", str(exc)) from None


# -- instances -----------------------------------------------------------------

def _side_to_json(inst: PairFamilyInstance, side):
    if inst.kind == SETS:
        return list(cb.elements(side))
    return [[str(x) for x in row] for row in side.rows]


def instance_to_json(inst: PairFamilyInstance) -> dict:
    return {"kind": inst.kind, "n": inst.n, "t": inst.t,
            "pairs": [{"A": _side_to_json(inst, a), "B": _side_to_json(inst, b)} for a, b in inst.pairs]}


def instance_from_json(d: dict) -> PairFamilyInstance:
    kind = _get(d, "kind", "", str)
    if kind not in (SETS, SUBSPACES):
        raise FormatError("kind", f"expected 'sets' or 'subspaces', got {kind!r}")
    n = _get(d, "n", "", int)
    t = d.get("t", 0)
    if isinstance(t, bool) or not isinstance(t, int):
        raise FormatError("t", "expected int")
    pairs = []
    for i, p in enumerate(_get(d, "pairs", "", list)):
        sides = []
        for name in ("A", "B"):
            where = f"pairs[{i}].{name}"
            raw = _get(p, name, f"pairs[{i}]", list)
            if kind == SETS:
                if not all(isinstance(x, int) and not isinstance(x, bool) for x in raw):
                    raise FormatError(where, "expected a list of integers")
                if any(not 1 <= x <= n for x in raw):
                    raise FormatError(where, f"element outside [1, {n}]")
                sides.append(cb.mask(raw))
            else:
                rows = []
                for k, row in enumerate(raw):
                    if not isinstance(row, list) or len(row) != n:
                        raise FormatError(f"{where}[{k}]", f"expected a row of length {n}")
                    rows.append([_rational(x, f"{where}[{k}]") for x in row])
                sides.append(RationalSubspace.span(n, rows))
        pairs.append(tuple(sides))
    try:
        return PairFamilyInstance(kind, n, tuple(pairs), t)
    except PreconditionError as exc:
        raise FormatError("pairs", str(exc)) from None


# -- reports -------------------------------------------------------------------

def report_to_json(rep: VerifierReport) -> dict:
    return {
        "theorem": rep.theorem,
        "hypothesis_flags": {k: {"holds": f.holds, "witness": list(f.witness) if f.witness else None}
                             for k, f in rep.hypotheses.items()},
        "hypotheses_hold": rep.hypotheses_hold,
        "weighted_sum": ratio_or_none(rep.weighted_sum),
        "bound_value": rep.bound_value,
        "m_bound": rep.m_bound,
        "conclusion_holds": rep.conclusion_holds,
        "equality": rep.equality,
        "extremal_recognized": rep.extremal_recognized,
        "permutation": rep.permutation,
        "remarks": rep.remarks,
    }


def lym_to_json(rep) -> dict:
    return {"lhs": ratio(rep.lhs), "rhs": ratio(rep.rhs), "holds": rep.holds, "equality": rep.equality}


def trace_to_json(trace) -> dict:
    red = None
    if trace.reduction is not None:
        r = trace.reduction

        def rows(s):
            return [[str(x) for x in row] for row in s.rows]

        red = {"v_prime": rows(r.v_prime), "v_second": rows(r.v_second), "q": rows(r.q),
               "seed": r.seed, "attempts": r.attempts, "permutation": r.permutation}
    return {
        "N": trace.N,
        "lifted_pairs": [{"A": [[str(x) for x in row] for row in a.rows],
                          "B": [[str(x) for x in row] for row in b.rows]} for a, b in trace.lifted_pairs],
        "reduction_record": red,
        "chain": [{"pair": s.index, "a": s.a, "y_dim": s.y_dim, "z_dim": s.z_dim,
                   "lym_lhs": ratio_or_none(s.lym_lhs), "lym_rhs": ratio_or_none(s.lym_rhs),
                   "self_annihilating": s.self_annihilating} for s in trace.steps],
        "chain_dims": trace.chain_dims,
        "weighted_sum": ratio(trace.weighted_sum),
        "chain_bound": ratio(trace.chain_bound),
        "final_slack": ratio(trace.final_slack),
        "tight": trace.tight,
        "permutation": trace.permutation,
        "seed": trace.seed,
        "retries": trace.attempts,
        "flags": trace.flags,
    }


def search_result_to_json(res) -> dict:
    spec = res.spec
    return {
        "spec": {"a": spec.a, "b": spec.b, "t": spec.t, "n_max": spec.n_max, "profile": spec.profile.value,
                 "isomorphism_reduction": spec.isomorphism_reduction, "ordering": spec.ordering},
        "per_n": [{"n": r["n"], "max_m": r["max_m"]} for r in res.per_n],
        "max_m": res.max_m,
        "bound": res.bound,
        "tight": res.tight,
        "unique_structure": res.unique_structure,
        "witnesses": [instance_to_json(w) for w in res.witnesses],
        "truncated": res.truncated,
        "nodes": res.nodes,
    }
