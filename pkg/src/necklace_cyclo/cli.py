"""Command-line front end: ``necklace-cyclo <subcommand> ...``.

Exit codes: 0 success, 1 usage or input error, 2 a checked property failed
or a counterexample was found.  Output is JSON by default and is
deterministic for every ``--jobs`` value.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from . import eulerprod, groups, higher, necklace, systems
from .exactmath import HypothesisNotMet, Poly, mobius

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    jobs: int = 1
    max_order: int = groups.DEFAULT_ORDER_BOUND
    budget: int = higher.DEFAULT_BUDGET
    cutoff: int = 10**6
    output: str = "json"

    def __post_init__(self):
        for name in ("jobs", "max_order", "budget", "cutoff"):
            if getattr(self, name) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")


def _default_jobs() -> int:
    raw = os.environ.get("NECKLACE_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------

def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Poly):
        return obj.to_json()
    if isinstance(obj, Fraction):
        return str(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _table_cell(v: Any) -> str:
    if isinstance(v, Poly):
        return str(v)
    if isinstance(v, (list, tuple)):
        return " ".join(_table_cell(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(_jsonable(v), sort_keys=True)
    return str(v)


def emit(result: Any, cfg: RunConfig, out=None) -> None:
    out = out or sys.stdout
    if cfg.output == "json":
        out.write(json.dumps(_jsonable(result), sort_keys=True) + "\n")
        return
    rows = result.get("rows") if isinstance(result, dict) else None
    if rows:
        cols = list(rows[0])
        out.write("\t".join(cols) + "\n")
        for r in rows:
            out.write("\t".join(_table_cell(r[c]) for c in cols) + "\n")
        rest = {k: v for k, v in result.items() if k != "rows"}
    else:
        rest = result if isinstance(result, dict) else {"value": result}
    for k, v in rest.items():
        out.write(f"{k}\t{_table_cell(v)}\n")


def _load_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


# --------------------------------------------------------------------------
# subcommands; each returns (result, exit_code)
# --------------------------------------------------------------------------

def cmd_md(a, cfg):
    s = necklace.necklace_S(a.d)
    return {"d": a.d, "S": s, "M": necklace.necklace_M(a.d)}, EXIT_OK


def cmd_factors(a, cfg):
    if a.poly:
        f = Poly.from_json(_load_json(a.poly))
        rep = necklace.cyclotomic_factors(f)
    elif a.d:
        rep = necklace.necklace_factors(a.d)
    else:
        raise UsageError("give --d or --poly")
    return rep.to_json(), EXIT_OK


def _read_checkpoint(path: Path, key: dict) -> tuple[set[int], list]:
    if not path.exists():
        return set(), []
    data = _load_json(str(path))
    if {k: data.get(k) for k in key} != key:
        raise UsageError(f"checkpoint {path} was written for different parameters")
    return set(data["done"]), [tuple(x) for x in data["counterexamples"]]


def _write_checkpoint(path: Path, key: dict, done: set[int], bad: list) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps({**key, "done": sorted(done),
                               "counterexamples": sorted(bad)}), encoding="utf-8")
    tmp.replace(path)


def cmd_verify(a, cfg):
    key = {"m_max": a.m_max, "d_max": a.d_max, "lift": not a.direct}
    ckpt = Path(a.checkpoint) if a.checkpoint else None
    done, bad = _read_checkpoint(ckpt, key) if ckpt else (set(), [])
    shards = necklace.iter_conjecture_shards(
        a.m_max, a.d_max, jobs=cfg.jobs, lift=not a.direct, skip=done)
    for c, shard in shards:
        done.add(c)
        bad.extend(shard)
        if a.stream:
            a.out.write(json.dumps({"c": c, "counterexamples": shard}) + "\n")
            a.out.flush()
        if ckpt and len(done) % 64 == 0:
            _write_checkpoint(ckpt, key, done, bad)
    if ckpt:
        _write_checkpoint(ckpt, key, done, bad)
    bad = sorted(set(bad), key=lambda md: (md[1], md[0]))
    result = {**key, "counterexamples": [list(x) for x in bad]}
    return result, EXIT_VIOLATION if bad else EXIT_OK


def cmd_trace(a, cfg):
    pairs = [(a.d, a.m)] if a.d and a.m else [
        (d, m) for d in range(1, a.max + 1) for m in range(1, a.max + 1)]
    if not pairs or not all(pairs[0]):
        raise UsageError("give --d and --m, or --max")
    rows, ok = [], True
    for d, m in pairs:
        value = necklace.trace_M_at_zeta(d, m)
        expected = necklace.trace_formula(d, m)
        ok &= value == expected
        rows.append({"d": d, "m": m, "trace": str(value), "expected": expected})
    return {"rows": rows, "all_match": ok}, EXIT_OK if ok else EXIT_VIOLATION


def cmd_systems(a, cfg):
    found = systems.search_primitive(a.m, a.signed, a.max_size, jobs=cfg.jobs)
    result = {"m": a.m, "signed": a.signed, "systems": [s.to_json() for s in found]}
    code = EXIT_OK
    if a.minimal_d:
        certs = {}
        for s in found:
            cert = systems.system_to_minimal_d(s, cutoff=cfg.cutoff)
            certs[",".join(map(str, s.residues))] = cert.to_json()
            if not (cert.divides and cert.minimal):
                code = EXIT_VIOLATION
        result["minimal_d"] = certs
    return result, code


def cmd_minimal_d(a, cfg):
    try:
        S = systems.NecklaceSystem(a.m, tuple(_int_list(a.residues)), a.signed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not systems.is_system(S):
        return {"m": a.m, "residues": S.to_json(), "is_system": False}, EXIT_VIOLATION
    cert = systems.system_to_minimal_d(S, cutoff=cfg.cutoff)
    result = {"m": a.m, "signed": a.signed, "residues": S.to_json(), "is_system": True,
              "primitive": systems.is_primitive(S), **cert.to_json()}
    return result, EXIT_OK if cert.divides else EXIT_VIOLATION


def cmd_group(a, cfg):
    if a.preset:
        G = groups.preset(a.preset)
    elif a.table:
        G = groups.FiniteGroup.from_json(_load_json(a.table), max_order=cfg.max_order)
    else:
        raise UsageError("give --preset or --table")
    lat = groups.enumerate_subgroups(G, max_order=cfg.max_order)
    S = groups.g_necklace_S(G)
    result = {"group": G.name or "", "order": G.order, "subgroups": len(lat),
              "mu": lat.mu(G.full), "S": S, "M": S / G.order,
              "factors": necklace.cyclotomic_factors(S).to_json()}
    code = EXIT_OK
    if a.chain:
        try:
            chain = groups.auto_chain(G)
        except groups.ChainError as exc:
            result["chain"] = {"error": str(exc)}
            return result, EXIT_VIOLATION
        op, ok = groups.chain_factorize(G, chain)
        formula = (-1) ** len(chain.primes)
        for c in chain.counts:
            formula *= c
        result["chain"] = {**chain.to_json(), "operator": op.to_json(),
                           "operator_text": str(op), "verified": ok,
                           "mu_formula": formula, "interval_condition":
                           groups.chain_interval_condition(G, chain)}
        if not ok or formula != lat.mu(G.full):
            code = EXIT_VIOLATION
    return result, code


def _series_from_args(a) -> eulerprod.PolySeries:
    if a.input:
        return eulerprod.PolySeries.from_json(_load_json(a.input))
    if a.geometric is not None:
        return eulerprod.PolySeries.geometric(Poly.x(), a.geometric)
    if a.partitions is not None:
        return eulerprod.PolySeries.partition_series(a.partitions)
    raise UsageError("give --input, --geometric D or --partitions D")


def cmd_euler_invert(a, cfg):
    series = _series_from_args(a)
    try:
        b = eulerprod.euler_invert(series) if not a.log else eulerprod.euler_invert_log(series)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return [p.to_json() for p in b], EXIT_OK


def cmd_euler_expand(a, cfg):
    data = _load_json(a.input)
    if not isinstance(data, list):
        raise UsageError("exponent JSON must be a list of polynomial encodings")
    b = [Poly.from_json(x) for x in data]
    D = a.D if a.D is not None else len(b)
    return eulerprod.euler_expand(b, D).to_json(), EXIT_OK


def cmd_higher(a, cfg):
    if a.zeta:
        vals = higher.M_dn_at_zeta(a.d_max, a.n, a.zeta)
        rows = [{"d": d, "value": v} for d, v in enumerate(vals, start=1)]
        return {"n": a.n, "m": a.zeta, "rows": rows}, EXIT_OK
    if a.closed_form:
        try:
            rows = [{"d": d, "value": higher.eval_at_zeta_p(d, a.n, a.closed_form)}
                    for d in range(1, a.d_max + 1)]
        except HypothesisNotMet as exc:
            return {"n": a.n, "p": a.closed_form, "error": str(exc)}, EXIT_VIOLATION
        return {"n": a.n, "p": a.closed_form, "rows": rows}, EXIT_OK
    if a.period:
        return higher.P_eval_periodicity(a.n, a.period).to_json(), EXIT_OK
    try:
        polys = higher.M_dn(a.d_max, a.n, budget=cfg.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return {"n": a.n, "rows": [{"d": d, "M": p} for d, p in enumerate(polys, start=1)]}, EXIT_OK


def cmd_euler_char(a, cfg):
    rows = [{"d": d, "chi_c": higher.euler_char(d, a.n, a.field)} for d in range(1, a.d_max + 1)]
    return {"n": a.n, "field": a.field, "rows": rows}, EXIT_OK


def cmd_balanced(a, cfg):
    exp = higher.balanced_expansion(a.n, a.b)
    return {"n": a.n, "base": a.b, "expansion": exp.to_json() if exp else None,
            "text": str(exp) if exp else None}, EXIT_OK


def cmd_phi_check(a, cfg):
    try:
        ok = necklace.phi_minus_one_divisibility(a.m, a.d)
    except HypothesisNotMet as exc:
        return {"m": a.m, "d": a.d, "status": "hypothesis-not-met", "reason": str(exc)}, EXIT_OK
    return {"m": a.m, "d": a.d, "status": "checked", "divides": ok}, EXIT_OK if ok else EXIT_VIOLATION


def cmd_local(a, cfg):
    from .exactmath import reduce_mod_xm

    ok = necklace.local_factor_check(a.d, a.m, a.ell, a.j)
    residue = reduce_mod_xm(necklace.necklace_S(a.d), a.m)
    return {"d": a.d, "m": a.m, "ell": a.ell, "j": a.j, "divisible": ok,
            "S_mod_xm": residue}, EXIT_OK


def cmd_primewise(a, cfg):
    modulus = a.m if a.sign == "minus" else 2 * a.m
    congruent = necklace.primewise_congruent(a.d, a.e, modulus)
    direct = necklace.congruent_mod_xm(a.d, a.e, a.m, a.sign)
    result = {"d": a.d, "e": a.e, "m": a.m, "sign": a.sign,
              "primewise_congruent": congruent, "congruent_mod_xm": direct}
    # the theorem only speaks when the primes match up
    return result, EXIT_VIOLATION if congruent and not direct else EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def _pos(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    # global options are accepted before or after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "table"], default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=_pos, default=argparse.SUPPRESS,
                        help="workers (default: $NECKLACE_JOBS or 1)")
    common.add_argument("--max-order", type=_pos, default=argparse.SUPPRESS)
    common.add_argument("--budget", type=_pos, default=argparse.SUPPRESS)
    common.add_argument("--cutoff", type=_pos, default=argparse.SUPPRESS)
    p = _Parser(prog="necklace-cyclo", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    sp = add("md", cmd_md, "necklace polynomial S_d = d M_d")
    sp.add_argument("--d", type=_pos, required=True)

    sp = add("factors", cmd_factors, "cyclotomic factor report")
    sp.add_argument("--d", type=_pos)
    sp.add_argument("--poly", help="polynomial JSON file ('-' for stdin)")

    sp = add("verify-conjecture", cmd_verify, "search for counterexamples to the x^m -+ 1 conjecture")
    sp.add_argument("--m-max", type=_pos, required=True)
    sp.add_argument("--d-max", type=_pos, required=True)
    sp.add_argument("--checkpoint")
    sp.add_argument("--stream", action="store_true", help="emit one NDJSON record per shard")
    sp.add_argument("--direct", action="store_true", help="scan every S_d instead of lifting")

    sp = add("trace", cmd_trace, "Tr_m M_d(zeta_m)")
    sp.add_argument("--d", type=_pos)
    sp.add_argument("--m", type=_pos)
    sp.add_argument("--max", type=_pos, default=None)

    sp = add("systems", cmd_systems, "search primitive necklace systems")
    sp.add_argument("--m", type=_pos, required=True)
    sp.add_argument("--signed", action="store_true")
    sp.add_argument("--max-size", type=_pos, default=3)
    sp.add_argument("--minimal-d", action="store_true")

    sp = add("minimal-d", cmd_minimal_d, "smallest d realising a system")
    sp.add_argument("--m", type=_pos, required=True)
    sp.add_argument("--residues", required=True, help="comma-separated residues")
    sp.add_argument("--signed", action="store_true")

    sp = add("group", cmd_group, "G-necklace polynomial of a finite group")
    sp.add_argument("--preset")
    sp.add_argument("--table", help="Cayley table JSON file")
    sp.add_argument("--chain", action="store_true", help="also check the chain factorization")

    for name, fn in (("euler-invert", cmd_euler_invert),):
        sp = add(name, fn, "exponents b_j of a combinatorial Euler product")
        sp.add_argument("--input", help="series JSON (list of polynomial encodings)")
        sp.add_argument("--geometric", type=_nonneg, help="use 1/(1 - x t) up to t^D")
        sp.add_argument("--partitions", type=_nonneg, help="use sum p(d) t^d up to t^D")
        sp.add_argument("--log", action="store_true", help="logarithmic-derivative route")

    sp = add("euler-expand", cmd_euler_expand, "expand prod (1 - t^j)^(-b_j)")
    sp.add_argument("--input", required=True, help="exponent JSON (list of polynomial encodings)")
    sp.add_argument("--D", type=_nonneg)

    sp = add("higher", cmd_higher, "higher necklace polynomials M_{d,n}")
    sp.add_argument("--n", type=_pos, required=True)
    sp.add_argument("--d-max", type=_pos, default=6)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--zeta", type=_pos, help="values at zeta_m via Q(zeta_m) inversion")
    g.add_argument("--closed-form", type=_pos, metavar="P", help="balanced-expansion values at zeta_p")
    g.add_argument("--period", type=_pos, metavar="M", help="period of P_{d,n}(zeta_M) in d")

    sp = add("euler-char", cmd_euler_char, "chi_c(Irr_{d,n}) over R or C")
    sp.add_argument("--n", type=_pos, required=True)
    sp.add_argument("--d-max", type=_pos, default=16)
    sp.add_argument("--field", choices=["R", "C"], default="R")

    sp = add("balanced", cmd_balanced, "balanced base-b expansion")
    sp.add_argument("--n", type=_pos, required=True)
    sp.add_argument("--b", type=int, required=True)

    sp = add("phi-check", cmd_phi_check, "(x^m - 1)/(x - 1) | Phi_d - 1")
    sp.add_argument("--m", type=_pos, required=True)
    sp.add_argument("--d", type=_pos, required=True)

    sp = add("local", cmd_local, "ell^j | S_d mod x^m - 1")
    sp.add_argument("--d", type=_pos, required=True)
    sp.add_argument("--m", type=_pos, required=True)
    sp.add_argument("--ell", type=_pos, required=True)
    sp.add_argument("--j", type=_pos, required=True)

    sp = add("primewise", cmd_primewise, "S_d = S_e mod x^m -+ 1 for primewise congruent d, e")
    sp.add_argument("--d", type=_pos, required=True)
    sp.add_argument("--e", type=_pos, required=True)
    sp.add_argument("--m", type=_pos, required=True)
    sp.add_argument("--sign", choices=["minus", "plus"], default="minus")
    return p


def dispatch(argv: Sequence[str] | None = None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required")
        cfg = RunConfig(jobs=getattr(args, "jobs", None) or _default_jobs(),
                        max_order=getattr(args, "max_order", groups.DEFAULT_ORDER_BOUND),
                        budget=getattr(args, "budget", higher.DEFAULT_BUDGET),
                        cutoff=getattr(args, "cutoff", 10**6),
                        output=getattr(args, "format", "json"))
        args.out = out or sys.stdout
        result, code = args.func(args, cfg)
    except UsageError as exc:
        print(f"necklace-cyclo: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError, TypeError) as exc:
        print(f"necklace-cyclo: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    emit(result, cfg, out)
    return code


def main() -> None:
    sys.exit(dispatch())
