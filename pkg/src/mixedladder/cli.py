"""Command-line front end.

Every command reads a JSON ladder document, prints a JSON report on stdout and
a one-line summary on stderr. Exit codes: 0 success, 1 a mathematical check
failed, 2 bad input, 3 a computation budget ran out.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from . import __version__
from .biliaison import build_chain
from .dimension import (DEFAULT_COVER_CAP, DEFAULT_REISNER_CAP, height_b, height_combinatorial,
                        height_vertex_cover, hilbert, reisner_cm_check)
from .errors import BudgetExceeded, LadderError
from .exactpoly import DEFAULT_PRIME, is_prime, mono_str
from .gorenstein import ag_criterion, symmetry_oracle
from .groebner import DEFAULT_BUDGET, basis_from_candidate, initial_ideal, verify_gb
from .idealgen import candidate_gb
from .ladder import Ladder, b_with_shortfall, validate

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

REQUIRED = ("m", "n", "upper", "lower", "t")
OPTIONAL = ("field_prime", "buchberger_budget", "cover_cap", "reisner_cap")


class InputError(Exception):
    pass


class Settings:
    def __init__(self, prime: int, budget: int, cover_cap: int, reisner_cap: int):
        self.prime = prime
        self.budget = budget
        self.cover_cap = cover_cap
        self.reisner_cap = reisner_cap

    def to_dict(self) -> dict:
        return {"field_prime": self.prime, "buchberger_budget": self.budget,
                "cover_cap": self.cover_cap, "reisner_cap": self.reisner_cap}


def _int(doc: dict, key: str) -> int:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"'{key}' must be an integer, got {json.dumps(v)}")
    return v


def _pairs(doc: dict, key: str) -> list[tuple[int, int]]:
    v = doc[key]
    ok = isinstance(v, list) and all(
        isinstance(x, list) and len(x) == 2
        and all(isinstance(y, int) and not isinstance(y, bool) for y in x) for x in v)
    if not ok:
        raise InputError(f"'{key}' must be a list of [row, col] integer pairs")
    return [tuple(x) for x in v]


def parse_document(text: str) -> tuple[Ladder, dict]:
    """Ladder plus the optional settings found in the document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise InputError("the document must be a JSON object")
    missing = [k for k in REQUIRED if k not in doc]
    if missing:
        raise InputError(f"missing keys: {', '.join(missing)}")
    unknown = sorted(set(doc) - set(REQUIRED) - set(OPTIONAL))
    if unknown:
        raise InputError(f"unknown keys: {', '.join(unknown)}")
    t = doc["t"]
    if not isinstance(t, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in t):
        raise InputError("'t' must be a list of integers")
    try:
        L = Ladder(_int(doc, "m"), _int(doc, "n"), _pairs(doc, "upper"), _pairs(doc, "lower"), t)
    except LadderError as exc:
        raise InputError(str(exc)) from None
    extra = {k: _int(doc, k) for k in OPTIONAL if k in doc}
    return L, extra


def _settings(args, extra: dict) -> Settings:
    prime = args.prime if args.prime is not None else extra.get("field_prime", DEFAULT_PRIME)
    budget = args.budget if args.budget is not None else extra.get("buchberger_budget", DEFAULT_BUDGET)
    s = Settings(prime, budget, extra.get("cover_cap", DEFAULT_COVER_CAP),
                 extra.get("reisner_cap", DEFAULT_REISNER_CAP))
    if not is_prime(s.prime):
        raise InputError(f"field prime {s.prime} is not prime")
    if min(s.budget, s.cover_cap, s.reisner_cap) < 1:
        raise InputError("budgets and caps must be positive")
    return s


def _gb(L: Ladder, s: Settings):
    from .idealgen import candidate_polys
    return basis_from_candidate(candidate_polys(L, s.prime), s.budget)


# ----- commands ---------------------------------------------------------------------


def cmd_validate(L: Ladder, s: Settings, args) -> tuple[dict, int, str]:
    rep = validate(L)
    out = {"ok": rep.ok, "violations": [{"clause": v.clause, "detail": v.detail}
                                        for v in rep.violations]}
    if rep.ok:
        return out, EXIT_OK, "ok"
    return out, EXIT_CHECK, "violated: " + ", ".join(sorted(rep.clauses()))


def cmd_gb(L: Ladder, s: Settings, args) -> tuple[dict, int, str]:
    specs = candidate_gb(L)
    polys = [ms.polynomial(s.prime) for ms in specs]
    out: dict[str, Any] = {
        "size": len(specs),
        "basis": [dict(ms.to_dict(), leading_term=mono_str(f.lm)) for ms, f in zip(specs, polys)]}
    code, summary = EXIT_OK, f"{len(specs)} basis elements"
    if args.verify:
        cert = verify_gb(polys, s.budget)
        out["certificate"] = cert.to_dict()
        if cert.ok:
            summary += ", verified"
        else:
            code, summary = EXIT_CHECK, summary + f", S-pair {cert.failing_pair} does not reduce to 0"
    return out, code, summary


def cmd_height(L: Ladder, s: Settings, args) -> tuple[dict, int, str]:
    gb = _gb(L, s)
    I = initial_ideal(gb)
    routes: dict[str, Any] = {"lprime": height_combinatorial(L), "complement_of_b": height_b(L),
                              "krull": hilbert(I, len(L.cells)).height}
    try:
        routes["vertex_cover"] = height_vertex_cover(I, s.cover_cap)
    except BudgetExceeded as exc:
        routes["vertex_cover"] = None
        routes["vertex_cover_status"] = str(exc)
    except ValueError as exc:
        routes["vertex_cover"] = None
        routes["vertex_cover_status"] = str(exc)
    short = b_with_shortfall(L)[1]
    if short:
        # the row/column quotas of B did not fit, so that route is not comparable
        routes["complement_of_b_status"] = f"shortfall {short}; excluded from agreement"
    values = {v for k, v in routes.items()
              if not k.endswith("_status") and v is not None
              and not (short and k == "complement_of_b")}
    out: dict[str, Any] = {"routes": routes, "agree": len(values) == 1}
    if args.expect is not None:
        out["expected"] = args.expect
        out["matches_expected"] = values == {args.expect}
    if not out["agree"]:
        return out, EXIT_CHECK, f"height routes disagree: {routes}"
    h = values.pop()
    out["height"] = h
    if args.expect is not None and not out["matches_expected"]:
        return out, EXIT_CHECK, f"height {h} differs from expected {args.expect}"
    return out, EXIT_OK, f"height {h}"


def cmd_hilbert(L: Ladder, s: Settings, args) -> tuple[dict, int, str]:
    data = hilbert(initial_ideal(_gb(L, s)), len(L.cells))
    code = EXIT_OK if min(data.h_vector) >= 0 else EXIT_CHECK
    return data.to_dict(), code, f"h = {list(data.h_vector)}, dim {data.dim}, degree {data.degree}"


def cmd_gorenstein(L: Ladder, s: Settings, args) -> tuple[dict, int, str]:
    rep = ag_criterion(L)
    if args.oracle:
        rep.oracle_verdict = symmetry_oracle(L, s.budget)
    out = rep.to_dict()
    summary = "Gorenstein" if rep.verdict else "not Gorenstein"
    if args.oracle:
        if out["agree"]:
            summary += ", oracle agrees"
        else:
            return out, EXIT_CHECK, summary + ", oracle disagrees"
    return out, EXIT_OK, summary


def cmd_biliaison(L: Ladder, s: Settings, args) -> tuple[dict, int, str]:
    chain = build_chain(L, verify=args.verify, budget=s.budget, p=s.prime)
    out = chain.to_dict()
    summary = f"{len(chain.steps)} steps"
    if not chain.terminal_matches_lprime:
        return out, EXIT_CHECK, summary + ", terminal ladder differs from L'"
    if args.verify:
        unverified = [st.i_used for st in chain.steps if st.checks.status != "verified"]
        failed = [n for n, st in enumerate(chain.steps, 1)
                  if st.checks.status == "verified" and not st.checks.passed]
        if failed:
            return out, EXIT_CHECK, summary + f", checks failed at steps {failed}"
        if unverified:
            return out, EXIT_BUDGET, summary + ", some steps unverified (budget exceeded)"
        summary += ", all checks pass"
    return out, EXIT_OK, summary


def cmd_cm_check(L: Ladder, s: Settings, args) -> tuple[dict, int, str]:
    I = initial_ideal(_gb(L, s))
    if not I.is_squarefree():
        return {"cohen_macaulay": None, "status": "initial ideal is not squarefree"}, \
            EXIT_CHECK, "initial ideal is not squarefree"
    verdict = reisner_cm_check(I, len(L.cells), s.prime, s.reisner_cap)
    out = {"cohen_macaulay": verdict, "status": "done", "num_vars": len(L.cells)}
    return out, (EXIT_OK if verdict else EXIT_CHECK), ("Cohen-Macaulay" if verdict
                                                       else "not Cohen-Macaulay")


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate, "gb": cmd_gb, "height": cmd_height, "hilbert": cmd_hilbert,
    "gorenstein": cmd_gorenstein, "biliaison": cmd_biliaison, "cm-check": cmd_cm_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixedladder",
        description="Groebner bases, heights, Hilbert series, Gorenstein test and "
                    "biliaison chains for mixed ladder determinantal ideals.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="ladder document (JSON); '-' reads standard input")
    common.add_argument("--prime", type=int, default=None,
                        help=f"coefficient field GF(p) (default {DEFAULT_PRIME})")
    common.add_argument("--budget", type=int, default=None,
                        help=f"maximum S-pair reductions (default {DEFAULT_BUDGET})")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("validate", parents=[common], help="check the standing assumptions")
    p = sub.add_parser("gb", parents=[common], help="the minor Groebner basis")
    p.add_argument("--verify", action="store_true", help="certify it with Buchberger's criterion")
    p = sub.add_parser("height", parents=[common], help="height by four independent routes")
    p.add_argument("--expect", type=int, default=None, help="fail unless the height equals this")
    sub.add_parser("hilbert", parents=[common], help="h-vector, dimension and degree")
    p = sub.add_parser("gorenstein", parents=[common], help="numerical Gorenstein criterion")
    p.add_argument("--oracle", action="store_true", help="compare with h-vector symmetry")
    p = sub.add_parser("biliaison", parents=[common], help="chain down to a linear ideal")
    p.add_argument("--verify", action="store_true", help="run the per-step algebraic checks")
    sub.add_parser("cm-check", parents=[common], help="Reisner's criterion on the initial ideal")
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise InputError(f"{path} is not UTF-8") from None


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    base: dict[str, Any] = {"command": args.command}
    try:
        L, extra = parse_document(_read(args.file))
        settings = _settings(args, extra)
    except InputError as exc:
        _emit(dict(base, error=str(exc), status="input error"))
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    base["settings"] = settings.to_dict()
    base["ladder"] = L.to_dict()
    if args.command != "validate":
        rep = validate(L)
        if not rep.ok:
            _emit(dict(base, status="input error", error="ladder violates the standing assumptions",
                       violations=[{"clause": v.clause, "detail": v.detail}
                                   for v in rep.violations]))
            print(f"{args.command}: invalid ladder ({', '.join(sorted(rep.clauses()))})",
                  file=sys.stderr)
            return EXIT_INPUT
    try:
        out, code, summary = COMMANDS[args.command](L, settings, args)
    except BudgetExceeded as exc:
        _emit(dict(base, status="budget exceeded", error=str(exc)))
        print(f"{args.command}: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except LadderError as exc:
        _emit(dict(base, status="input error", error=str(exc)))
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    base.update(out)
    base["status"] = "ok" if code == EXIT_OK else "check failed"
    _emit(base)
    print(f"{args.command}: {summary}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
