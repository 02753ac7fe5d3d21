"""Command-line interface: ``hnt construct | analyze | aut | certify``.

Exit status is 0 when every requested check passes, 1 when a check fails and
2 for usage errors, malformed input or an exhausted budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .autsearch import SearchConfig, SearchExhausted, automorphism_group
from .certify import (
    PreconditionError,
    SubgroupViolation,
    classify_2nt,
    lemma_checks,
    nt_level,
    subgroup_violation,
    theorem_audit,
)
from .codes import (
    Code,
    CodeFileError,
    even_weight_subcode,
    format_code,
    hadamard12,
    punctured_hadamard,
    read_code,
    repetition_code,
    singleton_check,
)
from .groups import VERTEX_CHAIN_BUDGET, AutGroup, read_generators, write_generators
from .hamming import BudgetExceeded
from .regularity import distance_partition, regularity_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CONSTRUCTIONS = ("repetition", "hadamard12", "punctured11", "evenweight11")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# reports


def analyze_report(code: Code) -> dict:
    """The analysis report for a code (what ``hnt analyze`` prints)."""
    if len(code) < 2:
        raise UsageError(f"code has {len(code)} codeword(s); at least 2 are needed")
    part = distance_partition(code)
    reg = regularity_report(code, part)
    out = {
        "m": code.scheme.m,
        "q": code.scheme.q,
        "size": len(code),
        "delta": code.min_distance,
        "weight_distribution": {str(k): v for k, v in sorted(code.weight_distribution.items())},
        "singleton": singleton_check(code).as_dict(),
    }
    out.update(reg)
    return out


def flatten(obj, prefix: str = "") -> dict:
    """Dotted-key view of a JSON value, keys in document order."""
    out = {}
    if isinstance(obj, dict):
        if not obj and prefix:
            out[prefix] = ""
        for k, v in obj.items():
            out.update(flatten(v, f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        for k, v in enumerate(obj):
            out.update(flatten(v, f"{prefix}.{k}"))
    elif isinstance(obj, list):
        out[prefix] = ",".join(_scalar(v) for v in obj)
    else:
        out[prefix] = _scalar(obj)
    return out


def _scalar(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    rows = report["rows"] if isinstance(report.get("rows"), list) else [report]
    flat = [flatten(r) for r in rows]
    if fmt == "text":
        blocks = ["\n".join(f"{k}: {v}" for k, v in f.items()) for f in flat]
        tail = f"\npass: {_scalar(report['pass'])}\n" if "rows" in report and "pass" in report else ""
        return "\n\n".join(blocks) + "\n" + tail
    cols: list[str] = []
    for f in flat:
        cols += [k for k in f if k not in cols]
    lines = ["\t".join(cols)] + ["\t".join(f.get(c, "") for c in cols) for f in flat]
    return "\n".join(lines) + "\n"


def emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    p = Path(path)
    tmp = p.with_name(p.name + ".tmp")
    tmp.write_text(text)
    tmp.replace(p)


# ---------------------------------------------------------------------------
# helpers


def _load_code(path: str) -> Code:
    try:
        return read_code(path)
    except FileNotFoundError:
        raise UsageError(f"{path}: no such file") from None
    except CodeFileError as e:
        raise UsageError(f"{path}: {e}") from None


def _check_degree(code: Code, max_degree: int) -> None:
    if code.scheme.size > max_degree:
        raise BudgetExceeded(f"H({code.scheme.m},{code.scheme.q}) has {code.scheme.size} vertices, above --max-degree {max_degree}")


def _search_config(args) -> SearchConfig:
    return SearchConfig(budget_ms=args.budget_ms)


def _workers() -> int:
    cpus = os.cpu_count() or 1
    cap = os.environ.get("HNT_THREADS")
    if cap is None:
        return min(cpus, 4)
    try:
        n = int(cap)
    except ValueError:
        raise UsageError(f"HNT_THREADS={cap!r} is not an integer") from None
    if n < 1:
        raise UsageError("HNT_THREADS must be at least 1")
    return min(n, cpus)


def _violation_dict(v: SubgroupViolation) -> dict:
    return {"generator_index": v.generator_index, "codeword": str(v.codeword), "image": str(v.image)}


def _load_group(path: str, code: Code) -> AutGroup:
    try:
        gens = read_generators(path, code.scheme)
    except FileNotFoundError:
        raise UsageError(f"{path}: no such file") from None
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"{path}: {e}") from None
    return AutGroup(code.scheme, gens)


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(args) -> int:
    name = args.name
    if name == "repetition":
        code = repetition_code(args.m if args.m is not None else 5, args.q if args.q is not None else 2)
    else:
        if args.m is not None or args.q is not None:
            raise UsageError(f"{name} has fixed parameters; -m/-q apply to repetition only")
        code = {"hadamard12": hadamard12, "punctured11": punctured_hadamard, "evenweight11": even_weight_subcode}[name]()
    emit(format_code(code), args.output)
    return EXIT_OK


def cmd_analyze(args) -> int:
    code = _load_code(args.file)
    _check_degree(code, args.max_degree)
    emit(render(analyze_report(code), args.format), args.output)
    return EXIT_OK


def cmd_aut(args) -> int:
    code = _load_code(args.file)
    if args.verify_only:
        grp = _load_group(args.verify_only, code)
        viol = subgroup_violation(grp, code)
        report = {"mode": "verify-only", "order": grp.order, "subgroup_verified": viol is None}
        ok = viol is None
        if viol is not None:
            report["violation"] = _violation_dict(viol)
        if args.order is not None:
            report["claimed_order"] = args.order
            report["order_matches"] = grp.order == args.order
            ok = ok and grp.order == args.order
    else:
        if args.order is not None:
            raise UsageError("--order needs --verify-only")
        try:
            grp = automorphism_group(code, _search_config(args))
        except SearchExhausted as e:
            report = {"mode": "search", "exhaustive": False, "partial_order": e.partial.order if e.partial else 1}
            emit(render(report, args.format), None)
            print(f"error: {e}", file=sys.stderr)
            return EXIT_USAGE
        if args.output:
            write_generators(grp.elements_gens, args.output)
        report = {
            "mode": "search",
            "exhaustive": True,
            "order": grp.order,
            "generators": len(grp.gens),
            "nodes": grp.search_stats["nodes"],
        }
        ok = True
    emit(render(report, args.format), None)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_certify(args) -> int:
    if args.audit_theorem:
        rep = theorem_audit(_search_config(args), strict=False, workers=_workers())
        emit(render(rep, args.format), args.output)
        return EXIT_OK if rep["pass"] else EXIT_FAIL
    if args.file is None:
        raise UsageError("certify needs a code file (or --audit-theorem)")
    if (args.group is None) == (not args.search):
        raise UsageError("give exactly one of --group FILE or --search")
    code = _load_code(args.file)
    _check_degree(code, args.max_degree)
    if len(code) < 1:
        raise UsageError("empty code")
    if args.search:
        try:
            grp = automorphism_group(code, _search_config(args))
        except SearchExhausted as e:
            print(f"error: {e}; partial group of order {e.partial.order if e.partial else 1}", file=sys.stderr)
            return EXIT_USAGE
        provenance = "search"
    else:
        grp = _load_group(args.group, code)
        provenance = "file"

    report: dict = {"m": code.scheme.m, "q": code.scheme.q, "size": len(code), "group_order": grp.order, "provenance": provenance}
    try:
        cert = nt_level(code, grp, provenance=provenance)
    except SubgroupViolation as v:
        report["subgroup_verified"] = False
        report["violation"] = _violation_dict(v)
        emit(render(report, args.format), args.output)
        return EXIT_FAIL
    report["certificate"] = cert.as_dict()
    ok = True
    if args.level is not None:
        report["requested_level"] = args.level
        ok = cert.level >= args.level
    if args.complete:
        ok = ok and cert.completely_transitive
    try:
        report["classification"] = classify_2nt(code, grp, cert).as_dict()
    except PreconditionError as e:
        report["classification"] = {"label": None, "error": str(e)}
    if cert.level >= 2 and len(code) > 1 and code.min_distance >= 5 and code.scheme.zero() in code:
        try:
            lem = lemma_checks(code, grp, certificate=cert)
            report["lemma_checks"] = lem.as_dict()
            ok = ok and lem.passed
        except PreconditionError as e:
            report["lemma_checks"] = {"error": str(e)}
    else:
        report["lemma_checks"] = None
    report["pass"] = ok
    emit(render(report, args.format), args.output)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hnt", description="Neighbour-transitive codes in Hamming graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, out_help="write the report here (default stdout)"):
        p.add_argument("--format", choices=("json", "tsv", "text"), default="json")
        p.add_argument("-o", "--output", help=out_help)

    p = sub.add_parser("construct", help="write a code file for a named construction")
    p.add_argument("name", choices=CONSTRUCTIONS)
    p.add_argument("-m", type=_pos, help="length (repetition only, default 5)")
    p.add_argument("-q", type=_pos, help="alphabet size (repetition only, default 2)")
    p.add_argument("-o", "--output", help="code file to write (default stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="distance, covering radius, regularity and designs of a code")
    p.add_argument("file")
    p.add_argument("--max-degree", type=_pos, default=VERTEX_CHAIN_BUDGET, help="largest vertex count q^m accepted")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("aut", help="compute Aut(C) or verify a supplied generator file")
    p.add_argument("file")
    p.add_argument("--verify-only", metavar="GENS", help="check C-invariance of the generators in GENS")
    p.add_argument("--order", type=_pos, help="claimed group order (with --verify-only)")
    p.add_argument("--budget-ms", type=_pos)
    p.add_argument("--format", choices=("json", "tsv", "text"), default="json")
    p.add_argument("-o", "--output", help="generator file to write (search mode)")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("certify", help="certify neighbour transitivity of a code under a group")
    p.add_argument("file", nargs="?")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--group", metavar="GENS", help="generator file of the group X")
    g.add_argument("--search", action="store_true", help="use X = Aut(C) from the automorphism search")
    lv = p.add_mutually_exclusive_group()
    lv.add_argument("--level", type=_nonneg, help="require (X, s)-neighbour-transitivity")
    lv.add_argument("--complete", action="store_true", help="require complete transitivity")
    p.add_argument("--audit-theorem", action="store_true", help="run the audit over all outcome codes")
    p.add_argument("--budget-ms", type=_pos)
    p.add_argument("--max-degree", type=_pos, default=VERTEX_CHAIN_BUDGET)
    common(p)
    p.set_defaults(func=cmd_certify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, BudgetExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
