"""ckbounds command line.

Exit codes: 0 ok, 1 regression failure, 2 invalid input, 3 inadmissible
prime, 4 inconsistent arithmetic data.
"""

from __future__ import annotations

import argparse
import json
import sys

from .curvemodel import CurveError, invariants
from .hilbert import MAX_TRUNCATION, hs_global, hs_local
from .pointcount import InadmissiblePrime, count_points, hasse_weil_margin
from .regression import run_all
from .report import (
    AnalysisRequest,
    RequestError,
    analyze,
    canonical_json,
    parse_arithmetic,
    parse_components,
    parse_curve,
    parse_prime_list,
    render_text,
)
from .selmerdims import (
    GradedPieceDims,
    InputInconsistency,
    QuotientDescriptor,
    QuotientKind,
    build_quotient,
)

EXIT_OK = 0
EXIT_REGRESSION = 1
EXIT_INVALID = 2
EXIT_INADMISSIBLE = 3
EXIT_INCONSISTENT = 4


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise RequestError(f"cannot read {path}: {exc}") from exc


def _apply_overrides(doc: dict, args) -> dict:
    doc = dict(doc)
    opts = dict(doc.get("options") or {})
    if args.p is not None:
        doc["p"] = args.p
    if args.S is not None:
        doc["S"] = parse_prime_list(args.S)
    if args.nl is not None:
        comps = {str(k): v for k, v in (doc.get("bad_components") or {}).items()}
        comps.update({str(k): v for k, v in parse_components(args.nl).items()})
        doc["bad_components"] = comps
    if args.hbk is not None:
        doc["arithmetic"] = dict(doc.get("arithmetic") or {}, h_BK=args.hbk)
    for key, val in (
        ("variant", args.variant),
        ("quotient", args.quotient),
        ("reduction_mode", args.reduction_mode),
        ("truncation", args.truncation),
    ):
        if val is not None:
            opts[key] = val
    if args.depth1:
        opts["depth1"] = True
    doc["options"] = opts
    return doc


def cmd_analyze(args) -> int:
    doc = _apply_overrides(_load_json(args.request), args)
    report = analyze(AnalysisRequest.from_dict(doc))
    sys.stdout.write(render_text(report))
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(canonical_json(report))
    return EXIT_OK


def cmd_examples(args) -> int:
    rows = run_all()
    width = max(len(r.name) for r in rows)
    for r in rows:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}")
    failed = sum(not r.passed for r in rows)
    print(f"{len(rows) - failed}/{len(rows)} regressions passed")
    return EXIT_OK if not failed else EXIT_REGRESSION


def cmd_pointcount(args) -> int:
    doc = _load_json(args.curve)
    spec = parse_curve(doc.get("curve", doc))
    pc = count_points(spec, args.p, workers=args.workers)
    margin = hasse_weil_margin(invariants(spec), pc, args.p)
    out = dict(pc.as_dict(), p=args.p, hasse_weil_margin=margin)
    if args.json_out:
        sys.stdout.write(canonical_json(out))
    else:
        print(f"#Y(F_{args.p}) = {pc.y_count}")
        print(f"#D(F_{args.p}) = {pc.cusp_count}")
        print(f"#X(F_{args.p}) = {pc.x_count}")
        print(f"Hasse-Weil margin = {margin:.6g}")
    return EXIT_OK


def descriptor_from_doc(doc: dict) -> tuple[QuotientDescriptor, int]:
    """A descriptor given either explicitly or via curve + arithmetic data."""
    s = int(doc.get("s", 0))
    try:
        kind = QuotientKind(doc.get("kind", "w2"))
    except ValueError as exc:
        raise RequestError(f"unknown quotient kind {doc.get('kind')!r}") from exc
    if "pieces" in doc:
        try:
            pieces = tuple(
                GradedPieceDims(int(p["weight"]), int(p["dim_global"]), int(p["dim_local"]),
                                p.get("label", ""))
                for p in doc["pieces"]
            )
            return QuotientDescriptor(kind, pieces), s
        except (KeyError, TypeError) as exc:
            raise RequestError(f"malformed descriptor pieces: {exc}") from exc
    if "curve" not in doc or "arithmetic" not in doc:
        raise RequestError("descriptor needs 'pieces' or both 'curve' and 'arithmetic'")
    inv = invariants(parse_curve(doc["curve"]))
    return build_quotient(kind, inv, parse_arithmetic(doc["arithmetic"])), s


def cmd_series(args) -> int:
    doc = _load_json(args.descriptor)
    desc, s = descriptor_from_doc(doc)
    if args.s is not None:
        s = args.s
    m = args.truncation
    if not 0 <= m <= MAX_TRUNCATION:
        raise RequestError(f"truncation must lie in [0, {MAX_TRUNCATION}]")
    out = {
        "kind": desc.kind.value,
        "s": s,
        "truncation": m,
        "hs_global": hs_global(desc, s, m).as_list(),
        "hs_local": hs_local(desc, m).as_list(),
    }
    if args.json_out:
        sys.stdout.write(canonical_json(out))
    else:
        print(f"global {out['hs_global']}")
        print(f"local  {out['hs_local']}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ckbounds",
        description="Chabauty-Kim finiteness criteria and S-integral point bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run the full pipeline on a JSON request")
    a.add_argument("request", help="path to the request JSON")
    a.add_argument("--variant", choices=["selmer", "bd"])
    a.add_argument("--quotient", choices=["ab", "abat", "w2", "all"])
    a.add_argument("--reduction-mode", choices=["generic", "refined", "both"])
    a.add_argument("--depth1", action="store_true", help="claim the bound for the depth-1 locus")
    a.add_argument("--truncation", type=int, metavar="M")
    a.add_argument("--json", metavar="PATH", help="also write canonical JSON to PATH")
    a.add_argument("--p", type=int, metavar="P", help="auxiliary prime")
    a.add_argument("--S", metavar="PRIMES", help='comma-separated primes, e.g. "2,3"')
    a.add_argument("--nl", metavar="MAP", help='component counts, e.g. "2=3,11=2"')
    a.add_argument("--hbk", type=int, metavar="H", help="value of h_BK")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("examples", help="reproduce the worked examples")
    e.set_defaults(func=cmd_examples)

    pc = sub.add_parser("pointcount", help="count points of a curve over F_p")
    pc.add_argument("curve", help="JSON file holding a curve (or a request with a 'curve' key)")
    pc.add_argument("--p", type=int, required=True)
    pc.add_argument("--workers", type=int, default=1)
    pc.add_argument("--json", dest="json_out", action="store_true", help="print canonical JSON")
    pc.set_defaults(func=cmd_pointcount)

    se = sub.add_parser("series", help="global and local Hilbert series of a quotient")
    se.add_argument("descriptor", help="JSON descriptor file")
    se.add_argument("--truncation", type=int, default=2, metavar="M")
    se.add_argument("--s", type=int, default=None, help="override #S")
    se.add_argument("--json", dest="json_out", action="store_true", help="print canonical JSON")
    se.set_defaults(func=cmd_series)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InadmissiblePrime as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except InputInconsistency as exc:
        print(f"error: inconsistent input: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (RequestError, CurveError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
