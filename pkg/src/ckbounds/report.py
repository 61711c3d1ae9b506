"""Request parsing, the analysis pipeline and report serialization."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional

from . import exactpoly as ep
from .criteria import (
    BoundInputs,
    ReductionMode,
    Variant,
    bound,
    bound_applicability,
    coleman_weight2_verdict,
    criteria_values,
    finiteness_verdict,
    reduction_type_factors,
)
from .curvemodel import (
    ClosedPoint,
    CurveError,
    Generic,
    HyperellipticEven,
    PuncturedLine,
    Superelliptic,
    bad_prime_candidates,
    invariants,
    validate,
)
from .hilbert import DEFAULT_TRUNCATION, MAX_TRUNCATION, hs_global, hs_local
from .pointcount import (
    InadmissiblePrime,
    PrimeAdmissibility,
    admissible_prime,
    count_points,
    hasse_weil_margin,
)
from .selmerdims import (
    ASSUMED_BLOCH_KATO,
    ASSUMED_SHA,
    ArithmeticInputs,
    QuotientKind,
    build_quotient,
)


class RequestError(ValueError):
    """The request document does not match the expected schema."""


QUOTIENT_CHOICES = {
    "ab": (QuotientKind.ABELIANIZED,),
    "abat": (QuotientKind.ABELIAN_BY_ARTIN_TATE,),
    "w2": (QuotientKind.FULL_WEIGHT_TWO,),
    "all": tuple(QuotientKind),
}
REDUCTION_CHOICES = ("generic", "refined", "both")


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _int(value, what) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise RequestError(f"{what} must be an integer, got {value!r}")
    return value


def _int_list(value, what) -> list[int]:
    if not isinstance(value, list) or not value:
        raise RequestError(f"{what} must be a nonempty list of integers")
    return [_int(v, what) for v in value]


def parse_curve(doc: dict):
    if not isinstance(doc, dict) or "family" not in doc:
        raise RequestError("curve must be an object with a 'family' field")
    family = doc["family"]
    if family == "superelliptic":
        return Superelliptic(_int(doc.get("m"), "curve.m"), tuple(_int_list(doc.get("f"), "curve.f")))
    if family == "hyperelliptic_even":
        return HyperellipticEven(tuple(_int_list(doc.get("f"), "curve.f")))
    if family == "punctured_line":
        pts = []
        for item in doc.get("punctures", []):
            if isinstance(item, dict):
                poly = _int_list(item.get("poly"), "puncture.poly")
                claimed = bool(item.get("claimed_irreducible", True))
            else:
                poly, claimed = _int_list(item, "puncture"), True
            try:
                pts.append(ClosedPoint(tuple(poly), claimed))
            except CurveError as exc:
                raise RequestError(str(exc)) from exc
        return PuncturedLine(tuple(pts), bool(doc.get("infinity", True)))
    if family == "generic":
        return Generic(*(_int(doc.get(k), f"curve.{k}") for k in ("g", "n", "n1", "n2", "d_closed")))
    raise RequestError(f"unknown curve family {family!r}")


def curve_to_dict(spec) -> dict:
    if isinstance(spec, Superelliptic):
        return {"family": spec.family, "m": spec.m, "f": list(spec.f)}
    if isinstance(spec, HyperellipticEven):
        return {"family": spec.family, "f": list(spec.f)}
    if isinstance(spec, PuncturedLine):
        return {
            "family": spec.family,
            "punctures": [list(pt.minimal_poly) for pt in spec.finite_punctures],
            "infinity": spec.include_infinity,
        }
    return {"family": spec.family, "g": spec.g, "n": spec.n, "n1": spec.n1, "n2": spec.n2,
            "d_closed": spec.d_closed}


def parse_arithmetic(doc: dict) -> ArithmeticInputs:
    if not isinstance(doc, dict):
        raise RequestError("arithmetic must be an object")
    kw = {}
    for key in ("r", "rho"):
        if key not in doc:
            raise RequestError(f"arithmetic.{key} is required")
        kw[key] = _int(doc[key], f"arithmetic.{key}")
    for key in ("r_p", "rho_f", "rho_geo", "h_BK"):
        if doc.get(key) is not None:
            kw[key] = _int(doc[key], f"arithmetic.{key}")
    return ArithmeticInputs(**kw)


def parse_prime_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise RequestError(f"cannot parse prime list {text!r}") from exc


def parse_components(text: str) -> dict[int, int]:
    out = {}
    for part in filter(None, (t.strip() for t in text.split(","))):
        try:
            ell, n = part.split("=")
            out[int(ell)] = int(n)
        except ValueError as exc:
            raise RequestError(f"cannot parse component count {part!r}; use ELL=N") from exc
    return out


@dataclass
class Options:
    variant: Variant = Variant.SELMER
    quotients: tuple = tuple(QuotientKind)
    reduction_modes: tuple = (ReductionMode.GENERIC, ReductionMode.REFINED)
    depth1: bool = False
    truncation: int = DEFAULT_TRUNCATION

    @classmethod
    def from_dict(cls, doc: Optional[dict]) -> "Options":
        doc = doc or {}
        try:
            variant = Variant(doc.get("variant", "selmer"))
        except ValueError as exc:
            raise RequestError(f"unknown variant {doc.get('variant')!r}") from exc
        q = doc.get("quotient", "all")
        if q not in QUOTIENT_CHOICES:
            raise RequestError(f"unknown quotient {q!r}; choose from {sorted(QUOTIENT_CHOICES)}")
        rm = doc.get("reduction_mode", "both")
        if rm not in REDUCTION_CHOICES:
            raise RequestError(f"unknown reduction mode {rm!r}")
        modes = tuple(ReductionMode) if rm == "both" else (ReductionMode(rm),)
        m = _int(doc.get("truncation", DEFAULT_TRUNCATION), "options.truncation")
        if not 2 <= m <= MAX_TRUNCATION:
            raise RequestError(f"truncation must lie in [2, {MAX_TRUNCATION}]")
        return cls(variant, QUOTIENT_CHOICES[q], modes, bool(doc.get("depth1", False)), m)


@dataclass
class AnalysisRequest:
    curve: Any
    arithmetic: ArithmeticInputs
    S: list
    p: int
    bad_components: dict = field(default_factory=dict)
    y_count: Optional[int] = None
    options: Options = field(default_factory=Options)

    @classmethod
    def from_dict(cls, doc: dict) -> "AnalysisRequest":
        if not isinstance(doc, dict):
            raise RequestError("request must be a JSON object")
        for key in ("curve", "arithmetic", "p"):
            if key not in doc:
                raise RequestError(f"missing top-level key {key!r}")
        S = doc.get("S", [])
        if not isinstance(S, list):
            raise RequestError("S must be a list of primes")
        comps = doc.get("bad_components", {}) or {}
        if not isinstance(comps, dict):
            raise RequestError("bad_components must map primes to component counts")
        try:
            comps = {int(k): _int(v, f"bad_components[{k}]") for k, v in comps.items()}
        except ValueError as exc:
            raise RequestError("bad_components keys must be primes") from exc
        y = doc.get("y_count")
        return cls(
            curve=parse_curve(doc["curve"]),
            arithmetic=parse_arithmetic(doc["arithmetic"]),
            S=sorted(_int(x, "S entry") for x in S),
            p=_int(doc["p"], "p"),
            bad_components=comps,
            y_count=None if y is None else _int(y, "y_count"),
            options=Options.from_dict(doc.get("options")),
        )

    def check(self):
        for q in list(self.S) + [self.p] + list(self.bad_components):
            if not ep.is_prime(q):
                raise RequestError(f"{q} is not prime")
        if self.p in self.S:
            raise RequestError(f"p = {self.p} must not lie in S")
        for ell, n in self.bad_components.items():
            if n < 1:
                raise RequestError(f"n_{ell} = {n} must be at least 1")
        return self


# ---------------------------------------------------------------------------
# pipeline
# ---------------------------------------------------------------------------

def _quotient_flags(kind: QuotientKind, arith: ArithmeticInputs) -> set:
    flags = arith.conditional_flags & {ASSUMED_SHA}
    if kind is QuotientKind.FULL_WEIGHT_TWO:
        flags |= arith.conditional_flags & {ASSUMED_BLOCH_KATO}
    return set(flags)


def analyze(req: AnalysisRequest) -> dict:
    """Run the whole pipeline and return the report as a plain dict.

    Raises CurveError / RequestError (invalid input), InadmissiblePrime and
    InputInconsistency; the CLI maps these to exit codes.
    """
    req.check()
    opts = req.options
    warnings: list[str] = []

    curve = validate(req.curve)
    warnings.extend(curve.warnings)
    inv = invariants(curve)
    arith = req.arithmetic.check(inv.g)
    warnings.extend(arith.defaults_used())
    s = len(req.S)
    generic = isinstance(req.curve, Generic)

    if generic:
        adm = PrimeAdmissibility(req.p)
        warnings.append(f"admissibility of p = {req.p} is asserted by the user, not checked")
        if req.y_count is None:
            raise RequestError("generic curves need a user-supplied y_count = #Y(F_p)")
        pc_dict = {"y_count": req.y_count, "source": "user"}
        y_count = req.y_count
    else:
        adm = admissible_prime(curve, req.p, req.S)
        if not adm.admissible:
            raise InadmissiblePrime(adm)
        pc = count_points(curve, req.p)
        y_count = pc.y_count
        pc_dict = dict(pc.as_dict(), source="computed",
                       hasse_weil_margin=hasse_weil_margin(inv, pc, req.p))
        if req.y_count is not None and req.y_count != pc.y_count:
            warnings.append(
                f"supplied y_count = {req.y_count} differs from the computed {pc.y_count}; "
                "the computed value is used"
            )

    quotients = {}
    for kind in opts.quotients:
        desc = build_quotient(kind, inv, arith)
        fin = finiteness_verdict(desc, s)
        col = coleman_weight2_verdict(desc, s)
        quotients[kind.value] = dict(
            desc.as_dict(),
            hs_global=hs_global(desc, s, opts.truncation).as_list(),
            hs_local=hs_local(desc, opts.truncation).as_list(),
            finiteness={"margin": fin.margin, "finite": fin.finite},
            coleman_weight2={"margin": col.margin, "exists": col.exists},
            conditional_on=sorted(_quotient_flags(kind, arith)),
        )

    crit = {v.value: criteria_values(inv, arith, s, v) for v in Variant}
    chosen = crit[opts.variant.value]
    app = bound_applicability(chosen, arith, opts.depth1)
    if not app.applies:
        warnings.append(
            f"{app.basis} = {app.margin} is not positive for the {opts.variant.value} variant; "
            "the bound below is reported but not licensed"
        )

    unlisted = [q for q in bad_prime_candidates(curve) if q not in req.bad_components] if not generic else []
    unlisted = sorted(set(unlisted) | {q for q in req.S if q not in req.bad_components})
    if unlisted:
        warnings.append(
            "n_l defaulted to 1 for primes " + ", ".join(map(str, unlisted))
            + " (candidate bad primes or primes in S); supply component counts with --nl"
        )
    elif generic:
        warnings.append("unlisted primes default to n_l = 1; bad primes of a generic curve are unknown")

    bounds = {}
    for mode in opts.reduction_modes:
        if mode is ReductionMode.REFINED and generic:
            warnings.append("refined reduction-type count is unavailable for generic curves")
            continue
        bi = BoundInputs(frozenset(req.S), req.p, y_count, req.bad_components, mode)
        factors = reduction_type_factors(curve, inv, bi)
        rt = math.prod(f.factor for f in factors)
        rep = bound(inv, bi, rt)
        bounds[mode.value] = dict(
            rep.as_dict(),
            factors=[{"ell": f.ell, "factor": f.factor, "how": f.how} for f in factors],
        )

    return {
        "curve": curve_to_dict(req.curve),
        "invariants": inv.as_dict(),
        "arithmetic": arith.as_dict(),
        "S": list(req.S),
        "s": s,
        "p": req.p,
        "admissibility": adm.as_dict(),
        "point_count": pc_dict,
        "quotients": quotients,
        "criteria": {k: v.as_dict() for k, v in crit.items()},
        "selected_variant": opts.variant.value,
        "bound_applicability": {
            "applies": app.applies,
            "basis": app.basis,
            "margin": app.margin,
            "depth1": opts.depth1,
            "conditional_on": sorted(chosen.criterion_flags[
                "delta" if app.basis == "delta" else "beta"]),
        },
        "bounds": bounds,
        "conditional_flags": sorted(arith.conditional_flags),
        "warnings": warnings,
    }


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _encode(obj) -> str:
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError("non-finite real in report")
        text = format(obj, ".17g")
        if not any(c in text for c in ".en"):
            text += ".0"
        return text
    if isinstance(obj, dict):
        items = sorted((str(k), v) for k, v in obj.items())
        return "{" + ",".join(json.dumps(k) + ":" + _encode(v) for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def canonical_json(obj) -> str:
    """Sorted keys, no whitespace, reals with 17 significant digits."""
    return _encode(obj) + "\n"


def render_text(rep: dict) -> str:
    inv = rep["invariants"]
    lines = []
    lines.append(f"curve        {rep['curve']}")
    lines.append(
        "invariants   g={g} n={n} n1={n1} n2={n2} #|D|={d_closed} b={b}".format(**inv)
    )
    a = rep["arithmetic"]
    lines.append(
        "arithmetic   r={r} r_p={r_p} rho={rho} rho_f={rho_f} rho_geo={rho_geo} h_BK={h_BK}".format(**a)
    )
    lines.append(f"S            {rep['S'] or '{}'}   s={rep['s']}   p={rep['p']}")
    pc = rep["point_count"]
    extra = f"  #X(F_p)={pc['x_count']}  Hasse-Weil margin={pc['hasse_weil_margin']:.6g}" if "x_count" in pc else ""
    lines.append(f"#Y(F_p)      {pc['y_count']} ({pc['source']}){extra}")
    lines.append("")
    lines.append(f"{'quotient':<8} {'w-1 glob/loc':>13} {'w-2 glob/loc':>13} {'HS_glob':>18} {'HS_loc':>18} {'fin':>6} {'col':>6}")
    for kind, q in rep["quotients"].items():
        w1, w2 = q["pieces"]
        lines.append(
            f"{kind:<8} {str(w1['dim_global']) + '/' + str(w1['dim_local']):>13} "
            f"{str(w2['dim_global']) + '/' + str(w2['dim_local']):>13} "
            f"{str(q['hs_global']):>18} {str(q['hs_local']):>18} "
            f"{q['finiteness']['margin']:>6} {q['coleman_weight2']['margin']:>6}"
        )
    lines.append("")
    lines.append(f"{'criterion':<10} {'selmer':>8} {'bd':>8}  conditional on")
    for name in ("alpha1", "alpha2", "beta", "gamma", "delta"):
        sel = rep["criteria"]["selmer"]["criteria"][name]
        bd = rep["criteria"]["bd"]["criteria"][name]
        mark = lambda c: f"{c['value']}{'+' if c['holds'] else ' '}"
        cond = ",".join(sel["conditional_on"]) or "-"
        if bd["conditional_on"] != sel["conditional_on"]:
            cond += " (bd: " + (",".join(bd["conditional_on"]) or "-") + ")"
        lines.append(f"{name:<10} {mark(sel):>8} {mark(bd):>8}  {cond}")
    lines.append("")
    app = rep["bound_applicability"]
    lines.append(
        f"bound ({rep['selected_variant']}{', depth 1' if app['depth1'] else ''}): "
        f"{app['basis']} = {app['margin']} -> {'applies' if app['applies'] else 'NOT licensed'}"
    )
    for mode, b in rep["bounds"].items():
        lines.append(
            f"  {mode:<8} types={b['reduction_types']:<4} kappa={b['kappa']:.6f} "
            f"factor={b['curve_factor']:<6} total={b['total_bound']:.6f} floor={b['total_bound_floor']}"
        )
    if rep["warnings"]:
        lines.append("")
        lines.extend(f"warning: {w}" for w in rep["warnings"])
    return "\n".join(lines) + "\n"
