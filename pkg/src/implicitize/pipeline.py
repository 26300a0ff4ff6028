"""Method dispatch, cross-validation and result records."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .errors import (ImplicitizationError, MethodDisagreement, NoApplicableMethod, StructureError)
from .ideal import BPReport, Parametrization, bp_report, generic_combination, syzygy_dim
from .moving import assemble_and_det
from .mubasis import MinorDiagnostics, compute_mu_basis, expected_degree, is_saturated, minor_diagnostics
from .parser import GENERATOR_NAMES, format_parametrization, parse_parametrization
from .poly import XYZW, MPoly, format_poly, linear_form, normalize
from .resultant import ResultantProblem, macaulay_resultant_symbolic, power_extract

METHODS = ("auto", "moving", "resultant", "both")
GENERIC_RETRIES = 3
FORMAT_TAG = "implicitize-result/1"

# generator orders tried before generic recombination: w swapped with z, y, x
PERMUTATIONS = ((0, 1, 2, 3), (0, 1, 3, 2), (0, 3, 2, 1), (3, 1, 2, 0))


@dataclass(frozen=True)
class JobSpec:
    source: str
    method: str = "auto"
    seed: int = 0
    sat_bound: Optional[int] = None
    output_format: str = "text"

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        if self.output_format not in ("text", "structured"):
            raise ValueError("format must be text or structured")


@dataclass
class ImplicitResult:
    P: MPoly
    method: str
    h: int
    bp_report: BPReport
    params: Parametrization
    mu: Optional[tuple] = None
    saturated: bool = False
    minors: Optional[MinorDiagnostics] = None
    extraneous: list = field(default_factory=list)
    ledger: Optional[dict] = None
    diagnostics: list = field(default_factory=list)
    options: dict = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.P.degree()

    def to_dict(self) -> dict:
        return {
            "format": FORMAT_TAG,
            "status": "ok",
            "input": {name: format_poly(g) for name, g in zip(GENERATOR_NAMES, self.params.gens)},
            "n": self.params.n,
            "options": dict(self.options),
            "bp_report": self.bp_report.to_dict(),
            "saturated": self.saturated,
            "mu": list(self.mu) if self.mu else None,
            "minors": self.minors.to_dict() if self.minors else None,
            "method": self.method,
            "P": poly_to_dict(self.P),
            "h": self.h,
            "extraneous": [{"factor": format_poly(l), "multiplicity": e} for l, e in self.extraneous],
            "ledger": self.ledger,
            "diagnostics": list(self.diagnostics),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ImplicitResult":
        from .parser import parse_polynomial

        if d.get("format") != FORMAT_TAG or d.get("status") != "ok":
            raise ValueError("not a successful result document")
        src = "".join(f"{k} = {d['input'][k]}\n" for k in GENERATOR_NAMES)
        minors = d.get("minors")
        return cls(
            P=poly_from_dict(d["P"]),
            method=d["method"],
            h=d["h"],
            bp_report=BPReport.from_dict(d["bp_report"]),
            params=parse_parametrization(src),
            mu=tuple(d["mu"]) if d["mu"] else None,
            saturated=d["saturated"],
            minors=MinorDiagnostics(minors["v1_empty"], minors["v2_empty"]) if minors else None,
            extraneous=[(parse_polynomial(x["factor"], XYZW), x["multiplicity"]) for x in d["extraneous"]],
            ledger=d["ledger"],
            diagnostics=list(d["diagnostics"]),
            options=dict(d["options"]),
        )

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def to_text(self) -> str:
        lines = [f"P = {format_poly(self.P)}",
                 f"degree {self.degree}, method {self.method}, h = {self.h}"]
        if self.mu:
            lines.append(f"mu = {tuple(self.mu)}")
        for l, e in self.extraneous:
            lines.append(f"extraneous factor {format_poly(l)} (multiplicity {e})")
        if self.ledger:
            lines.append(f"degree ledger: {self.ledger['identity']} (case {self.ledger['case']})")
        for item in self.diagnostics:
            lines.append(f"note: {item['message']}")
        return "\n".join(lines) + "\n"


def _monomial_text(e) -> str:
    parts = [v if k == 1 else f"{v}^{k}" for v, k in zip(XYZW, e) if k]
    return "*".join(parts) or "1"


def poly_to_dict(p: MPoly) -> dict:
    return {
        "text": format_poly(p),
        "degree": p.degree(),
        "terms": [[_monomial_text(e), c if isinstance(c, int) else str(c)] for e, c in p.sorted_terms()],
    }


def poly_from_dict(d: dict) -> MPoly:
    from fractions import Fraction

    from .parser import parse_polynomial

    acc = MPoly.zero(XYZW)
    for mono, c in d["terms"]:
        acc = acc + parse_polynomial(mono, XYZW).scale(Fraction(c))
    return acc


_FLAT_ARRAY = re.compile(r'\[\s*(?:-?\d+|"[^"\s]*"|true|false|null)(?:\s*,\s*(?:-?\d+|"[^"\s]*"|true|false|null))*\s*\]')


def dumps(obj) -> str:
    """Indented, key-sorted JSON with short scalar arrays kept on one line."""
    text = json.dumps(obj, indent=2, sort_keys=True)
    text = _FLAT_ARRAY.sub(lambda m: " ".join(m.group(0).split()).replace("[ ", "[").replace(" ]", "]"), text)
    return text + "\n"


# -- helpers -------------------------------------------------------------------

def _finding(kind: str, message: str, **extra) -> dict:
    out = {"kind": kind, "message": message}
    out.update(extra)
    return out


def map_back(P: MPoly, M) -> MPoly:
    """P'(M v) for new generators g' = M g; vanishes wherever P' does on g'."""
    return normalize(P.compose([linear_form(row) for row in M]))


def sample_image_points(param: Parametrization, count: int = 6) -> list:
    pts = []
    a = 1
    while len(pts) < count:
        for st in ((a, a + 1, 1), (a + 2, -a, 1), (-a, 2 * a + 1, 3)):
            img = param.image_point(st)
            if any(img):
                pts.append(img)
        a += 1
    return pts[:count]


def moving_degree_search(param: Parametrization) -> dict:
    """For d in {n-2, n-1}: C(d+2,2) rows versus m = dim Syz(I)_d moving planes."""
    n = param.n
    out = {}
    for d in (n - 2, n - 1):
        if d < 0:
            continue
        m = syzygy_dim(param.gens, d)
        rows = comb(d + 2, 2)
        out[d] = {"rows": rows, "m": m, "holds": rows - m >= 0}
    return out


def degree_ledger(h: int, deg_P: int, mu, case: int) -> dict:
    """h deg(P) = mu1 mu2 + mu1 mu3 + mu2 mu3 - sum(e_p - d_p)."""
    a, b, c = mu
    D = a * b + a * c + b * c
    excess = D - h * deg_P
    return {
        "identity": f"{h}*{deg_P} = {D} - {excess}",
        "h": h, "deg_P": deg_P, "resultant_degree": D, "excess": excess, "case": case,
    }


# -- the two methods -------------------------------------------------------------

def _moving_candidates(param: Parametrization, seed: int):
    identity = [[int(i == j) for j in range(4)] for i in range(4)]
    for perm in PERMUTATIONS:
        M = [identity[i] for i in perm]
        label = "(" + ", ".join(GENERATOR_NAMES[i] for i in perm) + ")"
        yield label, M
    for k in range(GENERIC_RETRIES):
        yield f"generic combination, seed {seed + k}", generic_combination(param, seed + k)


def run_moving(param: Parametrization, sat_bound=None, lci=None, seed: int = 0, saturated: bool = False):
    """Try the original generators, then reorderings, then generic combinations.

    Returns (P, info); raises NoApplicableMethod listing every attempt.
    """
    attempts = []
    n = param.n
    for label, M in _moving_candidates(param, seed):
        cand = param.combined(M)
        rep = bp_report(cand, sat_bound=sat_bound, lci=lci)
        entry = {"generators": label, "failed": rep.failed(), "d": rep.chosen_d}
        attempts.append(entry)
        if not rep.all_ok:
            continue
        if saturated and not (n <= 3 and rep.chosen_d == n - 2):
            entry["failed"] = ["saturated case requires n <= 3 and d = n-2"]
            continue
        try:
            out = assemble_and_det(cand, report=rep)
        except ImplicitizationError as exc:
            entry["failed"] = [exc.kind]
            continue
        P = out.P if label == "(x, y, z, w)" else map_back(out.P, M)
        info = {"generators": label, "d": out.d, "Iw": [list(ij) for ij in out.Iw.members],
                "matrix_size": out.matrix.size, "notes": out.notes, "attempts": attempts}
        return P, info
    failed = sorted({f for a in attempts for f in a["failed"]})
    generic = [set(a["failed"]) for a in attempts if a["generators"].startswith("generic")]
    diagnosis = sorted(set.intersection(*generic)) if generic else failed
    raise NoApplicableMethod("the moving-quadrics method does not apply; after generic recombination: "
                             + ", ".join(diagnosis), attempts=attempts, failed=failed, diagnosis=diagnosis)


def run_resultant(param: Parametrization, mb, minors: MinorDiagnostics):
    prob = ResultantProblem.from_mu_basis(mb)
    F = macaulay_resultant_symbolic(prob, v1_empty=minors.v1_empty)
    dec = power_extract(F, prob.degree, sample_image_points(param))
    ledger = degree_ledger(dec.h, dec.P.degree(), mb.mu, minors.case)
    return dec, ledger


# -- orchestration ----------------------------------------------------------------

def run(job: JobSpec) -> ImplicitResult:
    param = parse_parametrization(job.source)
    return run_parametrization(param, job.method, job.seed, job.sat_bound)


def run_parametrization(param: Parametrization, method: str = "auto", seed: int = 0,
                        sat_bound: Optional[int] = None) -> ImplicitResult:
    n = param.n
    bound = 2 * n if sat_bound is None else sat_bound
    diagnostics = []
    saturated = is_saturated(param.gens, bound)
    mb = minors = None
    if saturated:
        try:
            mb = compute_mu_basis(param.gens)
            minors = minor_diagnostics(mb)
        except StructureError as exc:
            diagnostics.append(_finding(exc.kind, str(exc)))
    lci = minors.v2_empty if minors else None
    report = bp_report(param, sat_bound=bound, lci=lci)
    if mb is not None:
        search = moving_degree_search(param)
        diagnostics.append(_finding("degree_search", "rows versus moving planes for d in {n-2, n-1}",
                                    degrees={str(k): v for k, v in search.items()}))
        if n > 3 and any(v["holds"] for v in search.values()):
            diagnostics.append(_finding("degree_search_inconsistent",
                                        "a saturated ideal with n > 3 admits a working degree"))

    want_moving = method in ("auto", "moving", "both")
    want_resultant = method in ("resultant", "both") or (method == "auto" and mb is not None and lci)
    results = {}
    errors = {}

    if want_moving:
        try:
            P, info = run_moving(param, sat_bound=bound, lci=lci, seed=seed, saturated=saturated)
            results["moving"] = P
            diagnostics.append(_finding("moving", f"moving quadrics with generators {info['generators']}, "
                                        f"d = {info['d']}", d=info["d"], generators=info["generators"],
                                        Iw=info["Iw"]))
            for note in info["notes"]:
                diagnostics.append(_finding("moving_note", note))
        except ImplicitizationError as exc:
            errors["moving"] = exc

    dec = ledger = None
    if want_resultant and (method != "auto" or "moving" not in results):
        if mb is None:
            errors["resultant"] = NoApplicableMethod(
                "the resultant method needs a saturated ideal with a free syzygy module",
                saturated=saturated)
        else:
            try:
                dec, ledger = run_resultant(param, mb, minors)
                results["resultant"] = dec.P
            except ImplicitizationError as exc:
                errors["resultant"] = exc

    if method == "both":
        if errors:
            raise next(iter(errors.values()))
        if results["moving"] != results["resultant"] or dec.h != 1:
            raise MethodDisagreement("the two methods disagree",
                                     moving=format_poly(results["moving"]),
                                     resultant=format_poly(results["resultant"]), h=dec.h)
        used = "both"
    elif method in ("moving", "resultant"):
        if method in errors:
            errors[method].details.setdefault("bp_report", report.to_dict())
            raise errors[method]
        used = method
    else:
        if "moving" in results:
            used = "moving"
        elif "resultant" in results:
            used = "resultant"
        else:
            details = {k: v.to_dict() for k, v in errors.items()}
            diagnosis = errors["moving"].details.get("diagnosis", []) if "moving" in errors else []
            if mb is not None and not lci:
                diagnosis = diagnosis + ["not a local complete intersection (V2(A) nonempty)"]
            raise NoApplicableMethod(
                "no method applies" + (f" ({'; '.join(diagnosis)})" if diagnosis else ""),
                diagnosis=diagnosis,
                bp_report=report.to_dict(), saturated=saturated,
                mu=list(mb.mu) if mb else None, minors=minors.to_dict() if minors else None,
                errors=details)

    P = results[used if used != "both" else "moving"]
    h = dec.h if dec is not None and used != "moving" else 1
    extraneous = dec.extraneous if dec is not None and used != "moving" else []
    if dec is not None and used != "moving":
        if extraneous:
            diagnostics.append(_finding("extraneous", "extraneous linear factors in the resultant",
                                        factors=[format_poly(l) for l, _ in extraneous]))
    if h == 1 and not extraneous and report.deg_V is not None and P.degree() != n * n - report.deg_V:
        diagnostics.append(_finding("degree", f"deg P = {P.degree()} but n^2 - deg V = {n * n - report.deg_V}"))
    bad = [pt for pt in sample_image_points(param) if P(*pt) != 0]
    if bad:
        diagnostics.append(_finding("image_check", f"P does not vanish at {len(bad)} sampled image points"))
    if mb is not None and report.deg_V is not None and expected_degree(n, mb.mu) != report.deg_V:
        diagnostics.append(_finding("mu_degree", "deg V differs from (n^2 + sum mu^2) / 2"))
    return ImplicitResult(
        P=P, method=used, h=h, bp_report=report, params=param,
        mu=tuple(mb.mu) if mb else None, saturated=saturated, minors=minors,
        extraneous=extraneous, ledger=ledger if used != "moving" else None,
        diagnostics=diagnostics,
        options={"method": method, "seed": seed, "sat_bound": bound},
    )


def error_document(exc: ImplicitizationError, source: Optional[str] = None, options=None) -> dict:
    out = {"format": FORMAT_TAG, "status": "error", "error": exc.to_dict()}
    if source is not None:
        try:
            param = parse_parametrization(source)
        except ImplicitizationError:
            pass
        else:
            out["input"] = {name: format_poly(g) for name, g in zip(GENERATOR_NAMES, param.gens)}
    if options:
        out["options"] = dict(options)
    return out


__all__ = ["JobSpec", "ImplicitResult", "run", "run_parametrization", "run_moving", "run_resultant",
           "degree_ledger", "moving_degree_search", "map_back", "sample_image_points", "dumps",
           "error_document", "format_parametrization"]
