"""The end-to-end pipeline and its text / JSON reports."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from . import system as core
from .cyclotomic import CycMatrix, format_cyc
from .errors import AmonoError, DegenerateForm, NoMBBasis, NoUnimodularIndexSet
from .hermitian import (
    ConjectureReport,
    HermitianForm,
    Signature,
    check_signature_conjecture,
    invariant_hermitian_form,
    orthogonality_graph,
    signature,
)
from .monodromy import (
    GeneratorSet,
    MBBasis,
    build_chamber_data,
    find_mb_basis,
    generator_set,
    mb_basis_from_points,
)
from .polyhedral import Zonotope, enumerate_chambers
from .spec_io import SystemSpec

SCHEMA_VERSION = 1


@dataclass
class PipelineResult:
    spec: SystemSpec
    system: core.ASystem
    nonresonant: bool
    index_sets: list
    choices_by_set: dict
    choices: list
    chambers: list
    D: int
    order: int
    mb: Optional[MBBasis] = None
    mb_error: Optional[str] = None
    chamber_data: list = field(default_factory=list)
    generators: Optional[GeneratorSet] = None
    edges: list = field(default_factory=list)
    form: Optional[HermitianForm] = None
    form_error: Optional[str] = None
    conjecture: Optional[ConjectureReport] = None
    signature: Optional[Signature] = None
    signature_error: Optional[str] = None
    timing: Optional[Dict[str, float]] = None


def run_pipeline(spec: SystemSpec, overrides: Optional[Dict[str, Any]] = None, timing: bool = False) -> PipelineResult:
    """Validate, enumerate, find the Mellin-Barnes basis, build generators and H.

    Validation and resonance problems raise. A missing Mellin-Barnes basis is
    recorded and the combinatorial part is still returned, unless
    ``require_mb`` is set; a degenerate or non-unique form is recorded too.
    """
    opts = dict(spec.options)
    opts.update(overrides or {})
    get = lambda k: opts.get(k, spec.option(k))
    clock: Dict[str, float] = {}
    t0 = time.perf_counter()

    def lap(name):
        nonlocal t0
        now = time.perf_counter()
        clock[name] = now - t0
        t0 = now

    sys = core.validate(spec.A, spec.alpha, spec.B)
    nonres = core.is_totally_nonresonant(sys)
    if not nonres:
        raise core.ResonantParameter("alpha lies on a resonance hyperplane of A")
    index_sets = core.enumerate_index_sets(sys)
    by_set = {I.I: core.gamma_choices(sys, I) for I in index_sets}
    choices = [g for I in index_sets for g in by_set[I.I]]
    lap("index_sets")
    chambers = enumerate_chambers(sys.B)
    D = core.rank(sys, chambers)
    order = core.working_order(sys, choices)
    lap("chambers")
    res = PipelineResult(
        spec=spec, system=sys, nonresonant=nonres, index_sets=index_sets, choices_by_set=by_set,
        choices=choices, chambers=chambers, D=D, order=order,
    )

    Z = Zonotope.of_matrix(sys.B)
    try:
        if spec.mb_points is not None:
            res.mb = mb_basis_from_points(sys, spec.mb_points, Z)
        else:
            res.mb = find_mb_basis(sys, D, thetas=spec.mb_thetas, zonotope=Z)
    except (NoMBBasis, NoUnimodularIndexSet) as exc:
        if get("require_mb"):
            raise
        res.mb_error = "%s: %s" % (type(exc).__name__, exc)
    lap("mb_basis")

    if res.mb is not None:
        res.chamber_data = build_chamber_data(sys, res.mb, chambers, by_set, order)
        res.generators = generator_set(res.chamber_data)
        lap("generators")
        if not get("skip_hermitian"):
            res.edges = orthogonality_graph(sys, choices, chambers)
            try:
                res.form = invariant_hermitian_form(
                    sys, res.mb, choices, res.edges, [tm for tm, _ in res.chamber_data],
                    res.generators.generators, order,
                )
            except AmonoError as exc:
                res.form_error = "%s: %s" % (type(exc).__name__, exc)
            if res.form is not None:
                res.conjecture = check_signature_conjecture(sys, res.mb, res.form, choices, order, get("tolerance"))
                try:
                    res.signature = signature(res.form.H, get("eig_tolerance"))
                except DegenerateForm as exc:
                    res.signature_error = "DegenerateForm: %s" % exc
            lap("hermitian")
    if timing:
        res.timing = {k: round(v, 3) for k, v in clock.items()}
    return res


# ---------------------------------------------------------------- rendering


def _fl(x: float) -> float:
    x = round(float(x), 12)
    return 0.0 if x == 0 else x


def _sym(M: CycMatrix) -> List[List[str]]:
    return [[format_cyc(x) for x in row] for row in M.rows]


def _num(M: CycMatrix) -> List[List[List[float]]]:
    return [[[_fl(z.real), _fl(z.imag)] for z in (complex(x) for x in row)] for row in M.rows]


def _rat(v) -> List[str]:
    return [str(x) for x in v]


def _one_based(I) -> List[int]:
    return [i + 1 for i in I]


def to_dict(res: PipelineResult) -> Dict[str, Any]:
    sys = res.system
    out: Dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "name": res.spec.name,
        "description": res.spec.description,
        "system": {
            "A": [list(r) for r in sys.A],
            "alpha": _rat(sys.alpha),
            "B": [list(r) for r in sys.B],
            "h": _rat(sys.h),
            "N": sys.N, "r": sys.r, "d": sys.d, "D": res.D,
            "totally_nonresonant": res.nonresonant,
            "working_order": res.order,
        },
        "index_sets": [
            {
                "I": _one_based(I.I),
                "delta": I.delta,
                "gammas": [_rat(g.gamma) for g in res.choices_by_set[I.I]],
            }
            for I in res.index_sets
        ],
        "index_set_total": len(res.choices),
        "chambers": [
            {"rho": list(ch.rho), "index_sets": [_one_based(I) for I in ch.index_sets]}
            for ch in res.chambers
        ],
        "chamber_count": len(res.chambers),
    }
    if res.mb is not None:
        out["mb_basis"] = {
            "status": "found",
            "points": [_rat(p) for p in res.mb.points],
            "thetas": [_rat(t) for t in res.mb.thetas],
            "support": _one_based(res.mb.support) if res.mb.support else None,
        }
    else:
        out["mb_basis"] = {"status": "none", "message": res.mb_error}
    if res.generators is not None:
        gs = res.generators
        out["generators"] = {
            "raw_count": gs.raw_count,
            "distinct_count": len(gs.generators),
            "items": [
                {
                    "chamber": occ[0][0] + 1,
                    "rho": list(g.chamber.rho),
                    "loop": list(g.loop),
                    "matrix": _sym(g.matrix),
                    "matrix_float": _num(g.matrix),
                    "also_at": [[c + 1, list(l)] for c, l in occ[1:]],
                }
                for g, occ in zip(gs.generators, gs.occurrences)
            ],
        }
        out["transition_matrices"] = [
            {"chamber": k + 1, "columns": [[_one_based(g.owner.I), g.coset_id] for g in tm.column_order], "matrix": _sym(tm.matrix)}
            for k, (tm, _) in enumerate(res.chamber_data)
        ]
    if res.form is not None:
        f = res.form
        out["hermitian"] = {
            "status": "found",
            "order": f.H.order,
            "H": _sym(f.H),
            "H_float": _num(f.H),
            "normalization": {"I": _one_based(f.normalization.owner.I), "coset": f.normalization.coset_id},
            "uniqueness_flag": f.uniqueness_flag,
            "orthogonality_dimension": f.orthogonality_dimension,
            "joint_dimension": f.joint_dimension,
            "orthogonal_pairs": len(res.edges),
        }
    elif res.generators is not None and res.form_error is not None:
        out["hermitian"] = {"status": "error", "message": res.form_error}
    else:
        out["hermitian"] = {"status": "skipped"}
    if res.conjecture is not None:
        c = res.conjecture
        out["conjecture"] = {
            "tolerance": c.tolerance,
            "passed": c.passed,
            "pass_count": c.pass_count,
            "max_deviation": _fl(c.max_deviation),
            "rows": [
                {
                    "I": _one_based(r.choice.owner.I),
                    "coset": r.choice.coset_id,
                    "pairing": _fl(r.pairing),
                    "target": _fl(r.target),
                    "passed": r.passed,
                }
                for r in c.rows
            ],
        }
    if res.signature is not None:
        out["signature"] = {
            "positives": res.signature.positives,
            "negatives": res.signature.negatives,
            "min_abs_eigenvalue": _fl(res.signature.min_abs_eigenvalue),
            "up_to_sign": list(res.signature.canonical()),
        }
    elif res.signature_error is not None:
        out["signature"] = {"status": "degenerate", "message": res.signature_error}
    if res.timing is not None:
        out["timing"] = res.timing
    return out


def render_json(res: PipelineResult) -> str:
    return json.dumps(to_dict(res), sort_keys=True, indent=2) + "\n"


def _matrix_lines(sym, num, indent="    ") -> List[str]:
    w = max((len(s) for row in sym for s in row), default=1)
    lines = []
    for row, frow in zip(sym, num):
        lines.append(indent + "[ " + "  ".join(s.rjust(w) for s in row) + " ]")
    lines.append(indent + "float:")
    for frow in num:
        lines.append(indent + "  " + "  ".join("(%+.6f, %+.6f)" % (re, im) for re, im in frow))
    return lines


def render_text(res: PipelineResult) -> str:
    d = to_dict(res)
    s = d["system"]
    L: List[str] = []
    L.append("system %s" % d["name"])
    if d["description"]:
        L.append("  %s" % d["description"])
    L.append("  N = %d, r = %d, d = %d, rank D = %d" % (s["N"], s["r"], s["d"], s["D"]))
    L.append("  alpha = (%s), h = (%s)" % (", ".join(s["alpha"]), ", ".join(s["h"])))
    L.append("  totally non-resonant: %s" % ("yes" if s["totally_nonresonant"] else "no"))
    L.append("  (gamma_i < 0 is not enforced: alpha and alpha + Z^r give the same monodromy)")
    L.append("  B =")
    for row in s["B"]:
        L.append("    " + " ".join("%3d" % x for x in row))
    L.append("")
    L.append("index sets (%d distinct, %d with multiplicity)" % (len(d["index_sets"]), d["index_set_total"]))
    for e in d["index_sets"]:
        L.append("  I = %-16s Delta = %d" % (tuple(e["I"]), e["delta"]))
        for k, g in enumerate(e["gammas"]):
            L.append("      gamma[%d] = (%s)" % (k, ", ".join(g)))
    L.append("")
    L.append("chambers: %d" % d["chamber_count"])
    for k, ch in enumerate(d["chambers"]):
        L.append("  %3d  rho = %-18s %s" % (k + 1, tuple(ch["rho"]), " ".join(str(tuple(I)) for I in ch["index_sets"])))
    L.append("")
    mb = d["mb_basis"]
    if mb["status"] == "found":
        L.append("Mellin-Barnes basis")
        for p, t in zip(mb["points"], mb["thetas"]):
            L.append("  tau = (%s)   Theta/2pi = (%s)" % (", ".join(p), ", ".join(t)))
        if mb["support"]:
            L.append("  arguments supported on the unimodular set %s" % (tuple(mb["support"]),))
    else:
        L.append("Mellin-Barnes basis: none (%s)" % mb["message"])
    if "generators" in d:
        g = d["generators"]
        L.append("")
        L.append("cyclotomic entries: rational combinations of e(x) = exp(2 pi i x), -1/2 < x <= 1/2, in Q(zeta_%d)" % s["working_order"])
        L.append("unit-loop generators: %d raw, %d distinct" % (g["raw_count"], g["distinct_count"]))
        L.append("  (loops other than the essential ones differ by scalars coming from the homogeneity of the solutions)")
        for k, item in enumerate(g["items"]):
            loop = item["loop"]
            idx = loop.index(1) + 1 if 1 in loop else 0
            L.append("  [%d] chamber %d, rho = %s, loop c_%d" % (k + 1, item["chamber"], tuple(item["rho"]), idx))
            if item["also_at"]:
                L.append("      also: " + ", ".join("chamber %d loop c_%d" % (c, l.index(1) + 1) for c, l in item["also_at"]))
            L.extend(_matrix_lines(item["matrix"], item["matrix_float"], "      "))
    h = d["hermitian"]
    L.append("")
    if h["status"] == "found":
        L.append("invariant Hermitian form (entries in Q(zeta_%d))" % h["order"])
        L.append("  normalized at I = %s, coset %d" % (tuple(h["normalization"]["I"]), h["normalization"]["coset"]))
        L.append("  orthogonal pairs: %d" % h["orthogonal_pairs"])
        L.append("  solution dimension: orthogonality %d, with invariance %d; unique up to scalar: %s"
                 % (h["orthogonality_dimension"], h["joint_dimension"], "yes" if h["uniqueness_flag"] else "no"))
        L.extend(_matrix_lines(h["H"], h["H_float"], "    "))
    else:
        L.append("invariant Hermitian form: %s" % (h.get("message") or h["status"]))
    if "conjecture" in d:
        c = d["conjecture"]
        L.append("")
        L.append("diagonal pairings vs Delta_I prod sin(pi gamma_i): %d/%d within %g (max deviation %.3g)"
                 % (c["pass_count"], len(c["rows"]), c["tolerance"], c["max_deviation"]))
        for r in c["rows"]:
            L.append("  %-16s coset %d  %+.12f  %+.12f  %s"
                     % (tuple(r["I"]), r["coset"], r["pairing"], r["target"], "ok" if r["passed"] else "FAIL"))
    if "signature" in d:
        sg = d["signature"]
        L.append("")
        if "positives" in sg:
            L.append("signature (%d, %d) of the normalized H; up to the sign of H: (%d, %d)"
                     % (sg["positives"], sg["negatives"], sg["up_to_sign"][0], sg["up_to_sign"][1]))
            L.append("  min |eigenvalue| = %.6g" % sg["min_abs_eigenvalue"])
        else:
            L.append("signature: %s" % sg["message"])
    if "timing" in d:
        L.append("")
        L.append("timing (s): " + ", ".join("%s %.3f" % (k, v) for k, v in d["timing"].items()))
    return "\n".join(L) + "\n"
