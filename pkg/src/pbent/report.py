"""Full analysis of one function as an ordered, renderable report.

The report is a list of sections, each a list of (key, value) pairs; the
plain-text and JSON renderings are generated from the same structure.
"""
from __future__ import annotations

import hashlib
import json

from . import cayley, duality, scheme, spectral
from .pfunc import PAryFunction, anf_interpolate, is_even, level_sets, render_anf


class InconsistencyError(AssertionError):
    """Two independent methods disagreed."""


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def table_digest(f: PAryFunction) -> str:
    return hashlib.sha256(f.values.astype("<i8").tobytes()).hexdigest()[:16]


def analyze(f: PAryFunction) -> list[tuple[str, list[tuple[str, object]]]]:
    sections = []
    sections.append(("input", [
        ("p", f.p),
        ("n", f.n),
        ("anf", render_anf(anf_interpolate(f))),
        ("table-sha256", table_digest(f)),
    ]))
    even = is_even(f)
    norm = [("f(0)", int(f.values[0])), ("even", _yn(even))]
    sections.append(("normalization", norm))
    if not even:
        norm.append(("status", "bent analysis skipped (f is not even)"))
        return sections
    if f.values[0] != 0:
        norm.append(("status", "bent analysis skipped (f(0) != 0; rerun with --normalize)"))
        return sections

    ls = level_sets(f)
    W = spectral.walsh_transform(f)
    bent = spectral.is_bent(f, W)
    by_deriv = spectral.is_bent_by_derivatives(f)
    if bool(bent) != bool(by_deriv):
        raise InconsistencyError("Walsh and derivative bent verdicts differ")
    lambdas = spectral.component_spectra(f)
    if spectral.walsh_from_eigenvalues(f, lambdas) != W:
        raise InconsistencyError("eigenvalue assembly differs from the direct Walsh transform")

    walsh = [("W(0)", str(W[0])), ("bent", _yn(bool(bent)))]
    if not bent:
        walsh.append(("witness", int(bent.witness)))
    regular = None
    if bent and f.n % 2 == 0:
        regular = duality.classify_regularity(f, W)
        walsh.append(("regularity", regular.kind))
        if regular.dual is not None:
            walsh.append(("dual", render_anf(anf_interpolate(regular.dual))))
    sections.append(("walsh", walsh))

    sizes = ls.sizes()
    levels = [("sizes", " ".join(str(s) for s in sizes))]
    if f.n % 2 == 0:
        for name, prof in cayley.feasible_sizes(f.p, f.n // 2).items():
            levels.append((f"feasible-degrees-{name}", _yn(sizes[1:] == prof.sizes)))
    sections.append(("level sets", levels))

    graphs = []
    counts = []
    for i, g in enumerate(cayley.component_graphs(f), start=1):
        res = cayley.srg_check(g)
        alg = cayley.srg_from_spectrum(g, lambdas[i])
        if (res.status, res.params) != (alg.status, alg.params):
            raise InconsistencyError(f"combinatorial and spectral SRG checks differ on Gamma_{i}")
        count = len(lambdas[i].census())
        counts.append(count)
        desc = f"srg {res.params}" if res.is_srg else res.status
        if res.status in ("srg", "empty"):
            lst = cayley.classify_lst(res.params)
            kinds = [f"{'LST' if N > 0 else 'NLST'}(N={N},r={r})" for N, r in lst.sorted()]
            if kinds:
                desc += " " + " ".join(kinds)
        graphs.append((f"Gamma_{i}", f"degree {g.degree}; {desc}; eigenvalues {count}"))
    graphs.append(("eigencount", " ".join(str(c) for c in counts)))
    if f.n % 2 == 0:
        verdict = cayley.feasibility_verdict(f, lambdas)
        graphs.append(("feasibility", verdict.overall))
        if verdict.feasible:
            graphs.append(("N", verdict.N))
            graphs.append(("r", " ".join(str(x) for x in verdict.r)))
            if regular is not None and regular.dual is not None:
                if duality.dual_by_distinguished_index(f) != regular.dual:
                    raise InconsistencyError("distinguished-index dual differs from the Walsh dual")
    else:
        verdict = None
    sections.append(("graphs", graphs))

    sch = []
    res = scheme.scheme_check(f)
    sch.append(("scheme", _yn(res.is_scheme)))
    if not res.is_scheme:
        i, j, k, z, z2 = res.witness
        sch.append(("witness", f"rho_{i}{j} differs at points {z} and {z2} of class {k}"))
    else:
        c = res.constants
        if scheme.constants_by_trace(f, lambdas) != c:
            raise InconsistencyError("counting and trace structure constants differ")
        by_constants = scheme.is_bent_by_constants(f, c)
        if by_constants != bool(bent):
            raise InconsistencyError("structure-constant and Walsh bent verdicts differ")
        sch.append(("classes", len(c.classes) - 1))
        sch.append(("bent-by-constants", _yn(by_constants)))
        try:
            am = scheme.amorphic_check(f)
        except AssertionError as e:
            raise InconsistencyError(str(e)) from None
        sch.append(("amorphic", _yn(am.is_amorphic) + (f" ({am.type}, {am.method})" if am.is_amorphic else "")))
        if am.is_amorphic:
            if verdict is not None and verdict.feasible:
                nr = (verdict.N, verdict.r)
            else:
                nr = scheme.amorphic_parameters(f, am.type)
            if nr is not None:
                sch.append(("imy", "match" if scheme.imy_matches(c, *nr) else "mismatch"))
        sch.append(("constants", "\n" + c.render()))
    sections.append(("scheme", sch))
    return sections


def render_text(sections) -> str:
    out = []
    for name, rows in sections:
        out.append(f"== {name}")
        for key, val in rows:
            text = str(val)
            if text.startswith("\n"):
                out.append(f"{key}:")
                out.extend("  " + ln if ln else "" for ln in text[1:].rstrip("\n").split("\n"))
            else:
                out.append(f"{key}: {text}")
        out.append("")
    return "\n".join(out)


def render_json(sections) -> str:
    doc = {name: {key: (val.strip("\n") if isinstance(val, str) else val) for key, val in rows}
           for name, rows in sections}
    return json.dumps(doc, indent=2) + "\n"
