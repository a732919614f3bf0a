"""Regularity of bent functions, their duals, and the dual level-set structure."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cayley import CayleyGraph, distinguished_index, feasibility_verdict, srg_check
from .cyclotomic import CycInt
from .pfunc import PAryFunction, is_even, level_sets, require_even_normalized
from .spectral import Spectrum, component_spectra, fourier_indicator, is_bent, walsh_transform

REGULAR = "regular"
WEAK_MINUS = "(-1)-weakly regular"
WEAK_OTHER = "weakly regular (other unit)"
NOT_WEAK = "not weakly regular"


@dataclass(frozen=True)
class RegularityReport:
    """W_f(x) = mu * zeta^f*(x) * p^(n/2) with mu = epsilon * zeta^j0, when weakly regular."""

    kind: str
    W0: CycInt
    dual: PAryFunction | None = None
    epsilon: int | None = None
    j0: int | None = None

    @property
    def weakly_regular(self) -> bool:
        return self.dual is not None


def classify_regularity(f: PAryFunction, spectrum: Spectrum | None = None) -> RegularityReport:
    if f.n % 2:
        raise ValueError("regularity needs an even number of variables")
    W = spectrum if spectrum is not None else walsh_transform(f)
    if not is_bent(f, W):
        raise ValueError("f is not bent")
    m = f.n // 2
    signs = np.empty(f.size, dtype=np.int64)
    exps = np.empty(f.size, dtype=np.int64)
    for x, w in enumerate(W):
        eps, j = w.classify_root_multiple(m)  # bent with even n always factors
        signs[x], exps[x] = eps, j
    W0 = W[0]
    if np.any(signs != signs[0]):
        return RegularityReport(NOT_WEAK, W0)
    eps, j0 = int(signs[0]), int(exps[0])
    dual = PAryFunction(f.p, f.n, (exps - j0) % f.p)
    if j0 != 0:
        kind = WEAK_OTHER
    else:
        kind = REGULAR if eps == 1 else WEAK_MINUS
    return RegularityReport(kind, W0, dual, eps, j0)


def dual_by_distinguished_index(f: PAryFunction) -> PAryFunction:
    """f*(x) = the index j with lambda_j(x) = N - r_j, reading j = p as 0."""
    require_even_normalized(f)
    j = distinguished_index(f)
    return PAryFunction(f.p, f.n, j % f.p)


@dataclass
class DualStructureReport:
    ok: bool
    N: int
    r: tuple[int, ...]
    dual: PAryFunction
    checks: dict = field(default_factory=dict)  # check name -> list of per-class booleans
    witnesses: list = field(default_factory=list)  # (check, i, x)
    matches: dict = field(default_factory=dict)  # i -> j with D_i* = D_j, or None


def verify_dual_structure(f: PAryFunction) -> DualStructureReport:
    """Check the level sets of the dual against those of f, class by class.

    For each i: |D_i*| = (N-1) r_i; N f_i* = hat f_i + r_i - N r_i delta_0;
    hat f_i* = N f_i + N r_i delta_0 - r_i; and Gamma_i* has the SRG parameters
    of Gamma_i.  Here f_i and f_i* are indicators of D_i and D_i*.
    """
    require_even_normalized(f)
    verdict = feasibility_verdict(f)
    if not verdict.feasible:
        raise ValueError("dual structure needs a feasible LST or NLST function")
    p, n, N, r = f.p, f.n, verdict.N, verdict.r
    dual = dual_by_distinguished_index(f)
    ls, lsd = level_sets(f), level_sets(dual)
    lam = component_spectra(f)
    delta = np.zeros(f.size, dtype=np.int64)
    delta[0] = 1
    checks = {"size": [], "component": [], "fourier": [], "srg": []}
    witnesses = []

    def record(name, i, bad):
        checks[name].append(bad is None)
        if bad is not None:
            witnesses.append((name, i, bad))

    for i in range(1, p + 1):
        ri = r[i - 1]
        fi, fi_star = ls.indicator(i), lsd.indicator(i)
        record("size", i, None if lsd.D[i].size == (N - 1) * ri else 0)
        lhs = N * fi_star
        rhs = lam[i].integers() + ri - N * ri * delta
        bad = np.flatnonzero(lhs != rhs)
        record("component", i, int(bad[0]) if bad.size else None)
        hat_star = fourier_indicator(lsd.D[i], p, n).integers()
        bad = np.flatnonzero(hat_star != N * fi + N * ri * delta - ri)
        record("fourier", i, int(bad[0]) if bad.size else None)
        a = srg_check(CayleyGraph(p, n, ls.D[i]))
        b = srg_check(CayleyGraph(p, n, lsd.D[i]))
        record("srg", i, None if (a.status, a.params) == (b.status, b.params) else 0)

    matches = {}
    for i in range(1, p + 1):
        matches[i] = next((j for j in range(1, p + 1) if np.array_equal(lsd.D[i], ls.D[j])), None)
    return DualStructureReport(not witnesses, N, r, dual, checks, witnesses, matches)


def dual_is_consistent(f: PAryFunction) -> bool:
    """The dual is even, vanishes at 0, and is itself bent."""
    rep = classify_regularity(f)
    if rep.dual is None:
        return False
    d = rep.dual
    return d.values[0] == 0 and is_even(d) and bool(is_bent(d))
