"""Component Cayley graphs, strong regularity and Latin-square-type classification."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cyclotomic import CycInt
from .ff import point_space
from .pfunc import PAryFunction, feasible_sizes, level_sets, require_even_normalized
from .spectral import Spectrum, fourier_indicator


class CayleyGraph:
    """Cay(GF(p)^n, D) for a symmetric connection set D not containing 0."""

    def __init__(self, p: int, n: int, D):
        self.p = p
        self.n = n
        D = np.unique(np.asarray(D, dtype=np.int64))
        space = point_space(p, n)
        if D.size and (D[0] < 0 or D[-1] >= space.size):
            raise ValueError("connection set has out-of-range indices")
        if 0 in D:
            raise ValueError("connection set must not contain 0")
        if not np.array_equal(np.sort(space.neg[D]), D):
            raise ValueError("connection set is not symmetric (D != -D)")
        D.setflags(write=False)
        self.D = D

    @property
    def order(self) -> int:
        return self.p**self.n

    @property
    def degree(self) -> int:
        return int(self.D.size)

    def indicator(self) -> np.ndarray:
        ind = np.zeros(self.order, dtype=np.int64)
        ind[self.D] = 1
        return ind

    def union(self, other: CayleyGraph) -> CayleyGraph:
        return CayleyGraph(self.p, self.n, np.union1d(self.D, other.D))

    def adjacency(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix; only for small orders."""
        sub = point_space(self.p, self.n).sub_table
        return self.indicator()[sub]

    def __repr__(self) -> str:
        return f"CayleyGraph(p={self.p}, n={self.n}, degree={self.degree})"


def component_graphs(f: PAryFunction) -> list[CayleyGraph]:
    """Gamma_1..Gamma_p; the list index is i - 1."""
    require_even_normalized(f)
    ls = level_sets(f)
    return [CayleyGraph(f.p, f.n, ls.D[i]) for i in range(1, f.p + 1)]


def union_graph(f: PAryFunction, *indices: int) -> CayleyGraph:
    require_even_normalized(f)
    ls = level_sets(f)
    return CayleyGraph(f.p, f.n, np.concatenate([ls.D[i] for i in indices]))


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int | None
    mu: int | None

    def as_tuple(self) -> tuple:
        return (self.v, self.k, self.lam, self.mu)

    def __str__(self) -> str:
        if self.lam is None:
            return f"({self.v},{self.k},-,-)"
        return f"({self.v},{self.k},{self.lam},{self.mu})"


@dataclass(frozen=True)
class SrgResult:
    status: str  # "srg", "empty", "complete" or "not-srg"
    params: SrgParams | None = None
    witness: tuple[int, int] | None = None  # two differences z, z' in the same class with unequal counts

    @property
    def is_srg(self) -> bool:
        return self.status == "srg"


def autocorrelation(g: CayleyGraph) -> np.ndarray:
    """c[z] = |D ∩ (D + z)|, the common-neighbour count of any pair at difference z."""
    ind = g.indicator()
    if g.degree == 0:
        return np.zeros(g.order, dtype=np.int64)
    sub = point_space(g.p, g.n).sub_table
    return ind[sub[g.D, :]].sum(axis=0)


def srg_check(g: CayleyGraph) -> SrgResult:
    v, k = g.order, g.degree
    if k == 0:
        return SrgResult("empty", SrgParams(v, 0, None, None))
    if k == v - 1:
        return SrgResult("complete", SrgParams(v, k, v - 2, None))
    c = autocorrelation(g)
    adj = g.indicator().astype(bool)
    non = ~adj
    non[0] = False
    lam_vals, mu_vals = c[adj], c[non]
    for vals, cls in ((lam_vals, np.flatnonzero(adj)), (mu_vals, np.flatnonzero(non))):
        if np.any(vals != vals[0]):
            other = int(cls[np.flatnonzero(vals != vals[0])[0]])
            return SrgResult("not-srg", None, (int(cls[0]), other))
    return SrgResult("srg", SrgParams(v, k, int(lam_vals[0]), int(mu_vals[0])))


@dataclass(frozen=True)
class EigenReport:
    values: tuple[tuple[CycInt, int], ...]  # distinct eigenvalue, multiplicity
    degree: int

    @property
    def distinct(self) -> int:
        return len(self.values)

    @property
    def all_rational(self) -> bool:
        return all(val.is_rational() for val, _ in self.values)

    def as_dict(self) -> dict:
        return {str(val): mult for val, mult in self.values}


def spectrum(g: CayleyGraph, fourier: Spectrum | None = None) -> EigenReport:
    """Eigenvalue census: the eigenvalue on the character h(x) is the Fourier value at x."""
    F = fourier if fourier is not None else fourier_indicator(g.D, g.p, g.n)
    census = F.census()
    if F[0] != CycInt.integer(g.p, g.degree):
        raise AssertionError("eigenvalue at x = 0 differs from the degree")
    return EigenReport(tuple(census), g.degree)


def srg_from_spectrum(g: CayleyGraph, fourier: Spectrum | None = None) -> SrgResult:
    """Algebraic route: SRG iff exactly two distinct eigenvalues off the all-ones vector.

    With those restricted eigenvalues theta, tau: mu = k + theta*tau and
    lambda = mu + theta + tau.
    """
    v, k = g.order, g.degree
    if k == 0:
        return SrgResult("empty", SrgParams(v, 0, None, None))
    if k == v - 1:
        return SrgResult("complete", SrgParams(v, k, v - 2, None))
    F = fourier if fourier is not None else fourier_indicator(g.D, g.p, g.n)
    rest = np.unique(F.array[1:], axis=0)
    if rest.shape[0] != 2 or np.any(rest[:, 1:] != 0):
        return SrgResult("not-srg")
    theta, tau = (int(x) for x in rest[:, 0])
    mu = k + theta * tau
    return SrgResult("srg", SrgParams(v, k, mu + theta + tau, mu))


@dataclass(frozen=True)
class LstClassification:
    solutions: frozenset  # of (N, r)
    degenerate_empty: bool = False

    @property
    def is_lst(self) -> bool:
        return any(N > 0 for N, _ in self.solutions)

    @property
    def is_nlst(self) -> bool:
        return any(N < 0 for N, _ in self.solutions)

    def sorted(self) -> list[tuple[int, int]]:
        return sorted(self.solutions, key=lambda s: (-s[0], s[1]))


def lst_params(N: int, r: int) -> tuple[int, int, int, int]:
    return (N * N, (N - 1) * r, N + r * r - 3 * r, r * r - r)


def classify_lst(params: SrgParams) -> LstClassification:
    """All (N, r) with (v,k,lambda,mu) = (N^2, (N-1)r, N+r^2-3r, r^2-r), N and r of one sign."""
    v, k = params.v, params.k
    root = math.isqrt(v)
    if root * root != v:
        return LstClassification(frozenset())
    if params.lam is None:
        # empty graph: vacuous r = 0 for either sign
        if k == 0:
            return LstClassification(frozenset({(root, 0), (-root, 0)}), degenerate_empty=True)
        return LstClassification(frozenset())
    sols = set()
    for N in (root, -root):
        if N == 1 or k % (N - 1):
            continue
        r = k // (N - 1)
        if r == 0 or (r > 0) != (N > 0):
            continue
        if lst_params(N, r) == params.as_tuple():
            sols.add((N, r))
    return LstClassification(frozenset(sols))


@dataclass
class GraphVerdict:
    index: int
    degree: int
    srg: SrgResult
    lst: LstClassification
    distinct_eigenvalues: int
    feasible: dict = field(default_factory=dict)  # "LST"/"NLST" -> bool


@dataclass
class FeasibilityVerdict:
    overall: str  # "feasible-LST", "feasible-NLST" or "neither"
    N: int | None
    r: tuple[int, ...] | None
    graphs: list[GraphVerdict]
    degrees_feasible: dict = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.overall != "neither"


def _matches_profile(res: SrgResult, N: int, r: int) -> bool:
    if res.status == "empty":
        return r == 0
    if res.status != "srg":
        return False
    return res.params.as_tuple() == lst_params(N, r)


def feasibility_verdict(f: PAryFunction, spectra: list[Spectrum] | None = None) -> FeasibilityVerdict:
    require_even_normalized(f)
    if f.n % 2:
        raise ValueError("feasibility is defined for an even number of variables")
    p, m = f.p, f.n // 2
    graphs = component_graphs(f)
    profiles = feasible_sizes(p, m)
    verdicts = []
    for i, g in enumerate(graphs, start=1):
        res = srg_check(g)
        lst = classify_lst(res.params) if res.status in ("srg", "empty") else LstClassification(frozenset())
        F = spectra[i] if spectra is not None else fourier_indicator(g.D, p, f.n)
        gv = GraphVerdict(i, g.degree, res, lst, len(F.census()))
        for name, prof in profiles.items():
            gv.feasible[name] = _matches_profile(res, prof.N, prof.r[i - 1])
        verdicts.append(gv)
    degrees_ok = {name: tuple(g.degree for g in graphs) == prof.sizes for name, prof in profiles.items()}
    for name in ("LST", "NLST"):
        if all(gv.feasible[name] for gv in verdicts):
            prof = profiles[name]
            return FeasibilityVerdict(f"feasible-{name}", prof.N, prof.r, verdicts, degrees_ok)
    return FeasibilityVerdict("neither", None, None, verdicts, degrees_ok)


def eigenvalue_table(f: PAryFunction, spectra: list[Spectrum] | None = None) -> np.ndarray:
    """Integer eigenvalues lambda_i(x), shape (p+1, p^n); row 0 is the identity relation."""
    if spectra is None:
        ls = level_sets(f)
        spectra = [fourier_indicator(d, f.p, f.n) for d in ls.D]
    return np.stack([s.integers() for s in spectra])


def distinguished_index(f: PAryFunction, verdict: FeasibilityVerdict | None = None,
                        spectra: list[Spectrum] | None = None) -> np.ndarray:
    """For every x != 0 the unique j with lambda_j(x) = N - r_j (entry 0 is unused and set to 0)."""
    verdict = verdict if verdict is not None else feasibility_verdict(f, spectra)
    if not verdict.feasible:
        raise ValueError("distinguished index needs a feasible LST or NLST function")
    lam = eigenvalue_table(f, spectra)[1:]  # rows i = 1..p
    N = verdict.N
    r = np.array(verdict.r, dtype=np.int64)[:, None]
    hit = lam == (N - r)
    rest = lam == -r
    cols = slice(1, None)
    if np.any(hit[:, cols].sum(axis=0) != 1) or np.any((hit | rest)[:, cols].sum(axis=0) != f.p):
        bad = 1 + int(np.flatnonzero((hit[:, cols].sum(axis=0) != 1) | ((hit | rest)[:, cols].sum(axis=0) != f.p))[0])
        raise ValueError(f"distinguished index is not unique at point {bad}")
    j = np.zeros(f.size, dtype=np.int64)
    j[1:] = np.argmax(hit[:, 1:], axis=0) + 1
    return j
