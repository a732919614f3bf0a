"""Translation association schemes from the level sets of an even p-ary function.

Relations are R_k = {(x, y) : x - y in D_k}; because they are translation
invariant, rho_ij^k(x, y) depends only on z = x - y and equals
|{w in D_i : z - w in D_j}|.  Classes are indexed 0..p throughout; empty
classes keep their index and simply carry no constants.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cyclotomic as cyc
from .cayley import classify_lst, component_graphs, srg_check
from .ff import point_space
from .pfunc import PAryFunction, level_sets, require_even_normalized
from .spectral import Spectrum, fourier_indicator, is_bent


class NotASchemeError(ValueError):
    pass


@dataclass(frozen=True)
class SchemeConstants:
    """rho[i, j, k] for 0 <= i, j, k <= p; `classes` lists the nonempty class indices."""

    p: int
    rho: np.ndarray
    classes: tuple[int, ...]
    sizes: tuple[int, ...]

    def __getitem__(self, ijk) -> int:
        return int(self.rho[ijk])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SchemeConstants):
            return NotImplemented
        return self.classes == other.classes and bool(np.array_equal(self.rho, other.rho))

    def block(self, k: int) -> np.ndarray:
        """The rho_ij^k array restricted to nonempty classes (rows i, columns j)."""
        idx = np.array(self.classes)
        return self.rho[np.ix_(idx, idx, [k])][:, :, 0]

    def render(self) -> str:
        """One array per nonempty superscript k, as rows i and columns j."""
        out = []
        empty = [k for k in range(self.p + 1) if k not in self.classes]
        for k in self.classes:
            out.append(f"rho^{k}  " + " ".join(f"{j:>3}" for j in self.classes))
            for i in self.classes:
                out.append(f"{i:>6} " + " ".join(f"{int(self.rho[i, j, k]):>3}" for j in self.classes))
            out.append("")
        for k in empty:
            out.append(f"rho^{k}  (class {k} is empty)")
            out.append("")
        return "\n".join(out).rstrip("\n") + "\n"


@dataclass(frozen=True)
class SchemeResult:
    is_scheme: bool
    constants: SchemeConstants | None = None
    witness: tuple[int, int, int, int, int] | None = None  # (i, j, k, z, z')


def _class_matrix(f: PAryFunction) -> np.ndarray:
    labels = level_sets(f).labels()
    return labels[point_space(f.p, f.n).sub_table]


def convolution_counts(f: PAryFunction) -> np.ndarray:
    """conv[i, j, z] = |{w in D_i : z - w in D_j}| for all classes and points z."""
    ls = level_sets(f)
    p = f.p
    C = _class_matrix(f)  # C[z, w] = class of z - w
    F = np.stack([ls.indicator(i) for i in range(p + 1)], axis=1).astype(np.float64)
    conv = np.empty((p + 1, p + 1, f.size), dtype=np.int64)
    for j in range(p + 1):
        Aj = (C == j).astype(np.float64)
        # float64 BLAS is exact here: every partial sum is an integer <= p^n
        counts = np.rint(Aj @ F).astype(np.int64)  # counts[z, i]
        conv[:, j, :] = counts.T
    return conv


def _constants_from_conv(conv: np.ndarray, labels: np.ndarray, p: int, classes, sizes):
    """Constancy check of conv over each class; returns (rho, witness)."""
    rho = np.zeros((p + 1, p + 1, p + 1), dtype=np.int64)
    for k in classes:
        pts = np.flatnonzero(labels == k)
        vals = conv[:, :, pts]
        first = vals[:, :, :1]
        bad = np.argwhere(vals != first)
        if bad.size:
            i, j, t = (int(v) for v in bad[0])
            return None, (i, j, k, int(pts[0]), int(pts[t]))
        rho[:, :, k] = first[:, :, 0]
    return rho, None


def scheme_check(f: PAryFunction) -> SchemeResult:
    require_even_normalized(f)
    ls = level_sets(f)
    sizes = ls.sizes()
    classes = tuple(k for k in range(f.p + 1) if sizes[k])
    conv = convolution_counts(f)
    rho, witness = _constants_from_conv(conv, ls.labels(), f.p, classes, sizes)
    if rho is None:
        return SchemeResult(False, None, witness)
    return SchemeResult(True, SchemeConstants(f.p, rho, classes, sizes))


def constants_by_trace(f: PAryFunction, spectra: list[Spectrum] | None = None) -> SchemeConstants:
    """rho_ij^k = (1 / (p^n |D_k|)) * sum_x lambda_i(x) lambda_j(x) lambda_k(x), in exact arithmetic."""
    require_even_normalized(f)
    p, n = f.p, f.n
    ls = level_sets(f)
    sizes = ls.sizes()
    classes = tuple(k for k in range(p + 1) if sizes[k])
    if spectra is None:
        spectra = [fourier_indicator(d, p, n) for d in ls.D]
    raws = [s.raw() for s in spectra]
    fold = (np.arange(p)[:, None] + np.arange(p)[None, :]) % p
    rho = np.zeros((p + 1, p + 1, p + 1), dtype=np.int64)
    for i in range(p + 1):
        for j in range(i, p + 1):
            prod = cyc.mul_raw(raws[i], raws[j])
            for k in classes:
                pair = prod.T @ raws[k]  # pair[a, b] = sum_x prod[x, a] * lambda_k[x, b]
                tr = np.zeros(p, dtype=pair.dtype)
                np.add.at(tr, fold.ravel(), pair.ravel())
                total = cyc.CycInt.from_raw(p, tr)
                val = total.as_integer()
                denom = p**n * sizes[k]
                if val is None or val % denom:
                    raise ArithmeticError(f"trace for (i,j,k)=({i},{j},{k}) is not divisible: {total}")
                rho[i, j, k] = rho[j, i, k] = val // denom
    return SchemeConstants(p, rho, classes, sizes)


def derivative_count_by_constants(c: SchemeConstants, i: int, j: int) -> int:
    """Number of x with D_b f(x) = j for b in D_i:
    sum_{k=0..p} rho^i_{(j+k) mod p, k} + rho^i_{p, p-j}."""
    p = c.p
    if not (1 <= i <= p and 1 <= j <= p - 1):
        raise ValueError(f"indices out of range: i={i}, j={j}")
    return int(sum(c.rho[(j + k) % p, k, i] for k in range(p + 1)) + c.rho[p, p - j, i])


def is_bent_by_constants(f: PAryFunction, constants: SchemeConstants | None = None) -> bool:
    if constants is None:
        res = scheme_check(f)
        if not res.is_scheme:
            raise NotASchemeError("f does not determine an association scheme")
        constants = res.constants
    target = f.p ** (f.n - 1)
    return all(
        derivative_count_by_constants(constants, i, j) == target
        for i in constants.classes
        if i != 0
        for j in range(1, f.p)
    )


# -- amorphicity ---------------------------------------------------------------


def set_partitions(items):
    """All set partitions of `items` in restricted-growth-string order."""
    items = list(items)
    if not items:
        yield []
        return

    def rgs(prefix, maxv):
        if len(prefix) == len(items):
            yield prefix
            return
        for v in range(maxv + 2):
            yield from rgs(prefix + [v], max(maxv, v))

    for code in rgs([0], 0):
        blocks = [[] for _ in range(max(code) + 1)]
        for item, b in zip(items, code):
            blocks[b].append(item)
        yield blocks


def fusion_is_scheme(conv: np.ndarray, labels: np.ndarray, blocks) -> bool:
    """Whether merging classes along `blocks` (plus the identity class) is a scheme."""
    groups = [[0]] + [list(b) for b in blocks]
    for K in groups:
        pts = np.flatnonzero(np.isin(labels, K))
        for I in groups:
            sub = conv[np.ix_(I, list(range(conv.shape[1])), pts)].sum(axis=0)
            for J in groups:
                vals = sub[J].sum(axis=0)
                if np.any(vals != vals[0]):
                    return False
    return True


@dataclass(frozen=True)
class AmorphicVerdict:
    is_scheme: bool
    is_amorphic: bool
    method: str  # "spectral-SRG" or "fusion-exhaustive"
    type: str  # "LST", "NLST" or "none"
    classes: int = 0
    witness: tuple | None = None


def _common_type(f: PAryFunction) -> tuple[bool, set]:
    """(all nonempty component graphs SRG, set of signs shared by their LST solutions)."""
    signs = {"LST", "NLST"}
    all_srg = True
    for g in component_graphs(f):
        if g.degree == 0:
            continue
        res = srg_check(g)
        if res.status == "complete" and f.n % 2 == 0:
            continue  # K_{N^2} fits both signs with r = N + 1
        if not res.is_srg:
            all_srg = False
            signs = set()
            continue
        lst = classify_lst(res.params)
        mine = set()
        if lst.is_lst:
            mine.add("LST")
        if lst.is_nlst:
            mine.add("NLST")
        signs &= mine
    return all_srg, signs


def _pick_type(f: PAryFunction, signs: set) -> str:
    if not signs:
        return "none"
    if len(signs) == 1:
        return next(iter(signs))
    # both signs fit (e.g. (9,4,1,2)); the feasible profile decides when there is one
    if f.n % 2 == 0:
        from .cayley import feasibility_verdict

        overall = feasibility_verdict(f).overall
        if overall == "feasible-NLST":
            return "NLST"
    return "LST"


def amorphic_check(f: PAryFunction, mode: str = "auto") -> AmorphicVerdict:
    """Amorphic verdict; `auto` uses the SRG / common-sign criterion, `fusion` tests every fusion.

    `auto` also runs the fusion check when p <= 5, and the two must agree.
    """
    require_even_normalized(f)
    p = f.p
    if mode not in ("auto", "fusion"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "fusion" and p > 7:
        raise ValueError("fusion mode is limited to p <= 7")
    res = scheme_check(f)
    nclasses = len(res.constants.classes) - 1 if res.is_scheme else len([d for d in level_sets(f).D[1:] if d.size])
    if not res.is_scheme:
        return AmorphicVerdict(False, False, "fusion-exhaustive" if mode == "fusion" else "spectral-SRG",
                               "none", nclasses, res.witness)
    all_srg, signs = _common_type(f)
    kind = _pick_type(f, signs)
    if mode == "auto":
        # a scheme with at most two classes is trivially amorphic
        amorphic = nclasses <= 2 or (all_srg and bool(signs))
        verdict = AmorphicVerdict(True, amorphic, "spectral-SRG", kind if amorphic else "none", nclasses)
        if p <= 5:
            fused = amorphic_check(f, "fusion")
            if fused.is_amorphic != verdict.is_amorphic:
                raise AssertionError("spectral and fusion amorphic verdicts disagree")
        return verdict
    ls = level_sets(f)
    labels = ls.labels()
    conv = convolution_counts(f)
    nonempty = [k for k in range(1, p + 1) if ls.D[k].size]
    for blocks in set_partitions(nonempty):
        if not fusion_is_scheme(conv, labels, blocks):
            return AmorphicVerdict(True, False, "fusion-exhaustive", "none", nclasses, tuple(map(tuple, blocks)))
    return AmorphicVerdict(True, True, "fusion-exhaustive", kind, nclasses)


def amorphic_parameters(f: PAryFunction, kind: str) -> tuple[int, tuple[int, ...]] | None:
    """(N, r_1..r_p) read off the component graphs for type `kind`; None if they do not fit.

    Empty classes get r = 0 and a complete graph gets r = N + 1.
    """
    if kind not in ("LST", "NLST") or f.n % 2:
        return None
    N = f.p ** (f.n // 2) * (1 if kind == "LST" else -1)
    r = []
    for g in component_graphs(f):
        res = srg_check(g)
        if g.degree == 0:
            r.append(0)
        elif res.status == "complete":
            r.append(N + 1)
        elif res.is_srg:
            fits = [s for M, s in classify_lst(res.params).solutions if M == N]
            if not fits:
                return None
            r.append(fits[0])
        else:
            return None
    return (N, tuple(r)) if sum(r) == N + 1 else None


def imy_predicted(p: int, N: int, r, sizes=None) -> SchemeConstants:
    """Intersection numbers of an amorphic scheme with parameters N, r_1..r_p.

    rho_ii^i = N + r_i^2 - 3r_i, rho_jj^i = (r_j - 1) r_j, rho_ij^i = (r_i - 1) r_j,
    rho_jk^i = r_j r_k for distinct i, j, k; the identity class fills the rest.
    """
    r = [None] + [int(x) for x in r]
    if len(r) != p + 1:
        raise ValueError("need r_1..r_p")
    if any(x * N < 0 for x in r[1:]):
        raise ValueError("every r_i must share the sign of N (or be 0)")
    k = [1] + [(N - 1) * r[i] for i in range(1, p + 1)]
    rho = np.zeros((p + 1, p + 1, p + 1), dtype=np.int64)
    rho[0, 0, 0] = 1
    for i in range(1, p + 1):
        rho[i, i, 0] = k[i]
        rho[0, i, i] = rho[i, 0, i] = 1
        for j in range(1, p + 1):
            for l in range(1, p + 1):
                if i == j == l:
                    rho[j, l, i] = N + r[i] ** 2 - 3 * r[i]
                elif j == l:
                    rho[j, l, i] = (r[j] - 1) * r[j]
                elif j == i:
                    rho[j, l, i] = (r[i] - 1) * r[l]
                elif l == i:
                    rho[j, l, i] = (r[i] - 1) * r[j]
                else:
                    rho[j, l, i] = r[j] * r[l]
    sizes = tuple(k) if sizes is None else tuple(sizes)
    classes = tuple(i for i in range(p + 1) if sizes[i])
    for i in range(p + 1):
        if i not in classes:
            rho[:, :, i] = 0
    return SchemeConstants(p, rho, classes, sizes)


def imy_matches(computed: SchemeConstants, N: int, r) -> bool:
    """Compare computed constants with the prediction on every nonempty superscript class."""
    pred = imy_predicted(computed.p, N, r, computed.sizes)
    return bool(np.array_equal(pred.rho, computed.rho))


def structure_criterion_agrees(f: PAryFunction) -> bool:
    """The constants criterion and the Walsh criterion give the same verdict (scheme-bearing f)."""
    return is_bent_by_constants(f) == bool(is_bent(f))
