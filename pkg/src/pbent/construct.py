"""Orthogonal arrays over GF(p^m) and the bent functions built from them.

An OA(r, N) here is an r x N^2 grid of GF(N) element codes (see `ExtField`).
Column (a, b) sits at position a*N + b, which is also the point index of the
concatenated coordinates of a and b in GF(p)^(2m).
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from .cayley import CayleyGraph, SrgResult, lst_params, srg_check
from .ff import ext_field, index_to_point, point_to_index
from .pfunc import PAryFunction, feasible_sizes


class OAFormatError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class OrthogonalArray:
    p: int
    m: int
    grid: np.ndarray  # (r, N^2) element codes

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=np.int64)
        N = self.p**self.m
        if g.ndim != 2 or g.shape[1] != N * N:
            raise ValueError(f"grid must have N^2 = {N * N} columns")
        if g.size and (g.min() < 0 or g.max() >= N):
            raise ValueError(f"symbols must lie in GF({N})")
        g = g.copy()
        g.setflags(write=False)
        object.__setattr__(self, "grid", g)

    @property
    def N(self) -> int:
        return self.p**self.m

    @property
    def r(self) -> int:
        return self.grid.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrthogonalArray):
            return NotImplemented
        return (self.p, self.m) == (other.p, other.m) and np.array_equal(self.grid, other.grid)

    def rows(self, idx) -> OrthogonalArray:
        return OrthogonalArray(self.p, self.m, self.grid[list(idx)])

    def _symbol(self, code: int) -> str:
        return "".join(str(c) for c in index_to_point(self.p, self.m, int(code)))

    def dumps(self) -> str:
        lines = [f"{self.p} {self.m} {self.r}"]
        lines += [" ".join(self._symbol(c) for c in row) for row in self.grid]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> OrthogonalArray:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise OAFormatError("empty orthogonal array file")
        try:
            p, m, r = (int(t) for t in lines[0].split())
        except ValueError:
            raise OAFormatError(f"bad header line {lines[0]!r}; expected 'p m r'") from None
        if len(lines) != r + 1:
            raise OAFormatError(f"header announces {r} rows, found {len(lines) - 1}")
        pat = re.compile(rf"[0-{min(p, 10) - 1}]{{{m}}}")
        N = p**m
        grid = []
        for ln, line in enumerate(lines[1:], start=2):
            toks = line.split()
            if len(toks) != N * N:
                raise OAFormatError(f"line {ln}: expected {N * N} symbols, found {len(toks)}")
            row = []
            for t in toks:
                if not pat.fullmatch(t) or any(int(d) >= p for d in t):
                    raise OAFormatError(f"line {ln}: bad symbol {t!r}")
                row.append(point_to_index(p, [int(d) for d in t]))
            grid.append(row)
        return cls(p, m, np.array(grid, dtype=np.int64).reshape(r, N * N))


@dataclass(frozen=True)
class OAValidation:
    ok: bool
    rows: tuple[int, int] | None = None
    pair: tuple[int, int] | None = None  # repeated ordered symbol pair
    columns: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_oa(a: OrthogonalArray) -> OAValidation:
    """Every pair of distinct rows shows each ordered symbol pair exactly once."""
    N = a.N
    for i, j in itertools.combinations(range(a.r), 2):
        codes = a.grid[i] * N + a.grid[j]
        order = np.argsort(codes, kind="stable")
        srt = codes[order]
        dup = np.flatnonzero(srt[1:] == srt[:-1])
        if dup.size:
            c1, c2 = sorted((int(order[dup[0]]), int(order[dup[0] + 1])))
            return OAValidation(False, (i, j), (int(a.grid[i, c1]), int(a.grid[j, c1])), (c1, c2))
    return OAValidation(True)


def bush_construct(p: int, m: int) -> OrthogonalArray:
    """OA(N+1, N): row a first, then a*c + b for c in GF(N) order; columns (a, b) lexicographic."""
    F = ext_field(p, m)
    N = F.order
    a = np.repeat(np.arange(N), N)
    b = np.tile(np.arange(N), N)
    rows = [a]
    for c in range(N):
        rows.append(F.add_table[F.mul_table[a, c], b])
    return OrthogonalArray(p, m, np.stack(rows))


@dataclass
class OAGraph:
    graph: CayleyGraph
    srg: SrgResult
    expected: tuple | None  # Latin square parameters, None when the graph is complete

    @property
    def matches_expected(self) -> bool:
        if self.expected is None:
            return self.srg.status == "complete"
        return self.srg.is_srg and self.srg.params.as_tuple() == self.expected


def _zero_columns(a: OrthogonalArray, rows) -> np.ndarray:
    """Nonzero columns sharing an entry with column 0 (all zeros) in one of `rows`."""
    if a.grid.shape[1] and np.any(a.grid[:, 0] != 0):
        raise ValueError("array is not normalized: first column must be all zero")
    hit = np.any(a.grid[list(rows)] == 0, axis=0)
    hit[0] = False
    return np.flatnonzero(hit)


def lst_graph_from_oa(a: OrthogonalArray, rows) -> OAGraph:
    """Graph on columns, adjacent when equal in some selected row, as a Cayley graph on GF(p)^(2m)."""
    rows = sorted(set(int(i) for i in rows))
    if not rows:
        raise ValueError("row subset must be nonempty")
    p, n, N = a.p, 2 * a.m, a.N
    D = _zero_columns(a, rows)
    g = CayleyGraph(p, n, D)
    # the Cayley description must reproduce the direct "equal entry" adjacency
    sub = g.adjacency() if N * N <= 729 else None
    if sub is not None:
        direct = np.zeros((N * N, N * N), dtype=bool)
        for i in rows:
            direct |= a.grid[i][:, None] == a.grid[i][None, :]
        np.fill_diagonal(direct, False)
        if not np.array_equal(direct, sub.astype(bool)):
            raise AssertionError("array graph is not the Cayley graph of its zero set")
    q = len(rows)
    expected = None if q == N + 1 else lst_params(N, q)
    return OAGraph(g, srg_check(g), expected)


@dataclass(frozen=True)
class RowPartition:
    groups: tuple[tuple[int, ...], ...]
    values: tuple[int, ...]  # GF(p) value assigned to each group

    def __post_init__(self):
        seen = set()
        for grp in self.groups:
            if not grp:
                raise ValueError("empty row group")
            if seen & set(grp):
                raise ValueError("row groups overlap")
            seen |= set(grp)
        if len(self.values) != len(self.groups):
            raise ValueError("one value per group is required")
        if len(set(self.values)) != len(self.values):
            raise ValueError("group values must be distinct")

    def check(self, p: int, rows: int) -> None:
        if len(self.groups) > p:
            raise ValueError(f"at most p = {p} groups")
        if any(not 0 <= v < p for v in self.values):
            raise ValueError(f"group values must lie in [0, {p})")
        if len(self.groups) == p and 0 not in self.values:
            raise ValueError("with p groups one group must take the value 0")
        cover = sorted(i for g in self.groups for i in g)
        if cover != list(range(rows)):
            raise ValueError(f"groups must cover rows 0..{rows - 1} exactly")

    @classmethod
    def parse(cls, text: str, p: int | None = None) -> RowPartition:
        """'0|1|2,3:0' lists groups separated by '|'; ':v' assigns value v to a group.

        Unassigned groups take 1, 2, ... in order, skipping taken values; with p
        groups the last unassigned group takes 0 when no group has it yet.
        """
        groups, values = [], []
        for part in text.split("|"):
            body, _, val = part.partition(":")
            try:
                groups.append(tuple(int(t) for t in body.split(",")))
                values.append(int(val) if val.strip() else None)
            except ValueError:
                raise ValueError(f"bad partition group {part!r}") from None
        taken = {v for v in values if v is not None}
        if p is not None and len(groups) == p and 0 not in taken:
            last = max(k for k, v in enumerate(values) if v is None) if None in values else None
            if last is not None:
                values[last] = 0
                taken.add(0)
        nxt = 1
        for k, v in enumerate(values):
            if v is None:
                while nxt in taken:
                    nxt += 1
                values[k] = nxt
                taken.add(nxt)
        return cls(tuple(groups), tuple(values))

    def __str__(self) -> str:
        return "|".join(",".join(map(str, g)) + f":{v}" for g, v in zip(self.groups, self.values))


def default_partition(p: int, m: int) -> RowPartition:
    """Contiguous groups of N/p rows (p-1 times) and a final N/p + 1 rows valued 0."""
    r = feasible_sizes(p, m)["LST"].r
    groups, start = [], 0
    for size in r:
        groups.append(tuple(range(start, start + size)))
        start += size
    return RowPartition(tuple(groups), tuple(range(1, p)) + (0,))


def bent_from_oa(a: OrthogonalArray, part: RowPartition) -> PAryFunction:
    """f(x) = value of the group whose rows give x a zero entry; 0 elsewhere."""
    part.check(a.p, a.r)
    values = np.zeros(a.N * a.N, dtype=np.int64)
    owner = np.full(a.N * a.N, -1, dtype=np.int64)
    for k, (grp, v) in enumerate(zip(part.groups, part.values)):
        D = _zero_columns(a, grp)
        clash = D[owner[D] >= 0]
        if clash.size:
            raise ValueError(f"column {int(clash[0])} has a zero entry in two row groups")
        owner[D] = k
        values[D] = v
    return PAryFunction(a.p, 2 * a.m, values)


@dataclass(frozen=True)
class NlstClassSearch:
    index: int
    degree: int
    r: int
    predicted: tuple[int, int]  # (lambda, mu) forced by the negative Latin square formula
    admissible: tuple[tuple[int, int], ...]  # all (lambda, mu) >= 0 with k(k-lambda-1) = (v-k-1)mu

    @property
    def feasible(self) -> bool:
        return self.predicted in self.admissible


def nlst_parameter_search(p: int, m: int) -> list[NlstClassSearch]:
    """Exhaustive (lambda, mu) search for the NLST degree profile on p^(2m) vertices.

    The profile is realisable only if every nonempty class admits its
    predicted parameters; empty classes are skipped.
    """
    prof = feasible_sizes(p, m)["NLST"]
    N = prof.N
    v = N * N
    out = []
    for i, (k, r) in enumerate(zip(prof.sizes, prof.r), start=1):
        if k == 0:
            continue
        adm = tuple(
            (lam, mu)
            for lam in range(k)
            for mu in range(k + 1)
            if k * (k - lam - 1) == (v - k - 1) * mu
        )
        _, _, lam, mu = lst_params(N, r)
        out.append(NlstClassSearch(i, k, r, (lam, mu), adm))
    return out
