"""p-ary functions GF(p)^n -> GF(p) as value tables, plus their ANF codec."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .ff import check_prime, point_space


class PolySyntaxError(ValueError):
    """Malformed polynomial text; `pos` is the 0-based offset into the source."""

    def __init__(self, message: str, pos: int, src: str):
        self.pos = pos
        self.src = src
        super().__init__(f"{message} at position {pos}: {src!r}")


class PAryFunction:
    """Value table of f: GF(p)^n -> GF(p) in point-index order."""

    def __init__(self, p: int, n: int, values):
        self.p = check_prime(p)
        if n < 1:
            raise ValueError("n must be positive")
        self.n = int(n)
        vals = np.asarray(values, dtype=np.int64).reshape(-1)
        if vals.size != p**n:
            raise ValueError(f"table has {vals.size} entries, expected {p}^{n} = {p**n}")
        if vals.min(initial=0) < 0 or vals.max(initial=0) >= p:
            raise ValueError(f"table entries must lie in [0, {p})")
        vals = vals.copy()
        vals.setflags(write=False)
        self.values = vals

    @classmethod
    def from_callable(cls, p: int, n: int, fn: Callable[..., int]) -> PAryFunction:
        pts = point_space(p, n).points
        return cls(p, n, [fn(*row) % p for row in pts.tolist()])

    @classmethod
    def from_poly(cls, src: str, p: int, n: int) -> PAryFunction:
        return anf_evaluate(parse_poly(src, p, n))

    @classmethod
    def zero(cls, p: int, n: int) -> PAryFunction:
        return cls(p, n, np.zeros(p**n, dtype=np.int64))

    @property
    def space(self):
        return point_space(self.p, self.n)

    @property
    def size(self) -> int:
        return self.values.size

    def __call__(self, *coords) -> int:
        return int(self.values[int(self.space.index(np.array(coords)))])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PAryFunction):
            return NotImplemented
        return (self.p, self.n) == (other.p, other.n) and bool(np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.p, self.n, self.values.tobytes()))

    def __repr__(self) -> str:
        return f"PAryFunction(p={self.p}, n={self.n}, anf={render_anf(anf_interpolate(self))!r})"

    def shifted(self) -> PAryFunction:
        """f - f(0), which vanishes at the origin and has the same bent status."""
        return PAryFunction(self.p, self.n, (self.values - self.values[0]) % self.p)

    def scaled(self, k: int) -> PAryFunction:
        return PAryFunction(self.p, self.n, (k * self.values) % self.p)

    def to_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "values": self.values.tolist()}

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> PAryFunction:
        try:
            return cls(doc["p"], doc["n"], doc["values"])
        except KeyError as e:
            raise ValueError(f"function table is missing field {e.args[0]!r}") from None

    @classmethod
    def loads(cls, text: str) -> PAryFunction:
        return cls.from_dict(json.loads(text))


def is_even(f: PAryFunction) -> bool:
    return bool(np.array_equal(f.values, f.values[f.space.neg]))


def require_even_normalized(f: PAryFunction) -> None:
    if f.values[0] != 0:
        raise ValueError("f(0) != 0; shift the function first (f - f(0))")
    if not is_even(f):
        raise ValueError("f is not even")


@dataclass(frozen=True)
class LevelSets:
    """D[0] = {0}, D[i] = f^-1(i) for 1 <= i < p, D[p] = f^-1(0) minus the origin."""

    p: int
    n: int
    D: tuple[np.ndarray, ...]

    def sizes(self) -> tuple[int, ...]:
        return tuple(int(d.size) for d in self.D)

    def indicator(self, i: int) -> np.ndarray:
        ind = np.zeros(self.p**self.n, dtype=np.int64)
        ind[self.D[i]] = 1
        return ind

    def labels(self) -> np.ndarray:
        """Class label 0..p of every point."""
        lab = np.empty(self.p**self.n, dtype=np.int64)
        for i, d in enumerate(self.D):
            lab[d] = i
        return lab


def level_sets(f: PAryFunction) -> LevelSets:
    if f.values[0] != 0:
        raise ValueError("level sets require f(0) = 0")
    p = f.p
    D = [np.array([0])]
    for i in range(1, p):
        D.append(np.flatnonzero(f.values == i))
    zeros = np.flatnonzero(f.values == 0)
    D.append(zeros[zeros != 0])
    return LevelSets(p, f.n, tuple(D))


@dataclass(frozen=True)
class SizeProfile:
    N: int
    r: tuple[int, ...]
    sizes: tuple[int, ...]
    possible: bool


def feasible_sizes(p: int, m: int) -> dict[str, SizeProfile]:
    """The LST (N = p^m) and NLST (N = -p^m) level-set size profiles |D_1|, ..., |D_p|.

    The NLST profile is impossible for m = 1, p >= 5: its lambda = N + r^2 - 3r
    equals 4 - p < 0.
    """
    p = check_prime(p)
    if m < 1:
        raise ValueError("m must be positive")
    out = {}
    for name, N in (("LST", p**m), ("NLST", -(p**m))):
        r = [N // p] * (p - 1) + [N // p + 1]
        sizes = tuple((N - 1) * ri for ri in r)
        possible = all(N + ri * ri - 3 * ri >= 0 and ri * ri - ri >= 0 for ri in r)
        out[name] = SizeProfile(N, tuple(r), sizes, possible)
    return out


# -- algebraic normal form ---------------------------------------------------


@dataclass(frozen=True)
class Anf:
    p: int
    n: int
    terms: dict = field(default_factory=dict)  # exponent tuple -> nonzero coefficient

    def __eq__(self, other) -> bool:
        if not isinstance(other, Anf):
            return NotImplemented
        return (self.p, self.n) == (other.p, other.n) and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, self.n, tuple(sorted(self.terms.items()))))

    def __str__(self) -> str:
        return render_anf(self)


def _mat_inv_mod(mat: np.ndarray, p: int) -> np.ndarray:
    k = mat.shape[0]
    aug = np.concatenate([mat % p, np.eye(k, dtype=np.int64)], axis=1)
    for col in range(k):
        piv = next(r for r in range(col, k) if aug[r, col] % p)
        aug[[col, piv]] = aug[[piv, col]]
        aug[col] = aug[col] * pow(int(aug[col, col]), -1, p) % p
        for r in range(k):
            if r != col and aug[r, col]:
                aug[r] = (aug[r] - aug[r, col] * aug[col]) % p
    return aug[:, k:]


def _vandermonde(p: int) -> np.ndarray:
    # V[a, e] = a^e over GF(p), with 0^0 = 1
    return np.array([[pow(a, e, p) for e in range(p)] for a in range(p)], dtype=np.int64)


def _along_axes(tensor: np.ndarray, mat: np.ndarray, p: int) -> np.ndarray:
    for axis in range(tensor.ndim):
        tensor = np.moveaxis(np.tensordot(mat, tensor, axes=([1], [axis])) % p, 0, axis)
    return tensor


def anf_interpolate(f: PAryFunction) -> Anf:
    p, n = f.p, f.n
    coeffs = _along_axes(f.values.reshape((p,) * n), _mat_inv_mod(_vandermonde(p), p), p)
    terms = {tuple(int(e) for e in idx): int(coeffs[idx]) for idx in zip(*np.nonzero(coeffs))}
    return Anf(p, n, terms)


def anf_evaluate(a: Anf) -> PAryFunction:
    p, n = a.p, a.n
    coeffs = np.zeros((p,) * n, dtype=np.int64)
    for exps, c in a.terms.items():
        coeffs[exps] = c % p
    table = _along_axes(coeffs, _vandermonde(p), p)
    return PAryFunction(p, n, table.reshape(-1))


def _reduce_exponent(e: int, p: int) -> int:
    # x^p = x on GF(p): keep x^0 as 1, fold e >= p into [1, p-1]
    return e if e < p else (e - 1) % (p - 1) + 1


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*^])|(?P<bad>\S))")


def parse_poly(src: str, p: int, n: int) -> Anf:
    """Parse text like "2*x0*x3 - x1^2 + 4" into a reduced Anf over GF(p)^n."""
    p = check_prime(p)
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:  # only trailing whitespace remains
            break
        start = m.start(m.lastgroup)
        if m.group("bad") is not None:
            raise PolySyntaxError(f"unexpected character {m.group('bad')!r}", start, src)
        if m.group("num") is not None:
            tokens.append(("num", int(m.group("num")), start))
        elif m.group("var") is not None:
            idx = int(m.group("idx"))
            if idx >= n:
                raise PolySyntaxError(f"unknown variable x{idx} (n = {n})", start, src)
            tokens.append(("var", idx, start))
        else:
            tokens.append(("op", m.group("op"), start))
        pos = m.end()
    if not tokens:
        raise PolySyntaxError("empty polynomial", 0, src)

    terms: dict[tuple[int, ...], int] = {}
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else None

    def fail(msg):
        tok = peek()
        raise PolySyntaxError(msg, tok[2] if tok else len(src), src)

    while True:
        sign = 1
        while peek() is not None and peek()[0] == "op" and peek()[1] in "+-":
            if peek()[1] == "-":
                sign = -sign
            i += 1
        coeff = 1
        exps = [0] * n
        factors = 0
        while True:
            tok = peek()
            if tok is None:
                break
            if tok[0] == "num":
                coeff *= tok[1]
                i += 1
            elif tok[0] == "var":
                i += 1
                e = 1
                nxt = peek()
                if nxt is not None and nxt[:2] == ("op", "^"):
                    i += 1
                    nxt = peek()
                    if nxt is None or nxt[0] != "num":
                        fail("expected exponent after '^'")
                    e = nxt[1]
                    i += 1
                exps[tok[1]] += e
            else:
                fail("expected coefficient or variable")
            factors += 1
            nxt = peek()
            if nxt is not None and nxt[:2] == ("op", "*"):
                i += 1
                if peek() is None:
                    fail("dangling '*'")
                continue
            if nxt is not None and nxt[0] in ("num", "var"):
                continue  # implicit product such as "2x0"
            break
        if factors == 0:
            fail("expected a term")
        key = tuple(_reduce_exponent(e, p) for e in exps)
        terms[key] = (terms.get(key, 0) + sign * coeff) % p
        tok = peek()
        if tok is None:
            break
        if tok[0] != "op" or tok[1] not in "+-":
            fail("expected '+' or '-'")
    return Anf(p, n, {k: v for k, v in terms.items() if v})


def render_anf(a: Anf, signed: bool = True) -> str:
    """Text form; with `signed`, coefficients above p/2 print as negatives (2 -> -1 mod 3)."""
    if not a.terms:
        return "0"
    keys = sorted(a.terms, key=lambda e: (sum(e), tuple(-x for x in e)))
    out = ""
    for k, exps in enumerate(keys):
        c = a.terms[exps]
        neg = signed and c > a.p // 2
        mag = a.p - c if neg else c
        mono = "*".join(f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in enumerate(exps) if e)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if k == 0:
            out = ("-" if neg else "") + body
        else:
            out += ("-" if neg else "+") + body
    return out
