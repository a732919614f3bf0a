"""Prime fields, extension fields GF(p^m) and the point space GF(p)^n.

Points of GF(p)^n are addressed by an integer index whose base-p digits,
most significant first, are the coordinates (x_0, ..., x_{n-1}).
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    """Validate an odd prime modulus and return it as a plain int."""
    p = int(p)
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime >= 3, got {p}")
    return p


def index_to_point(p: int, n: int, index: int) -> tuple[int, ...]:
    if not 0 <= index < p**n:
        raise ValueError(f"index {index} out of range for GF({p})^{n}")
    digits = []
    for _ in range(n):
        index, d = divmod(index, p)
        digits.append(d)
    return tuple(reversed(digits))


def point_to_index(p: int, point) -> int:
    index = 0
    for c in point:
        if not 0 <= c < p:
            raise ValueError(f"coordinate {c} not in [0, {p})")
        index = index * p + int(c)
    return index


def inner_product(x, y, p: int) -> int:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    return sum(int(a) * int(b) for a, b in zip(x, y)) % p


class PointSpace:
    """Index tables for GF(p)^n: coordinates, negation and (lazily) addition."""

    def __init__(self, p: int, n: int):
        self.p = check_prime(p)
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.size = p**n
        idx = np.arange(self.size)
        pts = np.empty((self.size, n), dtype=np.int64)
        for i in range(n):
            pts[:, i] = (idx // p ** (n - 1 - i)) % p
        pts.setflags(write=False)
        self.points = pts
        self.weights = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
        neg = ((-pts) % p) @ self.weights
        neg.setflags(write=False)
        self.neg = neg
        self._add = None
        self._sub = None

    def index(self, coords: np.ndarray) -> np.ndarray:
        """Indices of an array of coordinate rows (reduced mod p first)."""
        return (np.asarray(coords) % self.p) @ self.weights

    def add_point(self, i: int, j: int) -> int:
        return int(self.index(self.points[i] + self.points[j]))

    @property
    def add_table(self) -> np.ndarray:
        """add_table[x, y] = index of x + y."""
        if self._add is None:
            self._add = self._combine(+1)
        return self._add

    @property
    def sub_table(self) -> np.ndarray:
        """sub_table[x, y] = index of x - y."""
        if self._sub is None:
            self._sub = self._combine(-1)
        return self._sub

    def _combine(self, sign: int) -> np.ndarray:
        p, n = self.p, self.n
        out = np.zeros((self.size, self.size), dtype=np.int32)
        for i in range(n):
            c = self.points[:, i]
            out += (((c[:, None] + sign * c[None, :]) % p) * int(p ** (n - 1 - i))).astype(np.int32)
        out.setflags(write=False)
        return out

    def gram(self) -> np.ndarray:
        """Matrix of inner products <x, y> mod p."""
        return (self.points @ self.points.T) % self.p


@lru_cache(maxsize=32)
def point_space(p: int, n: int) -> PointSpace:
    return PointSpace(p, n)


# -- polynomials over GF(p), coefficient lists from the constant term up ----

def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for k, bk in enumerate(b):
            a[shift + k] = (a[shift + k] - q * bk) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division of a monic polynomial by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(poly, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m (constant term compared first)."""
    for low in itertools.product(range(p), repeat=m):
        poly = list(low) + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


class ExtField:
    """GF(p^m) with elements encoded as ints 0..p^m-1.

    The element with coordinates (c_0, ..., c_{m-1}), meaning
    c_0 + c_1 t + ... + c_{m-1} t^{m-1}, has code sum c_i p^{m-1-i}; so code
    order is lexicographic order on coordinates.
    """

    def __init__(self, p: int, m: int):
        self.p = check_prime(p)
        if m < 1:
            raise ValueError("m must be positive")
        self.m = m
        self.order = p**m
        self.modulus = smallest_irreducible(p, m)
        q = self.order
        self._coords = [index_to_point(p, m, a) for a in range(q)]
        self._add = np.zeros((q, q), dtype=np.int64)
        self._mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                ca, cb = self._coords[a], self._coords[b]
                self._add[a, b] = point_to_index(p, [(x + y) % p for x, y in zip(ca, cb)])
                self._mul[a, b] = point_to_index(p, self._polymul(ca, cb))
        self._neg = np.array([point_to_index(p, [(-x) % p for x in c]) for c in self._coords])
        self._inv = {}
        for a in range(1, q):
            b = int(np.flatnonzero(self._mul[a] == self.one)[0])
            self._inv[a] = b

    def _polymul(self, ca, cb) -> list[int]:
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(ca):
            for j, y in enumerate(cb):
                prod[i + j] = (prod[i + j] + x * y) % p
        rem = _poly_mod(prod, list(self.modulus), p)
        return rem + [0] * (m - len(rem))

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return point_to_index(self.p, [1] + [0] * (self.m - 1))

    def elements(self) -> range:
        return range(self.order)

    def coords(self, a: int) -> tuple[int, ...]:
        return self._coords[a]

    def from_coords(self, coords) -> int:
        if len(coords) != self.m:
            raise ValueError(f"expected {self.m} coordinates")
        return point_to_index(self.p, coords)

    def add(self, a: int, b: int) -> int:
        return int(self._add[a, b])

    def neg(self, a: int) -> int:
        return int(self._neg[a])

    def mul(self, a: int, b: int) -> int:
        return int(self._mul[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(p^m)")
        return self._inv[a]

    @property
    def add_table(self) -> np.ndarray:
        return self._add

    @property
    def mul_table(self) -> np.ndarray:
        return self._mul

    def __repr__(self) -> str:
        return f"ExtField(p={self.p}, m={self.m}, modulus={self.modulus})"


@lru_cache(maxsize=None)
def ext_field(p: int, m: int) -> ExtField:
    return ExtField(p, m)
