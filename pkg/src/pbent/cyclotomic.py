"""Exact arithmetic in the cyclotomic integers Z[zeta_p].

A value is stored in the power basis {1, zeta, ..., zeta^(p-2)}.  A raw
length-p exponent-count vector (d_0, ..., d_{p-1}) reduces to that basis by
subtracting d_{p-1} from every entry, using 1 + zeta + ... + zeta^(p-1) = 0.

Besides the scalar `CycInt`, this module carries the row-wise array helpers
used for whole spectra: an array of shape (count, p-1) holds one canonical
value per row.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CycInt:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise ValueError(f"expected {self.p - 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_raw(cls, p: int, raw) -> CycInt:
        raw = [int(c) for c in raw]
        if len(raw) == p - 1:
            return cls(p, tuple(raw))
        if len(raw) != p:
            raise ValueError(f"raw vector must have length p or p-1, got {len(raw)}")
        top = raw[-1]
        return cls(p, tuple(c - top for c in raw[:-1]))

    @classmethod
    def integer(cls, p: int, value: int) -> CycInt:
        return cls(p, (int(value),) + (0,) * (p - 2))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> CycInt:
        raw = [0] * p
        raw[k % p] = 1
        return cls.from_raw(p, raw)

    def raw(self) -> list[int]:
        return list(self.coeffs) + [0]

    def _check(self, other) -> CycInt:
        if isinstance(other, int):
            return CycInt.integer(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        if other.p != self.p:
            raise ValueError(f"mismatched moduli {self.p} and {other.p}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % p] += a * b
        return CycInt.from_raw(p, out)

    __rmul__ = __mul__

    def conj(self) -> CycInt:
        p = self.p
        out = [0] * p
        for k, c in enumerate(self.raw()):
            out[(-k) % p] += c
        return CycInt.from_raw(p, out)

    def norm_sq(self) -> CycInt:
        return self * self.conj()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_integer(self) -> int | None:
        """The rational integer value, or None when the value is not rational."""
        return self.coeffs[0] if self.is_rational() else None

    def classify_root_multiple(self, m: int) -> tuple[int, int] | None:
        """Return (sign, j) with self == sign * zeta^j * p^m, or None."""
        return classify_root_multiple(self, m)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if k == 0:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def cyc_add(a: CycInt, b: CycInt) -> CycInt:
    return a + b


def cyc_neg(a: CycInt) -> CycInt:
    return -a


def cyc_mul(a: CycInt, b: CycInt) -> CycInt:
    return a * b


def cyc_conj(a: CycInt) -> CycInt:
    return a.conj()


def norm_sq(a: CycInt) -> CycInt:
    return a.norm_sq()


def as_integer(a: CycInt) -> int | None:
    return a.as_integer()


def classify_root_multiple(a: CycInt, m: int) -> tuple[int, int] | None:
    """Decide whether a = sign * zeta^j * p^m exactly.

    In the power basis, zeta^0 * M is (M, 0, ..., 0), zeta^j * M for
    1 <= j <= p-2 has the single entry M at position j, and
    zeta^(p-1) * M = -M(1 + ... + zeta^(p-2)) has every entry equal to -M.
    """
    p = a.p
    mag = p**m
    c = a.coeffs
    nonzero = [k for k, v in enumerate(c) if v]
    if len(nonzero) == 1:
        k = nonzero[0]
        if abs(c[k]) == mag:
            return (1 if c[k] > 0 else -1, k)
        return None
    if len(nonzero) == p - 1 and len(set(c)) == 1 and abs(c[0]) == mag:
        return (-1 if c[0] > 0 else 1, p - 1)
    return None


# -- array helpers: rows are values, columns are power-basis or raw coefficients


def int_dtype(p: int, n: int):
    """int64 when every intermediate of a degree-3 product over p^n points fits, else object."""
    return np.int64 if p ** (3 * n + 3) < 2**62 else object


def canonicalize(raw: np.ndarray) -> np.ndarray:
    """(count, p) raw exponent counts -> (count, p-1) canonical coefficients."""
    return raw[:, :-1] - raw[:, -1:]


def to_raw(canon: np.ndarray) -> np.ndarray:
    zeros = np.zeros((canon.shape[0], 1), dtype=canon.dtype)
    return np.concatenate([canon, zeros], axis=1)


def rotate(raw: np.ndarray, k: int) -> np.ndarray:
    """Multiply raw rows by zeta^k."""
    return np.roll(raw, k % raw.shape[1], axis=1)


def conj_raw(raw: np.ndarray) -> np.ndarray:
    p = raw.shape[1]
    return raw[:, (-np.arange(p)) % p]


def mul_raw(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise product of raw vectors (cyclic convolution of exponents)."""
    p = a.shape[1]
    out = np.zeros_like(a)
    for s in range(p):
        out = out + a[:, s : s + 1] * np.roll(b, s, axis=1)
    return out


def rows_to_cycints(p: int, canon: np.ndarray) -> list[CycInt]:
    return [CycInt(p, tuple(int(v) for v in row)) for row in canon]
