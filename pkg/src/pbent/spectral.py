"""Exact Walsh and Fourier spectra over Z[zeta_p] and the bent criteria built on them."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cyclotomic as cyc
from .cyclotomic import CycInt
from .ff import point_space
from .pfunc import PAryFunction, is_even, level_sets


class Spectrum:
    """p^n cyclotomic values in point-index order, stored as an (p^n, p-1) array."""

    def __init__(self, p: int, n: int, canon: np.ndarray):
        if canon.shape != (p**n, p - 1):
            raise ValueError(f"spectrum array has shape {canon.shape}")
        self.p = p
        self.n = n
        self.array = canon

    @classmethod
    def from_raw(cls, p: int, n: int, raw: np.ndarray) -> Spectrum:
        return cls(p, n, cyc.canonicalize(raw))

    def __len__(self) -> int:
        return self.array.shape[0]

    def __getitem__(self, x: int) -> CycInt:
        return CycInt(self.p, tuple(int(v) for v in self.array[x]))

    def __iter__(self):
        return iter(cyc.rows_to_cycints(self.p, self.array))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Spectrum):
            return NotImplemented
        return (self.p, self.n) == (other.p, other.n) and bool(np.array_equal(self.array, other.array))

    def raw(self) -> np.ndarray:
        return cyc.to_raw(self.array)

    def rational_mask(self) -> np.ndarray:
        return ~np.any(self.array[:, 1:] != 0, axis=1)

    def integers(self) -> np.ndarray:
        """Integer values; raises if any entry is irrational."""
        if not self.rational_mask().all():
            raise ValueError("spectrum has irrational entries")
        return self.array[:, 0].copy()

    def norm_sq(self) -> np.ndarray:
        raw = self.raw()
        return cyc.canonicalize(cyc.mul_raw(raw, cyc.conj_raw(raw)))

    def census(self) -> list[tuple[CycInt, int]]:
        """Distinct values with multiplicities, in a fixed (lexicographic) order."""
        vals, counts = np.unique(self.array, axis=0, return_counts=True)
        return [(CycInt(self.p, tuple(int(v) for v in row)), int(c)) for row, c in zip(vals, counts)]

    def dump(self) -> str:
        """One line per point index with the canonical coefficient list."""
        return "".join(" ".join(str(int(v)) for v in row) + "\n" for row in self.array)


WalshSpectrum = Spectrum
FourierSpectrum = Spectrum


def _axis_transform(tensor: np.ndarray, p: int, n: int) -> np.ndarray:
    """Apply the p-point character matrix zeta^(-x*y) along each of the n point axes.

    `tensor` has shape (p,)*n + (p,), the last axis holding raw exponent counts;
    multiplying by zeta^k is a roll of that axis.
    """
    for axis in range(n):
        out = np.zeros_like(tensor)
        for x in range(p):
            dst = [slice(None)] * (n + 1)
            dst[axis] = x
            acc = 0
            for y in range(p):
                src = [slice(None)] * (n + 1)
                src[axis] = y
                acc = acc + np.roll(tensor[tuple(src)], (-x * y) % p, axis=-1)
            out[tuple(dst)] = acc
        tensor = out
    return tensor


def _naive_transform(weights: np.ndarray, exps: np.ndarray, p: int, n: int) -> np.ndarray:
    """raw[x, e] = sum over y of weights[y] * [ (exps[y] - <x,y>) mod p == e ]."""
    space = point_space(p, n)
    dtype = cyc.int_dtype(p, n)
    raw = np.zeros((space.size, p), dtype=dtype)
    block = 512
    for start in range(0, space.size, block):
        xs = space.points[start : start + block]
        e = (exps[None, :] - (xs @ space.points.T)) % p
        for k in range(p):
            raw[start : start + block, k] = ((e == k) * weights[None, :]).sum(axis=1)
    return raw


def walsh_transform(f: PAryFunction, method: str = "fast") -> Spectrum:
    """W_f(x) = sum_y zeta^(f(y) - <x,y>), exactly."""
    p, n = f.p, f.n
    if method == "naive":
        return Spectrum.from_raw(p, n, _naive_transform(np.ones(f.size, dtype=np.int64), f.values, p, n))
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    dtype = cyc.int_dtype(p, n)
    tensor = np.zeros((f.size, p), dtype=dtype)
    tensor[np.arange(f.size), f.values] = 1
    tensor = _axis_transform(tensor.reshape((p,) * n + (p,)), p, n)
    return Spectrum.from_raw(p, n, tensor.reshape(f.size, p))


def fourier_indicator(D, p: int, n: int, method: str = "fast") -> Spectrum:
    """Fourier transform of the indicator of the point set D (indices)."""
    size = p**n
    ind = np.zeros(size, dtype=np.int64)
    ind[np.asarray(D, dtype=np.int64)] = 1
    return fourier_transform(ind, p, n, method)


def fourier_transform(g: np.ndarray, p: int, n: int, method: str = "fast") -> Spectrum:
    """Fourier transform of an integer-valued function g (array over point indices)."""
    g = np.asarray(g)
    size = p**n
    if method == "naive":
        return Spectrum.from_raw(p, n, _naive_transform(g, np.zeros(size, dtype=np.int64), p, n))
    dtype = cyc.int_dtype(p, n)
    tensor = np.zeros((size, p), dtype=dtype)
    tensor[:, 0] = g
    tensor = _axis_transform(tensor.reshape((p,) * n + (p,)), p, n)
    return Spectrum.from_raw(p, n, tensor.reshape(size, p))


@dataclass(frozen=True)
class BentVerdict:
    bent: bool
    witness: int | None = None  # failing point (or direction b) index

    def __bool__(self) -> bool:
        return self.bent


def is_bent(f: PAryFunction, spectrum: Spectrum | None = None) -> BentVerdict:
    """Bent iff W_f(x) * conj(W_f(x)) = p^n at every x (exact for odd n too)."""
    W = spectrum if spectrum is not None else walsh_transform(f)
    ns = W.norm_sq()
    target = np.zeros(W.p - 1, dtype=ns.dtype)
    target[0] = W.p**W.n
    bad = np.flatnonzero(np.any(ns != target, axis=1))
    if bad.size == 0:
        return BentVerdict(True)
    # prefer a nonzero witness: x = 0 only reflects the level-set sizes
    nonzero = bad[bad != 0]
    return BentVerdict(False, int(nonzero[0] if nonzero.size else bad[0]))


def derivative(f: PAryFunction, b: int) -> PAryFunction:
    """D_b f(x) = f(x + b) - f(x); b is a point index."""
    space = f.space
    shifted = space.index(space.points + space.points[b])
    return PAryFunction(f.p, f.n, (f.values[shifted] - f.values) % f.p)


def is_bent_by_derivatives(f: PAryFunction) -> BentVerdict:
    """Bent iff every derivative in a nonzero direction is balanced."""
    p = f.p
    space = f.space
    target = f.size // p
    for b in range(1, f.size):
        shifted = space.index(space.points + space.points[b])
        counts = np.bincount((f.values[shifted] - f.values) % p, minlength=p)
        if np.any(counts != target):
            return BentVerdict(False, b)
    return BentVerdict(True)


def component_spectra(f: PAryFunction) -> list[Spectrum]:
    """lambda_i for i = 0..p: index 0 is the identity relation (constant 1)."""
    ls = level_sets(f)
    return [fourier_indicator(d, f.p, f.n) for d in ls.D]


def walsh_from_eigenvalues(f: PAryFunction, lambdas: list[Spectrum] | None = None) -> Spectrum:
    """Assemble W_f(x) = 1 + sum_{i=1..p} zeta^i lambda_i(x) from component spectra."""
    if f.values[0] != 0 or not is_even(f):
        raise ValueError("walsh_from_eigenvalues requires an even f with f(0) = 0")
    p, n = f.p, f.n
    lambdas = lambdas if lambdas is not None else component_spectra(f)
    raw = np.zeros((f.size, p), dtype=lambdas[1].array.dtype)
    raw[:, 0] = 1
    for i in range(1, p + 1):
        raw = raw + cyc.rotate(lambdas[i].raw(), i)
    return Spectrum.from_raw(p, n, raw)
