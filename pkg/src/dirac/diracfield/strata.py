"""Pointwise type stratification M_(a,b) on sample grids."""
from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from dirac.lindirac import DiracType
from dirac.symcalc import Domain

RANK_TOL = 1e-9
AMBIGUITY_FACTOR = 10.0


@dataclass(frozen=True)
class Grid:
    """Tensor grid: N points per axis over [lo, hi] (affine) or N multiples of 2 pi / N (torus)."""

    domain: Domain
    size: int
    lo: Fraction = Fraction(-1)
    hi: Fraction = Fraction(1)

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("grid size must be positive")
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.domain.is_torus and self.hi < self.lo:
            raise ValueError("empty range")

    def axis(self) -> list:
        """Exact rationals for affine grids, floats for torus angles."""
        N = self.size
        if self.domain.is_torus:
            return [2 * math.pi * i / N for i in range(N)]
        if N == 1:
            return [self.lo]
        step = (self.hi - self.lo) / (N - 1)
        return [self.lo + i * step for i in range(N)]

    def axis_labels(self) -> list[str]:
        if self.domain.is_torus:
            return [repr(v) for v in self.axis()]
        return [str(v) for v in self.axis()]

    def indices(self) -> list[tuple[int, ...]]:
        return list(np.ndindex(*([self.size] * self.domain.n)))

    def points(self) -> np.ndarray:
        ax = np.array([float(v) for v in self.axis()])
        mesh = np.meshgrid(*([ax] * self.domain.n), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    def spec(self) -> dict:
        out = {"size": self.size, "dimension": self.domain.n, "domain": self.domain.kind}
        if self.domain.is_torus:
            out["range"] = ["0", "2*pi"]
        else:
            out["range"] = [str(self.lo), str(self.hi)]
        return out

    def __len__(self):
        return self.size**self.domain.n


def _threads() -> int:
    try:
        n = int(os.environ.get("DIRAC_THREADS", "0"))
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def _classify_block(vals: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = vals.shape[1]
    full = np.linalg.svd(vals, compute_uv=False)
    scale = np.maximum(full[:, :1], 1e-300)
    tol = RANK_TOL * scale
    sv_vec = np.linalg.svd(vals[:, :, :n], compute_uv=False)
    sv_cov = np.linalg.svd(vals[:, :, n:], compute_uv=False)
    rank_vec = np.sum(sv_vec > tol, axis=1)
    rank_cov = np.sum(sv_cov > tol, axis=1)
    lo, hi = tol / AMBIGUITY_FACTOR, tol * AMBIGUITY_FACTOR

    def near(sv):
        return np.any((sv > lo) & (sv <= hi), axis=1)

    ambiguous = near(full) | near(sv_vec) | near(sv_cov) | (full[:, -1] <= tol[:, 0])
    a = n - rank_cov
    b = n - rank_vec
    return a, b, ambiguous


def pointwise_types(frame, points: np.ndarray) -> tuple[list[DiracType], list[str]]:
    """Type (a, b) and flag ('ok' or 'ambiguous') of the frame at each point."""
    pts = np.asarray(points, dtype=float).reshape(-1, frame.n)
    vals = frame.values(pts)
    workers = min(_threads(), max(1, len(pts) // 512))
    if workers > 1:
        chunks = np.array_split(vals, workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_classify_block, chunks))
        a = np.concatenate([p[0] for p in parts])
        b = np.concatenate([p[1] for p in parts])
        amb = np.concatenate([p[2] for p in parts])
    else:
        a, b, amb = _classify_block(vals)
    types = [DiracType(int(x), int(y)) for x, y in zip(a, b)]
    flags = ["ambiguous" if f else "ok" for f in amb]
    return types, flags


@dataclass(frozen=True)
class TypeStratification:
    grid: Grid
    indices: tuple[tuple[int, ...], ...]
    types: tuple[DiracType, ...]
    flags: tuple[str, ...]

    def summary(self) -> list[tuple[DiracType, int]]:
        counts = Counter(self.types)
        return sorted(counts.items(), key=lambda kv: (kv[0].a, kv[0].b))

    @property
    def occurring(self) -> set[DiracType]:
        return set(self.types)

    @property
    def parities(self) -> set[str]:
        return {t.parity for t in self.types}

    @property
    def parity(self) -> str:
        p = self.parities
        if len(p) != 1:
            raise ValueError(f"mixed parities in one stratification: {sorted(p)}")
        return p.pop()

    def region(self, types: Iterable[tuple[int, int]]) -> frozenset[tuple[int, ...]]:
        wanted = {DiracType(*t) for t in types}
        return frozenset(i for i, t in zip(self.indices, self.types) if t in wanted)

    def ambiguous(self) -> list[tuple[int, ...]]:
        return [i for i, f in zip(self.indices, self.flags) if f != "ok"]


def stratify(frame, grid: Grid | int) -> TypeStratification:
    if isinstance(grid, int):
        grid = Grid(frame.domain, grid)
    if grid.domain != frame.domain:
        raise ValueError("grid and frame live on different domains")
    types, flags = pointwise_types(frame, grid.points())
    return TypeStratification(grid, tuple(grid.indices()), tuple(types), tuple(flags))


def type_at(frame, point: Sequence[float]) -> tuple[DiracType, str]:
    types, flags = pointwise_types(frame, np.asarray([point], dtype=float))
    return types[0], flags[0]
