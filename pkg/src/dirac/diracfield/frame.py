"""Almost Dirac structures presented by frames of generalized sections."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from dirac import lindirac
from dirac.symcalc import Domain, GSection, ScalarField, courant_bracket, pairing_field

DEFAULT_GRID = 16
RANK_TOL = 1e-9


class FrameError(ValueError):
    """Invalid frame; ``reason`` is one of isotropy, rank, periodicity, shape."""

    def __init__(self, reason: str, message: str, sections: tuple[int, ...] = (), point=None):
        super().__init__(message)
        self.reason = reason
        self.sections = sections
        self.point = point


class NotDiracError(ValueError):
    pass


@dataclass(frozen=True)
class DiracFrame:
    domain: Domain
    sections: tuple[GSection, ...]
    twists: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.domain.n

    def component_fields(self) -> list[list[ScalarField]]:
        """Rows (vector part, covector part) of the n x 2n coefficient matrix."""
        return [s.vector + s.covector for s in self.sections]

    def vector_matrix(self) -> list[list[ScalarField]]:
        return [s.vector for s in self.sections]

    def covector_matrix(self) -> list[list[ScalarField]]:
        return [s.covector for s in self.sections]

    def values(self, points: np.ndarray) -> np.ndarray:
        """Float frame matrices, shape (m, n, 2n), at an (m, n) array of points."""
        pts = np.asarray(points, dtype=float).reshape(-1, self.n)
        rows = self.component_fields()
        out = np.empty((len(pts), self.n, 2 * self.n))
        for i, row in enumerate(rows):
            for j, f in enumerate(row):
                out[:, i, j] = f.evaluate_many(pts)
        return out

    def lagrangian_at_origin(self) -> lindirac.Lagrangian:
        rows = [[f.value_at_origin() for f in row] for row in self.component_fields()]
        return lindirac.Lagrangian.span(self.n, rows)

    @property
    def parity(self) -> str:
        # parity is constant on the connected domain; the origin is an exact sample
        try:
            return lindirac.parity(self.lagrangian_at_origin())
        except ValueError:
            pass
        from dirac.diracfield.strata import pointwise_types

        pts = default_grid_points(self.domain, DEFAULT_GRID)
        types, flags = pointwise_types(self, pts)
        for t, flag in zip(types, flags):
            if flag == "ok":
                return t.parity
        raise FrameError("rank", "could not determine parity: frame degenerate at every sample")


def default_grid_points(domain: Domain, size: int) -> np.ndarray:
    if domain.is_torus:
        axis = 2 * math.pi * np.arange(size) / size
    else:
        axis = np.linspace(-1.0, 1.0, size)
    mesh = np.meshgrid(*([axis] * domain.n), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def section_twist(s: GSection) -> tuple[int, ...] | None:
    """Per-axis sign exponent of s under x_i -> x_i + 2 pi, or None if inconsistent."""
    comps = [f for f in s.vector + s.covector if not f.is_zero]
    twist = []
    for axis in range(s.domain.n):
        seen = {f.twist(axis) for f in comps}
        if None in seen or len(seen) > 1:
            return None
        twist.append(seen.pop() if seen else 0)
    return tuple(twist)


def build_frame(domain: Domain, sections: Sequence[GSection], grid: int = DEFAULT_GRID) -> DiracFrame:
    """Validate and wrap n generalized sections spanning a Lagrangian at every point."""
    sections = tuple(sections)
    n = domain.n
    if len(sections) != n:
        raise FrameError("shape", f"expected {n} sections on {domain}, got {len(sections)}")
    for i, s in enumerate(sections):
        if s.domain != domain:
            raise FrameError("shape", f"section {i} lives on {s.domain}, not {domain}", (i,))
    for i, j in itertools.combinations_with_replacement(range(n), 2):
        p = pairing_field(sections[i], sections[j])
        if not p.is_zero:
            raise FrameError(
                "isotropy", f"sections {i} and {j} are not isotropic: <e{i},e{j}> = {p}", (i, j)
            )
    twists = []
    for i, s in enumerate(sections):
        t = section_twist(s) if domain.is_torus else (0,) * n
        if t is None:
            raise FrameError(
                "periodicity",
                f"section {i} is neither periodic nor antiperiodic along some axis",
                (i,),
            )
        twists.append(t)
    frame = DiracFrame(domain, sections, tuple(twists))
    pts = default_grid_points(domain, grid)
    vals = frame.values(pts)
    sv = np.linalg.svd(vals, compute_uv=False)
    bad = np.nonzero(sv[:, -1] <= RANK_TOL * np.maximum(sv[:, 0], 1e-300))[0]
    if len(bad):
        p = tuple(float(v) for v in pts[bad[0]])
        raise FrameError("rank", f"frame drops rank at {p}", point=p)
    return frame


def courant_tensor(F: DiracFrame) -> list[list[list[ScalarField]]]:
    """T[i][j][k] = <[e_i, e_j], e_k>."""
    n = F.n
    zero = ScalarField.zero(F.domain)
    T = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        br = courant_bracket(F.sections[i], F.sections[j])
        for k in range(n):
            t = pairing_field(br, F.sections[k])
            T[i][j][k] = t
            T[j][i][k] = -t
    return T


@dataclass(frozen=True)
class DiracCheck:
    dirac: bool
    witness: tuple[int, int, int, ScalarField] | None = None

    def __bool__(self):
        return self.dirac


def is_dirac(F: DiracFrame) -> DiracCheck:
    T = courant_tensor(F)
    for i, j in itertools.combinations(range(F.n), 2):
        for k in range(F.n):
            if not T[i][j][k].is_zero:
                return DiracCheck(False, (i, j, k, T[i][j][k]))
    return DiracCheck(True)


def frame_from_rows(domain: Domain, rows: Sequence[Sequence[ScalarField | int | Fraction]], **kwargs) -> DiracFrame:
    """Frame from rows (vector components..., covector components...)."""
    n = domain.n
    sections = []
    for row in rows:
        row = [c if isinstance(c, ScalarField) else ScalarField.constant(domain, c) for c in row]
        sections.append(GSection.from_lists(domain, row[:n], row[n:]))
    return build_frame(domain, sections, **kwargs)
