"""Surface classification: winding of even structures on T^2, line fields of odd ones."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from dirac.diracfield.frame import DiracFrame, FrameError, default_grid_points, is_dirac
from dirac.symcalc import Distribution

START_SAMPLES = 16
MAX_SAMPLES = 2**14
MAX_STEP = math.pi / 4


class WindingError(RuntimeError):
    pass


@dataclass(frozen=True)
class SurfaceClass:
    w1: int
    w2: int

    def as_tuple(self) -> tuple[int, int]:
        return (self.w1, self.w2)


def chart_angles(frame: DiracFrame, points: np.ndarray) -> np.ndarray:
    """Angle of the (c : s) chart coordinate, defined mod pi, at each point.

    The even Lagrangian at a point meets span{∂x, dy} in the line spanned by
    c∂x + s dy; u below is the combination of frame rows killing the ∂y and
    dx slots.
    """
    vals = frame.values(points)
    m = vals[:, :, [1, 2]]
    u_mat, _, _ = np.linalg.svd(m)
    u = u_mat[:, :, -1]
    c = np.einsum("pi,pi->p", u, vals[:, :, 0])
    s = np.einsum("pi,pi->p", u, vals[:, :, 3])
    return np.arctan2(s, c)


def _wrap(delta: np.ndarray) -> np.ndarray:
    # representative of delta mod pi in [-pi/2, pi/2)
    return (delta + math.pi / 2) % math.pi - math.pi / 2


def loop_winding(frame: DiracFrame, axis: int, base: float = 0.0, start: int = START_SAMPLES) -> int:
    """Degree of the chart path along the loop t -> t e_axis (other coordinate = base)."""
    samples = start
    while samples <= MAX_SAMPLES:
        t = 2 * math.pi * np.arange(samples + 1) / samples
        pts = np.full((samples + 1, 2), base)
        pts[:, axis] = t
        theta = chart_angles(frame, pts)
        steps = _wrap(np.diff(theta))
        if np.max(np.abs(steps)) < MAX_STEP:
            turns = float(np.sum(steps)) / math.pi
            w = round(turns)
            if abs(turns - w) > 1e-6:
                raise WindingError(f"loop does not close: {turns} half-turns")
            return int(w)
        samples *= 2
    raise WindingError(f"angle increments still >= pi/4 at {MAX_SAMPLES} samples")


def classify_surface_even(frame: DiracFrame, start: int = START_SAMPLES) -> SurfaceClass:
    if frame.n != 2 or not frame.domain.is_torus:
        raise ValueError("winding classification needs a frame on T^2")
    if frame.parity != "even":
        raise ValueError("winding classification needs an even frame")
    return SurfaceClass(loop_winding(frame, 0, start=start), loop_winding(frame, 1, start=start))


def line_field_of_odd(frame: DiracFrame) -> Distribution:
    """The rank-1 distribution rho(E) of an odd surface frame."""
    if frame.n != 2:
        raise ValueError("line fields are extracted from surface frames")
    if frame.parity != "odd":
        raise ValueError("line_field_of_odd needs an odd frame")
    check = is_dirac(frame)
    if not check:
        raise RuntimeError(f"odd surface frame failed the Courant check: {check.witness}")
    pts = default_grid_points(frame.domain, 16)
    best = None
    for s in frame.sections:
        X = s.vf
        if X.is_zero:
            continue
        vals = np.stack([c.evaluate_many(pts) for c in X.comps], axis=1)
        zeros = int(np.sum(np.linalg.norm(vals, axis=1) < 1e-12))
        key = (zeros, sum(len(c.terms) for c in X.comps))
        if best is None or key < best[0]:
            best = (key, X)
    if best is None:
        raise FrameError("rank", "odd frame has no nonzero vector part")
    return Distribution((best[1],), 1)
