"""Foliated exterior calculus along a regular distribution.

A distribution is given by a frame of r vector fields that the caller
asserts to have constant rank r.  Involutivity is decided exactly: [X_i, X_j]
lies in the span iff every (r+1)-minor of [X_1 .. X_r, [X_i, X_j]] vanishes
identically.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from dirac.symcalc.forms import VectorField, lie_bracket
from dirac.symcalc.grammar import format_scalar
from dirac.symcalc.ring import Domain, NotDivisible, ScalarField, _check_same, field_det


class NonInvolutiveError(ValueError):
    pass


@dataclass(frozen=True)
class Distribution:
    fields: tuple[VectorField, ...]
    rank: int

    def __post_init__(self):
        object.__setattr__(self, "fields", tuple(self.fields))
        if len(self.fields) != self.rank:
            raise ValueError("a distribution is given by exactly `rank` spanning fields")
        if not self.fields:
            raise ValueError("empty distribution")
        dom = self.fields[0].domain
        for X in self.fields:
            _check_same(dom, X.domain)
        if self.rank > dom.n:
            raise ValueError("rank exceeds the dimension")

    @classmethod
    def coordinate(cls, domain: Domain, axes: Sequence[int]) -> "Distribution":
        return cls(tuple(VectorField.coordinate(domain, i) for i in axes), len(axes))

    @property
    def domain(self) -> Domain:
        return self.fields[0].domain

    def _frame_matrix(self, extra: VectorField | None = None) -> list[list[ScalarField]]:
        cols = list(self.fields) + ([extra] if extra is not None else [])
        return [[X.comps[i] for X in cols] for i in range(self.domain.n)]

    def contains(self, Y: VectorField) -> bool:
        """Y lies in the span of the frame wherever the frame has full rank."""
        m = self._frame_matrix(Y)
        r = self.rank
        if r == self.domain.n:
            return True
        return all(field_det([m[i] for i in rows]).is_zero for rows in itertools.combinations(range(self.domain.n), r + 1))

    def is_involutive(self) -> bool:
        return all(
            self.contains(lie_bracket(X, Y)) for X, Y in itertools.combinations(self.fields, 2)
        )

    def rank_at(self, points: np.ndarray, tol: float = 1e-9) -> np.ndarray:
        """Numerical rank of the frame at each of an (m, n) array of points."""
        pts = np.asarray(points, dtype=float).reshape(-1, self.domain.n)
        mats = np.stack(
            [np.stack([c.evaluate_many(pts) for c in X.comps], axis=-1) for X in self.fields], axis=1
        )
        sv = np.linalg.svd(mats, compute_uv=False)
        scale = np.maximum(sv[:, :1], 1e-300)
        return np.sum(sv > tol * scale, axis=1)

    def coefficients(self, Y: VectorField) -> list[ScalarField]:
        """Functions c with Y = sum_m c_m X_m, when they lie in the coefficient ring."""
        m = self._frame_matrix()
        r = self.rank
        candidates = []
        for rows in itertools.combinations(range(self.domain.n), r):
            det = field_det([m[i] for i in rows])
            if not det.is_zero:
                candidates.append((not det.is_constant, len(det.terms), rows, det))
        candidates.sort(key=lambda c: c[:2])
        for _, _, rows, det in candidates:
            coeffs = []
            try:
                for col in range(r):
                    sub = [
                        [Y.comps[i] if j == col else m[i][j] for j in range(r)] for i in rows
                    ]
                    coeffs.append(field_det(sub).exact_div(det))
            except NotDivisible:
                continue
            total = VectorField.zero(self.domain)
            for c, X in zip(coeffs, self.fields):
                total = total + X.scale(c)
            if total == Y:
                return coeffs
        raise ValueError("field is not a combination of the frame over the coefficient ring")

    def structure_functions(self) -> dict[tuple[int, int], list[ScalarField]]:
        """c[i, j][m] with [X_i, X_j] = sum_m c[i, j][m] X_m, for i < j."""
        if not self.is_involutive():
            raise NonInvolutiveError("distribution is not involutive")
        out = {}
        for i, j in itertools.combinations(range(self.rank), 2):
            br = lie_bracket(self.fields[i], self.fields[j])
            if br.is_zero:
                out[i, j] = [ScalarField.zero(self.domain)] * self.rank
            else:
                out[i, j] = self.coefficients(br)
        return out


@dataclass(frozen=True)
class FoliatedForm:
    """Section of wedge^k D*, stored on increasing tuples of frame indices."""

    degree: int
    rank: int
    comps: Mapping[tuple[int, ...], ScalarField] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for idx, f in dict(self.comps).items():
            idx = tuple(idx)
            if len(idx) != self.degree or list(idx) != sorted(set(idx)) or any(not 0 <= i < self.rank for i in idx):
                raise ValueError(f"bad index tuple {idx}")
            if not f.is_zero:
                clean[idx] = f
        object.__setattr__(self, "comps", dict(sorted(clean.items())))

    @classmethod
    def function(cls, f: ScalarField, rank: int) -> "FoliatedForm":
        return cls(0, rank, {(): f})

    def value(self, idx: Sequence[int], domain: Domain) -> ScalarField:
        idx = tuple(idx)
        if len(set(idx)) != len(idx):
            return ScalarField.zero(domain)
        inv = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
        f = self.comps.get(tuple(sorted(idx)))
        if f is None:
            return ScalarField.zero(domain)
        return -f if inv % 2 else f

    @property
    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other):
        if not isinstance(other, FoliatedForm):
            return NotImplemented
        return (self.degree, self.rank, self.comps) == (other.degree, other.rank, other.comps)

    def __hash__(self):
        return hash((self.degree, self.rank, tuple(self.comps.items())))

    def __str__(self):
        if not self.comps:
            return "0"
        return " + ".join(
            f"({format_scalar(f)})*" + "∧".join(f"θ{i + 1}" for i in idx) if idx else format_scalar(f)
            for idx, f in self.comps.items()
        )


def foliated_d(D: Distribution, omega: FoliatedForm) -> FoliatedForm:
    """Cartan formula for d_D on the frame of D."""
    if omega.rank != D.rank:
        raise ValueError("form and distribution ranks differ")
    dom = D.domain
    k = omega.degree
    if k + 1 > D.rank:
        # still insist on an integrable distribution
        if not D.is_involutive():
            raise NonInvolutiveError("distribution is not involutive")
        return FoliatedForm(k + 1, D.rank, {})
    structure = D.structure_functions()

    def bracket_coeffs(a: int, b: int) -> list[ScalarField]:
        if a < b:
            return structure[a, b]
        return [-c for c in structure[b, a]]

    comps = {}
    for idx in itertools.combinations(range(D.rank), k + 1):
        total = ScalarField.zero(dom)
        for p, vp in enumerate(idx):
            rest = idx[:p] + idx[p + 1 :]
            term = D.fields[vp].apply(omega.value(rest, dom))
            total = total + term if p % 2 == 0 else total - term
        for p, q in itertools.combinations(range(k + 1), 2):
            rest = tuple(v for t, v in enumerate(idx) if t not in (p, q))
            coeffs = bracket_coeffs(idx[p], idx[q])
            term = ScalarField.zero(dom)
            for m, c in enumerate(coeffs):
                if not c.is_zero:
                    term = term + c * omega.value((m,) + rest, dom)
            total = total + term if (p + q) % 2 == 0 else total - term
        comps[idx] = total
    return FoliatedForm(k + 1, D.rank, comps)


def is_admissible(D: Distribution, f: ScalarField) -> bool:
    """f is constant along the leaves: X(f) = 0 for every frame field X."""
    return all(X.apply(f).is_zero for X in D.fields)
