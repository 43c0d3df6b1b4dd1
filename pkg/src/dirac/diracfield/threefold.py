"""Presymplectic / foliated-Poisson decomposition of Dirac structures on 3-domains.

The 2-form and bivector extracted from a frame are rational in the frame
coefficients (for example omega = adj(X) Xi / det X), so they are carried as
numerator/denominator pairs and every identity is checked on numerators.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from dirac.diracfield.frame import DiracFrame, NotDiracError, is_dirac
from dirac.diracfield.strata import Grid, TypeStratification, stratify
from dirac.symcalc import (
    Distribution,
    FoliatedForm,
    KForm,
    NotDivisible,
    ScalarField,
    VectorField,
    adjugate,
    d,
    field_det,
    foliated_d,
    format_scalar,
    is_admissible,
    wedge,
)


class Quotient:
    """num / den with den not identically zero; common monomial factors cancelled."""

    __slots__ = ("num", "den")

    def __init__(self, num: ScalarField, den: ScalarField | None = None):
        if den is None:
            den = ScalarField.one(num.domain)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        num, den = _cancel(num, den)
        self.num, self.den = num, den

    @property
    def domain(self):
        return self.num.domain

    def __add__(self, other: "Quotient") -> "Quotient":
        if self.den == other.den:
            return Quotient(self.num + other.num, self.den)
        return Quotient(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "Quotient":
        return Quotient(-self.num, self.den)

    def __sub__(self, other: "Quotient") -> "Quotient":
        return self + (-other)

    def __mul__(self, other: "Quotient") -> "Quotient":
        return Quotient(self.num * other.num, self.den * other.den)

    def diff(self, i: int) -> "Quotient":
        return Quotient(self.num.diff(i) * self.den - self.num * self.den.diff(i), self.den * self.den)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __str__(self) -> str:
        if self.den == ScalarField.one(self.domain):
            return format_scalar(self.num)
        return f"{_atom(self.num)}/{_atom(self.den)}"


def _atom(f: ScalarField) -> str:
    text = format_scalar(f)
    simple = len(f.terms) == 1 and (not f.domain.is_torus or f.is_constant) and "*" not in text
    return text if simple else f"({text})"


def _cancel(num: ScalarField, den: ScalarField) -> tuple[ScalarField, ScalarField]:
    if num.is_zero:
        return num, ScalarField.one(num.domain)
    try:
        return num.exact_div(den), ScalarField.one(num.domain)
    except NotDivisible:
        pass
    dom = num.domain
    n = dom.n
    if not dom.is_torus:
        # cancel the largest common monomial
        lo = [min(min(k[i] for k in num.terms), min(k[i] for k in den.terms)) for i in range(n)]
        if any(lo):
            mono = ScalarField(dom, {tuple(lo): 1})
            num, den = num.exact_div(mono), den.exact_div(mono)
    # make the leading denominator coefficient 1
    lead = den.terms[max(den.terms)]
    if dom.is_torus:
        if den.is_constant:
            c = den.constant_value()
            return num * (1 / c), den * (1 / c)
        return num, den
    if lead != 1:
        num, den = num * (1 / lead), den * (1 / lead)
    return num, den


def _mat_quotients(numer: Sequence[Sequence[ScalarField]], den: ScalarField) -> list[list[Quotient]]:
    return [[Quotient(x, den) for x in row] for row in numer]


def _matmul(a, b):
    dom = a[0][0].domain
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), ScalarField.zero(dom)) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def _coefficient(text: str) -> str:
    return f"({text})" if any(t in text for t in (" ", "/")) else text


def _bivector_text(P: Sequence[Sequence[Quotient]], labels, pairs) -> str:
    parts = []
    for i, j in pairs:
        q = P[i][j]
        if q.is_zero:
            continue
        text = str(q)
        name = f"∂{labels[i]}∧∂{labels[j]}"
        if text == "1":
            parts.append(name)
        elif text == "-1":
            parts.append("-" + name)
        else:
            parts.append(f"{_coefficient(text)}*{name}")
    return " + ".join(parts) if parts else "0"


def _two_form_text(W: Sequence[Sequence[Quotient]], labels) -> str:
    parts = []
    n = len(W)
    for i, j in itertools.combinations(range(n), 2):
        q = W[i][j]
        if q.is_zero:
            continue
        text = str(q)
        name = f"d{labels[i]}∧d{labels[j]}"
        if text == "1":
            parts.append(name)
        elif text == "-1":
            parts.append("-" + name)
        else:
            parts.append(f"{_coefficient(text)}*{name}")
    return " + ".join(parts) if parts else "0"


def jacobiator(P: Sequence[Sequence[Quotient]], coords: Sequence[int]) -> dict[tuple[int, int, int], Quotient]:
    """{x_i, {x_j, x_k}} + cyclic for coordinate functions, with {x_i, x_j} = P[i][j]."""
    n = len(P)
    out = {}
    for i, j, k in itertools.combinations(coords, 3):
        total = None
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for l in range(n):
                if P[a][l].is_zero:
                    continue
                term = P[a][l] * P[b][c].diff(l)
                total = term if total is None else total + term
        out[i, j, k] = total if total is not None else Quotient(ScalarField.zero(P[0][0].domain))
    return out


def foliated_poisson_bracket(D: Distribution | None, pi: Sequence[Sequence], f: ScalarField, g: ScalarField):
    """{f, g} = pi(df, dg) for admissible f, g; pi is a full skew matrix representative.

    ``D = None`` stands for the zero foliation, where every function is admissible.
    Entries of ``pi`` may be ScalarFields or Quotients; the result has the same kind.
    """
    if D is not None:
        for name, h in (("f", f), ("g", g)):
            if not is_admissible(D, h):
                raise ValueError(f"{name} = {h} is not constant on the leaves")
    dom = f.domain
    total = None
    for a in range(dom.n):
        fa = f.diff(a)
        if fa.is_zero:
            continue
        for b in range(dom.n):
            gb = g.diff(b)
            if gb.is_zero:
                continue
            p = pi[a][b]
            term = p * Quotient(fa * gb) if isinstance(p, Quotient) else p * (fa * gb)
            total = term if total is None else total + term
    if total is None:
        zero = ScalarField.zero(dom)
        return Quotient(zero) if pi and isinstance(pi[0][0], Quotient) else zero
    return total


@dataclass
class RegionReport:
    kind: str
    region: frozenset
    data: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    objects: dict = field(default_factory=dict)


@dataclass
class ThreefoldDecomposition:
    parity: str
    stratification: TypeStratification
    form_region: RegionReport
    bivector_region: RegionReport
    gluing_type: tuple[int, int]

    @property
    def gluing(self) -> frozenset:
        return self.stratification.region([self.gluing_type])

    @property
    def covers_grid(self) -> bool:
        return (self.form_region.region | self.bivector_region.region) == set(self.stratification.indices)

    @property
    def overlap_is_gluing(self) -> bool:
        return (self.form_region.region & self.bivector_region.region) == self.gluing


def _presymplectic(frame: DiracFrame, strat: TypeStratification) -> RegionReport:
    X = frame.vector_matrix()
    Xi = frame.covector_matrix()
    labels = frame.domain.labels
    region = strat.region([(1, 0), (3, 0)])
    delta = field_det(X)
    report = RegionReport("presymplectic", region)
    if delta.is_zero:
        report.data["omega"] = None
        report.checks["closed"] = None
        return report
    numer = _matmul(adjugate(X), Xi)
    W = _mat_quotients(numer, delta)
    big_omega = KForm.from_matrix(frame.domain, numer)
    d_num = d(big_omega).scale(delta) - wedge(d(KForm.function(delta)), big_omega)
    report.objects.update(omega=W, d_omega_numerator=d_num)
    report.data["omega"] = _two_form_text(W, labels)
    report.data["d_omega_numerator"] = str(d_num)
    report.data["det_vector_part"] = format_scalar(delta)
    report.checks["closed"] = d_num.is_zero
    return report


def _poisson(frame: DiracFrame, strat: TypeStratification) -> RegionReport:
    X = frame.vector_matrix()
    Xi = frame.covector_matrix()
    labels = frame.domain.labels
    region = strat.region([(0, 1), (0, 3)])
    delta = field_det(Xi)
    report = RegionReport("poisson", region)
    if delta.is_zero:
        report.data["pi"] = None
        report.checks["jacobi"] = None
        return report
    P = _mat_quotients(_matmul(adjugate(Xi), X), delta)
    jac = jacobiator(P, range(frame.n))
    report.data["pi"] = _bivector_text(P, labels, itertools.combinations(range(frame.n), 2))
    report.objects.update(pi=P, jacobiator=jac)
    report.checks["jacobi"] = all(q.is_zero for q in jac.values())
    return report


def _pick_pair(rows: Sequence[Sequence[ScalarField]], cols: Sequence[int]):
    """Two rows whose 2x2 minor on ``cols`` is not identically zero (fewest terms first)."""
    best = None
    for k, l in itertools.combinations(range(len(rows)), 2):
        m = [[rows[k][c] for c in cols], [rows[l][c] for c in cols]]
        det = field_det(m)
        if det.is_zero:
            continue
        key = (not det.is_constant, len(det.terms))
        if best is None or key < best[0]:
            best = (key, k, l, m, det)
    return best


def _kernel_field(frame: DiracFrame) -> VectorField | None:
    """Generator of E ∩ TM from a row of adj(Xi) (Xi has rank <= 2 everywhere)."""
    Xi = frame.covector_matrix()
    adj = adjugate(Xi)
    dom = frame.domain
    best = None
    for u in adj:
        comps = tuple(
            sum((u[k] * frame.sections[k].vector[i] for k in range(frame.n)), ScalarField.zero(dom))
            for i in range(frame.n)
        )
        K = VectorField(dom, comps)
        if K.is_zero:
            continue
        size = sum(len(c.terms) for c in comps)
        if best is None or size < best[0]:
            best = (size, K)
    if best is None:
        return None
    K = best[1]
    nonzero = [i for i, c in enumerate(K.comps) if not c.is_zero]
    if len(nonzero) == 1:
        return VectorField.coordinate(dom, nonzero[0])
    return K


def _foliated_poisson(frame: DiracFrame, strat: TypeStratification) -> RegionReport:
    region = strat.region([(1, 0), (1, 2)])
    report = RegionReport("foliated_poisson", region)
    labels = frame.domain.labels
    K = _kernel_field(frame)
    if K is None:
        report.data["kernel"] = None
        report.checks.update(bracket_admissible=None, jacobi=None)
        return report
    report.data["kernel"] = str(K)
    nonzero = [i for i, c in enumerate(K.comps) if not c.is_zero]
    if len(nonzero) != 1 or not K.comps[nonzero[0]].is_constant:
        report.data["note"] = "kernel line field is not a coordinate direction; admissible coordinates not available"
        report.checks.update(bracket_admissible=None, jacobi=None)
        return report
    m = nonzero[0]
    coords = [i for i in range(frame.n) if i != m]
    a, b = coords
    Xi = frame.covector_matrix()
    X = frame.vector_matrix()
    pick = _pick_pair(Xi, coords)
    dom = frame.domain
    zero = Quotient(ScalarField.zero(dom))
    P = [[zero] * frame.n for _ in range(frame.n)]
    if pick is not None:
        _, k, l, mat, det = pick
        # [u_k, u_l] mat = [1, 0]  =>  (u_k, u_l) = (mat[1][1], -mat[0][1]) / det
        num = mat[1][1] * X[k][b] - mat[0][1] * X[l][b]
        P[a][b] = Quotient(num, det)
        P[b][a] = -P[a][b]
    report.data["admissible_coordinates"] = [labels[i] for i in coords]
    report.data["pi"] = _bivector_text(P, labels, [(a, b)])
    D = Distribution((K,), 1)
    report.checks["bracket_admissible"] = P[a][b].diff(m).is_zero
    jac = jacobiator(P, coords)
    report.checks["jacobi"] = all(q.is_zero for q in jac.values())
    report.objects.update(pi=P, distribution=D)
    return report


def _foliated_presymplectic(frame: DiracFrame, strat: TypeStratification) -> RegionReport:
    region = strat.region([(0, 1), (2, 1)])
    report = RegionReport("foliated_presymplectic", region)
    pick = None
    for k, l in itertools.combinations(range(frame.n), 2):
        Xk, Xl = frame.sections[k].vf, frame.sections[l].vf
        minors = [field_det([[Xk.comps[i], Xk.comps[j]], [Xl.comps[i], Xl.comps[j]]]) for i, j in itertools.combinations(range(frame.n), 2)]
        if any(not mnr.is_zero for mnr in minors):
            size = sum(len(c.terms) for c in Xk.comps + Xl.comps)
            if pick is None or size < pick[0]:
                pick = (size, k, l)
    if pick is None:
        report.data["distribution"] = None
        report.checks.update(integrable=None, closed=None)
        return report
    _, k, l = pick
    Xk, Xl = frame.sections[k].vf, frame.sections[l].vf
    D = Distribution((Xk, Xl), 2)
    eps = frame.sections[k].of(Xl)
    report.objects.update(distribution=D, epsilon=eps)
    report.data["distribution"] = [str(Xk), str(Xl)]
    report.data["epsilon"] = f"{_coefficient(format_scalar(eps))}*θ1∧θ2" if not eps.is_zero else "0"
    integrable = D.is_involutive()
    report.checks["integrable"] = integrable
    if integrable:
        report.checks["closed"] = foliated_d(D, FoliatedForm(2, 2, {(0, 1): eps})).is_zero
    else:
        report.checks["closed"] = None
    return report


def decompose_threefold(frame: DiracFrame, grid: Grid | int) -> ThreefoldDecomposition:
    if frame.n != 3:
        raise ValueError("decomposition is defined for 3-dimensional domains")
    check = is_dirac(frame)
    if not check:
        raise NotDiracError(f"frame is not Dirac; witness {check.witness[:3]}")
    strat = stratify(frame, grid)
    parity = strat.parity
    if parity == "even":
        return ThreefoldDecomposition(
            parity, strat, _presymplectic(frame, strat), _foliated_poisson(frame, strat), (1, 0)
        )
    return ThreefoldDecomposition(
        parity, strat, _foliated_presymplectic(frame, strat), _poisson(frame, strat), (0, 1)
    )
