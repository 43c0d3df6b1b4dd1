"""Vector fields, differential forms and the Courant bracket."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from dirac.symcalc.grammar import format_gsection, format_one_form, format_scalar, format_vector_field
from dirac.symcalc.ring import Domain, ScalarField, _check_same


def _merge_sign(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sign and sorted index tuple of dx^a ^ dx^b (sign 0 on repeated indices)."""
    if set(a) & set(b):
        return 0, ()
    inversions = sum(1 for i in a for j in b if i > j)
    return (-1 if inversions % 2 else 1), tuple(sorted(a + b))


@dataclass(frozen=True, eq=True)
class VectorField:
    domain: Domain
    comps: tuple[ScalarField, ...]

    def __post_init__(self):
        if len(self.comps) != self.domain.n:
            raise ValueError(f"expected {self.domain.n} components, got {len(self.comps)}")
        for c in self.comps:
            _check_same(self.domain, c.domain)

    @classmethod
    def zero(cls, domain: Domain) -> "VectorField":
        return cls(domain, tuple(ScalarField.zero(domain) for _ in range(domain.n)))

    @classmethod
    def coordinate(cls, domain: Domain, i: int, coeff: ScalarField | int = 1) -> "VectorField":
        z = ScalarField.zero(domain)
        c = coeff if isinstance(coeff, ScalarField) else ScalarField.constant(domain, coeff)
        return cls(domain, tuple(c if j == i else z for j in range(domain.n)))

    def __add__(self, other: "VectorField") -> "VectorField":
        _check_same(self.domain, other.domain)
        return VectorField(self.domain, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other: "VectorField") -> "VectorField":
        _check_same(self.domain, other.domain)
        return VectorField(self.domain, tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self) -> "VectorField":
        return VectorField(self.domain, tuple(-a for a in self.comps))

    def scale(self, f: ScalarField | int | Fraction) -> "VectorField":
        return VectorField(self.domain, tuple(a * f for a in self.comps))

    def apply(self, f: ScalarField) -> ScalarField:
        """Directional derivative X(f)."""
        _check_same(self.domain, f.domain)
        total = ScalarField.zero(self.domain)
        for i, c in enumerate(self.comps):
            if not c.is_zero:
                total = total + c * f.diff(i)
        return total

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.comps)

    def __str__(self):
        return format_vector_field(self.comps, self.domain.labels)


@dataclass(frozen=True)
class KForm:
    """k-form with coefficients on strictly increasing index tuples."""

    domain: Domain
    degree: int
    comps: Mapping[tuple[int, ...], ScalarField]

    def __post_init__(self):
        clean = {}
        for idx, f in dict(self.comps).items():
            idx = tuple(idx)
            if len(idx) != self.degree or list(idx) != sorted(set(idx)) or (idx and not 0 <= idx[0] <= idx[-1] < self.domain.n):
                raise ValueError(f"bad index tuple {idx} for a {self.degree}-form on {self.domain}")
            _check_same(self.domain, f.domain)
            if not f.is_zero:
                clean[idx] = f
        object.__setattr__(self, "comps", dict(sorted(clean.items())))

    @classmethod
    def zero(cls, domain: Domain, degree: int) -> "KForm":
        return cls(domain, degree, {})

    @classmethod
    def function(cls, f: ScalarField) -> "KForm":
        return cls(f.domain, 0, {(): f})

    @classmethod
    def from_components(cls, domain: Domain, comps: Sequence[ScalarField]) -> "KForm":
        """1-form sum_i comps[i] dx_i."""
        return cls(domain, 1, {(i,): c for i, c in enumerate(comps)})

    @classmethod
    def from_matrix(cls, domain: Domain, m: Sequence[Sequence[ScalarField]]) -> "KForm":
        """2-form with m[i][j] = omega(d_i, d_j); only the upper triangle is read."""
        n = domain.n
        return cls(domain, 2, {(i, j): m[i][j] for i in range(n) for j in range(i + 1, n)})

    def __getitem__(self, idx) -> ScalarField:
        """Coefficient on an arbitrary index tuple, with antisymmetry applied."""
        idx = tuple(idx)
        if len(set(idx)) != len(idx):
            return ScalarField.zero(self.domain)
        order = sorted(range(len(idx)), key=lambda p: idx[p])
        sign = _perm_sign(order)
        f = self.comps.get(tuple(sorted(idx)))
        if f is None:
            return ScalarField.zero(self.domain)
        return f if sign > 0 else -f

    def component_list(self) -> list[ScalarField]:
        """Dense components of a 1-form."""
        if self.degree != 1:
            raise ValueError("component_list needs a 1-form")
        return [self[(i,)] for i in range(self.domain.n)]

    def matrix(self) -> list[list[ScalarField]]:
        if self.degree != 2:
            raise ValueError("matrix needs a 2-form")
        n = self.domain.n
        return [[self[(i, j)] for j in range(n)] for i in range(n)]

    def _combine(self, other: "KForm", sign: int) -> "KForm":
        _check_same(self.domain, other.domain)
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        comps = dict(self.comps)
        for k, f in other.comps.items():
            g = comps.get(k)
            comps[k] = (f if sign > 0 else -f) if g is None else (g + f if sign > 0 else g - f)
        return KForm(self.domain, self.degree, comps)

    def __add__(self, other: "KForm") -> "KForm":
        return self._combine(other, 1)

    def __sub__(self, other: "KForm") -> "KForm":
        return self._combine(other, -1)

    def __neg__(self) -> "KForm":
        return KForm(self.domain, self.degree, {k: -f for k, f in self.comps.items()})

    def scale(self, f: ScalarField | int | Fraction) -> "KForm":
        return KForm(self.domain, self.degree, {k: g * f for k, g in self.comps.items()})

    @property
    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        return self.domain == other.domain and self.degree == other.degree and self.comps == other.comps

    def __hash__(self):
        return hash((self.domain, self.degree, tuple(self.comps.items())))

    def __call__(self, *vectors: VectorField) -> ScalarField:
        """omega(X_1, ..., X_k)."""
        if len(vectors) != self.degree:
            raise ValueError(f"a {self.degree}-form takes {self.degree} arguments")
        form = self
        for X in vectors:
            form = interior(X, form)
        return form.comps.get((), ScalarField.zero(self.domain))

    def __str__(self):
        if self.degree == 0:
            return format_scalar(self.comps.get((), ScalarField.zero(self.domain)))
        if self.degree == 1:
            return format_one_form(self.component_list(), self.domain.labels)
        labels = self.domain.labels
        parts = []
        for idx, f in self.comps.items():
            wedge = "∧".join(f"d{labels[i]}" for i in idx)
            text = format_scalar(f)
            if text == "1":
                parts.append(wedge)
            elif text == "-1":
                parts.append("-" + wedge)
            else:
                parts.append(f"({text})*{wedge}")
        return " + ".join(parts) if parts else "0"


def _perm_sign(order: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(order)) for j in range(i + 1, len(order)) if order[i] > order[j])
    return -1 if inv % 2 else 1


@dataclass(frozen=True)
class GSection:
    """Section X + xi of TM + T*M."""

    vf: VectorField
    of: KForm

    def __post_init__(self):
        _check_same(self.vf.domain, self.of.domain)
        if self.of.degree != 1:
            raise ValueError("the form part of a generalized section is a 1-form")

    @classmethod
    def from_lists(cls, domain: Domain, vector: Sequence[ScalarField], covector: Sequence[ScalarField]) -> "GSection":
        return cls(VectorField(domain, tuple(vector)), KForm.from_components(domain, covector))

    @property
    def domain(self) -> Domain:
        return self.vf.domain

    @property
    def vector(self) -> list[ScalarField]:
        return list(self.vf.comps)

    @property
    def covector(self) -> list[ScalarField]:
        return self.of.component_list()

    def __add__(self, other: "GSection") -> "GSection":
        return GSection(self.vf + other.vf, self.of + other.of)

    def __sub__(self, other: "GSection") -> "GSection":
        return GSection(self.vf - other.vf, self.of - other.of)

    def __neg__(self) -> "GSection":
        return GSection(-self.vf, -self.of)

    def scale(self, f) -> "GSection":
        return GSection(self.vf.scale(f), self.of.scale(f))

    @property
    def is_zero(self) -> bool:
        return self.vf.is_zero and self.of.is_zero

    def __str__(self):
        return format_gsection(self.vector, self.covector, self.domain.labels)


def wedge(a: KForm, b: KForm) -> KForm:
    _check_same(a.domain, b.domain)
    comps: dict = {}
    for ia, fa in a.comps.items():
        for ib, fb in b.comps.items():
            sign, idx = _merge_sign(ia, ib)
            if sign == 0:
                continue
            term = fa * fb
            prev = comps.get(idx)
            term = term if sign > 0 else -term
            comps[idx] = term if prev is None else prev + term
    return KForm(a.domain, a.degree + b.degree, comps)


def d(omega: KForm) -> KForm:
    """Exterior derivative; the result of a top-degree form is the zero form."""
    comps: dict = {}
    for idx, f in omega.comps.items():
        for j in range(omega.domain.n):
            if j in idx:
                continue
            df = f.diff(j)
            if df.is_zero:
                continue
            sign, new = _merge_sign((j,), idx)
            prev = comps.get(new)
            term = df if sign > 0 else -df
            comps[new] = term if prev is None else prev + term
    return KForm(omega.domain, omega.degree + 1, comps)


def interior(X: VectorField, omega: KForm) -> KForm:
    _check_same(X.domain, omega.domain)
    if omega.degree == 0:
        return KForm.zero(omega.domain, 0)
    comps: dict = {}
    for idx, f in omega.comps.items():
        for p, j in enumerate(idx):
            xj = X.comps[j]
            if xj.is_zero:
                continue
            rest = idx[:p] + idx[p + 1 :]
            term = xj * f
            term = term if p % 2 == 0 else -term
            prev = comps.get(rest)
            comps[rest] = term if prev is None else prev + term
    return KForm(omega.domain, omega.degree - 1, comps)


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    _check_same(X.domain, Y.domain)
    return VectorField(X.domain, tuple(X.apply(b) - Y.apply(a) for a, b in zip(X.comps, Y.comps)))


def lie_derivative(X: VectorField, omega: KForm) -> KForm:
    """Cartan homotopy formula L_X = d i_X + i_X d."""
    if omega.degree == 0:
        return KForm.function(X.apply(omega.comps.get((), ScalarField.zero(omega.domain))))
    return d(interior(X, omega)) + interior(X, d(omega))


def _function(form: KForm) -> ScalarField:
    return form.comps.get((), ScalarField.zero(form.domain))


def courant_bracket(s1: GSection, s2: GSection) -> GSection:
    """[X + xi, Y + eta] = [X, Y] + L_X eta - L_Y xi - d(i_X eta - i_Y xi) / 2."""
    _check_same(s1.domain, s2.domain)
    X, xi = s1.vf, s1.of
    Y, eta = s2.vf, s2.of
    half = Fraction(1, 2)
    f = _function(interior(X, eta)) - _function(interior(Y, xi))
    form = lie_derivative(X, eta) - lie_derivative(Y, xi) - d(KForm.function(f)).scale(half)
    return GSection(lie_bracket(X, Y), form)


def pairing_field(s1: GSection, s2: GSection) -> ScalarField:
    """<X + xi, Y + eta> = (eta(X) + xi(Y)) / 2."""
    _check_same(s1.domain, s2.domain)
    total = _function(interior(s1.vf, s2.of)) + _function(interior(s2.vf, s1.of))
    return total * Fraction(1, 2)
