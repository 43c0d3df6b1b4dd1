"""Lagrangian subspaces of V + V* with exact rational arithmetic.

An element v + xi of V + V* is stored as one flat tuple of length 2n, the V
coordinates first.  Subspaces are kept in reduced row-echelon form, so two
subspaces are equal exactly when their stored rows are equal.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from dirac import linalg
from dirac.linalg import Matrix

Rat = Fraction
Row = tuple[Fraction, ...]


def _labels(n: int) -> tuple[str, ...]:
    return ("x", "y", "z")[:n] if n <= 3 else tuple(f"x{i + 1}" for i in range(n))


@dataclass(frozen=True)
class PairedSpace:
    """V = R^n with its standard basis and V* with the dual basis."""

    dim: int
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if not self.labels:
            object.__setattr__(self, "labels", _labels(self.dim))
        if len(self.labels) != self.dim:
            raise ValueError("one label per basis vector")

    def vector(self, i: int) -> "GVector":
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return GVector(tuple(v), (Fraction(0),) * self.dim)

    def covector(self, i: int) -> "GVector":
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return GVector((Fraction(0),) * self.dim, tuple(v))

    def format(self, row: Sequence[Fraction]) -> str:
        if len(row) != 2 * self.dim:
            raise ValueError(f"expected {2 * self.dim} coordinates")
        names = [f"∂{s}" for s in self.labels] + [f"d{s}" for s in self.labels]
        parts = []
        for c, name in zip(row, names):
            if c == 0:
                continue
            mag = abs(c)
            term = name if mag == 1 else f"{mag}*{name}"
            parts.append(("- " if c < 0 else "+ ") + term)
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


@dataclass(frozen=True)
class GVector:
    vec: tuple[Fraction, ...]
    covec: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.vec) != len(self.covec):
            raise ValueError("vector and covector parts must have equal length")
        object.__setattr__(self, "vec", tuple(Fraction(x) for x in self.vec))
        object.__setattr__(self, "covec", tuple(Fraction(x) for x in self.covec))

    @property
    def dim(self) -> int:
        return len(self.vec)

    @property
    def row(self) -> Row:
        return self.vec + self.covec

    @classmethod
    def from_row(cls, row: Sequence) -> "GVector":
        n = len(row) // 2
        return cls(tuple(row[:n]), tuple(row[n:]))

    def __add__(self, other: "GVector") -> "GVector":
        return GVector.from_row([a + b for a, b in zip(self.row, other.row)])

    def __sub__(self, other: "GVector") -> "GVector":
        return GVector.from_row([a - b for a, b in zip(self.row, other.row)])

    def __neg__(self) -> "GVector":
        return GVector.from_row([-a for a in self.row])

    def __rmul__(self, c) -> "GVector":
        c = Fraction(c)
        return GVector.from_row([c * a for a in self.row])


def _pair_rows(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    n = len(x) // 2
    s = sum((x[n + i] * y[i] + y[n + i] * x[i] for i in range(n)), Fraction(0))
    return s / 2


def pairing(x: GVector, y: GVector) -> Fraction:
    """Split pairing <v + xi, w + eta> = (xi(w) + eta(v)) / 2."""
    if x.dim != y.dim:
        raise ValueError(f"dimension mismatch: {x.dim} vs {y.dim}")
    return _pair_rows(x.row, y.row)


@dataclass(frozen=True)
class Subspace:
    """Subspace of V + V* (ambient dimension 2n), rows in reduced echelon form."""

    n: int
    rows: tuple[Row, ...]

    @classmethod
    def span(cls, n: int, rows: Iterable[Sequence]) -> "Subspace":
        rows = [[Fraction(x) for x in r] for r in rows]
        for r in rows:
            if len(r) != 2 * n:
                raise ValueError(f"expected rows of length {2 * n}, got {len(r)}")
        red, _ = linalg.rref(rows)
        return cls(n, tuple(tuple(r) for r in red))

    @classmethod
    def of_vectors(cls, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        return cls.span(n, [list(v) + [0] * n for v in vectors])

    @classmethod
    def of_covectors(cls, n: int, covectors: Iterable[Sequence]) -> "Subspace":
        return cls.span(n, [[0] * n + list(v) for v in covectors])

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def V(cls, n: int) -> "Subspace":
        return cls.of_vectors(n, linalg.identity(n))

    @classmethod
    def Vstar(cls, n: int) -> "Subspace":
        return cls.of_covectors(n, linalg.identity(n))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def vector_parts(self) -> Matrix:
        return [list(r[: self.n]) for r in self.rows]

    @property
    def covector_parts(self) -> Matrix:
        return [list(r[self.n :]) for r in self.rows]

    @property
    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(r) if x != 0) for r in self.rows]

    def in_V(self) -> bool:
        return all(x == 0 for r in self.rows for x in r[self.n :])

    def in_Vstar(self) -> bool:
        return all(x == 0 for r in self.rows for x in r[: self.n])

    def contains(self, row: Sequence) -> bool:
        return linalg.rank(list(self.rows) + [[Fraction(x) for x in row]]) == self.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.n, list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        # u A = w B  <=>  (u, -w) [A; B] = 0
        stacked = [list(r) for r in self.rows] + [list(r) for r in other.rows]
        if not stacked:
            return Subspace.zero(self.n)
        rows = []
        for coeffs in linalg.left_nullspace(stacked):
            u = coeffs[: self.dim]
            rows.append([sum((c * r[j] for c, r in zip(u, self.rows)), Fraction(0)) for j in range(2 * self.n)])
        return Subspace.span(self.n, rows)

    def format(self) -> str:
        space = PairedSpace(self.n)
        return "span{" + ", ".join(space.format(r) for r in self.rows) + "}"


def annihilator(S: Subspace, side: str | None = None) -> Subspace:
    """Ann(S) for S inside V (result in V*) or inside V* (result in V).

    The zero subspace lies in both factors; it is read as a subspace of V
    unless ``side="Vstar"`` is given.
    """
    n = S.n
    if side not in (None, "V", "Vstar"):
        raise ValueError(f"side must be 'V' or 'Vstar', not {side!r}")
    if side != "Vstar" and S.in_V():
        return Subspace.of_covectors(n, linalg.nullspace(S.vector_parts, ncols=n))
    if side != "V" and S.in_Vstar():
        return Subspace.of_vectors(n, linalg.nullspace(S.covector_parts, ncols=n))
    raise ValueError("annihilator needs a subspace of V or of V*")


def is_isotropic(S: Subspace) -> bool:
    return all(_pair_rows(x, y) == 0 for i, x in enumerate(S.rows) for y in S.rows[i:])


def is_lagrangian(S: Subspace) -> bool:
    return S.dim == S.n and is_isotropic(S)


@dataclass(frozen=True)
class DiracType:
    a: int
    b: int

    @property
    def parity(self) -> str:
        return "even" if self.b % 2 == 0 else "odd"

    def __iter__(self):
        return iter((self.a, self.b))

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


@dataclass(frozen=True)
class Lagrangian:
    space: Subspace

    def __post_init__(self):
        if not is_lagrangian(self.space):
            raise ValueError(f"not a Lagrangian subspace: {self.space.format()}")

    @classmethod
    def span(cls, n: int, rows: Iterable[Sequence]) -> "Lagrangian":
        return cls(Subspace.span(n, rows))

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def rows(self) -> tuple[Row, ...]:
        return self.space.rows

    def intersect_V(self) -> Subspace:
        return self.space.intersect(Subspace.V(self.n))

    def intersect_Vstar(self) -> Subspace:
        return self.space.intersect(Subspace.Vstar(self.n))

    def delta(self) -> Subspace:
        """rho(L), as a subspace of V."""
        return Subspace.of_vectors(self.n, self.space.vector_parts)

    def codelta(self) -> Subspace:
        """rho-hat(L), as a subspace of V*."""
        return Subspace.of_covectors(self.n, self.space.covector_parts)

    def format(self) -> str:
        return self.space.format()


def type_of(L: Lagrangian) -> DiracType:
    # dim(L ∩ V) = n - rank(rho-hat|L), dim(L ∩ V*) = n - rank(rho|L)
    n = L.n
    return DiracType(n - linalg.rank(L.space.covector_parts), n - linalg.rank(L.space.vector_parts))


def parity(L: Lagrangian) -> str:
    return type_of(L).parity


def _skew(m: Sequence[Sequence], size: int, what: str) -> tuple[tuple[Fraction, ...], ...]:
    mat = linalg.as_matrix(m)
    if len(mat) != size or not linalg.is_skew(mat):
        raise ValueError(f"{what} must be a skew-symmetric {size}x{size} matrix")
    return tuple(tuple(r) for r in mat)


@dataclass(frozen=True)
class SkewFormOnSubspace:
    """A subspace Delta of V with a skew form eps, written in the echelon basis of Delta."""

    delta: Subspace
    eps: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.delta.in_V():
            raise ValueError("delta must lie in V")
        object.__setattr__(self, "eps", _skew(self.eps, self.delta.dim, "eps"))


@dataclass(frozen=True)
class BivectorOnCosubspace:
    """A subspace of V* with a skew bivector pi, written in its echelon basis."""

    codelta: Subspace
    pi: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.codelta.in_Vstar():
            raise ValueError("codelta must lie in V*")
        object.__setattr__(self, "pi", _skew(self.pi, self.codelta.dim, "pi"))


def _lift_through(basis: Sequence[Sequence[Fraction]], parts: Matrix, target: Sequence[Fraction]) -> list[Fraction]:
    u = linalg.solve_rows(parts, target)
    width = len(basis[0])
    return [sum((c * b[j] for c, b in zip(u, basis)), Fraction(0)) for j in range(width)]


def to_delta_epsilon(L: Lagrangian) -> SkewFormOnSubspace:
    n = L.n
    delta = L.delta()
    basis = delta.vector_parts
    vparts = L.space.vector_parts
    eps = []
    for d in basis:
        x = _lift_through(L.rows, vparts, d)
        xi = x[n:]
        eps.append([sum((a * b for a, b in zip(xi, e)), Fraction(0)) for e in basis])
    return SkewFormOnSubspace(delta, tuple(tuple(r) for r in eps))


def from_delta_epsilon(p: SkewFormOnSubspace) -> Lagrangian:
    n = p.delta.n
    basis = p.delta.vector_parts
    piv = p.delta.pivots
    rows = []
    for i, d in enumerate(basis):
        xi = [Fraction(0)] * n
        # echelon basis has the identity on its pivot columns
        for j, pc in enumerate(piv):
            xi[pc] = p.eps[i][j]
        rows.append(list(d) + xi)
    rows.extend(annihilator(p.delta, side="V").rows)
    return Lagrangian.span(n, rows)


def to_codelta_pi(L: Lagrangian) -> BivectorOnCosubspace:
    n = L.n
    codelta = L.codelta()
    basis = codelta.covector_parts
    cparts = L.space.covector_parts
    pi = []
    for c in basis:
        x = _lift_through(L.rows, cparts, c)
        v = x[:n]
        pi.append([sum((a * b for a, b in zip(v, e)), Fraction(0)) for e in basis])
    return BivectorOnCosubspace(codelta, tuple(tuple(r) for r in pi))


def from_codelta_pi(p: BivectorOnCosubspace) -> Lagrangian:
    n = p.codelta.n
    basis = p.codelta.covector_parts
    piv = [c - n for c in p.codelta.pivots]
    rows = []
    for i, c in enumerate(basis):
        v = [Fraction(0)] * n
        for j, pc in enumerate(piv):
            v[pc] = p.pi[i][j]
        rows.append(v + list(c))
    rows.extend(annihilator(p.codelta, side="Vstar").rows)
    return Lagrangian.span(n, rows)


def graph_two_form(omega: Sequence[Sequence]) -> Lagrangian:
    """Graph of v -> omega(v, .), omega[i][j] = omega(e_i, e_j)."""
    n = len(omega)
    return from_delta_epsilon(SkewFormOnSubspace(Subspace.V(n), _skew(omega, n, "omega")))


def graph_bivector(pi: Sequence[Sequence]) -> Lagrangian:
    """Graph of xi -> pi(xi, .), pi[i][j] = pi(e^i, e^j)."""
    n = len(pi)
    return from_codelta_pi(BivectorOnCosubspace(Subspace.Vstar(n), _skew(pi, n, "pi")))


@dataclass(frozen=True)
class OrthoMatrix:
    A: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        a = linalg.as_matrix(self.A)
        n = len(a)
        if any(len(r) != n for r in a) or linalg.matmul(a, linalg.transpose(a)) != linalg.identity(n):
            raise ValueError("matrix is not orthogonal")
        object.__setattr__(self, "A", tuple(tuple(r) for r in a))

    @property
    def n(self) -> int:
        return len(self.A)

    def det(self) -> Fraction:
        return linalg.det(self.A)


def lagrangian_from_orthogonal(A: OrthoMatrix | Sequence[Sequence]) -> Lagrangian:
    """L_A = {((I + A)u, <(I - A)u, .>)} using the standard dot product."""
    if not isinstance(A, OrthoMatrix):
        A = OrthoMatrix(tuple(tuple(r) for r in A))
    n = A.n
    eye = linalg.identity(n)
    plus = linalg.add(eye, [list(r) for r in A.A])
    minus = linalg.sub(eye, [list(r) for r in A.A])
    rows = [[plus[j][i] for j in range(n)] + [minus[j][i] for j in range(n)] for i in range(n)]
    return Lagrangian.span(n, rows)


def orthogonal_from_lagrangian(L: Lagrangian) -> OrthoMatrix:
    n = L.n
    half = Fraction(1, 2)
    u = [[half * (r[j] + r[n + j]) for j in range(n)] for r in L.rows]
    w = [[half * (r[j] - r[n + j]) for j in range(n)] for r in L.rows]
    # A u_i = w_i for every row, i.e. A U^T = W^T
    A = linalg.matmul(linalg.transpose(w), linalg.inverse(linalg.transpose(u)))
    return OrthoMatrix(tuple(tuple(r) for r in A))


def cayley(S: Sequence[Sequence]) -> Matrix:
    """(I - S)(I + S)^-1 for a skew matrix S."""
    s = linalg.as_matrix(S)
    eye = linalg.identity(len(s))
    return linalg.matmul(linalg.sub(eye, s), linalg.inverse(linalg.add(eye, s)))


def random_orthogonal(rng: random.Random, n: int, parity: str) -> OrthoMatrix:
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', not {parity!r}")
    while True:
        S = linalg.zeros(n, n)
        for i in range(n):
            for j in range(i + 1, n):
                S[i][j] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                S[j][i] = -S[i][j]
        # S = 0 gives A = I, i.e. L = V; keep random samples off that point
        if any(x for r in S for x in r) or n == 1:
            break
    A = cayley(S)
    if parity == "odd":
        A[0] = [-x for x in A[0]]
    return OrthoMatrix(tuple(tuple(r) for r in A))


def random_lagrangian(seed: int, n: int, parity: str) -> Lagrangian:
    return lagrangian_from_orthogonal(random_orthogonal(random.Random(seed), n, parity))


@dataclass(frozen=True)
class EvenCircleCoord:
    """Projective pair (c : s), first nonzero entry normalized to 1."""

    c: Fraction
    s: Fraction

    def __post_init__(self):
        c, s = Fraction(self.c), Fraction(self.s)
        if c == 0 and s == 0:
            raise ValueError("(0 : 0) is not a projective point")
        lead = c if c != 0 else s
        object.__setattr__(self, "c", c / lead)
        object.__setattr__(self, "s", s / lead)


def even2_from_chart(p: EvenCircleCoord | tuple) -> Lagrangian:
    if not isinstance(p, EvenCircleCoord):
        p = EvenCircleCoord(*p)
    c, s = p.c, p.s
    return Lagrangian.span(2, [[c, 0, 0, s], [0, c, -s, 0]])


def even2_chart(L: Lagrangian) -> EvenCircleCoord:
    if L.n != 2:
        raise ValueError("the even circle chart is defined for n = 2")
    if parity(L) != "even":
        raise ValueError("even2_chart needs an even Lagrangian")
    # the line L ∩ span{∂x, dy} carries c∂x + s dy
    line = L.space.intersect(Subspace.span(2, [[1, 0, 0, 0], [0, 0, 0, 1]]))
    (row,) = line.rows
    return EvenCircleCoord(row[0], row[3])


def odd2_from_line(line: Subspace) -> Lagrangian:
    if line.n != 2 or line.dim != 1 or not line.in_V():
        raise ValueError("expected a line in V for n = 2")
    return Lagrangian(line + annihilator(line))


def odd2_line(L: Lagrangian) -> Subspace:
    if L.n != 2:
        raise ValueError("odd2_line is defined for n = 2")
    if parity(L) != "odd":
        raise ValueError("odd2_line needs an odd Lagrangian")
    return L.delta()


@dataclass(frozen=True)
class FormChart:
    """Even n = 3 chart on Delta = V: L is the graph of the 2-form eps."""

    eps: tuple[tuple[Fraction, ...], ...]

    def to_lagrangian(self) -> Lagrangian:
        return graph_two_form(self.eps)


@dataclass(frozen=True)
class PoissonChart:
    """Even n = 3 chart on dim(codelta) = 2."""

    codelta: Subspace
    pi: tuple[tuple[Fraction, ...], ...]

    def to_lagrangian(self) -> Lagrangian:
        return from_codelta_pi(BivectorOnCosubspace(self.codelta, self.pi))


@dataclass(frozen=True)
class BivectorChart:
    """Odd n = 3 chart on codelta = V*: L is the graph of the bivector pi."""

    pi: tuple[tuple[Fraction, ...], ...]

    def to_lagrangian(self) -> Lagrangian:
        return graph_bivector(self.pi)


@dataclass(frozen=True)
class FoliatedFormChart:
    """Odd n = 3 chart on dim(delta) = 2."""

    delta: Subspace
    eps: tuple[tuple[Fraction, ...], ...]

    def to_lagrangian(self) -> Lagrangian:
        return from_delta_epsilon(SkewFormOnSubspace(self.delta, self.eps))


Chart3 = Union[FormChart, PoissonChart, BivectorChart, FoliatedFormChart]


def chart3(L: Lagrangian) -> list[Chart3]:
    """All atlas charts containing L; type (1,0) and (0,1) Lagrangians get two."""
    if L.n != 3:
        raise ValueError("chart3 is defined for n = 3")
    dim_delta = L.delta().dim
    dim_codelta = L.codelta().dim
    charts: list[Chart3] = []
    if parity(L) == "even":
        if dim_delta == 3:
            charts.append(FormChart(to_delta_epsilon(L).eps))
        if dim_codelta == 2:
            p = to_codelta_pi(L)
            charts.append(PoissonChart(p.codelta, p.pi))
    else:
        if dim_codelta == 3:
            charts.append(BivectorChart(to_codelta_pi(L).pi))
        if dim_delta == 2:
            p = to_delta_epsilon(L)
            charts.append(FoliatedFormChart(p.delta, p.eps))
    return charts
