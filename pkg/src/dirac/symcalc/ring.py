"""Coefficient rings for fields on R^n and T^n.

On R^n a scalar field is a polynomial with rational coefficients, stored as
``{exponent tuple: Fraction}``.  On T^n it is a finite sum of terms
``c_k exp(i k.x)`` with ``k`` in (Z/2)^n and Gaussian-rational ``c_k``.  To keep
keys integral, torus keys store ``2k``.  Every torus field is real:
``c_{-k} == conj(c_k)``, which all operations below preserve.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

_ZERO = Fraction(0)
_ONE = Fraction(1)


class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=_ZERO, im=_ZERO):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @staticmethod
    def coerce(x) -> "GaussianRational":
        return x if isinstance(x, GaussianRational) else GaussianRational(x)

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        return GaussianRational(self.re + other, self.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        return GaussianRational(self.re - other, self.im)

    def __rsub__(self, other):
        return GaussianRational(other - self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational(a * c - b * d, a * d + b * c)
        return GaussianRational(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        return self * GaussianRational(other.re / norm, -other.im / norm)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def times_i(self) -> "GaussianRational":
        return GaussianRational(-self.im, self.re)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


@dataclass(frozen=True)
class Domain:
    """``affine`` for R^n (polynomial coefficients) or ``torus`` for T^n."""

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in ("affine", "torus"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("domain dimension must be positive")

    @property
    def is_torus(self) -> bool:
        return self.kind == "torus"

    @property
    def labels(self) -> tuple[str, ...]:
        if self.n <= 3:
            return ("x", "y", "z")[: self.n]
        return tuple(f"x{i + 1}" for i in range(self.n))

    def __str__(self):
        return f"{'T' if self.is_torus else 'R'}^{self.n}"


def AffineDomain(n: int) -> Domain:
    return Domain("affine", n)


def TorusDomain(n: int) -> Domain:
    return Domain("torus", n)


class NotDivisible(ArithmeticError):
    pass


def _check_same(a: Domain, b: Domain) -> None:
    if a != b:
        raise ValueError(f"mixed domains: {a} and {b}")


class ScalarField:
    """Immutable element of the coefficient ring of a domain."""

    __slots__ = ("domain", "terms", "_hash")

    def __init__(self, domain: Domain, terms: Mapping[tuple[int, ...], object] = ()):
        torus = domain.is_torus
        clean = {}
        for key, c in dict(terms).items():
            if len(key) != domain.n:
                raise ValueError("term key has wrong length")
            if torus:
                c = GaussianRational.coerce(c)
            elif isinstance(c, GaussianRational):
                if c.im:
                    raise ValueError("polynomial coefficients must be real")
                c = c.re
            else:
                c = c if type(c) is Fraction else Fraction(c)
            if c:
                clean[key] = c
        if not torus and any(e < 0 for key in clean for e in key):
            raise ValueError("negative exponent in a polynomial")
        if torus:
            zero = GaussianRational()
            for key, c in clean.items():
                if clean.get(tuple(-e for e in key), zero) != c.conjugate():
                    raise ValueError(f"coefficients at {key} and its negative violate c(-k) = conj(c(k))")
        self.domain = domain
        self.terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def _raw(cls, domain: Domain, terms: dict) -> "ScalarField":
        # terms already typed and free of zeros
        f = object.__new__(cls)
        f.domain = domain
        f.terms = dict(sorted(terms.items()))
        f._hash = None
        return f

    # constructors

    @classmethod
    def constant(cls, domain: Domain, c=0) -> "ScalarField":
        return cls(domain, {(0,) * domain.n: c})

    @classmethod
    def zero(cls, domain: Domain) -> "ScalarField":
        return cls._raw(domain, {})

    @classmethod
    def one(cls, domain: Domain) -> "ScalarField":
        return cls.constant(domain, 1)

    @classmethod
    def coordinate(cls, domain: Domain, i: int) -> "ScalarField":
        if domain.is_torus:
            raise ValueError("coordinates are not periodic functions on the torus")
        key = tuple(int(j == i) for j in range(domain.n))
        return cls(domain, {key: 1})

    @classmethod
    def exponential(cls, domain: Domain, freq: Sequence, coeff) -> "ScalarField":
        """coeff * exp(i k.x) + conj(coeff) * exp(-i k.x) for k = freq (not halved)."""
        if not domain.is_torus:
            raise ValueError("exponentials live on the torus")
        key = _freq_key(freq)
        c = GaussianRational.coerce(coeff)
        if all(k == 0 for k in key):
            return cls(domain, {key: GaussianRational(2 * c.re)})
        neg = tuple(-k for k in key)
        return cls(domain, {key: c, neg: c.conjugate()})

    @classmethod
    def cos(cls, domain: Domain, freq: Sequence) -> "ScalarField":
        return cls.exponential(domain, freq, GaussianRational(Fraction(1, 2)))

    @classmethod
    def sin(cls, domain: Domain, freq: Sequence) -> "ScalarField":
        # sin t = (e^{it} - e^{-it}) / 2i
        return cls.exponential(domain, freq, GaussianRational(0, Fraction(-1, 2)))

    # ring structure

    def _coerce(self, other) -> "ScalarField":
        if isinstance(other, ScalarField):
            _check_same(self.domain, other.domain)
            return other
        if isinstance(other, (int, Fraction)):
            return ScalarField.constant(self.domain, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for k, c in other.terms.items():
            v = terms.get(k)
            v = c if v is None else v + c
            if v:
                terms[k] = v
            else:
                terms.pop(k, None)
        return ScalarField._raw(self.domain, terms)

    __radd__ = __add__

    def __neg__(self):
        return ScalarField._raw(self.domain, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ScalarField.zero(self.domain)
            return ScalarField._raw(self.domain, {k: c * other for k, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                v = terms.get(k)
                terms[k] = c1 * c2 if v is None else v + c1 * c2
        return ScalarField._raw(self.domain, {k: c for k, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self.exact_div(other)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers")
        result = ScalarField.one(self.domain)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def diff(self, i: int) -> "ScalarField":
        """Partial derivative in the i-th coordinate."""
        terms = {}
        if self.domain.is_torus:
            for k, c in self.terms.items():
                if k[i]:
                    terms[k] = c.times_i() * Fraction(k[i], 2)
        else:
            for k, c in self.terms.items():
                e = k[i]
                if e:
                    terms[k[:i] + (e - 1,) + k[i + 1 :]] = c * e
        return ScalarField._raw(self.domain, terms)

    # predicates and comparison

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_constant(self) -> bool:
        return all(all(e == 0 for e in k) for k in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("field is not constant")
        c = self.terms.get((0,) * self.domain.n, _ZERO)
        return c.re if isinstance(c, GaussianRational) else c

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ScalarField.constant(self.domain, other)
        if not isinstance(other, ScalarField):
            return NotImplemented
        return self.domain == other.domain and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.domain, tuple(self.terms.items())))
        return self._hash

    def __repr__(self):
        from dirac.symcalc.grammar import format_scalar

        return f"ScalarField({self.domain}, {format_scalar(self)!r})"

    def __str__(self):
        from dirac.symcalc.grammar import format_scalar

        return format_scalar(self)

    # torus-specific

    def twist(self, axis: int) -> int | None:
        """Sign exponent under x_axis -> x_axis + 2 pi: 0 (periodic), 1 (flips), None (mixed)."""
        if not self.domain.is_torus:
            return 0
        parities = {k[axis] % 2 for k in self.terms}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def is_real(self) -> bool:
        if not self.domain.is_torus:
            return True
        return all(
            self.terms.get(tuple(-e for e in k), GaussianRational()) == c.conjugate()
            for k, c in self.terms.items()
        )

    # evaluation

    def value_at_origin(self) -> Fraction:
        """Exact value at x = 0."""
        if self.domain.is_torus:
            return sum((c.re for c in self.terms.values()), _ZERO)
        return self.terms.get((0,) * self.domain.n, _ZERO)

    def evaluate(self, point: Sequence):
        """Value at a point; exact Fraction for polynomials at rational points."""
        if len(point) != self.domain.n:
            raise ValueError(f"point must have {self.domain.n} coordinates")
        if not self.domain.is_torus and all(isinstance(p, (int, Fraction)) for p in point):
            total = _ZERO
            for k, c in self.terms.items():
                m = c
                for p, e in zip(point, k):
                    if e:
                        m *= Fraction(p) ** e
                total += m
            return total
        return float(self.evaluate_many(np.asarray([point], dtype=float))[0])

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Vectorized float evaluation at an (m, n) array of points."""
        pts = np.asarray(points, dtype=float).reshape(-1, self.domain.n)
        if not self.terms:
            return np.zeros(len(pts))
        keys = np.array(list(self.terms.keys()), dtype=float)
        if self.domain.is_torus:
            re = np.array([float(c.re) for c in self.terms.values()])
            im = np.array([float(c.im) for c in self.terms.values()])
            phase = pts @ (keys.T / 2.0)
            return np.cos(phase) @ re - np.sin(phase) @ im
        coeffs = np.array([float(c) for c in self.terms.values()])
        mons = np.prod(pts[:, None, :] ** keys[None, :, :], axis=2)
        return mons @ coeffs

    # exact division

    def exact_div(self, other: "ScalarField") -> "ScalarField":
        """Quotient q with q * other == self; raises NotDivisible otherwise."""
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero field")
        if self.is_zero:
            return self
        n = self.domain.n
        if self.domain.is_torus:
            # Laurent division: shift both to polynomials whose exponents start at 0
            lo_d = tuple(min(k[i] for k in other.terms) for i in range(n))
            lo_s = tuple(min(k[i] for k in self.terms) for i in range(n))
            num = {tuple(a - b for a, b in zip(k, lo_s)): c for k, c in self.terms.items()}
            den = {tuple(a - b for a, b in zip(k, lo_d)): c for k, c in other.terms.items()}
            q = _poly_divide(num, den)
            shift = tuple(a - b for a, b in zip(lo_s, lo_d))
            return ScalarField._raw(self.domain, {tuple(a + b for a, b in zip(k, shift)): c for k, c in q.items()})
        return ScalarField._raw(self.domain, _poly_divide(self.terms, other.terms))


def _freq_key(freq: Sequence) -> tuple[int, ...]:
    key = []
    for k in freq:
        k2 = Fraction(k) * 2
        if k2.denominator != 1:
            raise ValueError(f"frequency {k} is not a half-integer")
        key.append(int(k2))
    return tuple(key)


def _poly_divide(num: Mapping, den: Mapping) -> dict:
    lead = max(den)
    lead_c = den[lead]
    rem = dict(num)
    quot: dict = {}
    while rem:
        k = max(rem)
        if any(a < b for a, b in zip(k, lead)):
            raise NotDivisible("not exactly divisible")
        t = tuple(a - b for a, b in zip(k, lead))
        c = rem[k] / lead_c
        quot[t] = quot.get(t, 0) + c
        for dk, dc in den.items():
            key = tuple(a + b for a, b in zip(t, dk))
            v = rem.get(key, 0) - c * dc
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return {k: c for k, c in quot.items() if c}


def field_det(m: Sequence[Sequence[ScalarField]]) -> ScalarField:
    """Determinant of a small square matrix of fields by cofactor expansion."""
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = ScalarField.zero(m[0][0].domain)
    for j in range(n):
        if m[0][j].is_zero:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * field_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def adjugate(m: Sequence[Sequence[ScalarField]]) -> list[list[ScalarField]]:
    n = len(m)
    if n == 1:
        return [[ScalarField.one(m[0][0].domain)]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for k, row in enumerate(m) if k != i]
            c = field_det(minor)
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return adj


def field_sum(fields: Iterable[ScalarField], domain: Domain) -> ScalarField:
    total = ScalarField.zero(domain)
    for f in fields:
        total = total + f
    return total
