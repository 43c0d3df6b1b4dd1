"""Seeded random Dirac frames on R^n and T^n (n = 2, 3)."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from dirac.diracfield.frame import DiracFrame, build_frame
from dirac.symcalc import AffineDomain, Domain, GSection, KForm, ScalarField, TorusDomain, d

# Lie-Poisson structures {x_i, x_j} = sum_k c_ij^k x_k, keyed by (i, j) with i < j
LIE_POISSON_CATALOG: dict[str, dict[tuple[int, int], tuple[int, int, int]]] = {
    "so3": {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (0, 2): (0, -1, 0)},
    "sl2": {(0, 1): (0, 2, 0), (0, 2): (0, 0, -2), (1, 2): (1, 0, 0)},
    "heisenberg": {(0, 1): (0, 0, 1)},
    "bianchi-iii": {(0, 1): (0, 1, 0)},
    "e11": {(0, 1): (0, 1, 0), (0, 2): (0, 0, -1)},
    "e2": {(0, 1): (0, 0, 1), (0, 2): (0, -1, 0)},
    "bianchi-v": {(0, 1): (0, 1, 0), (0, 2): (0, 0, 1)},
    "bianchi-iv": {(0, 1): (0, 1, 0), (0, 2): (0, 1, 1)},
}


def _domain(kind: str | Domain, n: int) -> Domain:
    if isinstance(kind, Domain):
        if kind.n != n:
            raise ValueError(f"domain {kind} does not have dimension {n}")
        return kind
    if kind == "affine":
        return AffineDomain(n)
    if kind == "torus":
        return TorusDomain(n)
    raise ValueError(f"unknown domain kind {kind!r}")


def _small(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-2, 2), rng.randint(1, 2))


def _random_poly(rng: random.Random, dom: Domain, terms: int = 3, degree: int = 2) -> ScalarField:
    coeffs = {}
    for _ in range(terms):
        while True:
            key = tuple(rng.randint(0, degree) for _ in range(dom.n))
            if sum(key) <= degree:
                break
        coeffs[key] = coeffs.get(key, 0) + _small(rng)
    return ScalarField(dom, coeffs)


def _random_trig(rng: random.Random, dom: Domain, terms: int = 2) -> ScalarField:
    """Real integer-frequency trig polynomial, each coordinate frequency in {-1, 0, 1}."""
    f = ScalarField.zero(dom)
    for _ in range(terms):
        freq = tuple(rng.randint(-1, 1) for _ in range(dom.n))
        coeff = Fraction(rng.randint(-2, 2), 4)
        f = f + (ScalarField.cos(dom, freq) if rng.random() < 0.5 else ScalarField.sin(dom, freq)) * coeff
    return f


def _random_field(rng: random.Random, dom: Domain) -> ScalarField:
    return _random_trig(rng, dom) if dom.is_torus else _random_poly(rng, dom)


def trig_degree(f: ScalarField) -> Fraction:
    """Largest |frequency| along any axis (exponent keys store twice the frequency)."""
    return max((Fraction(abs(e), 2) for k in f.terms for e in k), default=Fraction(0))


def _positive(rng: random.Random, dom: Domain) -> ScalarField:
    """A field bounded below by a positive constant."""
    if dom.is_torus:
        # |_random_trig| <= 1 since it has at most two terms of size <= 1/2
        return _random_trig(rng, dom) + 2
    q = _random_poly(rng, dom, terms=2, degree=1)
    return q * q + 1


def _nonvanishing_pair(rng: random.Random, dom: Domain) -> tuple[ScalarField, ScalarField]:
    """(c, s) never simultaneously zero; on the torus it winds (k1, k2)/2 turns around the loops."""
    if not dom.is_torus:
        q = _random_poly(rng, dom, terms=2, degree=1)
        other = _random_poly(rng, dom)
        base = q * q + 1
        return (base, other) if rng.random() < 0.5 else (other, base)
    k = tuple(Fraction(rng.randint(-2, 2), 2) for _ in range(dom.n))
    cos_t, sin_t = ScalarField.cos(dom, k), ScalarField.sin(dom, k)
    p = _random_trig(rng, dom) + 3
    q = _random_trig(rng, dom)
    # rotation of (p, q) by theta; |(p, q)| >= 2
    return p * cos_t - q * sin_t, p * sin_t + q * cos_t


def _mix(rng: random.Random, dom: Domain, e1: GSection, e2: GSection) -> list[GSection]:
    """Triangular change of frame with positive rescaling; the spanned field is unchanged."""
    # a constant shear on the torus keeps the trig degree at most 3
    h = ScalarField.constant(dom, _small(rng)) if dom.is_torus else _random_poly(rng, dom)
    e1 = e1.scale(_positive(rng, dom))
    e2 = e2.scale(_positive(rng, dom)) + e1.scale(h)
    return [e1, e2] if rng.random() < 0.5 else [e2, e1]


def _even_surface(rng: random.Random, dom: Domain) -> list[GSection]:
    c, s = _nonvanishing_pair(rng, dom)
    zero = ScalarField.zero(dom)
    e1 = GSection.from_lists(dom, [c, zero], [zero, s])
    e2 = GSection.from_lists(dom, [zero, c], [-s, zero])
    return _mix(rng, dom, e1, e2)


def _odd_surface(rng: random.Random, dom: Domain) -> list[GSection]:
    X1, X2 = _nonvanishing_pair(rng, dom)
    zero = ScalarField.zero(dom)
    e1 = GSection.from_lists(dom, [X1, X2], [zero, zero])
    e2 = GSection.from_lists(dom, [zero, zero], [-X2, X1])
    return _mix(rng, dom, e1, e2)


def graph_of_two_form(dom: Domain, omega: KForm) -> list[GSection]:
    """Sections ∂_i + omega(∂_i, .)."""
    m = omega.matrix()
    one, zero = ScalarField.one(dom), ScalarField.zero(dom)
    return [
        GSection.from_lists(dom, [one if j == i else zero for j in range(dom.n)], list(m[i]))
        for i in range(dom.n)
    ]


def graph_of_bivector(dom: Domain, pi) -> list[GSection]:
    """Sections pi(dx_i, .) + dx_i for a skew matrix of fields."""
    one, zero = ScalarField.one(dom), ScalarField.zero(dom)
    return [
        GSection.from_lists(dom, list(pi[i]), [one if j == i else zero for j in range(dom.n)])
        for i in range(dom.n)
    ]


def lie_poisson_bivector(dom: Domain, name: str, scale=1) -> list[list[ScalarField]]:
    if dom.is_torus:
        raise ValueError("linear bivectors are not periodic")
    consts = LIE_POISSON_CATALOG[name]
    zero = ScalarField.zero(dom)
    P = [[zero] * 3 for _ in range(3)]
    for (i, j), c in consts.items():
        f = sum((ScalarField.coordinate(dom, k) * (ck * Fraction(scale)) for k, ck in enumerate(c) if ck), zero)
        P[i][j], P[j][i] = f, -f
    return P


def _closed_form(rng: random.Random, dom: Domain) -> KForm:
    eta = KForm.from_components(dom, [_random_field(rng, dom) for _ in range(dom.n)])
    const = {ij: ScalarField.constant(dom, _small(rng)) for ij in itertools.combinations(range(dom.n), 2)}
    return d(eta) + KForm(dom, 2, const)


def random_dirac_field(seed: int, n: int, parity: str, domain: str | Domain = "affine") -> DiracFrame:
    """Random Dirac frame; identical arguments give identical frames."""
    if n not in (2, 3):
        raise ValueError(f"random frames are generated for n = 2 or 3, not {n}")
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', not {parity!r}")
    dom = _domain(domain, n)
    rng = random.Random(f"{seed}:{n}:{parity}:{dom.kind}")
    if n == 2:
        sections = _even_surface(rng, dom) if parity == "even" else _odd_surface(rng, dom)
    elif parity == "even":
        sections = graph_of_two_form(dom, _closed_form(rng, dom))
    else:
        if dom.is_torus:
            raise ValueError("no random odd frames on T^3: the catalog bivectors are linear")
        name = rng.choice(sorted(LIE_POISSON_CATALOG))
        scale = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
        sections = graph_of_bivector(dom, lie_poisson_bivector(dom, name, scale))
    return build_frame(dom, sections)
