from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from dirac.symcalc import (
    AffineDomain,
    GSection,
    KForm,
    ScalarField,
    TorusDomain,
    VectorField,
    courant_bracket,
    d,
    interior,
    lie_bracket,
    lie_derivative,
    pairing_field,
    parse_scalar,
    wedge,
)
from fieldgen import random_form, random_section, random_vector_field

R2, R3, T3 = AffineDomain(2), AffineDomain(3), TorusDomain(3)


def P(text, dom=R3):
    return parse_scalar(text, dom)


def one_form(dom, *texts):
    return KForm.from_components(dom, [P(t, dom) for t in texts])


def vf(dom, *texts):
    return VectorField(dom, tuple(P(t, dom) for t in texts))


def section(dom, vec, cov):
    return GSection.from_lists(dom, [P(t, dom) for t in vec], [P(t, dom) for t in cov])


def lie_oracle(X: VectorField, w: KForm) -> KForm:
    """(L_X w)_I = X(w_I) + sum over slots s of w(.., d_s X, ..), written out in coordinates."""
    dom, k = w.domain, w.degree
    comps = {}
    for idx in itertools.combinations(range(dom.n), k):
        total = X.apply(w[idx])
        for s, i in enumerate(idx):
            for m in range(dom.n):
                dXm = X.comps[m].diff(i)
                if dXm.is_zero:
                    continue
                total = total + w[idx[:s] + (m,) + idx[s + 1 :]] * dXm
        comps[idx] = total
    return KForm(dom, k, comps)


def test_d_examples():
    assert d(one_form(R2, "0", "x")) == KForm(R2, 2, {(0, 1): ScalarField.one(R2)})
    zdxdy = KForm(R3, 2, {(0, 1): P("z")})
    assert d(zdxdy) == KForm(R3, 3, {(0, 1, 2): ScalarField.one(R3)})
    assert d(KForm(R2, 2, {(0, 1): P("x", R2)})).is_zero


def test_bracket_examples():
    assert lie_bracket(vf(R2, "1", "0"), vf(R2, "0", "x")) == vf(R2, "0", "1")
    dxdy = KForm(R2, 2, {(0, 1): ScalarField.one(R2)})
    assert interior(vf(R2, "1", "0"), dxdy) == one_form(R2, "0", "1")
    assert lie_derivative(vf(R2, "1", "0"), one_form(R2, "0", "x")) == one_form(R2, "0", "1")


@pytest.mark.parametrize("dom", [R3, T3], ids=str)
def test_d_squared_vanishes(dom):
    rng = random.Random(5)
    for _ in range(10):
        for k in range(dom.n - 1):
            assert d(d(random_form(rng, dom, k))).is_zero


@pytest.mark.parametrize("dom", [R3, T3], ids=str)
def test_lie_derivative_matches_coordinate_oracle(dom):
    rng = random.Random(6)
    for _ in range(6):
        X = random_vector_field(rng, dom)
        for k in range(dom.n + 1):
            w = random_form(rng, dom, k)
            assert lie_derivative(X, w) == lie_oracle(X, w)


def test_cartan_commutator_identity():
    rng = random.Random(7)
    for _ in range(8):
        X, Y = random_vector_field(rng, R3), random_vector_field(rng, R3)
        w = random_form(rng, R3, 2)
        lhs = lie_derivative(X, interior(Y, w)) - interior(Y, lie_derivative(X, w))
        assert lhs == interior(lie_bracket(X, Y), w)


def test_lie_bracket_jacobi():
    rng = random.Random(8)
    for _ in range(8):
        X, Y, Z = (random_vector_field(rng, R3) for _ in range(3))
        total = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y))
        assert total.is_zero


def test_wedge_graded_commutative():
    rng = random.Random(9)
    a, b = random_form(rng, R3, 1), random_form(rng, R3, 2)
    assert wedge(a, b) == wedge(b, a)
    c = random_form(rng, R3, 1)
    assert wedge(a, c) == -wedge(c, a)
    assert d(wedge(a, c)) == wedge(d(a), c) - wedge(a, d(c))


def test_worked_courant_bracket_matches_oracle():
    s1 = section(R2, ["1", "0"], ["0", "0"])
    s2 = section(R2, ["0", "0"], ["0", "x"])
    X, eta = s1.vf, s2.of
    # term-by-term: [X, 0] = 0, L_X eta = dy, L_0 xi = 0, d(iota_X eta) = d(0)
    assert lie_derivative(X, eta) == one_form(R2, "0", "1")
    assert interior(X, eta).is_zero
    br = courant_bracket(s1, s2)
    assert br == section(R2, ["0", "0"], ["0", "1"])
    assert str(br) == "dy"


@pytest.mark.parametrize("dom", [R3, T3], ids=str)
def test_courant_bracket_antisymmetric_and_reductions(dom):
    rng = random.Random(10)
    zero_form = KForm.zero(dom, 1)
    for _ in range(6):
        s1, s2 = random_section(rng, dom), random_section(rng, dom)
        assert courant_bracket(s1, s2) == -courant_bracket(s2, s1)
        assert courant_bracket(s1, s1).is_zero
        X, Y = s1.vf, s2.vf
        assert courant_bracket(GSection(X, zero_form), GSection(Y, zero_form)) == GSection(lie_bracket(X, Y), zero_form)
        eta = s2.of
        mixed = courant_bracket(GSection(X, zero_form), GSection(VectorField.zero(dom), eta))
        assert mixed.vf.is_zero
        assert mixed.of == lie_derivative(X, eta) - d(interior(X, eta)).scale(Fraction(1, 2))


def test_pairing_field_examples():
    assert pairing_field(section(R2, ["1", "0"], ["0", "1"]), section(R2, ["0", "1"], ["1", "0"])) == 1
    assert pairing_field(section(R2, ["1", "0"], ["x", "0"]), section(R2, ["1", "0"], ["0", "0"])) == P("x/2", R2)
    s = section(R2, ["1", "0"], ["0", "1"])
    assert pairing_field(s, s).is_zero
