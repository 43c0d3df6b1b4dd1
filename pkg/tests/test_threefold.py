from __future__ import annotations

import itertools

import pytest

from dirac.diracfield import (
    LIE_POISSON_CATALOG,
    NotDiracError,
    decompose_threefold,
    foliated_poisson_bracket,
    frame_from_rows,
    lie_poisson_bivector,
)
from dirac.diracfield.threefold import Quotient
from dirac.symcalc import AffineDomain, Distribution, ScalarField, parse_scalar

R3 = AffineDomain(3)


def frame(*texts, dom=R3):
    return frame_from_rows(dom, [[parse_scalar(t, dom) for t in r] for r in texts])


def P(text):
    return parse_scalar(text, R3)


def test_constant_graph_regions_are_everything():
    F = frame(["1", "0", "0", "0", "1", "0"], ["0", "1", "0", "-1", "0", "0"], ["0", "0", "1", "0", "0", "0"])
    dec = decompose_threefold(F, 9)
    full = set(dec.stratification.indices)
    assert dec.form_region.region == full == dec.bivector_region.region == dec.gluing
    assert dec.form_region.data["omega"] == "dx∧dy"
    assert dec.form_region.checks["closed"]
    assert dec.bivector_region.data["kernel"] == "∂z"
    assert dec.bivector_region.data["pi"] == "-∂x∧∂y"


def test_even_poisson_example():
    F = frame(["0", "x", "0", "1", "0", "0"], ["-x", "0", "0", "0", "1", "0"], ["0", "0", "1", "0", "0", "0"])
    dec = decompose_threefold(F, 9)
    full = set(dec.stratification.indices)
    x_nonzero = {i for i in full if i[0] != 4}
    assert dec.bivector_region.region == full
    assert dec.form_region.region == x_nonzero
    assert dec.gluing == x_nonzero
    assert dec.covers_grid and dec.overlap_is_gluing
    fp = dec.bivector_region
    assert fp.data["kernel"] == "∂z"
    assert fp.data["pi"] == "x*∂x∧∂y"
    assert dec.form_region.data["omega"] == "(-1/x)*dx∧dy"
    assert fp.checks == {"bracket_admissible": True, "jacobi": True}
    assert dec.form_region.checks["closed"]


def test_odd_poisson_example():
    F = frame(["0", "z", "0", "1", "0", "0"], ["-z", "0", "0", "0", "1", "0"], ["0", "0", "0", "0", "0", "1"])
    dec = decompose_threefold(F, 9)
    full = set(dec.stratification.indices)
    assert dec.parity == "odd" and dec.gluing_type == (0, 1)
    assert dec.bivector_region.region == full
    assert dec.form_region.region == {i for i in full if i[2] != 4}
    assert dec.bivector_region.checks["jacobi"]
    assert dec.form_region.checks == {"integrable": True, "closed": True}
    assert dec.covers_grid and dec.overlap_is_gluing


def test_non_poisson_bivector_is_not_dirac():
    # pi = y ∂y∧∂z + ∂x∧∂y: v = (y, 0, 1) has v . curl v = -1
    F = frame(["0", "1", "0", "1", "0", "0"], ["-1", "0", "y", "0", "1", "0"], ["0", "-y", "0", "0", "0", "1"])
    with pytest.raises(NotDiracError):
        decompose_threefold(F, 5)


def test_decompose_needs_threefold():
    F = frame_from_rows(AffineDomain(2), [[1, 0, 0, 1], [0, 1, -1, 0]])
    with pytest.raises(ValueError):
        decompose_threefold(F, 5)


def test_foliated_poisson_bracket_examples():
    D = Distribution.coordinate(R3, [2])
    z = ScalarField.zero(R3)
    one = ScalarField.one(R3)
    pi = [[z, one, z], [-one, z, z], [z, z, z]]
    assert foliated_poisson_bracket(D, pi, P("x"), P("y")) == one
    pi_x = [[z, P("x"), z], [-P("x"), z, z], [z, z, z]]
    assert foliated_poisson_bracket(D, pi_x, P("x"), P("y")) == P("x")
    assert foliated_poisson_bracket(D, pi_x, P("x*y"), P("x*y")).is_zero
    with pytest.raises(ValueError):
        foliated_poisson_bracket(D, pi_x, P("z"), P("y"))


def test_bracket_leibniz_on_admissible_products():
    D = Distribution.coordinate(R3, [2])
    z = ScalarField.zero(R3)
    pi = [[z, P("x^2 + y"), z], [-P("x^2 + y"), z, z], [z, z, z]]
    f, g, h = P("x + y^2"), P("x*y"), P("y - 3*x")

    def br(a, b):
        return foliated_poisson_bracket(D, pi, a, b)

    assert br(f, g * h) == br(f, g) * h + g * br(f, h)
    assert br(f, g) == -br(g, f)


@pytest.mark.parametrize("name", sorted(LIE_POISSON_CATALOG))
def test_catalog_satisfies_jacobi(name):
    pi = lie_poisson_bivector(R3, name, 3)
    coords = [P("x"), P("y"), P("z"), P("x^2 + y*z")]

    def br(a, b):
        return foliated_poisson_bracket(None, pi, a, b)

    for f, g, h in itertools.combinations(coords, 3):
        assert (br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g))).is_zero


def test_quotient_cancels_monomials():
    q = Quotient(P("x^2*y"), P("x*y^2"))
    assert str(q) == "x/y"
    assert (q * Quotient(P("y"), P("x"))).den == ScalarField.one(R3)
