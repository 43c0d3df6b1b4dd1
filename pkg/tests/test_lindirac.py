from __future__ import annotations

import random
from fractions import Fraction

import pytest

from dirac import lindirac as ld
from dirac.lindirac import (
    DiracType,
    EvenCircleCoord,
    GVector,
    Lagrangian,
    Subspace,
    annihilator,
    pairing,
)


def L2(*rows):
    return Lagrangian.span(2, rows)


def test_pairing_examples():
    assert pairing(GVector((1, 0), (0, 1)), GVector((0, 1), (1, 0))) == 1
    assert pairing(GVector((1, 0), (0, 0)), GVector((0, 1), (0, 0))) == 0
    assert pairing(GVector((1, 0), (1, 0)), GVector((1, 0), (1, 0))) == 1
    assert pairing(GVector((1, 0), (0, 0)), GVector((0, 0), (1, 0))) == Fraction(1, 2)


def test_pairing_dimension_mismatch():
    with pytest.raises(ValueError):
        pairing(GVector((1, 0), (0, 0)), GVector((1, 0, 0), (0, 0, 0)))


def test_annihilator_examples():
    assert annihilator(Subspace.of_vectors(2, [[1, 0]])) == Subspace.of_covectors(2, [[0, 1]])
    assert annihilator(Subspace.zero(2)) == Subspace.Vstar(2)
    assert annihilator(Subspace.zero(2), side="Vstar") == Subspace.V(2)
    assert annihilator(Subspace.V(2)) == Subspace.zero(2)
    with pytest.raises(ValueError):
        annihilator(Subspace.span(2, [[1, 0, 1, 0]]))


def test_is_lagrangian_examples():
    assert ld.is_lagrangian(Subspace.V(3))
    assert not ld.is_lagrangian(Subspace.span(2, [[1, 0, 0, 0], [0, 0, 1, 0]]))
    assert ld.is_lagrangian(Subspace.span(2, [[1, 0, 0, 1], [0, 1, -1, 0]]))


def test_subspace_equality_is_canonical():
    a = Subspace.span(2, [[1, 0, 0, 1], [0, 1, -1, 0]])
    b = Subspace.span(2, [[1, 1, -1, 1], [2, 0, 0, 2]])
    assert a == b


def test_type_examples():
    assert ld.type_of(Lagrangian(Subspace.V(2))) == DiracType(2, 0)
    g = ld.graph_two_form([[0, 1], [-1, 0]])
    assert ld.type_of(g) == DiracType(0, 0) and ld.parity(g) == "even"
    odd = L2([1, 0, 0, 0], [0, 0, 0, 1])
    assert ld.type_of(odd) == DiracType(1, 1) and ld.parity(odd) == "odd"
    assert str(DiracType(1, 2)) == "(1,2)"


def test_delta_epsilon_examples():
    p = ld.to_delta_epsilon(Lagrangian(Subspace.V(3)))
    assert p.delta == Subspace.V(3)
    assert all(x == 0 for r in p.eps for x in r)
    q = ld.SkewFormOnSubspace(Subspace.of_vectors(3, [[1, 0, 0], [0, 1, 0]]), [[0, 1], [-1, 0]])
    expected = Lagrangian.span(3, [[1, 0, 0, 0, 1, 0], [0, 1, 0, -1, 0, 0], [0, 0, 0, 0, 0, 1]])
    assert ld.from_delta_epsilon(q) == expected


def test_codelta_pi_examples():
    p = ld.to_codelta_pi(Lagrangian(Subspace.Vstar(2)))
    assert p.codelta == Subspace.Vstar(2)
    assert all(x == 0 for r in p.pi for x in r)
    g = ld.graph_bivector([[0, 1], [-1, 0]])
    q = ld.to_codelta_pi(g)
    assert q.codelta == Subspace.Vstar(2)
    assert q.pi == ((0, 1), (-1, 0))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_round_trips_at_the_extremes(n):
    for L in (Lagrangian(Subspace.V(n)), Lagrangian(Subspace.Vstar(n))):
        assert ld.from_delta_epsilon(ld.to_delta_epsilon(L)) == L
        assert ld.from_codelta_pi(ld.to_codelta_pi(L)) == L


def test_graphs():
    assert ld.graph_two_form([[0, 0], [0, 0]]) == Lagrangian(Subspace.V(2))
    assert ld.graph_bivector([[0, 0], [0, 0]]) == Lagrangian(Subspace.Vstar(2))
    g = ld.graph_two_form([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    assert ld.type_of(g) == DiracType(1, 0)
    with pytest.raises(ValueError):
        ld.graph_two_form([[0, 1], [1, 0]])


def test_orthogonal_chart_examples():
    assert ld.lagrangian_from_orthogonal([[1, 0], [0, 1]]) == Lagrangian(Subspace.V(2))
    assert ld.lagrangian_from_orthogonal([[-1, 0], [0, -1]]) == Lagrangian(Subspace.Vstar(2))
    A = ld.OrthoMatrix(((1, 0), (0, -1)))
    L = ld.lagrangian_from_orthogonal(A)
    assert L == L2([1, 0, 0, 0], [0, 0, 0, 1])
    assert ld.parity(L) == "odd" and A.det() == -1
    with pytest.raises(ValueError):
        ld.OrthoMatrix(((1, 1), (0, 1)))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cayley_is_orthogonal(n):
    A = ld.random_orthogonal(random.Random(n), n, "even")
    assert A.det() == 1


def test_random_lagrangian_contract():
    assert ld.parity(ld.random_lagrangian(0, 2, "even")) == "even"
    assert ld.type_of(ld.random_lagrangian(0, 3, "odd")).b % 2 == 1
    assert ld.random_lagrangian(5, 4, "odd") == ld.random_lagrangian(5, 4, "odd")
    with pytest.raises(ValueError):
        ld.random_lagrangian(0, 2, "both")


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("par", ["even", "odd"])
def test_type_invariants_on_random(n, par):
    for seed in range(30):
        t = ld.type_of(ld.random_lagrangian(seed, n, par))
        assert t.a + t.b <= n and (t.a + t.b - n) % 2 == 0
        assert t.parity == par


def test_random_even_threefold_lagrangians_are_generic():
    for seed in range(50):
        assert ld.type_of(ld.random_lagrangian(seed, 3, "even")) == DiracType(1, 0)


def test_even_circle_chart():
    assert ld.even2_from_chart((1, 0)) == Lagrangian(Subspace.V(2))
    assert ld.even2_from_chart((0, 1)) == Lagrangian(Subspace.Vstar(2))
    assert ld.even2_from_chart((1, 1)) == ld.graph_two_form([[0, 1], [-1, 0]])
    assert ld.even2_from_chart((1, Fraction(3, 2))) == ld.graph_two_form([[0, Fraction(3, 2)], [Fraction(-3, 2), 0]])
    assert EvenCircleCoord(2, 4) == EvenCircleCoord(1, 2)
    with pytest.raises(ValueError):
        EvenCircleCoord(0, 0)


def test_even_circle_chart_round_trip():
    rng = random.Random(3)
    for _ in range(50):
        p = EvenCircleCoord(rng.randint(-5, 5), rng.randint(1, 5)) if rng.random() < 0.9 else EvenCircleCoord(1, 0)
        assert ld.even2_chart(ld.even2_from_chart(p)) == p
    for seed in range(30):
        L = ld.random_lagrangian(seed, 2, "even")
        assert ld.even2_from_chart(ld.even2_chart(L)) == L
    with pytest.raises(ValueError):
        ld.even2_chart(L2([1, 0, 0, 0], [0, 0, 0, 1]))


def test_odd_circle_chart():
    assert ld.odd2_from_line(Subspace.of_vectors(2, [[1, 0]])) == L2([1, 0, 0, 0], [0, 0, 0, 1])
    assert ld.odd2_from_line(Subspace.of_vectors(2, [[0, 1]])) == L2([0, 1, 0, 0], [0, 0, 1, 0])
    rng = random.Random(11)
    for _ in range(50):
        v = [rng.randint(-4, 4), rng.randint(-4, 4)]
        if v == [0, 0]:
            continue
        line = Subspace.of_vectors(2, [v])
        L = ld.odd2_from_line(line)
        assert ld.type_of(L) == DiracType(1, 1)
        assert ld.odd2_line(L) == line
    with pytest.raises(ValueError):
        ld.odd2_line(Lagrangian(Subspace.V(2)))


def test_chart3_examples():
    (c,) = ld.chart3(Lagrangian(Subspace.V(3)))
    assert isinstance(c, ld.FormChart) and all(x == 0 for r in c.eps for x in r)
    codelta = Subspace.of_covectors(3, [[1, 0, 0], [0, 1, 0]])
    L = ld.from_codelta_pi(ld.BivectorOnCosubspace(codelta, [[0, 0], [0, 0]]))
    assert ld.type_of(L) == DiracType(1, 2)
    (c,) = ld.chart3(L)
    assert isinstance(c, ld.PoissonChart) and c.codelta == codelta
    g = ld.graph_two_form([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    charts = ld.chart3(g)
    assert {type(c) for c in charts} == {ld.FormChart, ld.PoissonChart}
    for c in charts:
        assert c.to_lagrangian() == g


def test_chart3_odd_side():
    g = ld.graph_bivector([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    assert ld.type_of(g) == DiracType(0, 1)
    charts = ld.chart3(g)
    assert {type(c) for c in charts} == {ld.BivectorChart, ld.FoliatedFormChart}
    for c in charts:
        assert c.to_lagrangian() == g
    for seed in range(20):
        L = ld.random_lagrangian(seed, 3, "odd")
        assert all(c.to_lagrangian() == L for c in ld.chart3(L))


def test_paired_space_format():
    sp = ld.PairedSpace(2)
    assert sp.format([1, 0, 0, 1]) == "∂x + dy"
