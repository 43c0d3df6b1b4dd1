from __future__ import annotations

from fractions import Fraction

import pytest

from dirac.diracfield import FrameError, build_frame, courant_tensor, frame_from_rows, is_dirac
from dirac.symcalc import AffineDomain, GSection, KForm, TorusDomain, parse_scalar

R2, R3, T2 = AffineDomain(2), AffineDomain(3), TorusDomain(2)


def rows(dom, *texts):
    return [[parse_scalar(t, dom) for t in r] for r in texts]


def graph_frame(dom, wxy="0", wxz="0", wyz="0"):
    """Frame ∂_i + omega(∂_i, .) of a 2-form on R^3."""
    return frame_from_rows(
        dom,
        rows(dom, ["1", "0", "0", "0", wxy, wxz], ["0", "1", "0", f"-({wxy})", "0", wyz], ["0", "0", "1", f"-({wxz})", f"-({wyz})", "0"]),
    )


def test_graph_frame_on_plane_is_valid():
    F = frame_from_rows(R2, rows(R2, ["1", "0", "0", "1"], ["0", "1", "-1", "0"]))
    assert F.parity == "even"
    assert is_dirac(F)


def test_non_isotropic_rejected():
    with pytest.raises(FrameError) as info:
        frame_from_rows(R2, rows(R2, ["1", "0", "1", "0"], ["0", "1", "0", "0"]))
    assert info.value.reason == "isotropy"
    assert info.value.sections == (0, 0)


def test_half_angle_torus_frame_is_twisted():
    F = frame_from_rows(T2, rows(T2, ["cos(x/2)", "0", "0", "sin(x/2)"], ["0", "cos(x/2)", "-sin(x/2)", "0"]))
    assert F.twists == ((1, 0), (1, 0))


def test_periodicity_violation():
    with pytest.raises(FrameError) as info:
        frame_from_rows(T2, rows(T2, ["cos(x/2)", "0", "0", "sin(x)"], ["0", "cos(x/2)", "-sin(x)", "0"]))
    assert info.value.reason in ("periodicity", "isotropy")


def test_rank_drop_reports_point():
    with pytest.raises(FrameError) as info:
        frame_from_rows(R2, rows(R2, ["x - 1", "0", "0", "0"], ["0", "0", "0", "1"]))
    assert info.value.reason == "rank"
    assert info.value.point is not None


def test_wrong_section_count():
    with pytest.raises(FrameError) as info:
        build_frame(R3, [GSection.from_lists(R3, [parse_scalar("1", R3)] * 3, [parse_scalar("0", R3)] * 3)])
    assert info.value.reason == "shape"


def test_courant_tensor_of_constant_graph_vanishes():
    F = graph_frame(R3, wxy="1")
    T = courant_tensor(F)
    assert all(t.is_zero for plane in T for r in plane for t in r)
    assert is_dirac(F)


def test_courant_tensor_is_half_of_d_omega():
    # graph(z dx∧dy): d omega = dx∧dy∧dz and <[e_i, e_j], e_k> = d omega(X_i, X_j, X_k) / 2
    F = graph_frame(R3, wxy="z")
    T = courant_tensor(F)
    domega = KForm(R3, 3, {(0, 1, 2): parse_scalar("1", R3)})
    X = [s.vf for s in F.sections]
    for i in range(3):
        for j in range(3):
            for k in range(3):
                assert T[i][j][k] * 2 == domega(X[i], X[j], X[k])
    assert T[0][1][2] == Fraction(1, 2)
    check = is_dirac(F)
    assert not check
    assert check.witness[:3] == (0, 1, 2)


def test_courant_tensor_antisymmetric():
    F = graph_frame(R3, wxy="x*z", wyz="y^2")
    T = courant_tensor(F)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                assert T[i][j][k] == -T[j][i][k]
