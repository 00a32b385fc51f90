"""Bifurcation and degeneracy curve detection in parameter planes."""

import numpy as np
import pytest

from spinscape import (
    PlaneSpec,
    ReducedParams,
    SpinSystem,
    classify_cell_edges,
    sweep_crossings,
)

S5 = SpinSystem(10)


def _rp(r1=0.0, r2=0.0, r3=-0.679, r4=0.00076, r5=0.01):
    return ReducedParams(r1=r1, r2=r2, r3=r3, r4=r4, r5=r5, system=S5)


def test_longitudinal_sweep_reference_values():
    """Zero transverse field: wells die at -/+3.136 and swap at 0."""
    res = sweep_crossings(_rp(r1=0.0), "bz", (-4.0, 4.0))
    assert len(res.bifurcation_values) == 2
    lo, hi = res.bifurcation_values
    assert abs(lo + 3.136) < 0.02
    assert abs(hi - 3.136) < 0.02
    assert abs(lo + hi) < 5e-3  # symmetric pair
    assert len(res.maxwell_values) == 1
    assert abs(res.maxwell_values[0]) < 0.02


def test_transverse_field_shifts_degeneracy_point():
    res = sweep_crossings(_rp(r1=2.0), "bz", (-1.0, 1.0))
    assert len(res.maxwell_values) == 1
    assert abs(res.maxwell_values[0] - 0.09) < 0.02
    assert len(res.bifurcation_values) == 2
    assert abs(res.bifurcation_values[0] - (-0.455)) < 0.02
    assert abs(res.bifurcation_values[1] - 0.493) < 0.02


def test_sweep_deterministic():
    a = sweep_crossings(_rp(r1=2.0), "bz", (-1.0, 1.0))
    b = sweep_crossings(_rp(r1=2.0), "bz", (-1.0, 1.0))
    assert a.bifurcation_values == b.bifurcation_values
    assert a.maxwell_values == b.maxwell_values


def test_sweep_refinement_tolerance():
    coarse = sweep_crossings(_rp(r1=0.0), "bz", (-4.0, 4.0), refine_to=1e-2)
    fine = sweep_crossings(_rp(r1=0.0), "bz", (-4.0, 4.0), refine_to=1e-5)
    for c, f in zip(coarse.bifurcation_values, fine.bifurcation_values):
        assert abs(c - f) < 2e-2


def test_easy_plane_regime_stays_quiet():
    # r3 > 0 puts the minimum on an equatorial ring. Its two in-plane
    # slices are exactly degenerate for every bz, which must not be
    # reported as a wall of degeneracy crossings; the only real event
    # is the polar maxima swapping at bz = 0.
    rp = ReducedParams(r1=0.0, r2=0.0, r3=0.5, r4=0.0, r5=0.0, system=S5)
    res = sweep_crossings(rp, "bz", (-1.0, 1.0), samples=101)
    assert res.bifurcation_values == ()
    assert res.maxwell_values == ()
    assert res.maxwell_maxima_values == (0.0,)


def test_sweep_mirror_symmetry_without_trigonal_term():
    # with r5 = 0 the potential is even in bz, so the two bifurcation
    # values are opposite and the degeneracy sits at bz = 0 exactly
    rp = _rp(r1=2.0, r5=0.0)
    res = sweep_crossings(rp, "bz", (-1.0, 1.0), refine_to=1e-5)
    assert len(res.bifurcation_values) == 2
    assert abs(res.bifurcation_values[0] + res.bifurcation_values[1]) < 2e-5
    assert len(res.maxwell_values) == 1
    assert abs(res.maxwell_values[0]) < 1e-5


def test_sweep_other_axes():
    # sweeping the quadratic coefficient through its sign change from a
    # double well (negative) to a single well (positive) crosses one
    # bifurcation
    rp = ReducedParams(r1=0.5, r2=0.0, r3=0.0, r4=0.0, r5=0.0, system=S5)
    res = sweep_crossings(rp, "r3", (-1.0, 1.0), samples=201)
    assert len(res.bifurcation_values) >= 1


def test_sweep_input_validation():
    with pytest.raises(ValueError):
        sweep_crossings(_rp(), "r9", (-1.0, 1.0))
    with pytest.raises(ValueError):
        sweep_crossings(_rp(), "bz", (1.0, -1.0))
    with pytest.raises(ValueError):
        sweep_crossings(_rp(), "bz", (-1.0, 1.0), samples=1)


def test_plane_spec_validation():
    with pytest.raises(ValueError):
        PlaneSpec("bz", "bz", (-1, 1), (0, 3), 32, _rp())
    with pytest.raises(ValueError):
        PlaneSpec("bz", "bx", (1, -1), (0, 3), 32, _rp())
    with pytest.raises(ValueError):
        PlaneSpec("bz", "bx", (-1, 1), (0, 3), 8, _rp())
    spec = PlaneSpec("bz", "bx", (-1, 1), (0, 3), (20, 30), _rp())
    assert spec.shape == (20, 30)
    ax1, ax2 = spec.axes()
    assert ax1.size == 20 and ax2.size == 30
    assert ax1[0] == -1.0 and ax1[-1] == 1.0


def test_plane_curves_land_inside_window_and_match_sweep():
    plane = PlaneSpec(
        axis1="bz", axis2="bx",
        range1=(-0.8, 0.8), range2=(1.6, 2.4),
        resolution=(24, 16), fixed=_rp(),
    )
    result = classify_cell_edges(plane)

    bif = result.points("bifurcation")
    mx = result.points("maxwell_minima")
    assert bif.shape[0] > 0
    assert mx.shape[0] > 0
    for pts in (bif, mx):
        assert np.all(pts[:, 0] >= -0.8) and np.all(pts[:, 0] <= 0.8)
        assert np.all(pts[:, 1] >= 1.6) and np.all(pts[:, 1] <= 2.4)

    # the plane's curves at bx = 2.0 should agree with a 1d sweep there
    ref = sweep_crossings(_rp(r1=2.0), "bz", (-0.8, 0.8))
    row = bif[np.abs(bif[:, 1] - 2.0) < 0.06]
    assert row.shape[0] > 0
    for target in ref.bifurcation_values:
        assert np.min(np.abs(row[:, 0] - target)) < 0.08

    row_mx = mx[np.abs(mx[:, 1] - 2.0) < 0.06]
    assert row_mx.shape[0] > 0
    assert np.min(np.abs(row_mx[:, 0] - ref.maxwell_values[0])) < 0.08


def test_plane_polylines_are_chains():
    plane = PlaneSpec(
        axis1="bz", axis2="bx",
        range1=(-0.8, 0.8), range2=(1.6, 2.4),
        resolution=(20, 16), fixed=_rp(),
    )
    result = classify_cell_edges(plane)
    cell1 = 1.6 / 19
    cell2 = 0.8 / 15
    step = 2.0 * np.hypot(cell1, cell2)
    for lines in (result.bifurcation, result.maxwell_minima):
        assert lines, "expected at least one polyline"
        for line in lines:
            assert line.ndim == 2 and line.shape[1] == 2
            assert line.shape[0] >= 1
            if line.shape[0] > 1:
                gaps = np.hypot(np.diff(line[:, 0]), np.diff(line[:, 1]))
                assert np.max(gaps) <= step + 1e-12


def test_points_empty_kind():
    plane = PlaneSpec(
        axis1="bz", axis2="bx",
        range1=(-0.5, 0.5), range2=(0.1, 0.5),
        resolution=16, fixed=ReducedParams(0, 0, 0.5, 0, 0, S5),
    )
    result = classify_cell_edges(plane)
    assert result.points("bifurcation").shape == (0, 2)
    assert result.points("maxwell_minima").shape == (0, 2)
