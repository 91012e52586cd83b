import numpy as np
import pytest

from tweezerforge.pamol import (PaParameters, adiabatic_potentials,
                                block_half, model_potential)
from tweezerforge.pamol.hamiltonian import EH_MHZ, F2_HALF

PARAMS = PaParameters()
GRID = np.arange(10.0, 4000.0, 1.0)


@pytest.fixture(scope="module")
def curves():
    return adiabatic_potentials(PARAMS, GRID)


def test_six_curves_three_attractive(curves):
    assert len(curves) == 6
    assert [c.index for c in curves] == [1, 2, 3, 4, 5, 6]
    assert sum(c.attractive for c in curves) == 3
    assert [c.attractive for c in curves] == [True, True, True,
                                              False, False, False]


def test_asymptotes_reach_hyperfine_levels(curves):
    targets = [-PARAMS.A, 0.0, 0.0, 0.0, PARAMS.A / 2, PARAMS.A / 2]
    for c, t in zip(curves, targets):
        assert c.asymptote == pytest.approx(t, abs=1e-9)
        assert abs(c.V[-1] - t) < 0.1


def test_curve_labels(curves):
    omega = {c.index: c.abs_omega for c in curves}
    assert omega == {1: 0.5, 2: 0.5, 3: 1.5, 4: 0.5, 5: 1.5, 6: 0.5}
    f2 = {c.index: c.f2_channel for c in curves}
    assert f2 == {1: 2.75, 2: 1.75, 3: 3.75, 4: 1.75, 5: 3.75, 6: 2.75}


def test_same_block_curves_never_cross(curves):
    by_block = {}
    for c in curves:
        by_block.setdefault(c.block, []).append(c)
    for group in by_block.values():
        group.sort(key=lambda c: c.block_index)
        for lo, hi in zip(group, group[1:]):
            assert np.all(hi.V - lo.V >= -1e-12)


def test_coarse_grid_rejected_with_diagnostic():
    with pytest.raises(ValueError, match="too coarse"):
        adiabatic_potentials(PARAMS, np.array([10.0, 500.0, 4000.0]))


def test_grid_validation():
    with pytest.raises(ValueError):
        adiabatic_potentials(PARAMS, np.array([-5.0, 10.0, 20.0]))
    with pytest.raises(ValueError):
        adiabatic_potentials(PARAMS, np.array([10.0, 10.0, 20.0]))
    with pytest.raises(ValueError):
        adiabatic_potentials(PARAMS, np.array([10.0]))


def test_doubling_d2_doubles_hyperfine_free_curves():
    grid = np.arange(10.0, 200.0, 0.5)
    c1 = adiabatic_potentials(PaParameters(A=0.0), grid)
    c2 = adiabatic_potentials(PaParameters(A=0.0, d2=2 * PARAMS.d2), grid)
    for a, b in zip(c1, c2):
        assert np.allclose(b.V, 2.0 * a.V, rtol=1e-10, atol=1e-10)


def test_model_potential_rejects_out_of_range(curves):
    vm = model_potential(curves[1], 0.5, PARAMS)
    with pytest.raises(ValueError):
        vm(5.0)
    with pytest.raises(ValueError):
        vm(np.array([100.0, 5000.0]))


def test_model_potential_wall_is_repulsive():
    # the R^-12 term crosses the R^-6 one at (C12/C6)^(1/6) = 8.55 a0
    grid = np.arange(5.0, 60.0, 0.05)
    c2 = adiabatic_potentials(PARAMS, grid)[1]
    vm = model_potential(c2, 0.5, PARAMS)
    assert vm(5.0) > 0.0
    assert vm(8.0) > 0.0
    assert vm(10.0) < 0.0
    r = grid[:-1]
    r_min = r[np.argmin(vm(r))]
    assert r_min == pytest.approx((2 * PARAMS.C12 / PARAMS.C6) ** (1 / 6),
                                  abs=0.05)


def test_dispersion_only_tail_ratio():
    # vanishing exchange and a zero centrifugal weight isolate -C6/R^6
    p = PaParameters(A=0.0, d2=1e-12, retardation=False)
    grid = np.arange(10.0, 100.0, 0.2)
    cs = adiabatic_potentials(p, grid)
    vm = model_potential(cs[1], Te=0.0, params=p, f2=0.5)
    r = np.array([80.0, 90.0, 99.0])
    ratio = vm(r) / (-p.C6 / r ** 6 * EH_MHZ)
    assert np.all(np.abs(ratio - 1.0) < 0.01)


def test_curve2_tail_falls_as_inverse_sixth_power():
    # second-order exchange: slope of log|V| vs log R near -6
    p = PaParameters(retardation=False)
    grid = np.arange(10.0, 1000.0, 0.5)
    c2 = adiabatic_potentials(p, grid)[1]
    mask = (c2.R_grid >= 400.0) & (c2.R_grid <= 800.0)
    slope = np.polyfit(np.log(c2.R_grid[mask]),
                       np.log(-c2.V[mask]), 1)[0]
    assert slope == pytest.approx(-6.0, abs=0.05)


def test_f2_modes(curves):
    c2 = curves[1]
    v_default = model_potential(c2, 0.5, PARAMS)
    v_const = model_potential(c2, 0.5, PARAMS, f2=c2.f2_channel)
    r = np.array([20.0, 200.0, 2000.0])
    assert np.allclose(v_default(r), v_const(r), rtol=0.0, atol=1e-12)
    v_ad = model_potential(c2, 0.5, PARAMS, f2="adiabatic")
    out = v_ad(r)
    assert np.all(np.isfinite(out))
    # adiabatic <F^2> drifts away from the short-range channel value
    assert not np.allclose(out, v_default(r), atol=1e-9)


def test_adiabatic_f2_approaches_channel_value_at_short_range():
    # residual hyperfine admixture scales with A/(exchange coupling)
    f2 = []
    for r in (10.0, 5.0, 2.5):
        _, vecs = block_half(np.array([r]), PARAMS)
        vec = vecs[0, :, 1]   # curve 2 column
        f2.append(vec @ F2_HALF @ vec)
    assert f2[0] == pytest.approx(1.75, abs=0.01)
    assert f2[2] == pytest.approx(1.75, abs=1e-4)
    assert abs(f2[2] - 1.75) < abs(f2[1] - 1.75) < abs(f2[0] - 1.75)
