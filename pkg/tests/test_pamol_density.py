import pytest

from tweezerforge.pamol import lb_density_ratio, lb_level_density


def test_linewidth_ratio_30_gives_two_thirds_power():
    assert lb_density_ratio(30.0, 1.0) == 30.0 ** (2.0 / 3.0)
    assert lb_density_ratio(30.0, 1.0) == pytest.approx(9.65, abs=0.01)


def test_equal_linewidths_ratio_one():
    assert lb_density_ratio(0.182, 0.182) == 1.0


def test_ratio_eight_gives_four():
    assert lb_density_ratio(8.0, 1.0) == pytest.approx(4.0, rel=1e-12)


def test_density_consistent_with_ratio():
    g1, g2 = 5.5, 0.7
    assert lb_level_density(g1) / lb_level_density(g2) == \
        pytest.approx(lb_density_ratio(g1, g2), rel=1e-12)


def test_scaling_modes():
    assert lb_density_ratio(8.0, 1.0, "linear") == pytest.approx(8.0 ** 0.5)
    assert lb_density_ratio(8.0, 1.0, "fixed") == pytest.approx(2.0, rel=1e-12)
    with pytest.raises(ValueError):
        lb_level_density(1.0, "cubic")
    with pytest.raises(ValueError):
        lb_density_ratio(1.0, 2.0, "cubic")


def test_positive_linewidth_required():
    with pytest.raises(ValueError):
        lb_level_density(0.0)
    with pytest.raises(ValueError):
        lb_density_ratio(-1.0, 2.0)
