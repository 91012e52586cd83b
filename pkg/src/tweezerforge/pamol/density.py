"""Near-dissociation level-density scaling with the transition linewidth.

For an R^-n long-range tail the semiclassical near-dissociation spacing obeys
d|E|/dv ~ |E|^((n+2)/(2n)) * Cn^(-1/n) / sqrt(mu). With n = 6, detunings
measured in linewidths (E = x*Gamma) and a tail coefficient scaling as
Gamma^p, the number of levels per linewidth scales as Gamma^(1/3 + p/6).

The exchange-mediated tail of a heteronuclear pair is second order in the
dipole coupling, so its effective C6 grows as Gamma^2 and the density per
linewidth as Gamma^(2/3).
"""

_EXPONENTS = {
    "quadratic": 2.0 / 3.0,   # effective C6 ~ Gamma^2 (second-order exchange)
    "linear": 0.5,            # C6 ~ Gamma
    "fixed": 1.0 / 3.0,       # C6 independent of Gamma
}


def lb_level_density(gamma, c6_scaling_mode="quadratic"):
    """Relative bound-state density per linewidth, up to a common norm."""
    if gamma <= 0.0:
        raise ValueError("gamma must be positive")
    try:
        p = _EXPONENTS[c6_scaling_mode]
    except KeyError:
        raise ValueError(f"unknown C6 scaling mode {c6_scaling_mode!r}") from None
    return gamma ** p


def lb_density_ratio(gamma_a, gamma_b, c6_scaling_mode="quadratic"):
    """Density ratio between two species with linewidths gamma_a, gamma_b."""
    if gamma_a <= 0.0 or gamma_b <= 0.0:
        raise ValueError("linewidths must be positive")
    p = _EXPONENTS.get(c6_scaling_mode)
    if p is None:
        raise ValueError(f"unknown C6 scaling mode {c6_scaling_mode!r}")
    return (gamma_a / gamma_b) ** p
