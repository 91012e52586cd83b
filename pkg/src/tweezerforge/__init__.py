"""tweezerforge: simulation and analysis toolkit for dual-isotope tweezer arrays."""

__version__ = "0.1.0"
