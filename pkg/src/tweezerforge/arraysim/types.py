"""Core data types for dual-species array loading and rearrangement."""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

# occupancy values
EMPTY, ISO1, ISO2, DUAL = 0, 1, 2, 3
# target designations
DONT_CARE, WANT1, WANT2 = 0, 1, 2

_OCC_CHARS = ".12D"
_TGT_CHARS = ".12"


@dataclass(frozen=True)
class ArrayGeometry:
    rows: int
    cols: int
    pitch: float = 5.0   # site spacing, um

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("rows and cols must be >= 1")
        if self.pitch <= 0.0:
            raise ValueError("pitch must be positive")

    @property
    def n_sites(self):
        return self.rows * self.cols

    def index(self, row, col):
        return row * self.cols + col

    def rc(self, index):
        return divmod(index, self.cols)

    def site_xy(self, index):
        r, c = self.rc(index)
        return c * self.pitch, r * self.pitch

    def centers(self):
        """(n_sites, 2) array of site center coordinates in um."""
        idx = np.arange(self.n_sites)
        r, c = np.divmod(idx, self.cols)
        return np.column_stack([c * self.pitch, r * self.pitch]).astype(float)


@dataclass
class ArrayState:
    geometry: ArrayGeometry
    occupancy: np.ndarray

    def __post_init__(self):
        self.occupancy = np.asarray(self.occupancy, dtype=np.int8)
        if self.occupancy.shape != (self.geometry.n_sites,):
            raise ValueError("occupancy length must equal rows*cols")

    def copy(self):
        return ArrayState(self.geometry, self.occupancy.copy())

    def count(self, value):
        return int(np.sum(self.occupancy == value))

    def to_text(self):
        g = self.geometry
        lines = []
        for r in range(g.rows):
            lines.append("".join(_OCC_CHARS[self.occupancy[g.index(r, c)]]
                                 for c in range(g.cols)))
        return "\n".join(lines)

    @staticmethod
    def from_text(text, pitch=5.0):
        lines = [ln for ln in text.strip().split("\n") if ln]
        rows = len(lines)
        cols = len(lines[0])
        if any(len(ln) != cols for ln in lines):
            raise ValueError("ragged grid text")
        geom = ArrayGeometry(rows, cols, pitch)
        occ = np.zeros(geom.n_sites, dtype=np.int8)
        for r, ln in enumerate(lines):
            for c, ch in enumerate(ln):
                try:
                    occ[geom.index(r, c)] = _OCC_CHARS.index(ch)
                except ValueError:
                    raise ValueError(f"bad occupancy char {ch!r}") from None
        return ArrayState(geom, occ)


@dataclass
class TargetPattern:
    geometry: ArrayGeometry
    designation: np.ndarray

    def __post_init__(self):
        self.designation = np.asarray(self.designation, dtype=np.int8)
        if self.designation.shape != (self.geometry.n_sites,):
            raise ValueError("designation length must equal rows*cols")

    def want_sites(self, species):
        return np.nonzero(self.designation == species)[0]

    def to_text(self):
        g = self.geometry
        return "\n".join(
            "".join(_TGT_CHARS[self.designation[g.index(r, c)]]
                    for c in range(g.cols))
            for r in range(g.rows))

    @staticmethod
    def from_text(text, pitch=5.0):
        lines = [ln for ln in text.strip().split("\n") if ln]
        rows, cols = len(lines), len(lines[0])
        if any(len(ln) != cols for ln in lines):
            raise ValueError("ragged grid text")
        geom = ArrayGeometry(rows, cols, pitch)
        des = np.zeros(geom.n_sites, dtype=np.int8)
        for r, ln in enumerate(lines):
            for c, ch in enumerate(ln):
                try:
                    des[geom.index(r, c)] = _TGT_CHARS.index(ch)
                except ValueError:
                    raise ValueError(f"bad target char {ch!r}") from None
        return TargetPattern(geom, des)


def checkerboard_target(geometry, size, origin=None):
    """size x size alternating two-species block, centered by default."""
    if size > geometry.rows or size > geometry.cols:
        raise ValueError("target block does not fit the geometry")
    if origin is None:
        origin = ((geometry.rows - size) // 2, (geometry.cols - size) // 2)
    r0, c0 = origin
    des = np.zeros(geometry.n_sites, dtype=np.int8)
    for r in range(size):
        for c in range(size):
            des[geometry.index(r0 + r, c0 + c)] = \
                WANT1 if (r + c) % 2 == 0 else WANT2
    return TargetPattern(geometry, des)


def stripe_target(geometry, size, origin=None):
    """size x size block of alternating single-species columns."""
    if size > geometry.rows or size > geometry.cols:
        raise ValueError("target block does not fit the geometry")
    if origin is None:
        origin = ((geometry.rows - size) // 2, (geometry.cols - size) // 2)
    r0, c0 = origin
    des = np.zeros(geometry.n_sites, dtype=np.int8)
    for r in range(size):
        for c in range(size):
            des[geometry.index(r0 + r, c0 + c)] = \
                WANT1 if c % 2 == 0 else WANT2
    return TargetPattern(geometry, des)


@dataclass(frozen=True)
class LoadingModel:
    p1: float
    p2: float
    p_dual: float = 0.0
    seed: Optional[int] = None

    def __post_init__(self):
        probs = (self.p1, self.p2, self.p_dual)
        if any(p < 0.0 or p > 1.0 for p in probs) or sum(probs) > 1.0:
            raise ValueError("probabilities must be in [0,1] with sum <= 1")


@dataclass(frozen=True)
class LossModel:
    mode: str = "ideal"               # "ideal" | "proximity"
    activation_radius: float = 1.0    # um
    p_loss_near: float = 1.0
    p_loss_transport: float = 0.0

    def __post_init__(self):
        if self.mode not in ("ideal", "proximity"):
            raise ValueError(f"unknown loss mode {self.mode!r}")
        if self.activation_radius < 0.0:
            raise ValueError("activation_radius must be >= 0")
        for p in (self.p_loss_near, self.p_loss_transport):
            if p < 0.0 or p > 1.0:
                raise ValueError("loss probabilities must be in [0,1]")


@dataclass
class Move:
    species: int                       # ISO1, ISO2 or DUAL (ejections)
    src: int
    dst: int                           # -1 for off-grid ejection
    path: List[Tuple[float, float]]
    batch_id: int = -1


# phase labels; Eject marks discard moves, the rest follow the fixed order
PHASES = ("Classify1", "PreSort1", "MainSort1",
          "Classify2", "PreSort2", "MainSort2", "Eject")


@dataclass
class MovePlan:
    moves: List[Move] = field(default_factory=list)
    phases: List[str] = field(default_factory=list)   # one label per move
    notes: List[str] = field(default_factory=list)

    def append(self, move, phase):
        if phase not in PHASES:
            raise ValueError(f"unknown phase {phase!r}")
        self.moves.append(move)
        self.phases.append(phase)

    def n_moves(self):
        return len(self.moves)

    def n_batches(self):
        return len({m.batch_id for m in self.moves}) if self.moves else 0

    def phase_sequence(self):
        """Distinct non-eject phase labels in first-appearance order."""
        seen = []
        for ph in self.phases:
            if ph != "Eject" and (not seen or seen[-1] != ph):
                seen.append(ph)
        return seen


class InfeasiblePlanError(ValueError):
    """Raised when a species cannot cover its targets; reports the gap."""

    def __init__(self, species, columns, deficit):
        self.species = species
        self.columns = list(columns)
        self.deficit = int(deficit)
        super().__init__(
            f"isotope {species}: {deficit} atom(s) short for target columns "
            f"{self.columns}")
