"""Core tile-assembly model: tiles, glues, strengths, assemblies.

Tiles are unit squares with a glue label on each edge, stored in the fixed
order (N, E, S, W).  Equal nonzero labels on facing edges bind with the
label's strength; label 0 is inert and never matches anything, including
another 0.  A tile may attach to a growing assembly once the total strength
of its matched edges reaches the system temperature.

Lattice conventions used throughout the package:

* the seed sits at ``Site(0, 0)``;
* ``row`` increases in the direction the boundary column grows (up);
* ``col`` increases in the direction the boundary row grows, so a tile's
  E edge faces the site at ``(row, col - 1)`` and its W edge faces
  ``(row, col + 1)``.  Renderers mirror columns so the seed appears at the
  bottom-right of an output image.

Colors are 32-bit signed ARGB integers (two's complement), matching the
tile-file format's signed decimal color notation.

Tiles never rotate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

__all__ = [
    "EDGE_NAMES",
    "Assembly",
    "Site",
    "SystemValidationError",
    "TileSystem",
    "TileType",
    "attach_strength",
    "validate_system",
]

#: Edge index -> compass name, in storage order.
EDGE_NAMES = ("N", "E", "S", "W")

# Per direction: (own edge index, facing edge index of the neighbor,
# row delta, col delta).  E faces col-1, W faces col+1; see module docstring.
ADJACENCY = (
    (0, 2, 1, 0),   # N
    (1, 3, 0, -1),  # E
    (2, 0, -1, 0),  # S
    (3, 1, 0, 1),   # W
)


class Site(NamedTuple):
    """A lattice position."""

    row: int
    col: int


@dataclass(frozen=True)
class TileType:
    """A named unit square with four glue labels and a display color.

    ``label`` is presentation metadata only (the value written on the tile
    face); it is not serialized by the tile-file format and is excluded
    from equality.
    """

    id: int
    edges: tuple[int, int, int, int]  # (N, E, S, W) glue labels
    color: int  # signed 32-bit ARGB
    label: str = field(default="", compare=False)

    def edge(self, name: str) -> int:
        return self.edges[EDGE_NAMES.index(name)]


@dataclass(frozen=True)
class TileSystem:
    """A tile set plus glue strengths, seed tile and temperature.

    ``strengths[g - 1]`` is the strength of glue label ``g``; glue 0 has
    strength 0 by definition.  Tile ids are dense, 0-based, and equal to
    each tile's position in ``tiles``.  ``gse``/``gmc`` are inert
    pass-through metadata for kinetic simulators and play no role here.
    ``comments`` are display lines for the tile-file emitter: pairs of
    (tile index the comment precedes, comment text).
    """

    tiles: tuple[TileType, ...]
    strengths: tuple[int, ...]
    seed_id: int
    temperature: int
    gse: float | None = None
    gmc: float | None = None
    comments: tuple[tuple[int, str], ...] = ()

    def strength(self, glue: int) -> int:
        """Strength of a glue label; 0 for the null glue and unknown labels."""
        if glue <= 0 or glue > len(self.strengths):
            return 0
        return self.strengths[glue - 1]

    @property
    def num_glues(self) -> int:
        return len(self.strengths)

    def tile(self, tile_id: int) -> TileType:
        return self.tiles[tile_id]


class Assembly:
    """A partial placement of tiles on the lattice, grown from a seed.

    Maps occupied sites to tile ids.  Simulator-produced assemblies form a
    single 4-connected component containing ``seed_site``; ad-hoc instances
    built for local strength queries need not.
    """

    __slots__ = ("placed", "seed_site")

    def __init__(self, placed: dict[Site, int] | None = None,
                 seed_site: Site = Site(0, 0)):
        self.placed: dict[Site, int] = dict(placed) if placed else {}
        self.seed_site = seed_site

    @classmethod
    def seeded(cls, seed_id: int, seed_site: Site = Site(0, 0)) -> "Assembly":
        return cls({seed_site: seed_id}, seed_site)

    def __contains__(self, site: Site) -> bool:
        return site in self.placed

    def __len__(self) -> int:
        return len(self.placed)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Assembly):
            return NotImplemented
        return self.placed == other.placed and self.seed_site == other.seed_site

    def get(self, site: Site) -> int | None:
        return self.placed.get(site)

    def place(self, site: Site, tile_id: int) -> None:
        if site in self.placed:
            raise ValueError(f"site {site} already occupied")
        self.placed[site] = tile_id

    def sites(self) -> Iterable[Site]:
        return self.placed.keys()

    def bounds(self) -> tuple[int, int, int, int]:
        """(min_row, max_row, min_col, max_col) of the occupied sites."""
        if not self.placed:
            raise ValueError("empty assembly has no bounds")
        rows = [s.row for s in self.placed]
        cols = [s.col for s in self.placed]
        return min(rows), max(rows), min(cols), max(cols)

    def __repr__(self) -> str:
        return f"Assembly({len(self.placed)} tiles, seed at {tuple(self.seed_site)})"


def attach_strength(system: TileSystem, asm: Assembly, site: Site,
                    tile: TileType) -> int:
    """Total binding strength ``tile`` would have at ``site``.

    Sums the strengths of the edges whose glue label equals the facing
    glue of an occupied neighbor and is nonzero.  Mismatches, null glues
    and empty neighbors contribute nothing.

    Raises ValueError if ``site`` is already occupied.
    """
    if site in asm.placed:
        raise ValueError(f"site {tuple(site)} is already occupied")
    total = 0
    for own, facing, dr, dc in ADJACENCY:
        neighbor = asm.placed.get(Site(site.row + dr, site.col + dc))
        if neighbor is None:
            continue
        glue = tile.edges[own]
        if glue != 0 and glue == system.tiles[neighbor].edges[facing]:
            total += system.strength(glue)
    return total


def validate_system(system: TileSystem) -> list[str]:
    """Check a system's structural invariants; return a list of violations.

    An empty list means the system is valid.  Checked: duplicate or
    non-dense tile ids, a seed id that names no tile, a temperature below
    1, and tile edges whose nonzero glue has no strength entry.
    """
    problems: list[str] = []
    seen: set[int] = set()
    for pos, tile in enumerate(system.tiles):
        if tile.id in seen:
            problems.append(f"duplicate id {tile.id}")
        seen.add(tile.id)
        if tile.id != pos:
            problems.append(
                f"tile ids must be dense 0..{len(system.tiles) - 1}: "
                f"found id {tile.id} at position {pos}")
    if system.seed_id not in seen:
        problems.append(f"dangling seed: no tile has id {system.seed_id}")
    if system.temperature < 1:
        problems.append(f"temperature must be >= 1, got {system.temperature}")
    missing: set[int] = set()
    for tile in system.tiles:
        for glue in tile.edges:
            if glue < 0:
                problems.append(f"negative glue {glue} on tile {tile.id}")
            elif glue > len(system.strengths):
                missing.add(glue)
    for glue in sorted(missing):
        problems.append(f"missing strength entry for glue {glue}")
    for glue, s in enumerate(system.strengths, start=1):
        if s < 0:
            problems.append(f"negative strength for glue {glue}")
    return problems


class SystemValidationError(ValueError):
    """Raised when an operation requires a valid system but got violations."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("invalid tile system: " + "; ".join(self.violations))
