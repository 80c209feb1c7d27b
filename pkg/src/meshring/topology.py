"""2-D chip meshes with rectangular failed regions.

A mesh is a width x height grid of chips without wraparound links. Failures
are modeled as whole rectangular blocks of dead chips. Everything here is
immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple


class Coord(NamedTuple):
    """Grid position, 0-based. x runs along the width, y along the height."""

    x: int
    y: int

    def __repr__(self) -> str:
        return f"({self.x},{self.y})"


class MeshConfig(NamedTuple):
    width: int
    height: int


@dataclass(frozen=True)
class FailedRegion:
    """Axis-aligned rectangle of dead chips, anchored at its top-left corner."""

    origin: Coord
    width: int
    height: int

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError(f"region must be at least 1x1, got {self.width}x{self.height}")

    @property
    def x(self) -> int:
        return self.origin.x

    @property
    def y(self) -> int:
        return self.origin.y

    @property
    def area(self) -> int:
        return self.width * self.height

    def cells(self) -> Iterator[Coord]:
        for y in range(self.y, self.y + self.height):
            for x in range(self.x, self.x + self.width):
                yield Coord(x, y)

    def contains(self, c: Coord) -> bool:
        return self.x <= c.x < self.x + self.width and self.y <= c.y < self.y + self.height

    def columns(self) -> range:
        return range(self.x, self.x + self.width)

    def rows(self) -> range:
        return range(self.y, self.y + self.height)

    def __str__(self) -> str:
        return f"{self.width}x{self.height}@{self.x},{self.y}"


@dataclass(frozen=True)
class RegionClass:
    """Which schemes a failed region shape is eligible for."""

    supports_1d: bool
    supports_ft_2d: bool
    reason: str


@dataclass(frozen=True)
class Mesh:
    """A mesh with its failed regions and the derived set of alive chips."""

    config: MeshConfig
    failed_regions: tuple[FailedRegion, ...]
    alive: frozenset[Coord] = field(init=False, repr=False)
    failed: frozenset[Coord] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        dead: set[Coord] = set()
        for region in self.failed_regions:
            dead.update(region.cells())
        w, h = self.config
        live = frozenset(Coord(x, y) for y in range(h) for x in range(w)) - dead
        object.__setattr__(self, "failed", frozenset(dead))
        object.__setattr__(self, "alive", live)

    @property
    def width(self) -> int:
        return self.config.width

    @property
    def height(self) -> int:
        return self.config.height

    def in_bounds(self, c: Coord) -> bool:
        return 0 <= c.x < self.width and 0 <= c.y < self.height

    def is_alive(self, c: Coord) -> bool:
        return self.in_bounds(c) and c not in self.failed

    def alive_sorted(self) -> list[Coord]:
        return sorted(self.alive, key=lambda c: (c.y, c.x))

    def single_region(self) -> FailedRegion:
        """The one failed region, for schemes restricted to a single hole."""
        if len(self.failed_regions) != 1:
            raise ValueError(
                f"scheme supports exactly one failed region, mesh has {len(self.failed_regions)}"
            )
        return self.failed_regions[0]


def build_mesh(config: MeshConfig, regions: list[FailedRegion] | tuple[FailedRegion, ...] = ()) -> Mesh:
    """Validate the failed regions against the grid and derive the alive set.

    Regions must lie inside the mesh and be pairwise disjoint; violations are
    reported with the index of the offending region.
    """
    if config.width < 1 or config.height < 1:
        raise ValueError(f"mesh must be at least 1x1, got {config.width}x{config.height}")
    seen: set[Coord] = set()
    for i, region in enumerate(regions):
        if (
            region.x < 0
            or region.y < 0
            or region.x + region.width > config.width
            or region.y + region.height > config.height
        ):
            raise ValueError(f"region {i} ({region}) extends outside the {config.width}x{config.height} mesh")
        cells = set(region.cells())
        overlap = seen & cells
        if overlap:
            raise ValueError(f"region {i} ({region}) overlaps an earlier region at {sorted(overlap)[0]}")
        seen |= cells
    return Mesh(config=config, failed_regions=tuple(regions))


def classify_region(config: MeshConfig, region: FailedRegion) -> RegionClass:
    """Check a region's shape and alignment against each scheme's rules.

    The 1-D ring survives any even-sized block anchored on even rows and
    columns. The 2-D forwarding scheme additionally needs the block to be two
    chips thick in one dimension (2kx2 or 2x2k).
    """
    problems_1d: list[str] = []
    if region.width % 2 or region.height % 2:
        problems_1d.append(f"size {region.width}x{region.height} is not even in both dimensions")
    if region.x % 2 or region.y % 2:
        problems_1d.append(f"origin ({region.x},{region.y}) is not on an even row and column")
    supports_1d = not problems_1d

    thin = region.width == 2 or region.height == 2
    supports_ft_2d = supports_1d and thin
    notes: list[str] = list(problems_1d)
    if supports_1d and not thin:
        notes.append(f"shape {region.width}x{region.height} is not 2kx2 or 2x2k")
    touches_edge = (
        region.x == 0
        or region.y == 0
        or region.x + region.width == config.width
        or region.y + region.height == config.height
    )
    if (supports_1d or supports_ft_2d) and touches_edge:
        notes.append("region touches the mesh boundary")
    reason = "; ".join(notes) if notes else "even-aligned even-sized region"
    return RegionClass(supports_1d=supports_1d, supports_ft_2d=supports_ft_2d, reason=reason)


_NEIGHBOR_OFFSETS = ((-1, 0), (1, 0), (0, -1), (0, 1))  # -x, +x, -y, +y


def neighbors(mesh: Mesh, c: Coord) -> list[Coord]:
    """Alive grid neighbors of an alive chip, in -x, +x, -y, +y order."""
    if not mesh.is_alive(c):
        raise ValueError(f"chip {c} is failed or outside the mesh")
    out = []
    for dx, dy in _NEIGHBOR_OFFSETS:
        n = Coord(c.x + dx, c.y + dy)
        if mesh.is_alive(n):
            out.append(n)
    return out
