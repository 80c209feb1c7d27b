"""Dimension-order and route-around path computation, plus deadlock checking.

Routes resolve the X offset before the Y offset. When a failed region blocks
a leg, the path takes a minimal rectangular detour just past the region
boundary and then resumes dimension order. Deadlock safety of a route set is
checked on the channel dependency graph over directed physical links.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .topology import Coord, FailedRegion, Mesh


class BlockedRouteError(ValueError):
    """Dimension-order path hits a failed chip; carries the first blocked hop."""

    def __init__(self, blocked: Coord):
        super().__init__(f"dimension-order path blocked at failed chip {blocked}")
        self.blocked = blocked


class Link(NamedTuple):
    """One directed physical link between grid neighbors."""

    src: Coord
    dst: Coord

    @property
    def direction(self) -> str:
        dx, dy = self.dst.x - self.src.x, self.dst.y - self.src.y
        if (dx, dy) == (1, 0):
            return "+x"
        if (dx, dy) == (-1, 0):
            return "-x"
        if (dx, dy) == (0, 1):
            return "+y"
        if (dx, dy) == (0, -1):
            return "-y"
        raise ValueError(f"{self.src}->{self.dst} is not a unit grid hop")


@dataclass(frozen=True)
class Route:
    """Simple directed path of links between two alive chips."""

    src: Coord
    dst: Coord
    links: tuple[Link, ...]

    @property
    def length(self) -> int:
        return len(self.links)

    def cells(self) -> list[Coord]:
        return [self.src] + [link.dst for link in self.links]

    def reversed(self) -> "Route":
        rev = tuple(Link(l.dst, l.src) for l in reversed(self.links))
        return Route(src=self.dst, dst=self.src, links=rev)


def route_from_cells(cells: Sequence[Coord]) -> Route:
    """Build a route from a chip path, validating hop adjacency and simplicity."""
    if not cells:
        raise ValueError("route needs at least one cell")
    if len(set(cells)) != len(cells):
        raise ValueError(f"route visits a chip twice: {cells}")
    links = []
    for a, b in zip(cells, cells[1:]):
        link = Link(a, b)
        link.direction  # adjacency check
        links.append(link)
    return Route(src=cells[0], dst=cells[-1], links=tuple(links))


@dataclass(frozen=True)
class CycleReport:
    acyclic: bool
    witness_cycle: tuple[Link, ...] | None = None


def _span(a: int, b: int) -> range:
    """Open walk from a towards b, excluding a."""
    if a <= b:
        return range(a + 1, b + 1)
    return range(a - 1, b - 1, -1)


def manhattan(a: Coord, b: Coord) -> int:
    return abs(a.x - b.x) + abs(a.y - b.y)


def dimension_order_route(mesh: Mesh, src: Coord, dst: Coord) -> Route:
    """X-then-Y route; raises BlockedRouteError at the first dead chip on it."""
    for endpoint in (src, dst):
        if not mesh.is_alive(endpoint):
            raise ValueError(f"route endpoint {endpoint} is failed or outside the mesh")
    cells = [src]
    for x in _span(src.x, dst.x):
        cells.append(Coord(x, src.y))
    for y in _span(src.y, dst.y):
        cells.append(Coord(dst.x, y))
    for c in cells:
        if not mesh.is_alive(c):
            raise BlockedRouteError(c)
    return route_from_cells(cells)


def _blocking_region(mesh: Mesh, cell: Coord) -> FailedRegion:
    for region in mesh.failed_regions:
        if region.contains(cell):
            return region
    raise AssertionError(f"{cell} reported blocked but is in no failed region")


def _detour_rows(mesh: Mesh, region: FailedRegion, y: int) -> int:
    """Detour row for an X leg travelling in row y, minimal clearance first."""
    above, below = region.y - 1, region.y + region.height
    candidates = []
    if above >= 0:
        candidates.append((y - above, above))
    if below < mesh.height:
        candidates.append((below - y, below))
    assert candidates, "region spans the full mesh height; no horizontal path exists"
    candidates.sort()  # ties resolve to the smaller row index (above)
    return candidates[0][1]


def _detour_cols(mesh: Mesh, region: FailedRegion, x: int) -> int:
    left, right = region.x - 1, region.x + region.width
    candidates = []
    if left >= 0:
        candidates.append((x - left, left))
    if right < mesh.width:
        candidates.append((right - x, right))
    assert candidates, "region spans the full mesh width; no vertical path exists"
    candidates.sort()
    return candidates[0][1]


def route_around(mesh: Mesh, src: Coord, dst: Coord) -> Route:
    """Dimension-order route that detours around the failed region when blocked.

    Unblocked paths come back unchanged. A blocked leg sidesteps to the first
    row or column past the region (the nearer side; ties go to the smaller
    index), runs past the region, and rejoins the original line. Each detour
    keeps progress in the travel dimension monotone and costs two extra hops
    per sidestep row/column.
    """
    if len(mesh.failed_regions) > 1:
        raise ValueError("route_around supports at most one failed region")
    for endpoint in (src, dst):
        if not mesh.is_alive(endpoint):
            raise ValueError(f"route endpoint {endpoint} is failed or outside the mesh")

    cells = [src]

    def walk_x(frm: Coord, to_x: int) -> Coord:
        cur = frm
        for x in _span(frm.x, to_x):
            nxt = Coord(x, frm.y)
            if mesh.is_alive(nxt):
                cells.append(nxt)
                cur = nxt
                continue
            region = _blocking_region(mesh, nxt)
            dy = _detour_rows(mesh, region, frm.y)
            exit_x = region.x + region.width if to_x > frm.x else region.x - 1
            for y in _span(cur.y, dy):
                cells.append(Coord(cur.x, y))
            for xx in _span(cur.x, exit_x):
                cells.append(Coord(xx, dy))
            for y in _span(dy, frm.y):
                cells.append(Coord(exit_x, y))
            cur = Coord(exit_x, frm.y)
            return walk_x(cur, to_x)
        return cur

    def walk_y(frm: Coord, to_y: int) -> Coord:
        cur = frm
        for y in _span(frm.y, to_y):
            nxt = Coord(frm.x, y)
            if mesh.is_alive(nxt):
                cells.append(nxt)
                cur = nxt
                continue
            region = _blocking_region(mesh, nxt)
            dx = _detour_cols(mesh, region, frm.x)
            exit_y = region.y + region.height if to_y > frm.y else region.y - 1
            for x in _span(cur.x, dx):
                cells.append(Coord(x, cur.y))
            for yy in _span(cur.y, exit_y):
                cells.append(Coord(dx, yy))
            for x in _span(dx, frm.x):
                cells.append(Coord(x, exit_y))
            cur = Coord(frm.x, exit_y)
            return walk_y(cur, to_y)
        return cur

    mid = walk_x(src, dst.x)
    walk_y(mid, dst.y)
    assert cells[-1] == dst
    return route_from_cells(cells)


def check_cycle_free(routes: Iterable[Route]) -> CycleReport:
    """Build the channel dependency graph of the routes and test acyclicity.

    Nodes are directed links; an edge A->B means some route crosses link A
    immediately before link B. A cycle in this graph is the deadlock
    condition that would force extra virtual channels.
    """
    deps: dict[Link, set[Link]] = {}
    for route in routes:
        for a, b in zip(route.links, route.links[1:]):
            deps.setdefault(a, set()).add(b)
            deps.setdefault(b, set())

    WHITE, GRAY, BLACK = 0, 1, 2
    state = {node: WHITE for node in deps}
    for root in sorted(deps):
        if state[root] != WHITE:
            continue
        stack: list[tuple[Link, Iterator]] = [(root, iter(sorted(deps[root])))]
        path = [root]
        state[root] = GRAY
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if state[nxt] == GRAY:
                    start = path.index(nxt)
                    return CycleReport(acyclic=False, witness_cycle=tuple(path[start:]))
                if state[nxt] == WHITE:
                    state[nxt] = GRAY
                    path.append(nxt)
                    stack.append((nxt, iter(sorted(deps[nxt]))))
                    advanced = True
                    break
            if not advanced:
                state[node] = BLACK
                path.pop()
                stack.pop()
    return CycleReport(acyclic=True, witness_cycle=None)
