"""Construction of allreduce ring schedules on full and degraded meshes.

Five schemes are built here:

* ``OneD``        one serpentine Hamiltonian ring over the whole mesh.
* ``OneD_FT``     Hamiltonian ring threaded around an even-aligned hole.
* ``TwoColor``    two concurrent half-payload reductions with opposite
                  dimension orders (rows-then-columns vs columns-then-rows).
* ``RowPair``     one physical ring per pair of rows, then column-parity
                  lanes that skip rows.
* ``RowPair_FT``  row-pair rings on unaffected pairs (blue), small 2x2 rings
                  next to the hole (yellow) whose partial sums are forwarded
                  into the blue rings, and detoured column lanes.

A schedule is a pure description: ordered phases of rings plus forwarding
edges. Payload placement is symbolic (nested shard splits) so one schedule
serves any payload size.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .routing import Route, dimension_order_route, route_from_cells
from .topology import Coord, FailedRegion, Mesh, classify_region

REDUCE_SCATTER = "reduce_scatter"
ALL_GATHER = "all_gather"

SCHEME_ONED = "OneD"
SCHEME_ONED_FT = "OneD_FT"
SCHEME_TWO_COLOR = "TwoColor"
SCHEME_ROW_PAIR = "RowPair"
SCHEME_ROW_PAIR_FT = "RowPair_FT"

SCHEMES = (SCHEME_ONED, SCHEME_ONED_FT, SCHEME_TWO_COLOR, SCHEME_ROW_PAIR, SCHEME_ROW_PAIR_FT)


class SchemeError(ValueError):
    """Mesh or failed region is incompatible with the requested scheme."""


# A slice of the payload is described by a chain of (parts, index) splits
# applied to the full element range. Splits are uneven-aware: the first
# (total % parts) shards are one element longer.
SliceRef = tuple[tuple[int, int], ...]

WHOLE: SliceRef = ()


def shard_sizes(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + 1 if i < extra else base for i in range(parts)]


def shard_bounds(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    out = []
    cur = lo
    for size in shard_sizes(hi - lo, parts):
        out.append((cur, cur + size))
        cur += size
    return out


def resolve_slice(ref: SliceRef, element_count: int) -> tuple[int, int]:
    """Concrete [lo, hi) element interval of a slice for a given payload size."""
    lo, hi = 0, element_count
    for parts, index in ref:
        lo, hi = shard_bounds(lo, hi, parts)[index]
    return lo, hi


def slice_fraction(ref: SliceRef) -> Fraction:
    """Nominal payload fraction of a slice, ignoring uneven-shard rounding."""
    frac = Fraction(1)
    for parts, _ in ref:
        frac /= parts
    return frac


@dataclass(frozen=True)
class Ring:
    """Cyclic sequence of alive chips reducing one payload slice.

    ``routes[i]`` connects ``members[i]`` to ``members[(i+1) % R]``; hops on
    physical cycles are single links, otherwise a multi-hop route.
    """

    name: str
    color: str  # red | blue | yellow
    members: tuple[Coord, ...]
    routes: tuple[Route, ...]
    slice_ref: SliceRef = WHOLE

    def __post_init__(self) -> None:
        if len(self.members) < 2:
            raise ValueError(f"ring {self.name} needs at least 2 members")
        if len(set(self.members)) != len(self.members):
            raise ValueError(f"ring {self.name} repeats a member")
        if len(self.routes) != len(self.members):
            raise ValueError(f"ring {self.name} needs one route per member hop")

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def payload_fraction(self) -> Fraction:
        return slice_fraction(self.slice_ref)


@dataclass(frozen=True)
class ForwardingEdge:
    """Shard handoff between a yellow-ring member and a blue-ring chip.

    During reduce-scatter the yellow side exports its reduced shard along
    ``route``; during the final all-gather the same edge runs in reverse to
    deliver the finished result.
    """

    src: Coord  # yellow member
    dst: Coord  # blue ring member
    route: Route
    slice_ref: SliceRef


@dataclass(frozen=True)
class Phase:
    """One serialized stage of the schedule.

    Forwarding attaches to the yellow side of a stage: in a reduce-scatter
    phase edges fire after the ring steps (export partial sums), in an
    all-gather phase before them (import results).
    """

    name: str
    role: str  # reduce_scatter | all_gather
    dimension: str  # x | y | mixed
    rings: tuple[Ring, ...]
    forwarding: tuple[ForwardingEdge, ...] = ()

    @property
    def ring_steps(self) -> int:
        return max((ring.size - 1 for ring in self.rings), default=0)

    @property
    def steps(self) -> int:
        return self.ring_steps + (1 if self.forwarding else 0)


@dataclass(frozen=True)
class Schedule:
    scheme: str
    mesh: Mesh
    phases: tuple[Phase, ...]

    @property
    def total_steps(self) -> int:
        return sum(phase.steps for phase in self.phases)

    def all_routes(self) -> list[Route]:
        routes = []
        for phase in self.phases:
            for ring in phase.rings:
                routes.extend(ring.routes)
            for edge in phase.forwarding:
                routes.append(edge.route if phase.role == REDUCE_SCATTER else edge.route.reversed())
        return routes


def _adjacent_cycle_routes(members: list[Coord]) -> tuple[Route, ...]:
    routes = []
    for i, m in enumerate(members):
        routes.append(route_from_cells([m, members[(i + 1) % len(members)]]))
    return tuple(routes)


def _straight_route(src: Coord, dst: Coord) -> Route:
    if src.x != dst.x and src.y != dst.y:
        raise ValueError(f"{src}->{dst} is not axis-aligned")
    cells = [src]
    step = 1 if (dst.x + dst.y) > (src.x + src.y) else -1
    if src.x == dst.x:
        cells += [Coord(src.x, y) for y in range(src.y + step, dst.y + step, step)]
    else:
        cells += [Coord(x, src.y) for x in range(src.x + step, dst.x + step, step)]
    return route_from_cells(cells)


def _reject_extra_regions(mesh: Mesh, want_regions: bool) -> None:
    if want_regions:
        mesh.single_region()  # raises when zero or several
    elif mesh.failed_regions:
        raise SchemeError("scheme requires a full mesh; use the fault-tolerant variant")


# ---------------------------------------------------------------------------
# 1-D Hamiltonian schemes
# ---------------------------------------------------------------------------

def _serpentine_cells(width: int, height: int) -> list[Coord]:
    """Closed boustrophedon over the grid, returning home along column 0.

    Needs an even height; callers transpose when only the width is even.
    """
    cells = [Coord(x, 0) for x in range(width)]
    for y in range(1, height):
        xs = range(width - 1, 0, -1) if y % 2 else range(1, width)
        cells += [Coord(x, y) for x in xs]
    cells += [Coord(0, y) for y in range(height - 1, 0, -1)]
    return cells


def _hamiltonian_cells(mesh: Mesh) -> list[Coord]:
    w, h = mesh.width, mesh.height
    if h % 2 == 0:
        return _serpentine_cells(w, h)
    if w % 2 == 0:
        return [Coord(c.y, c.x) for c in _serpentine_cells(h, w)]
    raise SchemeError(f"{w}x{h} grid is odd in both dimensions and has no Hamiltonian cycle")


def _one_ring_schedule(mesh: Mesh, scheme: str, members: list[Coord], routes: tuple[Route, ...]) -> Schedule:
    ring = Ring(name="ham", color="red", members=tuple(members), routes=routes, slice_ref=WHOLE)
    phases = (
        Phase(name="ring-reduce-scatter", role=REDUCE_SCATTER, dimension="mixed", rings=(ring,)),
        Phase(name="ring-all-gather", role=ALL_GATHER, dimension="mixed", rings=(ring,)),
    )
    return Schedule(scheme=scheme, mesh=mesh, phases=phases)


def build_1d_hamiltonian(mesh: Mesh) -> Schedule:
    """Single near-neighbor ring over every chip of a full mesh.

    The ring is a boustrophedon closed through the first column (or row).
    Degenerate 1xN lines fold the return hop into a multi-link route.
    """
    _reject_extra_regions(mesh, want_regions=False)
    w, h = mesh.width, mesh.height
    if w * h < 2:
        raise SchemeError("mesh too small for a ring")
    if w == 1 or h == 1:
        members = mesh.alive_sorted()
        routes = [route_from_cells([a, b]) for a, b in zip(members, members[1:])]
        routes.append(_straight_route(members[-1], members[0]))
        return _one_ring_schedule(mesh, SCHEME_ONED, members, tuple(routes))
    cells = _hamiltonian_cells(mesh)
    return _one_ring_schedule(mesh, SCHEME_ONED, cells, _adjacent_cycle_routes(cells))


def _supercell(c: Coord) -> list[Coord]:
    """Chips of coarse cell c in clockwise order from its top-left corner."""
    x, y = 2 * c.x, 2 * c.y
    return [Coord(x, y), Coord(x + 1, y), Coord(x + 1, y + 1), Coord(x, y + 1)]


def build_1d_ft(mesh: Mesh) -> Schedule:
    """Hamiltonian ring threaded around an even-aligned, even-sized hole.

    The grid is tiled with 2x2 supercells; alignment guarantees the hole is a
    union of whole supercells. Each alive supercell starts as its own little
    clockwise cycle, and cycles are merged pairwise along a spanning tree of
    the coarse grid, yielding one near-neighbor cycle over all alive chips.
    """
    region = mesh.single_region()
    cls = classify_region(mesh.config, region)
    if not cls.supports_1d:
        raise SchemeError(f"region {region} not eligible for the 1-D ring: {cls.reason}")
    w, h = mesh.width, mesh.height
    if w % 2 or h % 2:
        raise SchemeError(f"fault-tolerant 1-D ring needs even mesh dimensions, got {w}x{h}")

    cw, ch = w // 2, h // 2
    dead_cells = {
        Coord(x, y)
        for x in range(region.x // 2, (region.x + region.width) // 2)
        for y in range(region.y // 2, (region.y + region.height) // 2)
    }
    alive_cells = [Coord(x, y) for y in range(ch) for x in range(cw) if Coord(x, y) not in dead_cells]
    if not alive_cells:
        raise SchemeError("failed region covers the whole mesh")

    # BFS spanning tree over alive supercells, deterministic order.
    start = alive_cells[0]
    seen = {start}
    frontier = [start]
    tree: list[tuple[Coord, Coord]] = []
    while frontier:
        cell = frontier.pop(0)
        for dx, dy in ((-1, 0), (1, 0), (0, -1), (0, 1)):
            nxt = Coord(cell.x + dx, cell.y + dy)
            if 0 <= nxt.x < cw and 0 <= nxt.y < ch and nxt not in dead_cells and nxt not in seen:
                seen.add(nxt)
                tree.append((cell, nxt))
                frontier.append(nxt)
    if len(seen) != len(alive_cells):
        raise SchemeError("failed region disconnects the mesh")

    succ: dict[Coord, Coord] = {}
    for cell in alive_cells:
        a, b, c, d = _supercell(cell)
        succ[a], succ[b], succ[c], succ[d] = b, c, d, a

    for u, v in tree:
        if (v.x, v.y) < (u.x, u.y):
            u, v = v, u
        ua, ub, uc, ud = _supercell(u)
        va, vb, vc, vd = _supercell(v)
        if v == Coord(u.x + 1, u.y):  # v to the right: splice right side of u to left side of v
            assert succ[ub] == uc and succ[vd] == va
            succ[ub], succ[vd] = va, uc
        else:  # v below: splice bottom of u to top of v
            assert succ[uc] == ud and succ[va] == vb
            succ[uc], succ[va] = vb, ud

    start_chip = _supercell(alive_cells[0])[0]
    members = [start_chip]
    cur = succ[start_chip]
    while cur != start_chip:
        members.append(cur)
        cur = succ[cur]
    assert len(members) == len(mesh.alive), "merge did not produce a single Hamiltonian cycle"
    return _one_ring_schedule(mesh, SCHEME_ONED_FT, members, _adjacent_cycle_routes(members))


# ---------------------------------------------------------------------------
# Two-color scheme
# ---------------------------------------------------------------------------

def build_two_color(mesh: Mesh) -> Schedule:
    """Two concurrent half-payload reductions with opposite dimension orders.

    Red reduces its half along rows then columns; blue along columns then
    rows. Gather phases mirror the scatter phases, so red and blue always
    occupy perpendicular link directions within a phase.
    """
    _reject_extra_regions(mesh, want_regions=False)
    w, h = mesh.width, mesh.height
    if w < 2 or h < 2:
        raise SchemeError(f"two-color scheme needs both dimensions >= 2, got {w}x{h}")

    red_half: SliceRef = ((2, 0),)
    blue_half: SliceRef = ((2, 1),)

    def row_ring(name: str, color: str, y: int, ref: SliceRef) -> Ring:
        members = [Coord(x, y) for x in range(w)]
        routes = [route_from_cells([members[i], members[i + 1]]) for i in range(w - 1)]
        routes.append(_straight_route(members[-1], members[0]))
        return Ring(name=name, color=color, members=tuple(members), routes=tuple(routes), slice_ref=ref)

    def col_ring(name: str, color: str, x: int, ref: SliceRef) -> Ring:
        members = [Coord(x, y) for y in range(h)]
        routes = [route_from_cells([members[i], members[i + 1]]) for i in range(h - 1)]
        routes.append(_straight_route(members[-1], members[0]))
        return Ring(name=name, color=color, members=tuple(members), routes=tuple(routes), slice_ref=ref)

    red_rows = tuple(row_ring(f"red-row{y}", "red", y, red_half) for y in range(h))
    blue_cols = tuple(col_ring(f"blue-col{x}", "blue", x, blue_half) for x in range(w))
    red_cols = tuple(col_ring(f"red-col{x}", "red", x, red_half + ((w, x),)) for x in range(w))
    blue_rows = tuple(row_ring(f"blue-row{y}", "blue", y, blue_half + ((h, y),)) for y in range(h))

    phases = (
        Phase("scatter-1", REDUCE_SCATTER, "mixed", red_rows + blue_cols),
        Phase("scatter-2", REDUCE_SCATTER, "mixed", red_cols + blue_rows),
        Phase("gather-2", ALL_GATHER, "mixed", red_cols + blue_rows),
        Phase("gather-1", ALL_GATHER, "mixed", red_rows + blue_cols),
    )
    return Schedule(scheme=SCHEME_TWO_COLOR, mesh=mesh, phases=phases)


# ---------------------------------------------------------------------------
# Row-pair scheme (full mesh)
# ---------------------------------------------------------------------------

def _pair_ring(j: int, width: int) -> Ring:
    """Physical cycle over rows 2j and 2j+1: top row rightward, bottom back."""
    top = [Coord(x, 2 * j) for x in range(width)]
    bottom = [Coord(x, 2 * j + 1) for x in range(width - 1, -1, -1)]
    members = top + bottom
    return Ring(
        name=f"pair{j}",
        color="blue",
        members=tuple(members),
        routes=_adjacent_cycle_routes(members),
        slice_ref=WHOLE,
    )


def _lane_shard(x: int, parity: int, width: int) -> int:
    """Pair-ring shard index owned by chip (x, 2j+parity) after phase 1."""
    return x if parity == 0 else 2 * width - 1 - x


def build_row_pair(mesh: Mesh) -> Schedule:
    """Row-pair rings, then column-parity lanes that skip rows.

    Phase 1 reduces the whole payload inside each pair of rows on a physical
    cycle, so every directed link is used by at most one ring. Phase 2 groups
    the per-chip shards by (column, row parity) into lanes of height/2
    members whose hops skip over the neighboring row. Gather phases mirror.
    """
    _reject_extra_regions(mesh, want_regions=False)
    w, h = mesh.width, mesh.height
    if h % 2:
        raise SchemeError(f"row-pair scheme needs an even mesh height, got {h}")
    if w < 2:
        raise SchemeError("row-pair scheme needs width >= 2")

    pairs = tuple(_pair_ring(j, w) for j in range(h // 2))
    lanes = _lane_rings(mesh, w, list(range(h // 2)), detour_for=None)

    scatter = [Phase("pair-reduce-scatter", REDUCE_SCATTER, "x", pairs)]
    gather = [Phase("pair-all-gather", ALL_GATHER, "x", pairs)]
    if lanes:
        scatter.append(Phase("lane-reduce-scatter", REDUCE_SCATTER, "y", lanes))
        gather.insert(0, Phase("lane-all-gather", ALL_GATHER, "y", lanes))
    return Schedule(scheme=SCHEME_ROW_PAIR, mesh=mesh, phases=tuple(scatter + gather))


def _lane_rings(
    mesh: Mesh,
    width: int,
    pair_indices: list[int],
    detour_for: dict[int, int] | None,
) -> tuple[Ring, ...]:
    """Column-parity lane rings over the given row pairs.

    ``detour_for`` maps a blocked column to the column its vertical hops must
    swing through; unblocked columns route straight.
    """
    if len(pair_indices) < 2:
        return ()
    lanes = []
    for x in range(width):
        for parity in (0, 1):
            members = [Coord(x, 2 * j + parity) for j in pair_indices]
            routes = []
            for i, m in enumerate(members):
                nxt = members[(i + 1) % len(members)]
                routes.append(_lane_hop(mesh, m, nxt, detour_for))
            lanes.append(
                Ring(
                    name=f"lane{x}p{parity}",
                    color="blue",
                    members=tuple(members),
                    routes=tuple(routes),
                    slice_ref=((2 * width, _lane_shard(x, parity, width)),),
                )
            )
    return tuple(lanes)


def _lane_hop(mesh: Mesh, src: Coord, dst: Coord, detour_for: dict[int, int] | None) -> Route:
    """Vertical lane hop, swinging through an assigned detour column if blocked."""
    blocked = False
    if detour_for and src.x in detour_for and mesh.failed_regions:
        region = mesh.failed_regions[0]
        lo, hi = min(src.y, dst.y), max(src.y, dst.y)
        blocked = src.x in region.columns() and lo < region.y and region.y + region.height - 1 < hi
    if not blocked:
        return _straight_route(src, dst)
    region = mesh.failed_regions[0]
    via = detour_for[src.x]
    down = dst.y > src.y
    enter_y = region.y - 1 if down else region.y + region.height
    exit_y = region.y + region.height if down else region.y - 1
    cells = [src]
    cells += [Coord(src.x, y) for y in _steps(src.y, enter_y)]
    cells += [Coord(x, enter_y) for x in _steps(src.x, via)]
    cells += [Coord(via, y) for y in _steps(enter_y, exit_y)]
    cells += [Coord(x, exit_y) for x in _steps(via, src.x)]
    cells += [Coord(src.x, y) for y in _steps(exit_y, dst.y)]
    return route_from_cells(cells)


def _steps(a: int, b: int) -> range:
    if a <= b:
        return range(a + 1, b + 1)
    return range(a - 1, b - 1, -1)


# ---------------------------------------------------------------------------
# Fault-tolerant row-pair scheme
# ---------------------------------------------------------------------------

def _detour_assignment(region: FailedRegion, width: int) -> dict[int, int]:
    """Give every blocked column its own detour column, stacked outward.

    Spreading (instead of funneling every detour onto the column next to the
    hole) keeps any single link at no more than two columns' worth of lane
    traffic.
    """
    cols = list(region.columns())
    lefts = [x for x in range(region.x - 1, -1, -1)]
    rights = [x for x in range(region.x + region.width, width)]
    half = len(cols) // 2
    assignment: dict[int, int] = {}
    overflow: list[int] = []
    for i, col in enumerate(cols[:half]):
        if i < len(lefts):
            assignment[col] = lefts[i]
        else:
            overflow.append(col)
    taken_rights = 0
    for i, col in enumerate(reversed(cols[half:])):
        if i < len(rights):
            assignment[col] = rights[i]
            taken_rights += 1
        else:
            overflow.append(col)
    spare = lefts[half:] if half < len(lefts) else []
    spare += rights[taken_rights:]
    for col in overflow:
        if not spare:
            raise SchemeError("mesh too narrow to spread lane detours around the failed region")
        assignment[col] = spare.pop(0)
    return assignment


def _yellow_block_columns(region: FailedRegion, width: int) -> list[int]:
    """Even start columns of the 2x2 alive blocks in an affected row pair."""
    return [c for c in range(0, width, 2) if c not in region.columns()]


def _yellow_ring(block_col: int, pair: int, index: int) -> Ring:
    y = 2 * pair
    members = [Coord(block_col, y), Coord(block_col + 1, y), Coord(block_col + 1, y + 1), Coord(block_col, y + 1)]
    return Ring(
        name=f"yellow{index}",
        color="yellow",
        members=tuple(members),
        routes=_adjacent_cycle_routes(members),
        slice_ref=WHOLE,
    )


def _forward_target(mesh: Mesh, member: Coord, blue_pairs: set[int]) -> Coord:
    """Closest blue chip straight above or below a yellow member, <= 2 hops."""
    for dy in (-1, 1, -2, 2):
        ty = member.y + dy
        if not 0 <= ty < mesh.height:
            continue
        if ty // 2 not in blue_pairs:
            continue
        between = Coord(member.x, member.y + (1 if dy > 0 else -1))
        if abs(dy) == 2 and not mesh.is_alive(between):
            continue
        return Coord(member.x, ty)
    raise SchemeError(
        f"yellow chip {member} has no blue ring within forwarding distance; "
        "failed region is too tall for the 2-D scheme"
    )


def build_row_pair_ft(mesh: Mesh) -> Schedule:
    """Row-pair scheme around a 2kx2 or 2x2k hole with yellow forwarding rings.

    Row pairs untouched by the hole keep their full rings (blue). Alive chips
    of affected pairs form 2x2 rings (yellow) that reduce the full payload
    among themselves; each yellow member then forwards its reduced shard to
    the nearest blue chip in its column, which folds it in before the blue
    reduce-scatter. Column lanes skip affected pairs and detour around the
    hole. After the blue all-gather the same edges run backwards and a final
    yellow all-gather spreads the result inside each block.
    """
    region = mesh.single_region()
    cls = classify_region(mesh.config, region)
    if not cls.supports_ft_2d:
        raise SchemeError(f"region {region} not eligible for the 2-D scheme: {cls.reason}")
    w, h = mesh.width, mesh.height
    if h % 2:
        raise SchemeError(f"row-pair scheme needs an even mesh height, got {h}")
    if w % 2:
        raise SchemeError(f"fault-tolerant row-pair scheme needs an even mesh width, got {w}")

    affected = list(range(region.y // 2, (region.y + region.height) // 2))
    if len(affected) > 2:
        raise SchemeError(
            f"region {region} spans {len(affected)} row pairs; chips next to its middle "
            "would sit more than two hops from any full ring"
        )
    blue_pairs = [j for j in range(h // 2) if j not in affected]
    if not blue_pairs:
        raise SchemeError("failed region leaves no unaffected row pair to carry full rings")

    yellows: list[Ring] = []
    edges: list[ForwardingEdge] = []
    for pair in affected:
        for col in _yellow_block_columns(region, w):
            ring = _yellow_ring(col, pair, len(yellows))
            yellows.append(ring)
            for i, member in enumerate(ring.members):
                target = _forward_target(mesh, member, set(blue_pairs))
                edges.append(
                    ForwardingEdge(
                        src=member,
                        dst=target,
                        route=_straight_route(member, target),
                        slice_ref=((ring.size, i),),
                    )
                )

    blues = tuple(_pair_ring(j, w) for j in blue_pairs)
    interior = region.y > 0 and region.y + region.height < h
    detours = _detour_assignment(region, w) if interior else None
    lanes = _lane_rings(mesh, w, blue_pairs, detour_for=detours)

    phases: list[Phase] = []
    if yellows:
        phases.append(Phase("yellow-reduce-scatter", REDUCE_SCATTER, "mixed", tuple(yellows), tuple(edges)))
    phases.append(Phase("pair-reduce-scatter", REDUCE_SCATTER, "x", blues))
    if lanes:
        phases.append(Phase("lane-reduce-scatter", REDUCE_SCATTER, "y", lanes))
        phases.append(Phase("lane-all-gather", ALL_GATHER, "y", lanes))
    phases.append(Phase("pair-all-gather", ALL_GATHER, "x", blues))
    if yellows:
        phases.append(Phase("yellow-all-gather", ALL_GATHER, "mixed", tuple(yellows), tuple(edges)))
    return Schedule(scheme=SCHEME_ROW_PAIR_FT, mesh=mesh, phases=tuple(phases))


_BUILDERS = {
    SCHEME_ONED: build_1d_hamiltonian,
    SCHEME_ONED_FT: build_1d_ft,
    SCHEME_TWO_COLOR: build_two_color,
    SCHEME_ROW_PAIR: build_row_pair,
    SCHEME_ROW_PAIR_FT: build_row_pair_ft,
}


def build_schedule(mesh: Mesh, scheme: str) -> Schedule:
    """Dispatch to the named scheme builder."""
    try:
        builder = _BUILDERS[scheme]
    except KeyError:
        raise SchemeError(f"unknown scheme {scheme!r}; expected one of {', '.join(SCHEMES)}") from None
    return builder(mesh)
