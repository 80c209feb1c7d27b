"""Step-synchronous execution of ring schedules over per-chip payloads.

The engine is a logical simulator: it moves shards between chips exactly as
the schedule prescribes and checks nothing about timing (that is the cost
model's job). Reduction order is fixed by ring member order, so repeated
runs are bit-identical even for floating payloads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .rings import ALL_GATHER, REDUCE_SCATTER, Ring, Schedule, resolve_slice, shard_bounds
from .topology import Coord, Mesh


class Movement(NamedTuple):
    """One data transfer: a shard crossing a route during a phase step."""

    phase: int
    step: int
    kind: str  # ring | forward
    ring: str  # ring name or forwarding edge label
    src: Coord
    dst: Coord
    lo: int
    hi: int
    links: int
    nbytes: int

    def line(self) -> str:
        return (
            f"phase={self.phase} step={self.step} kind={self.kind} ring={self.ring} "
            f"src={self.src} dst={self.dst} lo={self.lo} hi={self.hi} "
            f"links={self.links} bytes={self.nbytes}"
        )


@dataclass
class ExecutionTrace:
    """Ordered log of every movement, with per-link byte accounting."""

    element_size: int
    records: list[Movement] = field(default_factory=list)

    def add(self, phase: int, step: int, kind: str, ring: str, src: Coord, dst: Coord,
            lo: int, hi: int, links: int) -> None:
        nbytes = (hi - lo) * self.element_size * links
        self.records.append(Movement(phase, step, kind, ring, src, dst, lo, hi, links, nbytes))

    def total_bytes(self) -> int:
        return sum(r.nbytes for r in self.records)

    def phase_bytes(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for r in self.records:
            out[r.phase] = out.get(r.phase, 0) + r.nbytes
        return out

    def lines(self) -> list[str]:
        return [r.line() for r in self.records]


def oracle_allreduce(payloads: Mapping[Coord, np.ndarray] | Sequence[np.ndarray]) -> np.ndarray:
    """Brute-force reference: elementwise sum over all participants."""
    arrays = list(payloads.values()) if isinstance(payloads, Mapping) else list(payloads)
    if not arrays:
        raise ValueError("no payloads to reduce")
    length = len(arrays[0])
    for a in arrays:
        if len(a) != length:
            raise ValueError(f"payload lengths differ: {len(a)} != {length}")
    return np.sum(np.stack(arrays), axis=0)


def ring_reduce_scatter(slices: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Ring reduce-scatter over equal-length member payloads.

    After R-1 steps member i holds shard i summed over all members. Shards
    follow the uneven split rule (first ``len % R`` shards get one extra
    element).
    """
    r = len(slices)
    if r < 2:
        raise ValueError("ring needs at least 2 members")
    length = len(slices[0])
    for s in slices:
        if len(s) != length:
            raise ValueError(f"member payload lengths differ: {len(s)} != {length}")
    work = [np.array(s) for s in slices]
    bounds = shard_bounds(0, length, r)
    for t in range(r - 1):
        for j in range(r):
            lo, hi = bounds[(j - 1 - t) % r]
            work[(j + 1) % r][lo:hi] += work[j][lo:hi]
    return [work[i][lo:hi].copy() for i, (lo, hi) in enumerate(bounds)]


def ring_all_gather(shards: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Ring all-gather: every member ends with the concatenation of all shards."""
    r = len(shards)
    if r < 2:
        raise ValueError("ring needs at least 2 members")
    length = sum(len(s) for s in shards)
    bounds = shard_bounds(0, length, r)
    for (lo, hi), shard in zip(bounds, shards):
        if hi - lo != len(shard):
            raise ValueError(f"shard of {len(shard)} elements does not fit its {hi - lo}-slot")
    work = [np.zeros(length, dtype=shards[0].dtype) for _ in range(r)]
    for i, (lo, hi) in enumerate(bounds):
        work[i][lo:hi] = shards[i]
    for t in range(r - 1):
        for j in range(r):
            lo, hi = bounds[(j - t) % r]
            work[(j + 1) % r][lo:hi] = work[j][lo:hi]
    return work


def _ring_bounds(ring: Ring, element_count: int) -> tuple[int, list[tuple[int, int]]]:
    lo, hi = resolve_slice(ring.slice_ref, element_count)
    return lo, shard_bounds(lo, hi, ring.size)


def execute(
    mesh: Mesh,
    schedule: Schedule,
    payloads: Mapping[Coord, np.ndarray],
) -> tuple[dict[Coord, np.ndarray], ExecutionTrace]:
    """Run a schedule over per-chip payloads and trace every movement.

    Returns the final per-chip vectors (the full reduced payload at every
    alive chip for a correct schedule) plus the execution trace.
    """
    if schedule.mesh.config != mesh.config or schedule.mesh.failed != mesh.failed:
        raise ValueError("schedule was built for a different mesh")
    missing = mesh.alive - set(payloads)
    if missing:
        raise ValueError(f"payload missing for {len(missing)} alive chips, e.g. {sorted(missing)[0]}")
    element_count = len(next(iter(payloads.values())))
    for c in mesh.alive:
        if len(payloads[c]) != element_count:
            raise ValueError(f"payload length mismatch at {c}")

    state = {c: np.array(payloads[c]) for c in mesh.alive}
    element_size = next(iter(state.values())).itemsize
    trace = ExecutionTrace(element_size=element_size)

    for p, phase in enumerate(schedule.phases):
        if phase.role == ALL_GATHER and phase.forwarding:
            # Import finished results from the blue side before gathering.
            for edge in phase.forwarding:
                lo, hi = resolve_slice(edge.slice_ref, element_count)
                state[edge.src][lo:hi] = state[edge.dst][lo:hi]
                trace.add(p, 0, "forward", f"{edge.dst}->{edge.src}", edge.dst, edge.src,
                          lo, hi, edge.route.length)
        step_base = 1 if (phase.role == ALL_GATHER and phase.forwarding) else 0

        for t in range(phase.ring_steps):
            for ring in phase.rings:
                r = ring.size
                if t >= r - 1:
                    continue
                _, bounds = _ring_bounds(ring, element_count)
                for j in range(r):
                    shard = (j - 1 - t) % r if phase.role == REDUCE_SCATTER else (j - t) % r
                    lo, hi = bounds[shard]
                    dst = ring.members[(j + 1) % r]
                    src = ring.members[j]
                    if phase.role == REDUCE_SCATTER:
                        state[dst][lo:hi] += state[src][lo:hi]
                    else:
                        state[dst][lo:hi] = state[src][lo:hi]
                    trace.add(p, step_base + t, "ring", ring.name, src, dst,
                              lo, hi, ring.routes[j].length)

        if phase.role == REDUCE_SCATTER and phase.forwarding:
            # Export reduced shards from the yellow side into the blue rings.
            for edge in phase.forwarding:
                lo, hi = resolve_slice(edge.slice_ref, element_count)
                state[edge.dst][lo:hi] += state[edge.src][lo:hi]
                trace.add(p, step_base + phase.ring_steps, "forward", f"{edge.src}->{edge.dst}",
                          edge.src, edge.dst, lo, hi, edge.route.length)

    return state, trace
