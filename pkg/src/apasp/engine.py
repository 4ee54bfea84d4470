"""Decremental update engine: cleanup removes every stored path through the
updated vertex, fixup restores all shortest and locally shortest paths of
the updated graph.

Both procedures drain a work heap keyed by [weight, x, y]; each round
extracts every entry with the minimal key and processes the set together,
accumulating counts per first-edge head (for right extensions) and per
last-edge tail (for left extensions).  The marked-tuples dictionary plus
extension-set membership upkeep guarantee that every extension tuple is
generated exactly once per pass, across left and right extension; a shadow
set asserts that discipline.

Single-threaded by design: the engine owns the tuple system for the whole
update.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field

from .graph import Graph, UpdateOp, apply_weights, validate_update
from .tuples import (EngineBug, TupleKey, TupleSystem, is_single_edge,
                     single_edge_key)


@dataclass
class UpdateStats:
    """Operation counters for one decremental update.

    ``triples_touched_*`` count heap extractions plus, for fixup, the
    triples promoted to shortest status; ``new_triples_created`` counts
    fixup insertions of tuples that were absent from P.
    """

    triples_touched_cleanup: int = 0
    triples_touched_fixup: int = 0
    new_triples_created: int = 0
    heap_ops: int = 0

    def to_json(self) -> str:
        return json.dumps({
            "triples_touched_cleanup": self.triples_touched_cleanup,
            "triples_touched_fixup": self.triples_touched_fixup,
            "new_triples_created": self.new_triples_created,
            "heap_ops": self.heap_ops,
        })


@dataclass
class UpdateAudit:
    """Optional per-update instrumentation used by the verification suite."""

    # pair -> weight of the pair's first heap extraction during fixup
    first_extraction: dict[tuple[int, int], float] = field(default_factory=dict)
    # generation attempts skipped because the pair seed already queued the
    # same (tuple, weight); anything else colliding is an engine bug
    seed_collisions: int = 0


class WorkHeap:
    """Priority queue of tuple keys ordered by [weight, x, y].

    Each (tuple, weight) is queued at most once per pass.  A generation
    colliding with the pair seed for the same stored triple is skipped
    (the queued entry already wakes the pair at that key); any other
    collision is an engine bug.
    """

    def __init__(self, stats: UpdateStats,
                 audit: UpdateAudit | None = None) -> None:
        self._heap: list[tuple[float, int, int, TupleKey]] = []
        self._shadow: dict[tuple[TupleKey, float], str] = {}
        self.payload: dict[TupleKey, int] = {}
        self._stats = stats
        self._audit = audit

    def push(self, weight: float, key: TupleKey, origin: str,
             count: int | None = None) -> bool:
        entry = (key, weight)
        prior = self._shadow.get(entry)
        if prior is not None:
            if origin == "gen" and prior == "seed":
                if self._audit is not None:
                    self._audit.seed_collisions += 1
                return False
            if origin == "seed":
                return False
            raise EngineBug(
                f"duplicate heap insert for {key} at weight {weight} "
                f"({prior} then {origin})")
        self._shadow[entry] = origin
        if count is not None:
            self.payload[key] = count
        heapq.heappush(self._heap, (weight, key[0], key[3], key))
        self._stats.heap_ops += 1
        return True

    def __bool__(self) -> bool:
        return bool(self._heap)

    def pop_min_group(self) -> tuple[float, int, int, list[TupleKey]]:
        """Remove and return every entry sharing the minimal [wt, x, y]."""
        wt, x, y, key = heapq.heappop(self._heap)
        self._stats.heap_ops += 1
        keys = [key]
        while self._heap and self._heap[0][:3] == (wt, x, y):
            keys.append(heapq.heappop(self._heap)[3])
            self._stats.heap_ops += 1
        return wt, x, y, keys


class AccumulationBuffer:
    """Per-round count accumulators: A by first-edge head, B by last-edge
    tail, with touched-index lists so resets cost only what was used."""

    def __init__(self, n: int) -> None:
        self.A = [0] * n
        self.B = [0] * n
        self.La: list[int] = []
        self.Lb: list[int] = []

    def add(self, key: TupleKey, count: int) -> None:
        a, b = key[1], key[2]
        if self.A[a] == 0:
            self.La.append(a)
        self.A[a] += count
        if self.B[b] == 0:
            self.Lb.append(b)
        self.B[b] += count

    def reset(self) -> None:
        for a in self.La:
            self.A[a] = 0
        for b in self.Lb:
            self.B[b] = 0
        self.La.clear()
        self.Lb.clear()

    def is_clear(self) -> bool:
        return (not self.La and not self.Lb
                and not any(self.A) and not any(self.B))


def _queue_star_removal(ts: TupleSystem, key: TupleKey,
                        deferred: set[tuple[str, int, int, int]]) -> None:
    """Queue the L*/R* deletions implied by removing the shortest paths of
    ``key``; single-edge tuples drop their diagonal memberships at once.

    The conditional deletions ask whether the witnessing P* pair ended up
    empty, so they run after cleanup has finished every removal: evaluated
    mid-pass they can read a pair that still holds doomed triples and
    leave a stale member behind.
    """
    x, a, b, y = key
    if is_single_edge(key):
        # The edge (x, y) itself is the only witness for both entries.
        ts.lstar_remove(y, y, x)
        ts.rstar_remove(x, x, y)
    else:
        deferred.add(("L", a, y, x))
        deferred.add(("R", x, b, y))


def _cleanup_remove(ts: TupleSystem, key: TupleKey, wt: float, count: int,
                    deferred: set[tuple[str, int, int, int]]) -> None:
    """Remove ``count`` paths of ``key`` from P (and P* when shortest),
    maintaining marks and extension-set memberships."""
    remaining = ts.p_decrement(key, wt, count)
    in_star = ts.pstar_count(key) > 0
    if remaining > 0:
        ts.mark(key)
    else:
        x, a, b, y = key
        ts.l_remove(a, b, y, x)
        ts.r_remove(x, a, b, y)
    if in_star:
        star_left = ts.pstar_decrement(key, wt, count)
        if star_left != remaining:
            raise EngineBug(
                f"P*/P count drift for {key}: {star_left} vs {remaining}")
        _queue_star_removal(ts, key, deferred)


def cleanup(ts: TupleSystem, g: Graph, v: int,
            stats: UpdateStats | None = None,
            audit: UpdateAudit | None = None) -> UpdateStats:
    """Remove every locally shortest and shortest path through ``v`` from
    the tuple system, working on the pre-update graph ``g``."""
    if stats is None:
        stats = UpdateStats()
    ts.clear_marks()
    heap = WorkHeap(stats, audit)
    buf = AccumulationBuffer(ts.n)
    deferred: set[tuple[str, int, int, int]] = set()

    # Trivial triple for v itself: its extensions are the single-edge
    # paths over v's incident edges.  It never enters P or the heap.
    stats.triples_touched_cleanup += 1
    for xp in sorted(g.in_adj[v]):
        key = single_edge_key(xp, v)
        w = g.weights[(xp, v)]
        heap.push(w, key, "gen", count=1)
        remaining = ts.p_decrement(key, w, 1)
        if remaining != 0:
            raise EngineBug(f"single-edge triple {key} had count > 1")
        if ts.pstar_count(key) > 0:
            ts.pstar_decrement(key, w, 1)
            _queue_star_removal(ts, key, deferred)
    for yp in sorted(g.out_adj[v]):
        key = single_edge_key(v, yp)
        w = g.weights[(v, yp)]
        heap.push(w, key, "gen", count=1)
        remaining = ts.p_decrement(key, w, 1)
        if remaining != 0:
            raise EngineBug(f"single-edge triple {key} had count > 1")
        if ts.pstar_count(key) > 0:
            ts.pstar_decrement(key, w, 1)
            _queue_star_removal(ts, key, deferred)

    while heap:
        wt, x, y, keys = heap.pop_min_group()
        stats.triples_touched_cleanup += len(keys)
        for key in keys:
            buf.add(key, heap.payload.pop(key))

        # Left extensions, grouped by last edge (b, y).
        for b in buf.Lb:
            fcount = buf.B[b]
            for xp in sorted(ts.l_get(x, b, y)):
                key2 = (xp, x, b, y)
                if ts.is_marked(key2):
                    continue
                wt2 = wt + g.weights[(xp, x)]
                heap.push(wt2, key2, "gen", count=fcount)
                _cleanup_remove(ts, key2, wt2, fcount, deferred)

        # Right extensions, grouped by first edge (x, a).
        for a in buf.La:
            gcount = buf.A[a]
            for yp in sorted(ts.r_get(x, a, y)):
                key2 = (x, a, y, yp)
                if ts.is_marked(key2):
                    continue
                wt2 = wt + g.weights[(y, yp)]
                heap.push(wt2, key2, "gen", count=gcount)
                _cleanup_remove(ts, key2, wt2, gcount, deferred)
        buf.reset()

    if not buf.is_clear():
        raise EngineBug("accumulation buffer not clear after cleanup")
    if heap.payload:
        raise EngineBug("unconsumed heap payloads after cleanup")
    # A member equal to v goes unconditionally: every shortest path from v
    # or to v passes through v, so no witness can survive.
    for kind, kx, ky, member in sorted(deferred):
        if member == v or (kx, ky) not in ts.Pstar:
            if kind == "L":
                ts.lstar_discard(kx, ky, member)
            else:
                ts.rstar_discard(kx, ky, member)
    return stats


def _star_memberships_add(ts: TupleSystem, key: TupleKey) -> None:
    """Record the L*/R* memberships witnessed by a shortest-path tuple.

    For a single-edge tuple the witnessed entries are the diagonal ones:
    the edge is a shortest path, so its source pre-extends the trivial
    destination pair and vice versa.
    """
    x, a, b, y = key
    ts.lstar_add(a, y, x)
    ts.rstar_add(x, b, y)


def fixup(ts: TupleSystem, g2: Graph, v: int, op: UpdateOp | None = None,
          stats: UpdateStats | None = None,
          audit: UpdateAudit | None = None) -> UpdateStats:
    """Restore every new shortest and locally shortest path of the updated
    graph ``g2``.  Must run right after ``cleanup(ts, g, v)``."""
    if stats is None:
        stats = UpdateStats()
    ts.clear_marks()
    seq = ts.update_seq
    heap = WorkHeap(stats, audit)

    # Phase 1: trivial triples for the surviving edges incident on v.
    for xp in sorted(g2.in_adj[v]):
        key = single_edge_key(xp, v)
        w = g2.weights[(xp, v)]
        if ts.p_increment(key, w, 1, paths_thru_v=1, update_num=seq) != 1:
            raise EngineBug(f"edge triple {key} survived cleanup")
        stats.new_triples_created += 1
        heap.push(w, key, "phase1")
    for yp in sorted(g2.out_adj[v]):
        key = single_edge_key(v, yp)
        w = g2.weights[(v, yp)]
        if ts.p_increment(key, w, 1, paths_thru_v=1, update_num=seq) != 1:
            raise EngineBug(f"edge triple {key} survived cleanup")
        stats.new_triples_created += 1
        heap.push(w, key, "phase1")

    # Phase 2: one candidate min-weight triple per pair.
    for pair in sorted(ts.P):
        t = ts.min_weight_triple(*pair)
        heap.push(t.weight, t.key, "seed")

    # Phase 3: process pairs at their first extraction only.
    first_done: set[tuple[int, int]] = set()
    while heap:
        wt, x, y, keys = heap.pop_min_group()
        stats.triples_touched_fixup += len(keys)
        if (x, y) in first_done:
            continue
        first_done.add((x, y))
        if audit is not None:
            audit.first_extraction[(x, y)] = wt

        # S holds (key, extension count, paths through v) for the new
        # shortest paths of the pair.
        S: list[tuple[TupleKey, int, int]] = []
        if (x, y) not in ts.Pstar:
            # Distance changed (or pair lost all shortest paths): every
            # min-weight triple stored for the pair is a new shortest path.
            min_t = ts.min_weight_triple(x, y)
            if min_t is None or min_t.weight != wt:
                raise EngineBug(
                    f"first extraction for ({x}, {y}) at {wt} does not "
                    f"match stored minimum")
            for t in ts.pair_triples_at(x, y, wt):
                ts.pstar_increment(t.key, wt, t.count)
                _star_memberships_add(ts, t.key)
                S.append((t.key, t.count, t.paths_v(seq)))
            stats.triples_touched_fixup += len(S)
        else:
            # Distance preserved: the surviving shortest paths are already
            # in P*; only restored paths through v join them.
            if ts.pstar_weight(x, y) != wt:
                raise EngineBug(
                    f"first extraction for ({x}, {y}) at {wt} but P* holds "
                    f"weight {ts.pstar_weight(x, y)}")
            for key in sorted(keys):
                t = ts.dict.get(key)
                if t is None or t.weight != wt:
                    raise EngineBug(f"heap entry {key} missing from P")
                pv = t.paths_v(seq)
                if pv > 0:
                    ts.pstar_increment(key, wt, pv)
                    _star_memberships_add(ts, key)
                    S.append((key, pv, pv))
            stats.triples_touched_fixup += len(S)

        if not S:
            continue

        # Left extensions through the shortest-path pre-extension sets,
        # grouped by last edge (b, y).
        groups_b: dict[int, tuple[int, int]] = {}
        groups_a: dict[int, tuple[int, int]] = {}
        for key, cnt, pv in S:
            fa, fb = groups_a.get(key[1], (0, 0))
            groups_a[key[1]] = (fa + cnt, fb + pv)
            fa, fb = groups_b.get(key[2], (0, 0))
            groups_b[key[2]] = (fa + cnt, fb + pv)

        for b in sorted(groups_b):
            fcount, paths = groups_b[b]
            for xp in sorted(ts.lstar_get(x, b)):
                if xp == y:
                    continue
                key2 = (xp, x, b, y)
                if ts.is_marked(key2):
                    continue
                wt2 = wt + g2.weights[(xp, x)]
                _fixup_extend(ts, heap, stats, key2, wt2, fcount, paths, seq)

        for a in sorted(groups_a):
            gcount, paths = groups_a[a]
            for yp in sorted(ts.rstar_get(a, y)):
                if yp == x:
                    continue
                key2 = (x, a, y, yp)
                if ts.is_marked(key2):
                    continue
                wt2 = wt + g2.weights[(y, yp)]
                _fixup_extend(ts, heap, stats, key2, wt2, gcount, paths, seq)

    return stats


def _fixup_extend(ts: TupleSystem, heap: WorkHeap, stats: UpdateStats,
                  key2: TupleKey, wt2: float, fcount: int, paths: int,
                  seq: int) -> None:
    """Create or grow one extension triple.

    An existing triple already counts every path that avoids v, so it only
    gains the restored paths through v; a fresh triple takes the whole
    accumulated count.  Marking happens on every generation so the mirror
    extension of the same tuple stays idle.
    """
    existing = ts.p_get(key2)
    if existing is not None:
        if existing.weight != wt2:
            raise EngineBug(
                f"extension {key2} at {wt2} vs stored {existing.weight}")
        if paths == 0:
            return
        ts.p_increment(key2, wt2, paths, paths_thru_v=paths, update_num=seq)
    else:
        ts.p_increment(key2, wt2, fcount, paths_thru_v=paths, update_num=seq)
        stats.new_triples_created += 1
        x, a, b, y = key2
        ts.l_add(a, b, y, x)
        ts.r_add(x, a, b, y)
    ts.mark(key2)
    heap.push(wt2, key2, "gen")


def decremental_update(ts: TupleSystem, g: Graph, op: UpdateOp,
                       audit: UpdateAudit | None = None
                       ) -> tuple[Graph, UpdateStats]:
    """Validate and apply one decremental update; returns the updated
    graph and the merged cleanup + fixup counters."""
    validate_update(g, op)
    stats = UpdateStats()
    ts.update_seq += 1
    cleanup(ts, g, op.v, stats, audit)
    g2 = apply_weights(g, op)
    fixup(ts, g2, op.v, op, stats, audit)
    ts.clear_marks()
    return g2, stats
