"""The tuple system: compact storage for all shortest and locally shortest
paths of a weighted digraph.

A path set is identified by its first and last edge.  The key ``(x, a, b, y)``
stands for paths from ``x`` to ``y`` that start with edge ``(x, a)`` and end
with edge ``(b, y)``; the single-edge path ``x -> y`` uses the degenerate key
``(x, y, x, y)``.  A stored triple carries one weight (shared by all its
paths) and a path count.

Maintained maps:

* ``P``      -- per pair (x, y), the locally shortest triples.
* ``Pstar``  -- per pair, the counts of the shortest-path portion.
* ``L``      -- per (x, (b, y)), vertices x' with a stored triple (x', x, b, y).
* ``R``      -- per ((x, a), y), vertices y' with a stored triple (x, a, y, y').
* ``Lstar``  -- per (x, y), in-neighbours x' of x with d(x', y) = w(x', x) + d(x, y).
* ``Rstar``  -- per (x, y), out-neighbours y' of y with d(x, y') = d(x, y) + w(y, y').
* ``marked`` -- per-update scratch dictionary used by the update engine.

``Lstar``/``Rstar`` are kept for the diagonal (x, x) as well: those entries
are the in/out neighbours reached by single-edge shortest paths, and they are
what single-edge triples extend through.

Mutation is single-writer: only the update engine mutates a system, one
update at a time.  Reads are safe between updates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# Heap keys order work by (weight, x, y), lexicographically.
HeapKey = tuple[float, int, int]

# (x, a, b, y): first edge (x, a), last edge (b, y).
TupleKey = tuple[int, int, int, int]


class EngineBug(Exception):
    """Internal consistency violation; never expected on valid inputs."""


class UnknownTuple(EngineBug):
    pass


class OverDecrement(EngineBug):
    pass


class WeightMismatch(EngineBug):
    pass


def single_edge_key(u: int, v: int) -> TupleKey:
    return (u, v, u, v)


def is_single_edge(key: TupleKey) -> bool:
    return key[0] == key[2] and key[1] == key[3]


@dataclass
class Triple:
    """A stored path set with multiplicity.

    ``paths_thru_v`` is only meaningful while ``update_num`` equals the
    system's current update sequence number; otherwise it reads as zero.
    """

    key: TupleKey
    weight: float
    count: int
    paths_thru_v: int = 0
    update_num: int = -1

    def paths_v(self, seq: int) -> int:
        return self.paths_thru_v if self.update_num == seq else 0

    @property
    def pair(self) -> tuple[int, int]:
        return (self.key[0], self.key[3])


class TupleSystem:
    def __init__(self, n: int) -> None:
        self.n = n
        self.dict: dict[TupleKey, Triple] = {}
        self.P: dict[tuple[int, int], dict[tuple[int, int], Triple]] = {}
        self.Pstar: dict[tuple[int, int], dict[tuple[int, int], int]] = {}
        self.L: dict[tuple[int, int, int], set[int]] = {}
        self.R: dict[tuple[int, int, int], set[int]] = {}
        self.Lstar: dict[tuple[int, int], set[int]] = {}
        self.Rstar: dict[tuple[int, int], set[int]] = {}
        self.marked: set[TupleKey] = set()
        self.update_seq = 0

    # -- P ---------------------------------------------------------------

    def p_get(self, key: TupleKey) -> Triple | None:
        return self.dict.get(key)

    def p_increment(self, key: TupleKey, weight: float, k: int,
                    paths_thru_v: int = 0, update_num: int = -1) -> int:
        """Insert a triple or add ``k`` paths to an existing one."""
        if k < 1:
            raise EngineBug(f"p_increment with k={k}")
        triple = self.dict.get(key)
        if triple is None:
            triple = Triple(key, weight, k, paths_thru_v, update_num)
            self.dict[key] = triple
            self.P.setdefault(triple.pair, {})[(key[1], key[2])] = triple
            return k
        if triple.weight != weight:
            raise WeightMismatch(
                f"tuple {key} stored at weight {triple.weight}, got {weight}")
        triple.count += k
        if triple.update_num == update_num:
            triple.paths_thru_v += paths_thru_v
        else:
            triple.paths_thru_v = paths_thru_v
            triple.update_num = update_num
        return triple.count

    def p_decrement(self, key: TupleKey, weight: float, k: int) -> int:
        """Remove ``k`` paths; drops the triple from P and dict at zero.

        Extension-set memberships are left to the caller.
        """
        triple = self.dict.get(key)
        if triple is None or triple.weight != weight:
            raise UnknownTuple(f"no triple for {key} at weight {weight}")
        if k == 0:
            return triple.count
        if k > triple.count:
            raise OverDecrement(
                f"tuple {key}: count {triple.count}, decrement {k}")
        triple.count -= k
        if triple.count == 0:
            del self.dict[key]
            pair = triple.pair
            del self.P[pair][(key[1], key[2])]
            if not self.P[pair]:
                del self.P[pair]
        return triple.count

    def min_weight_triple(self, x: int, y: int) -> Triple | None:
        """A minimum-weight triple of P(x, y); ties break on smallest (a, b)."""
        entries = self.P.get((x, y))
        if not entries:
            return None
        ab = min(entries, key=lambda k: (entries[k].weight, k))
        return entries[ab]

    def pair_triples_at(self, x: int, y: int, weight: float) -> list[Triple]:
        """Triples of P(x, y) at the given weight, (a, b)-ordered."""
        entries = self.P.get((x, y))
        if not entries:
            return []
        return [entries[ab] for ab in sorted(entries)
                if entries[ab].weight == weight]

    # -- P* ----------------------------------------------------------------

    def pstar_count(self, key: TupleKey) -> int:
        return self.Pstar.get((key[0], key[3]), {}).get((key[1], key[2]), 0)

    def pstar_increment(self, key: TupleKey, weight: float, k: int) -> int:
        if k < 1:
            raise EngineBug(f"pstar_increment with k={k}")
        triple = self.dict.get(key)
        if triple is None or triple.weight != weight:
            raise WeightMismatch(
                f"tuple {key} at weight {weight} not stored in P")
        pair = triple.pair
        counts = self.Pstar.setdefault(pair, {})
        counts[(key[1], key[2])] = counts.get((key[1], key[2]), 0) + k
        return counts[(key[1], key[2])]

    def pstar_decrement(self, key: TupleKey, weight: float, k: int) -> int:
        pair = (key[0], key[3])
        counts = self.Pstar.get(pair)
        if counts is None or (key[1], key[2]) not in counts:
            raise UnknownTuple(f"no shortest-path triple for {key}")
        if k == 0:
            return counts[(key[1], key[2])]
        if k > counts[(key[1], key[2])]:
            raise OverDecrement(
                f"tuple {key}: star count {counts[(key[1], key[2])]}, "
                f"decrement {k}")
        counts[(key[1], key[2])] -= k
        remaining = counts[(key[1], key[2])]
        if remaining == 0:
            del counts[(key[1], key[2])]
            if not counts:
                del self.Pstar[pair]
        return remaining

    def pstar_weight(self, x: int, y: int) -> float:
        """Common weight of the shortest-path triples of the pair (inf if none)."""
        counts = self.Pstar.get((x, y))
        if not counts:
            return math.inf
        a, b = next(iter(counts))
        return self.dict[(x, a, b, y)].weight

    # -- extension sets -----------------------------------------------------

    @staticmethod
    def _set_remove(sets: dict, key, member: int, name: str) -> None:
        s = sets.get(key)
        if s is None or member not in s:
            raise EngineBug(f"{name}{key}: removing absent member {member}")
        s.discard(member)
        if not s:
            del sets[key]

    def l_get(self, x: int, b: int, y: int) -> set[int]:
        return self.L.get((x, b, y), set())

    def l_add(self, x: int, b: int, y: int, member: int) -> None:
        self.L.setdefault((x, b, y), set()).add(member)

    def l_remove(self, x: int, b: int, y: int, member: int) -> None:
        self._set_remove(self.L, (x, b, y), member, "L")

    def r_get(self, x: int, a: int, y: int) -> set[int]:
        return self.R.get((x, a, y), set())

    def r_add(self, x: int, a: int, y: int, member: int) -> None:
        self.R.setdefault((x, a, y), set()).add(member)

    def r_remove(self, x: int, a: int, y: int, member: int) -> None:
        self._set_remove(self.R, (x, a, y), member, "R")

    def lstar_get(self, x: int, y: int) -> set[int]:
        return self.Lstar.get((x, y), set())

    def lstar_add(self, x: int, y: int, member: int) -> None:
        self.Lstar.setdefault((x, y), set()).add(member)

    def lstar_remove(self, x: int, y: int, member: int) -> None:
        self._set_remove(self.Lstar, (x, y), member, "L*")

    def lstar_discard(self, x: int, y: int, member: int) -> None:
        s = self.Lstar.get((x, y))
        if s is not None:
            s.discard(member)
            if not s:
                del self.Lstar[(x, y)]

    def rstar_get(self, x: int, y: int) -> set[int]:
        return self.Rstar.get((x, y), set())

    def rstar_add(self, x: int, y: int, member: int) -> None:
        self.Rstar.setdefault((x, y), set()).add(member)

    def rstar_remove(self, x: int, y: int, member: int) -> None:
        self._set_remove(self.Rstar, (x, y), member, "R*")

    def rstar_discard(self, x: int, y: int, member: int) -> None:
        s = self.Rstar.get((x, y))
        if s is not None:
            s.discard(member)
            if not s:
                del self.Rstar[(x, y)]

    # -- marked tuples -------------------------------------------------------

    def mark(self, key: TupleKey) -> None:
        self.marked.add(key)

    def is_marked(self, key: TupleKey) -> bool:
        return key in self.marked

    def clear_marks(self) -> None:
        self.marked.clear()

    # -- queries --------------------------------------------------------------

    def distance(self, x: int, y: int) -> float:
        if x == y:
            return 0.0
        return self.pstar_weight(x, y)

    def sigma(self, x: int, y: int) -> int:
        if x == y:
            return 1
        counts = self.Pstar.get((x, y))
        if not counts:
            return 0
        return sum(counts.values())

    def extract_sp_dag(self, s: int) -> "SPDag":
        """Shortest-path dag rooted at ``s``.

        Edge (u, z) is in the dag iff d(s,u) + w(u,z) = d(s,z); those are
        exactly the Rstar(s, u) members, so no graph access is needed.
        """
        dist: dict[int, float] = {s: 0.0}
        sigma: dict[int, int] = {s: 1}
        for (x, y), counts in self.Pstar.items():
            if x == s:
                a, b = next(iter(counts))
                dist[y] = self.dict[(x, a, b, y)].weight
                sigma[y] = sum(counts.values())
        edges: list[tuple[int, int]] = []
        for u in dist:
            for z in sorted(self.rstar_get(s, u)):
                edges.append((u, z))
        return SPDag(s, dist, sigma, edges)

    # -- dump / diagnostics -----------------------------------------------------

    def dump(self, labels: list[str] | None = None) -> str:
        """Canonical text form of the whole system, one fact per line,
        lexicographically sorted.  Bit-exact comparable."""
        from .graph import format_weight

        if labels is None:
            labels = [str(i) for i in range(self.n)]
        lines: list[str] = []
        for (x, a, b, y), t in self.dict.items():
            lines.append(
                f"P {labels[x]} {labels[y]} {labels[a]} {labels[b]} "
                f"{format_weight(t.weight)} {t.count}")
        for (x, y), counts in self.Pstar.items():
            for (a, b), c in counts.items():
                w = self.dict[(x, a, b, y)].weight
                lines.append(
                    f"P* {labels[x]} {labels[y]} {labels[a]} {labels[b]} "
                    f"{format_weight(w)} {c}")
        for (x, b, y), members in self.L.items():
            for mem in members:
                lines.append(f"L {labels[x]} {labels[b]} {labels[y]} {labels[mem]}")
        for (x, a, y), members in self.R.items():
            for mem in members:
                lines.append(f"R {labels[x]} {labels[a]} {labels[y]} {labels[mem]}")
        for (x, y), members in self.Lstar.items():
            for mem in members:
                lines.append(f"L* {labels[x]} {labels[y]} {labels[mem]}")
        for (x, y), members in self.Rstar.items():
            for mem in members:
                lines.append(f"R* {labels[x]} {labels[y]} {labels[mem]}")
        lines.sort()
        return "\n".join(lines) + ("\n" if lines else "")

    def triple_count(self) -> int:
        return len(self.dict)

    def check_invariants(self) -> None:
        """Structural self-checks for a settled (between-updates) system."""
        assert not self.marked, "marked tuples left over outside an update"
        for key, t in self.dict.items():
            assert t.count >= 1, f"stored triple {key} with count {t.count}"
            assert self.P[t.pair][(key[1], key[2])] is t
        for pair, entries in self.P.items():
            assert entries, f"empty P entry for {pair}"
            assert pair[0] != pair[1], f"diagonal pair {pair} stored"
            for (a, b), t in entries.items():
                assert t.key == (pair[0], a, b, pair[1])
                assert self.dict[t.key] is t
        for pair, counts in self.Pstar.items():
            assert counts, f"empty P* entry for {pair}"
            weights = set()
            for (a, b), c in counts.items():
                key = (pair[0], a, b, pair[1])
                t = self.dict.get(key)
                assert t is not None, f"P* triple {key} missing from P"
                assert 1 <= c <= t.count, f"P* count {c} vs P count {t.count}"
                weights.add(t.weight)
            assert len(weights) == 1, f"mixed P* weights for {pair}: {weights}"
            min_t = self.min_weight_triple(*pair)
            assert min_t is not None and min_t.weight == weights.pop()
        for pair in self.P:
            assert pair in self.Pstar, f"pair {pair} has LSTs but no ST"
        expect_l: dict[tuple[int, int, int], set[int]] = {}
        expect_r: dict[tuple[int, int, int], set[int]] = {}
        for (x, a, b, y) in self.dict:
            if is_single_edge((x, a, b, y)):
                continue
            expect_l.setdefault((a, b, y), set()).add(x)
            expect_r.setdefault((x, a, b), set()).add(y)
        assert self.L == expect_l, "L sets out of sync with stored tuples"
        assert self.R == expect_r, "R sets out of sync with stored tuples"


@dataclass
class SPDag:
    """Single-source shortest-path dag with distance and count annotations."""

    root: int
    dist: dict[int, float]
    sigma: dict[int, int]
    edges: list[tuple[int, int]]
    successors: dict[int, list[int]] = field(init=False)

    def __post_init__(self) -> None:
        self.successors = {}
        for u, z in self.edges:
            self.successors.setdefault(u, []).append(z)
