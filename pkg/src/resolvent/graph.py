"""Immutable simple graphs on vertices ``0..n-1`` and the structural
primitives the solvers and theorem checks rely on.

Adjacency is kept twice: as frozensets for readable code and as integer
bitmasks (bit ``v`` set means ``v`` is a neighbour) for the hot loops.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import (
    CapacityExceeded,
    Disconnected,
    GraphError,
    SelfLoop,
    VertexOutOfRange,
)

MAX_VERTICES = 64


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    masks: tuple[int, ...]

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(iter_bits(m)) for m in self.masks)

    @cached_property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.masks) // 2

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.masks[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.masks]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` pairs with ``u < v``, sorted."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.masks[u] >> (u + 1) << (u + 1))]

    def is_complete(self) -> bool:
        return self.edge_count == self.n * (self.n - 1) // 2

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.n, self.masks))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list; duplicate edges collapse."""
    if n > MAX_VERTICES:
        raise CapacityExceeded(f"{n} vertices exceeds the limit of {MAX_VERTICES}")
    if n < 1:
        raise GraphError("a graph needs at least one vertex")
    masks = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return Graph(n, tuple(masks))


def _reach(masks: tuple[int, ...], start: int, allowed: int) -> int:
    seen = frontier = 1 << start
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= masks[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph) -> bool:
    return _reach(g.masks, 0, g.full_mask) == g.full_mask


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """All-pairs hop distances of a connected graph.

    ``layers[v][d]`` is the bitmask of vertices at distance exactly ``d``
    from ``v``; the metric solvers work almost entirely on these. The plain
    matrix ``dist`` is derived on first use.
    """

    n: int
    layers: tuple[tuple[int, ...], ...]

    @cached_property
    def dist(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for ls in self.layers:
            row = [0] * self.n
            for d, layer in enumerate(ls):
                for v in iter_bits(layer):
                    row[v] = d
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def eccentricity(self) -> tuple[int, ...]:
        return tuple(len(ls) - 1 for ls in self.layers)

    def __getitem__(self, uv: tuple[int, int]) -> int:
        u, v = uv
        return self.dist[u][v]


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """BFS from every vertex; raises :class:`Disconnected` rather than
    reporting infinite distances."""
    n, masks, full = g.n, g.masks, g.full_mask
    layers = []
    for s in range(n):
        seen = frontier = 1 << s
        ls = [frontier]
        while True:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= masks[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~seen
            if not frontier:
                break
            seen |= frontier
            ls.append(frontier)
        if seen != full:
            missing = (full & ~seen).bit_length() - 1
            raise Disconnected(f"vertex {missing} unreachable from vertex {s}")
        layers.append(tuple(ls))
    return DistanceMatrix(n, tuple(layers))


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise Disconnected("graph is not connected")


def cut_vertices(g: Graph) -> frozenset[int]:
    """Vertices whose removal disconnects the rest, by direct removal."""
    _require_connected(g)
    full = g.full_mask
    cuts = set()
    for v in range(g.n):
        rest = full & ~(1 << v)
        if not rest:
            continue
        start = (rest & -rest).bit_length() - 1
        if _reach(g.masks, start, rest) != rest:
            cuts.add(v)
    return frozenset(cuts)


def has_no_cut_vertex(g: Graph) -> bool:
    return not cut_vertices(g)


def is_two_connected(g: Graph) -> bool:
    """2-connectedness in the strict sense that excludes complete graphs."""
    if g.n < 3 or g.is_complete():
        _require_connected(g)
        return False
    return has_no_cut_vertex(g)


def clique_number(g: Graph) -> int:
    """Maximum clique size by branch and bound with a greedy colouring bound."""
    masks = g.masks
    best = 0

    def colour_order(cand: int) -> list[tuple[int, int]]:
        order = []
        colour = 0
        uncoloured = cand
        while uncoloured:
            colour += 1
            q = uncoloured
            while q:
                v = (q & -q).bit_length() - 1
                q &= ~(1 << v) & ~masks[v]
                uncoloured &= ~(1 << v)
                order.append((v, colour))
        return order

    def expand(size: int, cand: int) -> None:
        nonlocal best
        for v, colour in reversed(colour_order(cand)):
            if size + colour <= best:
                return
            sub = cand & masks[v]
            if sub:
                expand(size + 1, sub)
            elif size + 1 > best:
                best = size + 1
            cand &= ~(1 << v)

    expand(0, g.full_mask)
    return best


def twin_pairs(g: Graph) -> list[tuple[int, int]]:
    """Pairs ``(u, v)``, ``u < v``, with N(u) - {v} == N(v) - {u}."""
    m = g.masks
    return [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if m[u] & ~(1 << v) == m[v] & ~(1 << u)
    ]


def is_path(g: Graph) -> bool:
    """True iff ``g`` is a path P_n (any labelling)."""
    if not is_connected(g):
        return False
    if g.n == 1:
        return True
    degs = sorted(g.degrees())
    return g.edge_count == g.n - 1 and degs[-1] <= 2


def is_cycle(g: Graph) -> bool:
    """True iff ``g`` is a cycle C_n, n >= 3 (any labelling)."""
    return g.n >= 3 and all(d == 2 for d in g.degrees()) and is_connected(g)


@dataclass(frozen=True)
class GraphSummary:
    min_degree: int
    max_degree: int
    clique_number: int
    cut_vertices: frozenset[int]
    is_two_connected: bool
    twin_pairs: tuple[tuple[int, int], ...]


def summarize(g: Graph) -> GraphSummary:
    degs = g.degrees()
    return GraphSummary(
        min_degree=min(degs),
        max_degree=max(degs),
        clique_number=clique_number(g),
        cut_vertices=cut_vertices(g),
        is_two_connected=is_two_connected(g),
        twin_pairs=tuple(twin_pairs(g)),
    )
