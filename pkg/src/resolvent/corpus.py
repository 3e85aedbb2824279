"""Graph ingestion, named generators and exhaustive labeled enumeration.

graph6 here is the plain labeled format: no ``>>graph6<<`` header on output
(it is tolerated on input) and no canonical relabelling. Enumeration masks
use the graph6 bit order, so bit ``t`` of a mask is the ``t``-th pair of
``(0,1), (0,2), (1,2), (0,3), ...``.
"""
from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import IO, Iterator, Optional, Union

from .errors import (
    BadParams,
    ConnectivityRetryExhausted,
    MalformedHeader,
    MalformedPayload,
    ParseError,
    TrailingBits,
    TruncatedPayload,
    UnsupportedSize,
)
from .graph import Graph, _reach, build_graph, is_connected

GRAPH6_MAX_N = 62
ENUMERATION_MAX_N = 7
RANDOM_RETRIES = 1000
_G6_HEADER = ">>graph6<<"


def pair_order(n: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(1, n) for i in range(j)]


def emit_graph6(g: Graph) -> str:
    n = g.n
    if n > GRAPH6_MAX_N:
        raise UnsupportedSize(f"graph6 writer supports n <= {GRAPH6_MAX_N}, got {n}")
    out = [chr(n + 63)]
    acc = nbits = 0
    masks = g.masks
    for j in range(1, n):
        mj = masks[j]
        for i in range(j):
            acc = acc << 1 | (mj >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise MalformedHeader("empty graph6 line")
    head = ord(s[0])
    if head == 126:
        raise UnsupportedSize(f"graph6 reader supports n <= {GRAPH6_MAX_N}")
    if not 63 <= head <= 125:
        raise MalformedHeader(f"bad graph6 size byte {s[0]!r}")
    n = head - 63
    payload = s[1:]
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    for ch in payload:
        if not 63 <= ord(ch) <= 126:
            raise MalformedPayload(f"bad graph6 data byte {ch!r}")
    if len(payload) < expected:
        raise TruncatedPayload(f"expected {expected} data bytes for n={n}, got {len(payload)}")
    if len(payload) > expected:
        raise TrailingBits(f"{len(payload) - expected} extra data bytes for n={n}")
    bits = 0
    for ch in payload:
        bits = bits << 6 | (ord(ch) - 63)
    pad = expected * 6 - nbits
    if bits & ((1 << pad) - 1):
        raise TrailingBits("nonzero padding bits")
    bits >>= pad
    edges = []
    t = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if bits >> t & 1:
                edges.append((i, j))
            t -= 1
    return build_graph(n, edges)


def parse_edge_list(text: str) -> Graph:
    """``n`` on the first line, then one ``u v`` pair per line (0-based)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty edge list")
    try:
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ParseError(f"expected 'u v', got {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from None
    return build_graph(n, edges)


@dataclass(frozen=True, eq=False)
class GraphRecord:
    graph: Graph
    source: str
    index: int = 0
    name: Optional[str] = None

    @cached_property
    def id(self) -> str:
        if self.name is not None:
            return self.name
        if self.graph.n <= GRAPH6_MAX_N:
            return emit_graph6(self.graph)
        return f"graph#{self.index}"


def _looks_like_edge_list(first_line: str) -> bool:
    return first_line.strip().isdigit()


def read_graphs(source: Union[str, Path, IO[str]]) -> Iterator[GraphRecord]:
    """Graphs from a path, ``"-"`` for stdin, or an open text stream.

    An edge-list file holds one graph; anything else is read as graph6,
    one graph per line.
    """
    if isinstance(source, (str, Path)):
        if str(source) == "-":
            yield from read_graphs(sys.stdin)
            return
        with open(source, encoding="ascii") as fh:
            yield from read_graphs(fh)
            return
    text = source.read()
    nonblank = [ln for ln in text.splitlines() if ln.strip()]
    if not nonblank:
        return
    if _looks_like_edge_list(nonblank[0]):
        yield GraphRecord(parse_edge_list(text), "file")
        return
    for idx, line in enumerate(nonblank):
        yield GraphRecord(parse_graph6(line), "file", idx)


def _int_param(value: str, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise BadParams(f"{what} must be an integer, got {value!r}") from None


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return build_graph(10, outer + inner + spokes)


def random_connected(n: int, p: float, seed: int) -> Graph:
    """G(n, p) by rejection until connected; deterministic in ``seed``."""
    rng = random.Random(seed)
    pairs = pair_order(n)
    for _ in range(RANDOM_RETRIES):
        g = build_graph(n, [e for e in pairs if rng.random() < p])
        if is_connected(g):
            return g
    raise ConnectivityRetryExhausted(f"no connected G({n}, {p}) in {RANDOM_RETRIES} draws")


def generate(name: str, *params: Union[str, int, float]) -> Graph:
    """Named graph families.

    ``path n``, ``cycle n``, ``complete n``, ``complete_bipartite m n``,
    ``star n`` (the star K_{1,n} with n leaves), ``petersen`` and
    ``random n p seed``.
    """
    ps = [str(p) for p in params]

    def need(count: int) -> None:
        if len(ps) != count:
            raise BadParams(f"{name} takes {count} parameter(s), got {len(ps)}")

    if name == "petersen":
        need(0)
        return petersen()
    if name == "random":
        need(3)
        n = _int_param(ps[0], "n")
        try:
            p = float(ps[1])
        except ValueError:
            raise BadParams(f"edge probability must be a number, got {ps[1]!r}") from None
        if not 0.0 <= p <= 1.0:
            raise BadParams(f"edge probability {p} outside [0, 1]")
        seed = _int_param(ps[2].removeprefix("seed"), "seed")
        if n < 1:
            raise BadParams("random graph needs n >= 1")
        return random_connected(n, p, seed)
    if name == "complete_bipartite":
        need(2)
        a, b = _int_param(ps[0], "m"), _int_param(ps[1], "n")
        if a < 1 or b < 1:
            raise BadParams("complete_bipartite needs m, n >= 1")
        return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    need(1)
    n = _int_param(ps[0], "n")
    if name == "path":
        if n < 1:
            raise BadParams("path needs n >= 1")
        return build_graph(n, [(i, i + 1) for i in range(n - 1)])
    if name == "cycle":
        if n < 3:
            raise BadParams("cycle needs n >= 3")
        return build_graph(n, [(i, (i + 1) % n) for i in range(n)])
    if name == "complete":
        if n < 1:
            raise BadParams("complete needs n >= 1")
        return build_graph(n, pair_order(n))
    if name == "star":
        if n < 1:
            raise BadParams("star needs at least one leaf")
        return build_graph(n + 1, [(0, i) for i in range(1, n + 1)])
    raise BadParams(f"unknown generator {name!r}")


def parse_generator_spec(spec: str) -> tuple[str, list[str]]:
    """Split ``name:param[:param...]``, e.g. ``random:8:0.4:seed42``."""
    name, *params = spec.split(":")
    if not name:
        raise BadParams(f"empty generator name in {spec!r}")
    return name, params


def generate_from_spec(spec: str) -> GraphRecord:
    name, params = parse_generator_spec(spec)
    return GraphRecord(generate(name, *params), "generator", name=spec)


def mask_to_masks(n: int, mask: int) -> tuple[int, ...]:
    """Adjacency bitmasks of the labeled graph encoded by ``mask``."""
    adj = [0] * n
    off = 0
    for j in range(1, n):
        col = mask >> off & ((1 << j) - 1)
        off += j
        if col:
            adj[j] = col
            bj = 1 << j
            i = 0
            while col:
                if col & 1:
                    adj[i] |= bj
                col >>= 1
                i += 1
    return tuple(adj)


def connected_masks(n: int, start: int = 0, stop: Optional[int] = None) -> Iterator[tuple[int, tuple[int, ...]]]:
    """``(mask, adjacency)`` for connected labeled graphs, ascending mask."""
    if not 1 <= n <= ENUMERATION_MAX_N:
        raise UnsupportedSize(f"exhaustive enumeration supports 1 <= n <= {ENUMERATION_MAX_N}, got {n}")
    total = 1 << (n * (n - 1) // 2)
    stop = total if stop is None else min(stop, total)
    full = (1 << n) - 1
    for mask in range(start, stop):
        adj = mask_to_masks(n, mask)
        if _reach(adj, 0, full) == full:
            yield mask, adj


def mask_space(n: int) -> int:
    if not 1 <= n <= ENUMERATION_MAX_N:
        raise UnsupportedSize(f"exhaustive enumeration supports 1 <= n <= {ENUMERATION_MAX_N}, got {n}")
    return 1 << (n * (n - 1) // 2)


def enumerate_connected(n: int) -> Iterator[GraphRecord]:
    """Every connected labeled graph on ``n`` vertices, no isomorph rejection."""
    for idx, (_, adj) in enumerate(connected_masks(n)):
        yield GraphRecord(Graph(n, adj), "enumeration", idx)
