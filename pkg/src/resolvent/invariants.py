"""Executable theorem checks over connected graphs.

Each ``check_*`` function takes a graph (and optionally a shared
:class:`GraphFacts` cache) and returns a :class:`TheoremVerdict`. Since the
statements are proved, a failing verdict means a solver bug, and its
``counterexample`` carries enough to reproduce it (graph6 plus the offending
vertices or sets).

A pass is *vacuous* when the statement's hypothesis does not apply to the
graph; ``reason`` then names the hypothesis that failed.
"""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Iterable, Optional

from . import metric
from .corpus import GraphRecord, emit_graph6
from .errors import Disconnected
from .graph import (
    DistanceMatrix,
    Graph,
    _reach,
    all_pairs_distances,
    clique_number,
    cut_vertices,
    is_cycle,
    iter_bits,
    twin_pairs,
)


@dataclass(slots=True)
class TheoremVerdict:
    theorem_id: str
    graph_id: str
    holds: bool
    vacuous: bool = False
    reason: Optional[str] = None
    counterexample: Optional[dict[str, Any]] = None
    elapsed: float = field(default=0.0, compare=False)

    @property
    def status(self) -> str:
        if not self.holds:
            return "fail"
        return "vacuous" if self.vacuous else "pass"


class GraphFacts:
    """Quantities shared by all checks on one graph.

    Everything every check needs is computed up front; ``k`` is the
    dimension and is only meaningful when ``randomly`` holds.
    """

    def __init__(self, g: Graph, graph_id: Optional[str] = None):
        self.g = g
        self.graph_id = graph_id if graph_id is not None else emit_graph6(g)
        self.dm: DistanceMatrix = all_pairs_distances(g)
        self.res_info = metric.resolving_number(self.dm)
        self.res = self.res_info.res
        self.randomly, self.k = metric.randomly_k_status(self.dm, self.res)
        self.twins = twin_pairs(g)
        self.degrees = g.degrees()
        self.complete = g.is_complete()

    def reproducer(self, **extra: Any) -> dict[str, Any]:
        return {"graph6": emit_graph6(self.g), **extra}


def _facts(g: Graph, facts: Optional[GraphFacts]) -> GraphFacts:
    return facts if facts is not None else GraphFacts(g)


def _verdict(theorem: str, f: GraphFacts, bad: Optional[dict] = None) -> TheoremVerdict:
    if bad is None:
        return TheoremVerdict(theorem, f.graph_id, True)
    return TheoremVerdict(theorem, f.graph_id, False, counterexample=f.reproducer(**bad))


def _vacuous(theorem: str, f: GraphFacts, reason: str) -> TheoremVerdict:
    return TheoremVerdict(theorem, f.graph_id, True, vacuous=True, reason=reason)


NOT_RANDOMLY = "not randomly k-dimensional"


def check_res_extremes(g: Graph, facts: Optional[GraphFacts] = None) -> TheoremVerdict:
    """res = 1 iff G is P_1 or P_2; res = n-1 iff G has a twin pair."""
    f = _facts(g, facts)
    n = g.n
    res = f.res
    tiny_path = n == 1 or (n == 2 and g.edge_count == 1)
    if (res == 1) != tiny_path:
        return _verdict("res_extremes", f, {"clause": "res=1", "res": res, "n": n})
    if (res == n - 1) != bool(f.twins):
        return _verdict("res_extremes", f, {
            "clause": "res=n-1", "res": res, "n": n,
            "twins": [list(p) for p in f.twins],
            "max_equidistant_class": list(f.res_info.non_resolving or ()),
        })
    return _verdict("res_extremes", f)


def check_twin_free(g: Graph, facts: Optional[GraphFacts] = None) -> TheoremVerdict:
    f = _facts(g, facts)
    if not f.randomly:
        return _vacuous("twin_free", f, NOT_RANDOMLY)
    if f.complete:
        return _vacuous("twin_free", f, "graph is complete")
    if f.twins:
        return _verdict("twin_free", f, {"k": f.k, "twins": list(f.twins[0])})
    return _verdict("twin_free", f)


def check_min_degree(g: Graph, facts: Optional[GraphFacts] = None) -> TheoremVerdict:
    f = _facts(g, facts)
    if not f.randomly:
        return _vacuous("min_degree", f, NOT_RANDOMLY)
    if f.k < 2:
        return _vacuous("min_degree", f, "k < 2")
    low = [v for v, d in enumerate(f.degrees) if d < 2]
    if low:
        return _verdict("min_degree", f, {"k": f.k, "vertex": low[0], "degree": f.degrees[low[0]]})
    return _verdict("min_degree", f)


def check_two_connected(g: Graph, facts: Optional[GraphFacts] = None) -> TheoremVerdict:
    # K_n passes here: the statement only needs "no cut vertex"
    f = _facts(g, facts)
    if not f.randomly:
        return _vacuous("two_connected", f, NOT_RANDOMLY)
    if f.k < 2:
        return _vacuous("two_connected", f, "k < 2")
    cuts = sorted(cut_vertices(g))
    if cuts:
        return _verdict("two_connected", f, {"k": f.k, "cut_vertices": cuts})
    return _verdict("two_connected", f)


def check_no_adjacent_degree_two(g: Graph, facts: Optional[GraphFacts] = None) -> TheoremVerdict:
    f = _facts(g, facts)
    if not f.randomly:
        return _vacuous("no_adjacent_degree_two", f, NOT_RANDOMLY)
    if f.k < 4:
        return _vacuous("no_adjacent_degree_two", f, "k < 4")
    degs = f.degrees
    for u, v in g.edges():
        if degs[u] == 2 and degs[v] == 2:
            return _verdict("no_adjacent_degree_two", f, {"k": f.k, "edge": [u, v]})
    return _verdict("no_adjacent_degree_two", f)


def _components(g: Graph, allowed: int) -> list[int]:
    comps = []
    rest = allowed
    while rest:
        start = (rest & -rest).bit_length() - 1
        comp = _reach(g.masks, start, allowed)
        comps.append(comp)
        rest &= ~comp
    return comps


def check_separating_set_structure(g: Graph, facts: Optional[GraphFacts] = None) -> TheoremVerdict:
    """Every separating (k-1)-set T leaves exactly two components, and every
    pair tied on T lies in different components."""
    f = _facts(g, facts)
    if not f.randomly:
        return _vacuous("separating_set_structure", f, NOT_RANDOMLY)
    k, n, dist = f.k, g.n, f.dm.dist
    seen_separating = False
    for t in combinations(range(n), k - 1):
        tmask = 0
        for x in t:
            tmask |= 1 << x
        comps = _components(g, g.full_mask & ~tmask)
        if len(comps) < 2:
            continue
        seen_separating = True
        if len(comps) != 2:
            return _verdict("separating_set_structure", f, {
                "k": k, "T": list(t), "components": [list(iter_bits(c)) for c in comps],
            })
        side = {v: i for i, c in enumerate(comps) for v in iter_bits(c)}
        groups: dict[tuple[int, ...], list[int]] = {}
        for v in side:
            groups.setdefault(tuple(dist[v][x] for x in t), []).append(v)
        for members in groups.values():
            for u, v in combinations(members, 2):
                if side[u] == side[v]:
                    return _verdict("separating_set_structure", f, {
                        "k": k, "T": list(t), "tied_pair_same_component": [u, v],
                    })
    if not seen_separating:
        return _vacuous("separating_set_structure", f, "no separating (k-1)-set")
    return _verdict("separating_set_structure", f)


def check_max_degree_lower(g: Graph, facts: Optional[GraphFacts] = None) -> TheoremVerdict:
    f = _facts(g, facts)
    if not f.randomly:
        return _vacuous("max_degree_lower", f, NOT_RANDOMLY)
    if f.k < 2:
        return _vacuous("max_degree_lower", f, "k < 2")
    if max(f.degrees) < f.k:
        return _verdict("max_degree_lower", f, {"k": f.k, "max_degree": max(f.degrees)})
    return _verdict("max_degree_lower", f)


def check_nonadjacent_degree_sum(g: Graph, facts: Optional[GraphFacts] = None) -> TheoremVerdict:
    f = _facts(g, facts)
    if not f.randomly:
        return _vacuous("nonadjacent_degree_sum", f, NOT_RANDOMLY)
    if f.complete:
        return _vacuous("nonadjacent_degree_sum", f, "no non-adjacent pairs")
    degs = f.degrees
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.has_edge(u, v) and degs[u] + degs[v] < f.k:
                return _verdict("nonadjacent_degree_sum", f, {
                    "k": f.k, "pair": [u, v], "degree_sum": degs[u] + degs[v],
                })
    return _verdict("nonadjacent_degree_sum", f)


def check_clique_bound(g: Graph, facts: Optional[GraphFacts] = None) -> TheoremVerdict:
    f = _facts(g, facts)
    if not f.randomly:
        return _vacuous("clique_bound", f, NOT_RANDOMLY)
    if g.n < 2:
        return _vacuous("clique_bound", f, "order < 2")
    omega = clique_number(g)
    if omega > f.k + 1 or (omega == f.k + 1) != f.complete:
        return _verdict("clique_bound", f, {"k": f.k, "clique_number": omega, "complete": f.complete})
    return _verdict("clique_bound", f)


def check_common_neighbors(g: Graph, facts: Optional[GraphFacts] = None) -> TheoremVerdict:
    """Every pair has at most res - 1 common neighbours (any connected graph)."""
    f = _facts(g, facts)
    if g.n < 2:
        return _vacuous("common_neighbors", f, "fewer than two vertices")
    limit = f.res - 1
    m = g.masks
    for u in range(g.n):
        for v in range(u + 1, g.n):
            common = m[u] & m[v]
            if common.bit_count() > limit:
                return _verdict("common_neighbors", f, {
                    "res": f.res, "pair": [u, v], "common": list(iter_bits(common)),
                })
    return _verdict("common_neighbors", f)


def check_max_degree_upper(g: Graph, facts: Optional[GraphFacts] = None) -> TheoremVerdict:
    f = _facts(g, facts)
    if not f.randomly:
        return _vacuous("max_degree_upper", f, NOT_RANDOMLY)
    if f.complete:
        return _vacuous("max_degree_upper", f, "graph is complete")
    if max(f.degrees) > g.n - 2:
        v = f.degrees.index(max(f.degrees))
        return _verdict("max_degree_upper", f, {"k": f.k, "dominating_vertex": v})
    return _verdict("max_degree_upper", f)


def check_randomly_2_characterization(g: Graph, facts: Optional[GraphFacts] = None) -> TheoremVerdict:
    """Randomly 2-dimensional iff an odd cycle (C_3 = K_3 included)."""
    f = _facts(g, facts)
    odd_cycle = is_cycle(g) and g.n % 2 == 1
    randomly_2 = f.randomly and f.k == 2
    if randomly_2 != odd_cycle:
        return _verdict("randomly_2_characterization", f, {
            "randomly_2": randomly_2, "odd_cycle": odd_cycle, "res": f.res,
        })
    return _verdict("randomly_2_characterization", f)


CHECKS: dict[str, Callable[[Graph, Optional[GraphFacts]], TheoremVerdict]] = {
    "res_extremes": check_res_extremes,
    "twin_free": check_twin_free,
    "min_degree": check_min_degree,
    "two_connected": check_two_connected,
    "no_adjacent_degree_two": check_no_adjacent_degree_two,
    "separating_set_structure": check_separating_set_structure,
    "max_degree_lower": check_max_degree_lower,
    "nonadjacent_degree_sum": check_nonadjacent_degree_sum,
    "clique_bound": check_clique_bound,
    "common_neighbors": check_common_neighbors,
    "max_degree_upper": check_max_degree_upper,
    "randomly_2_characterization": check_randomly_2_characterization,
}


def check_graph(g: Graph, graph_id: Optional[str] = None) -> list[TheoremVerdict]:
    """Run every check on one connected graph, in :data:`CHECKS` order."""
    f = GraphFacts(g, graph_id)
    out = []
    for fn in CHECKS.values():
        t0 = time.perf_counter()
        v = fn(g, f)
        v.elapsed = time.perf_counter() - t0
        out.append(v)
    return out


@dataclass
class SuiteSummary:
    graphs: int = 0
    skipped_disconnected: int = 0
    counts: dict[str, Counter] = field(default_factory=lambda: {t: Counter() for t in CHECKS})
    vacuous_reasons: dict[str, Counter] = field(default_factory=lambda: {t: Counter() for t in CHECKS})

    def add(self, verdicts: Iterable[TheoremVerdict]) -> None:
        self.graphs += 1
        for v in verdicts:
            self.counts[v.theorem_id][v.status] += 1
            if v.vacuous:
                self.vacuous_reasons[v.theorem_id][v.reason] += 1

    def merge(self, other: "SuiteSummary") -> None:
        self.graphs += other.graphs
        self.skipped_disconnected += other.skipped_disconnected
        for t in CHECKS:
            self.counts[t].update(other.counts[t])
            self.vacuous_reasons[t].update(other.vacuous_reasons[t])

    @property
    def failures(self) -> int:
        return sum(c["fail"] for c in self.counts.values())

    def table(self) -> dict[str, dict[str, int]]:
        return {
            t: {"pass": c["pass"], "vacuous": c["vacuous"], "fail": c["fail"]}
            for t, c in self.counts.items()
        }


@dataclass
class SuiteResult:
    verdicts: list[TheoremVerdict]
    summary: SuiteSummary


def run_suite(
    corpus: Iterable[GraphRecord | Graph],
    keep: str = "all",
    fail_fast: bool = False,
) -> SuiteResult:
    """Apply every check to every graph in corpus order.

    ``keep`` is ``"all"`` or ``"failures"`` (which verdicts to retain; the
    summary always counts everything). Disconnected graphs are skipped and
    counted. With ``fail_fast`` the run stops after the first graph that
    produced a failing verdict.
    """
    if keep not in ("all", "failures"):
        raise ValueError(f"keep must be 'all' or 'failures', got {keep!r}")
    summary = SuiteSummary()
    kept: list[TheoremVerdict] = []
    for item in corpus:
        g, gid = (item.graph, item.id) if isinstance(item, GraphRecord) else (item, None)
        try:
            verdicts = check_graph(g, gid)
        except Disconnected:
            summary.skipped_disconnected += 1
            continue
        summary.add(verdicts)
        kept.extend(v for v in verdicts if keep == "all" or not v.holds)
        if fail_fast and any(not v.holds for v in verdicts):
            break
    return SuiteResult(kept, summary)
