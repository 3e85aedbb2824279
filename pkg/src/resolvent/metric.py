"""Resolving sets and the exact solvers for metric dimension, resolving
number and basis number.

A vertex set is passed around as a sorted tuple of vertex ids; that tuple
is the canonical ordering used for representations. Resolution is tested by
partition refinement: starting from the class ``V``, each chosen vertex
``w`` splits every class by distance to ``w``. ``W`` resolves the graph iff
every class ends up a singleton. Only classes with two or more members are
tracked, so an empty class list means "resolved".
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, NamedTuple, Optional

from .errors import EmptySet, VertexOutOfRange
from .graph import DistanceMatrix, Graph, all_pairs_distances, iter_bits, mask_of

VertexSet = tuple[int, ...]
Representation = tuple[int, ...]


def vertex_set(vertices: Iterable[int], n: Optional[int] = None) -> VertexSet:
    vs = tuple(sorted(set(vertices)))
    if n is not None and vs and not (0 <= vs[0] and vs[-1] < n):
        raise VertexOutOfRange(f"vertex set {vs} not within 0..{n - 1}")
    return vs


def representation(dm: DistanceMatrix, v: int, w: Iterable[int]) -> Representation:
    """Distances from ``v`` to the members of ``w`` in ascending id order."""
    ws = vertex_set(w, dm.n)
    if not ws:
        raise EmptySet("representation needs a non-empty vertex set")
    row = dm.dist[v]
    return tuple(row[x] for x in ws)


def resolves_pair(dm: DistanceMatrix, w: Iterable[int], u: int, v: int) -> bool:
    du, dv = dm.dist[u], dm.dist[v]
    return any(du[x] != dv[x] for x in w)


def _refine(classes: list[int], layers_w: tuple[int, ...]) -> list[int]:
    out = []
    for c in classes:
        for layer in layers_w:
            part = c & layer
            if part & (part - 1):
                out.append(part)
    return out


def _initial_classes(n: int) -> list[int]:
    return [(1 << n) - 1] if n >= 2 else []


def _unresolved_classes(dm: DistanceMatrix, w: Iterable[int]) -> list[int]:
    classes = _initial_classes(dm.n)
    for x in w:
        if not classes:
            break
        classes = _refine(classes, dm.layers[x])
    return classes


def unresolved_pair(dm: DistanceMatrix, w: Iterable[int]) -> Optional[tuple[int, int]]:
    """Lowest pair of distinct vertices sharing a representation, or None."""
    classes = _unresolved_classes(dm, vertex_set(w, dm.n))
    if not classes:
        return None
    c = min(classes, key=lambda m: m & -m)
    bits = iter_bits(c)
    return next(bits), next(bits)


def is_resolving(dm: DistanceMatrix, w: Iterable[int]) -> bool:
    return not _unresolved_classes(dm, vertex_set(w, dm.n))


def equidistant_class(dm: DistanceMatrix, u: int, v: int) -> VertexSet:
    """All ``w`` with d(w, u) == d(w, v)."""
    return tuple(iter_bits(_equidistant_mask(dm, u, v)))


def _equidistant_mask(dm: DistanceMatrix, u: int, v: int) -> int:
    lu, lv = dm.layers[u], dm.layers[v]
    m = 0
    for a, b in zip(lu, lv):
        m |= a & b
    return m


class ResolvingNumber(NamedTuple):
    res: int
    non_resolving: Optional[VertexSet]
    pair: Optional[tuple[int, int]]


def resolving_number(dm: DistanceMatrix) -> ResolvingNumber:
    """res(G) = 1 + the size of the largest equidistant class.

    A set fails to resolve exactly when it sits inside some E(u, v), so the
    largest non-resolving set is the largest such class. The witness is the
    first maximum class in (u, v) lexicographic order.
    """
    n = dm.n
    if n == 1:
        return ResolvingNumber(1, None, None)
    best = -1
    best_mask = 0
    best_pair = (0, 1)
    layers = dm.layers
    for u in range(n):
        lu = layers[u]
        for v in range(u + 1, n):
            m = 0
            for a, b in zip(lu, layers[v]):
                m |= a & b
            size = m.bit_count()
            if size > best:
                best, best_mask, best_pair = size, m, (u, v)
    return ResolvingNumber(best + 1, tuple(iter_bits(best_mask)), best_pair)


def resolving_subsets(dm: DistanceMatrix, k: int) -> Iterator[VertexSet]:
    """Every resolving k-subset, in lexicographic order."""
    n = dm.n
    if k < 0 or k > n:
        return
    layers = dm.layers
    chosen: list[int] = []

    def walk(start: int, classes: list[int]) -> Iterator[VertexSet]:
        left = k - len(chosen)
        if not classes:
            # already resolved; any completion resolves too
            prefix = tuple(chosen)
            for rest in combinations(range(start, n), left):
                yield prefix + rest
            return
        if left == 0:
            return
        for v in range(start, n - left + 1):
            chosen.append(v)
            yield from walk(v + 1, _refine(classes, layers[v]))
            chosen.pop()

    yield from walk(0, _initial_classes(n))


def first_resolving_subset(dm: DistanceMatrix, k: int) -> Optional[VertexSet]:
    return next(resolving_subsets(dm, k), None)


class Dimension(NamedTuple):
    value: int
    basis: VertexSet


def greedy_dimension_upper_bound(dm: DistanceMatrix) -> Dimension:
    """Add the vertex that splits the partition into the most classes until
    it is discrete. Ties go to the lowest id."""
    n = dm.n
    if n == 1:
        return Dimension(1, (0,))
    chosen: list[int] = []
    classes = _initial_classes(n)
    while classes:
        best_v, best_count, best_classes = -1, -1, classes
        for v in range(n):
            if v in chosen:
                continue
            count = 0
            for c in classes:
                for layer in dm.layers[v]:
                    if c & layer:
                        count += 1
            if count > best_count:
                best_v, best_count = v, count
        chosen.append(best_v)
        classes = _refine(classes, dm.layers[best_v])
    basis = tuple(sorted(chosen))
    assert is_resolving(dm, basis)
    return Dimension(len(basis), basis)


def metric_dimension(dm: DistanceMatrix, upper: Optional[int] = None) -> Dimension:
    """Exact metric dimension with the lexicographically first basis.

    Sizes are tried in increasing order up to the greedy bound (or ``upper``
    if given, which must be an upper bound on the dimension).
    """
    if dm.n == 1:
        return Dimension(1, (0,))
    if upper is None:
        upper = greedy_dimension_upper_bound(dm).value
    for k in range(1, upper + 1):
        found = first_resolving_subset(dm, k)
        if found is not None:
            return Dimension(k, found)
    raise AssertionError(f"no resolving set of size <= {upper}; bound was wrong")


def all_bases(dm: DistanceMatrix, beta: Optional[int] = None) -> list[VertexSet]:
    if dm.n == 1:
        return [(0,)]
    if beta is None:
        beta = metric_dimension(dm).value
    return list(resolving_subsets(dm, beta))


def basis_number(dm: DistanceMatrix, bases: Optional[list[VertexSet]] = None) -> int:
    """Largest r such that every r-subset of V lies inside some basis."""
    n = dm.n
    if n == 1:
        return 1
    if bases is None:
        bases = all_bases(dm)
    beta = len(bases[0])
    for r in range(beta, -1, -1):
        covered = set()
        for b in bases:
            for sub in combinations(b, r):
                covered.add(mask_of(sub))
        if len(covered) == comb(n, r):
            return r
    raise AssertionError("the empty set is always covered")


def randomly_k_status(dm: DistanceMatrix, res: Optional[int] = None) -> tuple[bool, int]:
    """(is randomly k-dimensional, res).

    Non-resolving sets are closed under subsets, so beta == res iff no
    (res-1)-subset resolves; when that holds k == res.
    """
    if res is None:
        res = resolving_number(dm).res
    if dm.n == 1 or res == 1:
        return True, res
    return first_resolving_subset(dm, res - 1) is None, res


def is_randomly_k_dimensional(dm: DistanceMatrix) -> tuple[bool, int]:
    """(every k-set is a basis, k) with k the metric dimension."""
    ok, res = randomly_k_status(dm)
    if ok:
        return True, res
    return False, metric_dimension(dm, upper=res - 1).value


ALL_QUANTITIES = frozenset({"beta", "res", "bas", "randk"})


@dataclass
class SolveReport:
    n: int
    edge_count: int
    beta: Optional[int] = None
    res: Optional[int] = None
    bas: Optional[int] = None
    k: Optional[int] = None
    is_randomly_k: Optional[bool] = None
    sample_basis: Optional[VertexSet] = None
    non_resolving_witness: Optional[tuple[VertexSet, tuple[int, int]]] = None
    all_bases_count: Optional[int] = None
    elapsed: float = field(default=0.0, compare=False)


def solve(g: Graph, compute: Iterable[str] = ALL_QUANTITIES) -> SolveReport:
    """Compute the requested invariants of a connected graph.

    ``compute`` is any subset of ``{"beta", "res", "bas", "randk"}``. The
    metric dimension is computed whenever ``bas`` or ``randk`` is requested
    because both are defined relative to it.
    """
    want = set(compute)
    unknown = want - ALL_QUANTITIES
    if unknown:
        raise ValueError(f"unknown quantities {sorted(unknown)}")
    t0 = time.perf_counter()
    dm = all_pairs_distances(g)
    rep = SolveReport(n=g.n, edge_count=g.edge_count)

    res_info = None
    if want & {"res", "randk"}:
        res_info = resolving_number(dm)
        rep.res = res_info.res
        if res_info.non_resolving is not None:
            rep.non_resolving_witness = (res_info.non_resolving, res_info.pair)

    if want & {"beta", "bas", "randk"}:
        dim = metric_dimension(dm, upper=res_info.res if res_info else None)
        rep.beta = rep.k = dim.value
        rep.sample_basis = dim.basis

    if "bas" in want:
        bases = all_bases(dm, rep.beta)
        rep.all_bases_count = len(bases)
        rep.bas = basis_number(dm, bases)

    if "randk" in want:
        rep.is_randomly_k = rep.beta == rep.res

    rep.elapsed = time.perf_counter() - t0
    return rep
