import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resolvent.corpus import generate, petersen, random_connected
from resolvent.errors import Disconnected, EmptySet
from resolvent.graph import all_pairs_distances, build_graph, is_path, twin_pairs
from resolvent.metric import (
    all_bases,
    basis_number,
    equidistant_class,
    greedy_dimension_upper_bound,
    is_randomly_k_dimensional,
    is_resolving,
    metric_dimension,
    randomly_k_status,
    representation,
    resolves_pair,
    resolving_number,
    solve,
    unresolved_pair,
)

from oracles import (
    adjacency,
    bfs_distances,
    brute_basis_number,
    brute_bases,
    brute_metric_dimension,
    brute_resolving_number,
)


def dm_of(name, *params):
    return all_pairs_distances(generate(name, *params))


C5 = dm_of("cycle", 5)


class TestRepresentation:
    def test_c5_example(self):
        # v_i -> i - 1, B = {v_1, v_2}
        assert representation(C5, 3, {0, 1}) == (2, 2)

    def test_singleton(self):
        assert all(representation(C5, v, [v]) == (0,) for v in range(5))

    def test_order_is_canonical(self):
        assert representation(C5, 2, [1, 0]) == representation(C5, 2, [0, 1]) == (2, 1)

    def test_petersen_against_bfs(self):
        g = petersen()
        d = bfs_distances(adjacency(g))
        assert representation(all_pairs_distances(g), 0, {1, 2, 3}) == (1, 2, 2)
        assert representation(all_pairs_distances(g), 0, {1, 2, 3}) == tuple(d[0][x] for x in (1, 2, 3))

    def test_empty(self):
        with pytest.raises(EmptySet):
            representation(C5, 0, [])

    def test_zero_coordinate_iff_member(self):
        dm = all_pairs_distances(petersen())
        w = (1, 4, 7)
        for v in range(10):
            zeros = representation(dm, v, w).count(0)
            assert zeros == (1 if v in w else 0)


class TestResolves:
    def test_pair(self):
        assert not resolves_pair(dm_of("complete", 3), [0], 1, 2)
        assert resolves_pair(C5, [2], 2, 4)
        assert not resolves_pair(C5, [0], 2, 3)

    def test_is_resolving(self):
        assert is_resolving(C5, {0, 1})
        assert all(is_resolving(C5, w) for w in combinations(range(5), 2))
        k4 = dm_of("complete", 4)
        assert not any(is_resolving(k4, w) for w in combinations(range(4), 2))
        assert unresolved_pair(k4, (0, 1)) == (2, 3)
        assert unresolved_pair(C5, (0, 1)) is None

    def test_agrees_with_definition(self, connected_upto_6):
        for n, gs in connected_upto_6.items():
            for g in gs[::11]:
                dm = all_pairs_distances(g)
                d = bfs_distances(adjacency(g))
                for k in range(1, n + 1):
                    for w in combinations(range(n), k):
                        reps = [tuple(d[v][x] for x in w) for v in range(n)]
                        assert is_resolving(dm, w) == (len(set(reps)) == n)

    def test_unresolved_pair_is_tied(self):
        dm = all_pairs_distances(petersen())
        u, v = unresolved_pair(dm, (0, 1))
        assert u != v and representation(dm, u, (0, 1)) == representation(dm, v, (0, 1))


class TestEquidistant:
    def test_path(self):
        p5 = dm_of("path", 5)
        assert equidistant_class(p5, 1, 3) == (2,)

    def test_complete(self):
        assert equidistant_class(dm_of("complete", 6), 1, 4) == (0, 2, 3, 5)

    def test_cycle(self):
        # brute force over the C_5 distance table gives {v_1}
        assert equidistant_class(C5, 2, 3) == (0,)


class TestResolvingNumber:
    def test_examples(self):
        assert resolving_number(dm_of("path", 2)).res == 1
        assert resolving_number(C5).res == 2
        for n in range(2, 8):
            assert resolving_number(dm_of("complete", n)).res == n - 1

    def test_witness(self):
        info = resolving_number(dm_of("path", 5))
        assert info.res == 2
        assert len(info.non_resolving) == info.res - 1
        assert not is_resolving(dm_of("path", 5), info.non_resolving)

    def test_closed_form_matches_definition(self, connected_upto_6):
        for gs in connected_upto_6.values():
            for g in gs:
                assert resolving_number(all_pairs_distances(g)).res == \
                    brute_resolving_number(bfs_distances(adjacency(g)))

    def test_disconnected(self):
        with pytest.raises(Disconnected):
            solve(build_graph(2, []))


class TestMetricDimension:
    def test_path(self):
        assert metric_dimension(dm_of("path", 7)) == (1, (0,))

    def test_complete(self):
        assert metric_dimension(dm_of("complete", 6)).value == 5

    def test_petersen(self):
        g = petersen()
        expected = brute_metric_dimension(bfs_distances(adjacency(g)))
        beta, basis = metric_dimension(all_pairs_distances(g))
        assert beta == expected == 3
        assert is_resolving(all_pairs_distances(g), basis)

    def test_matches_definition(self, connected_upto_6):
        for gs in connected_upto_6.values():
            for g in gs[::3]:
                dm = all_pairs_distances(g)
                beta, basis = metric_dimension(dm)
                assert beta == brute_metric_dimension(bfs_distances(adjacency(g)))
                assert len(basis) == beta and is_resolving(dm, basis)

    def test_lexicographically_first_basis(self, connected_upto_6):
        for g in connected_upto_6[5][::9]:
            dm = all_pairs_distances(g)
            assert metric_dimension(dm).basis == brute_bases(bfs_distances(adjacency(g)))[0]

    def test_extremes(self, connected_upto_6):
        for n, gs in connected_upto_6.items():
            for g in gs:
                beta = metric_dimension(all_pairs_distances(g)).value
                assert (beta == 1) == is_path(g)
                if n >= 2:
                    assert (beta == n - 1) == g.is_complete()


class TestGreedy:
    def test_path(self):
        bound, w = greedy_dimension_upper_bound(dm_of("path", 5))
        assert bound >= 1 and is_resolving(dm_of("path", 5), w)

    def test_complete(self):
        assert greedy_dimension_upper_bound(dm_of("complete", 4)).value == 3

    @pytest.mark.parametrize("seed", range(10))
    def test_random_upper_bound(self, seed):
        g = random_connected(8, 0.4, seed)
        dm = all_pairs_distances(g)
        bound, w = greedy_dimension_upper_bound(dm)
        assert is_resolving(dm, w) and len(w) == bound
        assert bound >= brute_metric_dimension(bfs_distances(adjacency(g)))


class TestBases:
    def test_path(self):
        assert all_bases(dm_of("path", 5)) == [(0,), (4,)]

    def test_cycle(self):
        assert all_bases(C5) == list(combinations(range(5), 2))

    def test_triangle(self):
        assert all_bases(dm_of("complete", 3)) == [(0, 1), (0, 2), (1, 2)]

    def test_matches_definition(self, connected_upto_6):
        for gs in connected_upto_6.values():
            for g in gs[::13]:
                assert all_bases(all_pairs_distances(g)) == brute_bases(bfs_distances(adjacency(g)))


class TestBasisNumber:
    def test_examples(self):
        assert basis_number(C5) == 2
        assert basis_number(dm_of("path", 5)) == 0
        for n in range(2, 7):
            assert basis_number(dm_of("complete", n)) == n - 1

    def test_matches_definition(self, connected_upto_6):
        for n in range(1, 6):
            for g in connected_upto_6[n]:
                assert basis_number(all_pairs_distances(g)) == brute_basis_number(bfs_distances(adjacency(g)))


class TestRandomlyK:
    def test_examples(self):
        assert is_randomly_k_dimensional(dm_of("cycle", 7)) == (True, 2)
        assert is_randomly_k_dimensional(dm_of("cycle", 6)) == (False, 2)
        assert is_randomly_k_dimensional(dm_of("path", 2)) == (True, 1)
        assert is_randomly_k_dimensional(dm_of("complete", 1)) == (True, 1)

    def test_three_ways_agree(self, connected_upto_6):
        for gs in connected_upto_6.values():
            for g in gs:
                dm = all_pairs_distances(g)
                d = bfs_distances(adjacency(g))
                beta, res = brute_metric_dimension(d), brute_resolving_number(d)
                flag, k = is_randomly_k_dimensional(dm)
                assert k == beta
                assert flag == (beta == res)
                assert randomly_k_status(dm)[0] == flag
        for g in connected_upto_6[5]:
            d = bfs_distances(adjacency(g))
            assert (brute_basis_number(d) == brute_metric_dimension(d)) == \
                is_randomly_k_dimensional(all_pairs_distances(g))[0]


class TestSolve:
    def test_cycle(self):
        r = solve(generate("cycle", 5))
        assert (r.beta, r.res, r.bas, r.is_randomly_k) == (2, 2, 2, True)
        assert r.all_bases_count == 10

    def test_k2(self):
        r = solve(generate("path", 2))
        assert (r.beta, r.res, r.bas, r.is_randomly_k) == (1, 1, 1, True)

    def test_k1(self):
        r = solve(generate("complete", 1))
        assert (r.beta, r.res, r.bas, r.k, r.is_randomly_k) == (1, 1, 1, 1, True)

    def test_path(self):
        r = solve(generate("path", 5))
        d = bfs_distances(adjacency(generate("path", 5)))
        expected = (brute_metric_dimension(d), brute_resolving_number(d), brute_basis_number(d))
        assert (r.beta, r.res, r.bas) == expected == (1, 2, 0)
        assert r.is_randomly_k is False
        assert r.non_resolving_witness is not None
        s, (u, v) = r.non_resolving_witness
        assert len(s) == r.res - 1 and not resolves_pair(dm_of("path", 5), s, u, v)

    def test_selection(self):
        r = solve(generate("cycle", 5), {"res"})
        assert r.res == 2 and r.beta is None and r.bas is None

    def test_chain(self, connected_upto_6):
        for n, gs in connected_upto_6.items():
            for g in gs[::4]:
                r = solve(g)
                assert 1 <= r.beta <= r.res <= max(n - 1, 1)
                assert 0 <= r.bas <= r.beta
                assert r.k == r.beta
                assert r.is_randomly_k == (r.beta == r.res) == (r.bas == r.beta)


def test_superset_monotonicity():
    rng = random.Random(7)
    for seed in range(15):
        g = random_connected(8, 0.35, seed)
        dm = all_pairs_distances(g)
        for basis in all_bases(dm)[:5]:
            rest = [v for v in range(g.n) if v not in basis]
            extra = rng.sample(rest, rng.randint(0, len(rest)))
            assert is_resolving(dm, tuple(basis) + tuple(extra))


def test_twin_obstruction(connected_upto_6):
    for gs in connected_upto_6.values():
        for g in gs[::3]:
            dm = all_pairs_distances(g)
            twins = twin_pairs(g)
            if not twins:
                continue
            found = all_bases(dm) + [greedy_dimension_upper_bound(dm).basis]
            for w in found:
                for u, v in twins:
                    assert u in w or v in w


@settings(max_examples=60, deadline=None)
@given(st.integers(6, 9), st.floats(0.25, 0.8), st.integers(0, 10_000))
def test_random_graphs_against_oracles(n, p, seed):
    g = random_connected(n, p, seed)
    d = bfs_distances(adjacency(g))
    r = solve(g, {"beta", "res", "randk"})
    assert r.beta == brute_metric_dimension(d)
    assert r.res == brute_resolving_number(d)


def test_example_h(example_h):
    dm = all_pairs_distances(example_h)
    printed = [(0, 1), (1, 0), (1, 1), (2, 2), (1, 2)]
    assert [representation(dm, v, (0, 1)) for v in range(5)] == printed
    assert not is_resolving(dm, (0, 3))
    for basis in [(0, 1), (0, 2), (3, 4)]:
        assert basis in all_bases(dm)
    r = solve(example_h)
    assert (r.beta, r.bas, r.res, r.is_randomly_k) == (2, 1, 3, False)
    assert all(is_resolving(dm, w) for w in combinations(range(5), 3))
