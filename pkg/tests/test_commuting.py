"""Commuting cluster-operator sets: criterion, constructions, search, eigenstates."""

import itertools

import numpy as np
import pytest

from weylnet import cluster, commuting
from weylnet.cluster import NetworkState, cluster_operator, label_from_entries
from weylnet.errors import CapExceeded

# expected table values: (n, N) -> (A, B, D)
SIZE_TABLE = {
    (2, 1): (1, 1, 1), (2, 2): (1, 3, 3), (2, 3): (1, 3, 7),
    (2, 4): (1, 9, 15), (2, 5): (1, 9, 31), (2, 6): (1, 27, 63),
    (3, 1): (2, 2, 2), (3, 2): (4, 8, 8), (3, 3): (8, 16, 26),
    (3, 4): (16, 64, 80), (3, 5): (32, 128, 242), (3, 6): (64, 512, 728),
    (4, 1): (3, 3, 3), (4, 2): (9, 15, 15), (4, 3): (27, 45, 63),
    # the mirrored-pair sizes follow (n^2-1)^(N/2), times (n-1) for odd N;
    # the symplectic cancellation is exact for every n, composite included,
    # so the n=4 cells are 225 and 675 (matrix-verified below)
    (4, 4): (81, 225, 255), (4, 5): (243, 675, 1023),
}

# exact maximum-commuting-set sizes where exhaustive search is feasible
EXACT_C = {(2, 1): 1, (2, 2): 3, (2, 3): 4, (2, 4): 9,
           (3, 1): 2, (3, 2): 8, (3, 3): 20, (4, 1): 3, (4, 2): 15}

# the six maximal two-qubit families, indices as tabulated
SIX_SETS_N2 = [
    [((0, 1), (0, 1)), ((1, 0), (1, 0)), ((1, 1), (1, 1))],
    [((0, 1), (0, 1)), ((1, 0), (1, 1)), ((1, 1), (1, 0))],
    [((0, 1), (1, 0)), ((1, 0), (0, 1)), ((1, 1), (1, 1))],
    [((0, 1), (1, 0)), ((1, 0), (1, 1)), ((1, 1), (0, 1))],
    [((0, 1), (1, 1)), ((1, 0), (0, 1)), ((1, 1), (1, 0))],
    [((0, 1), (1, 1)), ((1, 0), (1, 0)), ((1, 1), (0, 1))],
]


def make_set(entries_list, n):
    dims = (n,) * len(entries_list[0])
    members = tuple(label_from_entries(e, dims) for e in entries_list)
    return commuting.CommutingSet(n=n, n_nodes=len(dims), members=members, method="C-exact")


class TestCommuteCheck:
    def test_self(self):
        x = label_from_entries([(1, 1), (0, 1)], (3, 3))
        assert commuting.commute_check(x, x)

    def test_tabulated_pair(self):
        x = label_from_entries([(1, 0), (1, 0)], (2, 2))
        y = label_from_entries([(0, 1), (0, 1)], (2, 2))
        assert commuting.commute_check(x, y)

    def test_single_node_anticommuting(self):
        x = label_from_entries([(1, 0)], (2,))
        y = label_from_entries([(0, 1)], (2,))
        assert not commuting.commute_check(x, y)
        mx, my = cluster_operator(x), cluster_operator(y)
        assert np.max(np.abs(mx @ my + my @ mx)) < 1e-12  # they anticommute

    @pytest.mark.parametrize("n,n_nodes", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3)])
    def test_matches_matrix_commutator(self, n, n_nodes):
        rng = np.random.default_rng(97 * n + n_nodes)
        dims = (n,) * n_nodes
        for _ in range(1200):
            ex = [(int(rng.integers(0, n)), int(rng.integers(0, n))) for _ in range(n_nodes)]
            ey = [(int(rng.integers(0, n)), int(rng.integers(0, n))) for _ in range(n_nodes)]
            x, y = label_from_entries(ex, dims), label_from_entries(ey, dims)
            mx, my = cluster_operator(x), cluster_operator(y)
            matrix_commute = np.max(np.abs(mx @ my - my @ mx)) < 1e-12
            assert commuting.commute_check(x, y) == matrix_commute


class TestConstructions:
    @pytest.mark.parametrize("n,n_nodes", list(SIZE_TABLE))
    def test_sizes(self, n, n_nodes):
        a_size, b_size, d = SIZE_TABLE[(n, n_nodes)]
        assert commuting.method_a_size(n, n_nodes) == a_size
        assert commuting.method_b_size(n, n_nodes) == b_size
        assert commuting.bound_d(n, n_nodes) == d
        if a_size <= 1000:
            assert commuting.construct_method_a(n, n_nodes).size == a_size
        if b_size <= 1000:
            assert commuting.construct_method_b(n, n_nodes).size == b_size

    @pytest.mark.parametrize("n,n_nodes", [(2, 2), (2, 3), (3, 2), (3, 3)])
    def test_pairwise_matrix_level(self, n, n_nodes):
        for cs in (commuting.construct_method_a(n, n_nodes),
                   commuting.construct_method_b(n, n_nodes)):
            assert cs.verify_pairwise(matrix_level=True)
            assert all(m.is_pure_cluster for m in cs.members)

    @pytest.mark.parametrize("n,n_nodes", [(2, 5), (3, 4), (4, 3), (4, 4)])
    def test_pairwise_index_level(self, n, n_nodes):
        for cs in (commuting.construct_method_a(n, n_nodes),
                   commuting.construct_method_b(n, n_nodes)):
            assert cs.verify_pairwise()

    def test_method_b_sampled_matrix_level_n4(self):
        cs = commuting.construct_method_b(4, 4)
        rng = np.random.default_rng(0)
        picks = rng.choice(cs.size, size=12, replace=False)
        for i in picks[:6]:
            for j in picks[6:]:
                mx = cluster_operator(cs.members[int(i)])
                my = cluster_operator(cs.members[int(j)])
                assert np.max(np.abs(mx @ my - my @ mx)) < 1e-12

    def test_six_tabulated_sets_commute(self):
        for entries in SIX_SETS_N2:
            cs = make_set(entries, 2)
            assert cs.verify_pairwise(matrix_level=True)


class TestSearch:
    @pytest.mark.parametrize("n,n_nodes", list(EXACT_C))
    def test_exact_values(self, n, n_nodes):
        result = commuting.search_max_commuting(n, n_nodes, budget=10 ** 8)
        assert result.exact
        assert result.commuting_set.size == EXACT_C[(n, n_nodes)]
        assert result.commuting_set.verify_pairwise()

    def test_result_never_below_constructions(self):
        for n, n_nodes in [(2, 3), (3, 2)]:
            result = commuting.search_max_commuting(n, n_nodes, budget=10)
            floor = max(commuting.method_a_size(n, n_nodes), commuting.method_b_size(n, n_nodes))
            assert result.commuting_set.size >= floor

    def test_budget_exhaustion_tags_heuristic(self):
        result = commuting.search_max_commuting(3, 3, budget=3)
        assert not result.exact
        assert result.commuting_set.method == "C-heuristic"
        assert result.commuting_set.size >= 16  # still seeded

    def test_vertex_cap(self):
        with pytest.raises(CapExceeded):
            commuting.search_max_commuting(3, 4, vertex_cap=1000)

    def test_cat_seed_is_clique(self):
        for n, n_nodes in [(2, 3), (2, 4), (3, 3)]:
            labels = commuting.pure_cluster_labels(n, n_nodes)
            seed = commuting.cat_seed_clique(n, n_nodes)
            for i, j in itertools.combinations(seed, 2):
                assert commuting.commute_check(labels[i], labels[j])


class TestCompletionAndEigenstates:
    def test_completion_reaches_full_group(self):
        for n, n_nodes in [(2, 2), (2, 3), (3, 2), (3, 3)]:
            for cs in (commuting.construct_method_a(n, n_nodes),
                       commuting.construct_method_b(n, n_nodes)):
                group = commuting.complete_commuting_group(cs.members, n, n_nodes)
                assert len(group) == n ** n_nodes

    def test_bell_basis_from_first_set(self):
        cs = make_set(SIX_SETS_N2[0], 2)
        eig = commuting.common_eigenstate(cs)
        assert eig.complete
        assert eig.max_residual < 1e-10
        bells = [np.array([1, 0, 0, s], dtype=complex) / np.sqrt(2) for s in (1, -1)]
        bells += [np.array([0, 1, s, 0], dtype=complex) / np.sqrt(2) for s in (1, -1)]
        assert any(abs(abs(np.vdot(b, eig.vector)) - 1) < 1e-8 for b in bells)
        table = cluster.cluster_sums(NetworkState.from_pure(eig.vector, (2, 2)))
        assert abs(table.values[(0, 1)] - 3.0) < 1e-8

    def test_third_set_eigenstates(self):
        cs = make_set(SIX_SETS_N2[2], 2)
        eig = commuting.common_eigenstate(cs)
        signs = [(1, 1, 1, -1), (1, 1, -1, 1), (1, -1, 1, 1), (-1, 1, 1, 1)]
        candidates = [np.array(s, dtype=complex) / 2 for s in signs]
        assert any(abs(abs(np.vdot(c, eig.vector)) - 1) < 1e-8 for c in candidates)
        table = cluster.cluster_sums(NetworkState.from_pure(eig.vector, (2, 2)))
        assert abs(table.values[(0, 1)] - 3.0) < 1e-8

    def test_method_b_three_qubits(self):
        cs = commuting.construct_method_b(2, 3)
        eig = commuting.common_eigenstate(cs)
        assert eig.complete and eig.max_residual < 1e-10
        table = cluster.cluster_sums(NetworkState.from_pure(eig.vector, (2, 2, 2)))
        assert abs(table.values[(0, 1, 2)] - 3.0) < 1e-8

    @pytest.mark.parametrize("n,n_nodes", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
    def test_top_cluster_sum_equals_set_size(self, n, n_nodes):
        for cs in (commuting.construct_method_a(n, n_nodes),
                   commuting.construct_method_b(n, n_nodes)):
            eig = commuting.common_eigenstate(cs)
            assert eig.complete
            assert eig.pure_cluster_count == cs.size
            st = NetworkState.from_pure(eig.vector, (n,) * n_nodes)
            top = cluster.cluster_sums(st).values[tuple(range(n_nodes))]
            assert abs(top - cs.size) < 1e-8

    def test_eigenvalues_unit_modulus(self):
        cs = make_set(SIX_SETS_N2[1], 2)
        eig = commuting.common_eigenstate(cs)
        for label in eig.completion:
            op = cluster_operator(label)
            lam = np.vdot(eig.vector, op @ eig.vector)
            assert abs(abs(lam) - 1.0) < 1e-10
