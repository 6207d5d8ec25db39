"""Completely commuting cluster-operator sets and their eigenstates.

Two constructions give closed-form set sizes; exhaustive clique search
over the commutation graph finds the true maxima for small networks.
Completing a set to a full commuting group pins a common eigenstate
whose top cluster sum equals the number of full-size members.
"""

from weylnet import cluster, commuting
from weylnet.cluster import NetworkState

print("== set sizes by construction and search ==")
print(f"{'n':>2} {'N':>2} {'A':>5} {'B':>5} {'C':>5} {'tag':>10} {'D':>5}")
for n, n_max in ((2, 4), (3, 3), (4, 2)):
    for n_nodes in range(1, n_max + 1):
        result = commuting.search_max_commuting(n, n_nodes, budget=10 ** 7)
        print(f"{n:>2} {n_nodes:>2} {commuting.method_a_size(n, n_nodes):>5} "
              f"{commuting.method_b_size(n, n_nodes):>5} "
              f"{result.commuting_set.size:>5} {result.commuting_set.method:>10} "
              f"{commuting.bound_d(n, n_nodes):>5}")

print("\n== a maximal two-qubit family and its eigenstate ==")
cs = commuting.search_max_commuting(2, 2, budget=10 ** 6).commuting_set
for member in cs.members:
    print("  member:", member.entries)
eig = commuting.common_eigenstate(cs)
print(f"  completed group size: {eig.completion_size} (target {eig.target_size})")
print(f"  eigen-residual: {eig.max_residual:.2e}")
state = NetworkState.from_pure(eig.vector, (2, 2))
top = cluster.cluster_sums(state).values[(0, 1)]
print(f"  top cluster sum of the eigenstate: {top:.6f} (= set size {cs.size})")

print("\n== three qutrits: search beats both constructions ==")
result = commuting.search_max_commuting(3, 3, budget=10 ** 8)
print(f"  A = {commuting.method_a_size(3, 3)}, B = {commuting.method_b_size(3, 3)}, "
      f"C = {result.commuting_set.size} ({result.commuting_set.method}), "
      f"bound D = {commuting.bound_d(3, 3)}")
eig = commuting.common_eigenstate(result.commuting_set)
state = NetworkState.from_pure(eig.vector, (3, 3, 3))
print(f"  eigenstate Y_3 = {cluster.cluster_sums(state).values[(0, 1, 2)]:.6f}")
