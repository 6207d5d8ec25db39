"""Cluster sums and purity factors of small network states.

The 2^N cluster sums are local-unitary invariants obeying a global sum
rule; purity factors normalize them per cluster, flagging maximally
mixed (0) versus pure (1) reduced states, and non-product clusters are
witnessed by partitions whose cluster-sum product falls short.
"""

import numpy as np

from weylnet import cluster
from weylnet.cat import cat_state
from weylnet.cluster import NetworkState

print("== maximally entangled pair ==")
bell = NetworkState.from_pure(cat_state(2, (0, 0)), (2, 2))
table = cluster.cluster_sums(bell)
for subset, y in sorted(table.values.items(), key=lambda kv: (len(kv[0]), kv[0])):
    print(f"  Y{list(i + 1 for i in subset)} = {y:.6f}")
print(f"  total {table.total:.6f} = tr(rho^2) * prod(dims) = {table.sum_rule_target:.6f}")

witness = cluster.product_state_test(bell, [(0,), (1,)])
print(f"  partition 1|2: product {witness.partition_product:.3g} < joint "
      f"{witness.joint_y:.3g} -> non-product: {witness.non_product}")

print("\n== three aligned nodes ==")
ghz = NetworkState.from_pure(cat_state(2, (0, 0, 0)), (2, 2, 2))
report = cluster.purity_factors(ghz)
for subset, row in sorted(report.rows.items(), key=lambda kv: (len(kv[0]), kv[0])):
    print(f"  cluster {list(i + 1 for i in subset)}: p = {row.p:.6f}, "
          f"S = {row.entropy:.6f} bits")

print("\n== mixed-dimension network, random state ==")
rng = np.random.default_rng(3)
dims = (2, 3, 2)
d = int(np.prod(dims))
a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
rho = a @ a.conj().T
st = NetworkState.from_rho(rho / np.trace(rho), dims)
table = cluster.cluster_sums(st)
print(f"  sum-rule residual: {table.sum_rule_residual:.2e}")
print(f"  purity tr(rho^2) = {table.purity:.6f}")

print("\n== correlation tensors factor on product states ==")
v2 = rng.normal(size=2) + 1j * rng.normal(size=2)
v3 = rng.normal(size=3) + 1j * rng.normal(size=3)
psi = np.kron(v2 / np.linalg.norm(v2), v3 / np.linalg.norm(v3))
prod_state = NetworkState.from_pure(psi, (2, 3))
tensors = cluster.correlation_tensors(prod_state, 2)
singles = {}
for label, value in tensors.items():
    if label.cluster_size == 1:
        node = label.support[0]
        singles[(node, label.entries[node])] = value
worst = 0.0
for label, value in tensors.items():
    if label.cluster_size == 2:
        split = singles[(0, label.entries[0])] * singles[(1, label.entries[1])]
        worst = max(worst, abs(value - split))
print(f"  max |u_pair - u_1 u_2| = {worst:.2e}")
