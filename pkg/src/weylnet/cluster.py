"""Selective cluster operators, correlation tensors and cluster sums.

A network of N nodes with per-node dimensions n_mu carries the product
operator basis built from single-node shift/phase unitaries; a cluster
operator acts non-trivially on the m nodes whose index differs from
(0,0).  Expectation values of these operators (correlation tensors)
aggregate into one cluster sum Y per node subset; the 2^N sums are
invariant under local unitaries and obey the global sum rule

    sum_{subsets} Y = tr{rho^2} * prod_mu n_mu .

Cluster sums are computed from reduced-state purities by subset Moebius
inversion, which keeps large pure states (state vectors up to the
dimension cap) cheap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .basis import WeylIndex, weyl_matrix
from .coherence import validate_state
from .errors import CapExceeded, DimensionMismatch, InputError, VerificationFailure

#: Global-matrix size cap: prod(dims) above this is refused, not degraded.
DEFAULT_DIM_CAP = 4096


@dataclass(frozen=True, order=True)
class ProductLabel:
    """Per-node (a, b) indices of one product operator."""

    entries: tuple[tuple[int, int], ...]
    dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != len(self.dims):
            raise InputError("one (a, b) pair per node required")
        for (a, b), n in zip(self.entries, self.dims):
            WeylIndex(a, b, n)  # range validation

    @property
    def n_nodes(self) -> int:
        return len(self.dims)

    @property
    def support(self) -> tuple[int, ...]:
        """Nodes (0-based) where the label is not the identity."""
        return tuple(i for i, e in enumerate(self.entries) if e != (0, 0))

    @property
    def cluster_size(self) -> int:
        return len(self.support)

    @property
    def is_pure_cluster(self) -> bool:
        """True when every node carries a non-identity factor."""
        return self.cluster_size == self.n_nodes


def label_from_entries(entries, dims) -> ProductLabel:
    return ProductLabel(tuple((int(a), int(b)) for a, b in entries), tuple(int(n) for n in dims))


def kron_all(mats) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def cluster_operator(label: ProductLabel) -> np.ndarray:
    """Kronecker product of the per-node basis unitaries, node order 1..N."""
    return kron_all(weyl_matrix(WeylIndex(a, b, n)) for (a, b), n in zip(label.entries, label.dims))


@dataclass
class NetworkState:
    """Density operator over N nodes with explicit per-node dimensions.

    Construct via :meth:`from_rho` or :meth:`from_pure`.  Pure states
    keep the state vector, so reduced purities stay cheap for large
    networks; ``rho`` materializes the full matrix on demand.
    """

    dims: tuple[int, ...]
    _rho: np.ndarray | None = None
    _psi: np.ndarray | None = None
    dim_cap: int = DEFAULT_DIM_CAP

    @classmethod
    def from_rho(cls, rho, dims, dim_cap: int = DEFAULT_DIM_CAP) -> "NetworkState":
        dims = tuple(int(n) for n in dims)
        cls._check_dims(dims, dim_cap)
        m = validate_state(rho)
        if m.shape[0] != int(np.prod(dims)):
            raise DimensionMismatch(
                f"state dimension {m.shape[0]} != prod(dims) = {int(np.prod(dims))}")
        return cls(dims=dims, _rho=m, dim_cap=dim_cap)

    @classmethod
    def from_pure(cls, psi, dims, dim_cap: int = DEFAULT_DIM_CAP) -> "NetworkState":
        dims = tuple(int(n) for n in dims)
        cls._check_dims(dims, dim_cap)
        v = np.asarray(psi, dtype=complex).ravel()
        if v.shape[0] != int(np.prod(dims)):
            raise DimensionMismatch(
                f"vector length {v.shape[0]} != prod(dims) = {int(np.prod(dims))}")
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > 1e-10:
            raise InputError(f"state vector norm {norm:.6g} != 1")
        return cls(dims=dims, _psi=v, dim_cap=dim_cap)

    @staticmethod
    def _check_dims(dims, dim_cap):
        if not dims or any(n < 2 for n in dims):
            raise InputError(f"per-node dimensions must all be >= 2, got {dims}")
        total = int(np.prod(dims))
        if total > dim_cap:
            raise CapExceeded(f"total dimension {total} exceeds cap {dim_cap}")

    @property
    def n_nodes(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    @property
    def is_pure_vector(self) -> bool:
        return self._psi is not None

    @property
    def psi(self) -> np.ndarray:
        if self._psi is None:
            raise InputError("state was not constructed from a vector")
        return self._psi

    @property
    def rho(self) -> np.ndarray:
        if self._rho is None:
            return np.outer(self._psi, self._psi.conj())
        return self._rho

    def uniform_dim(self) -> int:
        if len(set(self.dims)) != 1:
            raise InputError(f"operation requires uniform node dimensions, got {self.dims}")
        return self.dims[0]

    def expectation(self, op: np.ndarray) -> complex:
        if self._psi is not None:
            return complex(np.vdot(self._psi, op @ self._psi))
        return complex(np.trace(self._rho @ op))


def partial_trace(rho, dims, keep) -> np.ndarray:
    """Reduced density matrix on the (sorted) node subset ``keep``."""
    dims = tuple(dims)
    keep = tuple(sorted(keep))
    n = len(dims)
    m = np.asarray(rho, dtype=complex).reshape(dims + dims)
    traced = [i for i in range(n) if i not in keep]
    for off, axis in enumerate(traced):
        # axes shift left by one pair each time a node is traced out
        m = np.trace(m, axis1=axis - off, axis2=axis - off + n - off)
    d = int(np.prod([dims[i] for i in keep])) if keep else 1
    return m.reshape(d, d)


def reduced_state(state: NetworkState, keep) -> np.ndarray:
    """Reduced density matrix of a network state (pure fast path included)."""
    keep = tuple(sorted(keep))
    if not keep:
        return np.array([[1.0 + 0j]])
    if state.is_pure_vector:
        rest = [i for i in range(state.n_nodes) if i not in keep]
        v = state.psi.reshape(state.dims).transpose(keep + tuple(rest))
        d = int(np.prod([state.dims[i] for i in keep]))
        m = v.reshape(d, -1)
        return m @ m.conj().T
    return partial_trace(state.rho, state.dims, keep)


def reduced_purity(state: NetworkState, keep) -> float:
    """tr{rho_S^2} for the subset S, via the cheaper Gram side on pure states."""
    keep = tuple(sorted(keep))
    if not keep:
        return 1.0
    if state.is_pure_vector:
        rest = tuple(i for i in range(state.n_nodes) if i not in keep)
        v = state.psi.reshape(state.dims).transpose(keep + rest)
        d = int(np.prod([state.dims[i] for i in keep]))
        m = v.reshape(d, -1)
        if m.shape[0] > m.shape[1]:
            m = m.T  # complementary reductions share their nonzero spectrum
        g = m @ m.conj().T
        return float(np.sum(np.abs(g) ** 2))
    r = partial_trace(state.rho, state.dims, keep)
    return float(np.sum(np.abs(r) ** 2))


# ---------------------------------------------------------------------------
# correlation tensors
# ---------------------------------------------------------------------------

def _node_index_iter(n: int):
    """Non-identity (a, b) pairs of one node, lexicographic."""
    return (divmod(i, n) for i in range(1, n * n))


def correlation_tensors(state: NetworkState, max_order: int) -> dict:
    """All correlation tensor entries up to the given cluster size.

    Keys are :class:`ProductLabel`; values are tr{rho Q^dag}.  The
    all-identity label is included with value 1.  Every modulus is
    checked against the loose bound sqrt(prod dims).
    """
    if max_order > state.n_nodes:
        raise InputError(f"max_order {max_order} exceeds node count {state.n_nodes}")
    bound = float(np.sqrt(state.total_dim)) + 1e-9
    out = {}
    nodes = range(state.n_nodes)
    for m in range(0, max_order + 1):
        for subset in itertools.combinations(nodes, m):
            choices = [list(_node_index_iter(state.dims[i])) for i in subset]
            for combo in itertools.product(*choices):
                entries = [(0, 0)] * state.n_nodes
                for node, ab in zip(subset, combo):
                    entries[node] = ab
                label = label_from_entries(entries, state.dims)
                value = state.expectation(cluster_operator(label).conj().T)
                if abs(value) > bound:
                    raise VerificationFailure(
                        f"correlation value {abs(value):.3g} violates the sum-rule bound")
                out[label] = value
    return out


# ---------------------------------------------------------------------------
# cluster sums
# ---------------------------------------------------------------------------

@dataclass
class ClusterSumTable:
    """Cluster sum Y for every node subset, keyed by sorted node tuples."""

    dims: tuple[int, ...]
    values: dict = field(default_factory=dict)
    purity: float = 0.0

    @property
    def total(self) -> float:
        return float(sum(self.values.values()))

    @property
    def sum_rule_target(self) -> float:
        """tr{rho^2} * prod(dims), which the table must total to."""
        return self.purity * float(np.prod(self.dims))

    @property
    def sum_rule_residual(self) -> float:
        return abs(self.total - self.sum_rule_target)

    def by_size(self) -> dict:
        """Subset size -> list of (subset, Y)."""
        out: dict = {}
        for subset, y in self.values.items():
            out.setdefault(len(subset), []).append((subset, y))
        return out

    def json_rows(self) -> list[dict]:
        return [{"subset": [i + 1 for i in s], "Y": y}
                for s, y in sorted(self.values.items(), key=lambda kv: (len(kv[0]), kv[0]))]


def cluster_sums(state: NetworkState) -> ClusterSumTable:
    """All 2^N cluster sums by Moebius inversion of reduced purities.

    For each subset S, Z(S) = tr{rho_S^2} * prod_{mu in S} n_mu equals
    the sum of Y over subsets of S; inverting on the subset lattice
    gives Y(S).
    """
    n = state.n_nodes
    z = np.empty(1 << n)
    for mask in range(1 << n):
        keep = [i for i in range(n) if mask >> i & 1]
        scale = float(np.prod([state.dims[i] for i in keep])) if keep else 1.0
        z[mask] = reduced_purity(state, keep) * scale
    # in-place subset Moebius transform
    y = z.copy()
    for bit in range(n):
        step = 1 << bit
        for mask in range(1 << n):
            if mask & step:
                y[mask] -= y[mask ^ step]
    table = ClusterSumTable(dims=state.dims, purity=float(z[(1 << n) - 1] / np.prod(state.dims)))
    for mask in range(1 << n):
        subset = tuple(i for i in range(n) if mask >> i & 1)
        table.values[subset] = float(y[mask])
    return table


def cluster_sum_direct(state: NetworkState, subset) -> float:
    """Brute-force Y over explicit correlation tensors (test oracle ally)."""
    subset = tuple(sorted(subset))
    total = 0.0
    choices = [list(_node_index_iter(state.dims[i])) for i in subset]
    for combo in itertools.product(*choices):
        entries = [(0, 0)] * state.n_nodes
        for node, ab in zip(subset, combo):
            entries[node] = ab
        value = state.expectation(cluster_operator(label_from_entries(entries, state.dims)).conj().T)
        total += abs(value) ** 2
    return total


# ---------------------------------------------------------------------------
# purity factors
# ---------------------------------------------------------------------------

def entropy_bits(rho) -> float:
    """Von Neumann entropy in bits (base-2 logarithm)."""
    vals = np.linalg.eigvalsh(np.asarray(rho))
    vals = vals[vals > 1e-14]
    return float(-np.sum(vals * np.log2(vals)))


@dataclass
class PurityRow:
    subset: tuple[int, ...]
    p: float
    p_from_sums: float
    entropy: float


@dataclass
class PurityReport:
    n: int
    rows: dict  # subset tuple -> PurityRow

    def by_size(self, m: int) -> list[PurityRow]:
        return [r for s, r in sorted(self.rows.items()) if len(s) == m]

    def csv(self) -> str:
        lines = ["m,subset,p,entropy_bits"]
        for s, r in sorted(self.rows.items(), key=lambda kv: (len(kv[0]), kv[0])):
            label = "|".join(str(i + 1) for i in s)
            lines.append(f"{len(s)},{label},{r.p!r},{r.entropy!r}")
        return "\n".join(lines) + "\n"


def purity_factors(state: NetworkState, cross_check_atol: float = 1e-9) -> PurityReport:
    """Normalized purity factor and entropy of every non-empty cluster.

    p = (n^m tr{rho_S^2} - 1)/(n^m - 1) is computed from the reduced
    state and, independently, from the cluster-sum route
    (sum of Y over non-empty subsets of S) / (n^m - 1); both must agree.
    Requires uniform node dimension.
    """
    n = state.uniform_dim()
    table = cluster_sums(state)
    rows = {}
    for size in range(1, state.n_nodes + 1):
        for subset in itertools.combinations(range(state.n_nodes), size):
            denom = n ** size - 1
            direct = (n ** size * reduced_purity(state, subset) - 1.0) / denom
            from_sums = sum(
                table.values[t]
                for m in range(1, size + 1)
                for t in itertools.combinations(subset, m)
            ) / denom
            if abs(direct - from_sums) > cross_check_atol:
                raise VerificationFailure(
                    f"purity routes disagree on {subset}: {direct} vs {from_sums}")
            rows[subset] = PurityRow(
                subset=subset,
                p=float(direct),
                p_from_sums=float(from_sums),
                entropy=entropy_bits(reduced_state(state, subset)),
            )
    return PurityReport(n=n, rows=rows)


# ---------------------------------------------------------------------------
# product-state witness
# ---------------------------------------------------------------------------

@dataclass
class ProductTestResult:
    non_product: bool
    partition: tuple[tuple[int, ...], ...]
    joint_y: float
    partition_product: float


def product_state_test(state: NetworkState, partition, atol: float = 1e-9) -> ProductTestResult:
    """Check one partition of a cluster for a non-product witness.

    ``partition`` is a sequence of disjoint node tuples; their union is
    the tested cluster.  The cluster is witnessed non-product when the
    product of the parts' cluster sums falls below the joint cluster sum
    by more than ``atol``.
    """
    parts = tuple(tuple(sorted(p)) for p in partition)
    flat = [i for p in parts for i in p]
    if len(set(flat)) != len(flat):
        raise InputError("partition blocks must be disjoint")
    cluster = tuple(sorted(flat))
    table = cluster_sums(state)
    joint = table.values[cluster]
    prod = 1.0
    for p in parts:
        prod *= table.values[p]
    return ProductTestResult(
        non_product=prod < joint - atol,
        partition=parts,
        joint_y=joint,
        partition_product=prod,
    )


def _partitions(items: tuple[int, ...]):
    """All partitions of ``items`` into >= 2 blocks."""
    if len(items) < 2:
        return

    def rec(seq):
        if not seq:
            yield []
            return
        head, tail = seq[0], seq[1:]
        for sub in rec(tail):
            yield [[head]] + sub
            for i in range(len(sub)):
                yield sub[:i] + [[head] + sub[i]] + sub[i + 1:]
    for part in rec(list(items)):
        if len(part) >= 2:
            yield tuple(tuple(sorted(b)) for b in part)


def find_non_product_witness(state: NetworkState, cluster=None, atol: float = 1e-9):
    """Search all partitions of a cluster; return the first witness or None."""
    if cluster is None:
        cluster = tuple(range(state.n_nodes))
    cluster = tuple(sorted(cluster))
    for partition in _partitions(cluster):
        result = product_state_test(state, partition, atol)
        if result.non_product:
            return result
    return None
