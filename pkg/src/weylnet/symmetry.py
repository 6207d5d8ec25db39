"""Permutation symmetry classes of two-level networks.

The symmetric group acts on (C^2)^(x N) by permuting nodes; operators
built only from permutation-symmetric collective members are blocked by
total angular momentum j.  Matrix elements between different-j states
vanish (a superselection rule), and within one j the action is
independent of the multiplicity copy, so (2j+1)^2 parameters describe
each class and sum_j (2j+1)^2 = (N+1)(N+2)(N+3)/6 in total.

Spin convention: |1> is spin up (sigma_z = diag(-1, +1)), so the
magnetic number of a product state is (number of 1s - number of 0s)/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cluster import kron_all
from .collective import SIGMA_X, SIGMA_Y, SIGMA_Z, collective_labels, collective_operator
from .errors import CapExceeded, InputError

_HALF = (SIGMA_X / 2, SIGMA_Y / 2, SIGMA_Z / 2)


def permutation_operator(perm) -> np.ndarray:
    """Unitary P with P (|x_1> ... |x_N>) = |x_{perm^-1(1)}> ... ; a
    composition homomorphism: P(s) P(t) = P(s o t).

    ``perm`` maps source node -> destination node, 0-based.
    """
    perm = tuple(perm)
    n_nodes = len(perm)
    if sorted(perm) != list(range(n_nodes)):
        raise InputError(f"not a permutation of 0..{n_nodes - 1}: {perm}")
    dim = 2 ** n_nodes
    p = np.zeros((dim, dim), dtype=complex)
    for src in range(dim):
        bits = [(src >> (n_nodes - 1 - i)) & 1 for i in range(n_nodes)]
        out = [0] * n_nodes
        for i, bit in enumerate(bits):
            out[perm[i]] = bit
        dst = 0
        for bit in out:
            dst = dst * 2 + bit
        p[dst, src] = 1.0
    return p


def collective_spin(n_nodes: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Total spin components S_x, S_y, S_z (spin-1/2 per node)."""
    dim = 2 ** n_nodes
    out = []
    for s in _HALF:
        acc = np.zeros((dim, dim), dtype=complex)
        for node in range(n_nodes):
            mats = [np.eye(2, dtype=complex)] * n_nodes
            mats[node] = s
            acc += kron_all(mats)
        out.append(acc)
    return tuple(out)


@dataclass
class SpinClass:
    """One total-j symmetry class with its aligned multiplicity copies.

    ``vectors[r][k]`` is the basis vector of copy r at magnetic number
    m = j - k; copies are generated by lowering from a deterministic
    orthonormal basis of the highest-weight space, which aligns them so
    permutation-symmetric operators act identically in every copy.
    """

    j: float
    multiplicity: int
    vectors: np.ndarray  # shape (multiplicity, 2j+1, dim)

    @property
    def degeneracy(self) -> int:
        return int(round(2 * self.j)) + 1


def spin_basis(n_nodes: int) -> list[SpinClass]:
    """Simultaneous (S^2, S_z) eigenbasis organized by symmetry class."""
    if not 1 <= n_nodes <= 10:
        raise CapExceeded(f"spin basis supported for 1 <= N <= 10, got {n_nodes}")
    dim = 2 ** n_nodes
    sx, sy, sz = collective_spin(n_nodes)
    s2 = sx @ sx + sy @ sy + sz @ sz
    s_minus = (sx - 1j * sy)

    # computational indices grouped by magnetic number
    by_m: dict = {}
    for idx in range(dim):
        ones = bin(idx).count("1")
        m2 = 2 * ones - n_nodes  # 2m, integer
        by_m.setdefault(m2, []).append(idx)

    classes = []
    jmax2 = n_nodes  # 2*jmax
    for j2 in range(jmax2, -1, -2):
        j = j2 / 2
        block = by_m[j2]
        basis = np.zeros((dim, len(block)), dtype=complex)
        for col, idx in enumerate(block):
            basis[idx, col] = 1.0
        s2_block = basis.conj().T @ s2 @ basis
        vals, vecs = np.linalg.eigh(s2_block)
        sel = np.abs(vals - j * (j + 1)) < 1e-8
        mult = int(np.sum(sel))
        if mult == 0:
            continue
        eigenspace = basis @ vecs[:, sel]  # dim x mult, orthonormal
        highest = _deterministic_span(eigenspace)
        copies = []
        for r in range(mult):
            chain = [highest[:, r]]
            m = j
            while m > -j:
                lowered = s_minus @ chain[-1]
                lowered /= math.sqrt(j * (j + 1) - m * (m - 1))
                chain.append(lowered)
                m -= 1
            copies.append(np.stack(chain))
        classes.append(SpinClass(j=j, multiplicity=mult, vectors=np.stack(copies)))
    return classes


def _deterministic_span(space: np.ndarray) -> np.ndarray:
    """Orthonormal basis of a column span, seeded by computational order.

    Projects the computational basis vectors in index order onto the
    span and Gram-Schmidt-filters them, so the result is reproducible
    and independent of eigensolver phase conventions.
    """
    dim, mult = space.shape
    proj = space @ space.conj().T
    chosen: list[np.ndarray] = []
    for idx in range(dim):
        v = proj[:, idx].copy()
        for c in chosen:
            v -= c * np.vdot(c, v)
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            chosen.append(v / norm)
            if len(chosen) == mult:
                break
    return np.stack(chosen, axis=1)


def parameter_count_identity(n_nodes: int) -> tuple[int, int, int]:
    """(sum mult*(2j+1), sum (2j+1)^2, (N+1)(N+2)(N+3)/6)."""
    classes = spin_basis(n_nodes)
    total_dim = sum(c.multiplicity * c.degeneracy for c in classes)
    param = sum(c.degeneracy ** 2 for c in classes)
    xi0 = (n_nodes + 1) * (n_nodes + 2) * (n_nodes + 3) // 6
    return total_dim, param, xi0


def spin_projectors(n_nodes: int) -> dict:
    """j -> projector onto the full j eigenspace."""
    out = {}
    for cls in spin_basis(n_nodes):
        vecs = cls.vectors.reshape(-1, 2 ** n_nodes)
        out[cls.j] = vecs.T @ vecs.conj()
    return out


# ---------------------------------------------------------------------------
# golden four-node class table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassVector:
    """One labeled basis vector of the four-node symmetry classes."""

    config: str
    m: int  # 2*m is stored as-is here since N=4 gives integer m
    j: int
    tableau: str
    amplitudes: tuple[tuple[str, float], ...]

    def vector(self) -> np.ndarray:
        v = np.zeros(16, dtype=complex)
        for ket, amp in self.amplitudes:
            v[int(ket, 2)] = amp
        return v


_S2 = math.sqrt(2.0)
_S3 = math.sqrt(3.0)
_S6 = math.sqrt(6.0)

#: the sixteen four-node class vectors, signs exactly as tabulated
FOUR_NODE_CLASS_TABLE: tuple[ClassVector, ...] = (
    ClassVector("1111", 2, 2, "1234", (("1111", 1.0),)),
    ClassVector("0111", 1, 2, "1234",
                (("1110", .5), ("1101", .5), ("1011", .5), ("0111", .5))),
    ClassVector("0111", 1, 1, "123|4",
                (("1110", 3 / (2 * _S3)), ("1101", -1 / (2 * _S3)),
                 ("1011", -1 / (2 * _S3)), ("0111", -1 / (2 * _S3)))),
    ClassVector("0111", 1, 1, "124|3",
                (("1101", 2 / _S6), ("1011", -1 / _S6), ("0111", -1 / _S6))),
    ClassVector("0111", 1, 1, "134|2",
                (("0111", 1 / _S2), ("1011", -1 / _S2))),
    ClassVector("0011", 0, 2, "1234",
                (("0011", 1 / _S6), ("0101", 1 / _S6), ("0110", 1 / _S6),
                 ("1001", 1 / _S6), ("1010", 1 / _S6), ("1100", 1 / _S6))),
    ClassVector("0011", 0, 1, "123|4",
                (("0011", 1 / _S6), ("0101", 1 / _S6), ("0110", -1 / _S6),
                 ("1001", 1 / _S6), ("1010", -1 / _S6), ("1100", -1 / _S6))),
    ClassVector("0011", 0, 1, "124|3",
                (("0011", 2 / (2 * _S3)), ("0101", -1 / (2 * _S3)), ("0110", 1 / (2 * _S3)),
                 ("1001", -1 / (2 * _S3)), ("1010", 1 / (2 * _S3)), ("1100", -2 / (2 * _S3)))),
    ClassVector("0011", 0, 1, "134|2",
                (("0101", .5), ("0110", .5), ("1001", -.5), ("1010", -.5))),
    ClassVector("0011", 0, 0, "12|34",
                (("0011", .5), ("0110", -.5), ("1001", -.5), ("1100", .5))),
    ClassVector("0011", 0, 0, "13|24",
                (("0101", .5), ("0110", -.5), ("1001", -.5), ("1010", .5))),
    ClassVector("0001", -1, 2, "1234",
                (("0001", .5), ("0010", .5), ("0100", .5), ("1000", .5))),
    ClassVector("0001", -1, 1, "123|4",
                (("0001", 3 / (2 * _S3)), ("0010", -1 / (2 * _S3)),
                 ("0100", -1 / (2 * _S3)), ("1000", -1 / (2 * _S3)))),
    ClassVector("0001", -1, 1, "124|3",
                (("0010", 2 / _S6), ("0100", -1 / _S6), ("1000", -1 / _S6))),
    ClassVector("0001", -1, 1, "134|2",
                (("1000", 1 / _S2), ("0100", -1 / _S2))),
    ClassVector("0000", -2, 2, "1234", (("0000", 1.0),)),
)


def young_basis_n4() -> tuple[ClassVector, ...]:
    """The tabulated four-node class vectors (16 of them).

    All are unit vectors; every pair is orthogonal except the two j = 0
    vectors, whose different singlet pairings overlap by exactly 1/2 as
    tabulated.  Cross-class (different-j) orthogonality is exact.
    """
    return FOUR_NODE_CLASS_TABLE


# ---------------------------------------------------------------------------
# superselection verification
# ---------------------------------------------------------------------------

@dataclass
class SuperselectionReport:
    n_nodes: int
    max_cross_j_element: float
    max_cross_copy_element: float
    max_copy_mismatch: float
    operator_count: int
    parameter_count: int
    independent_rank: int


def superselection_check(n_nodes: int) -> SuperselectionReport:
    """Verify the j-block structure of all permutation-symmetric members.

    For every b = 0 collective operator: elements between different-j
    vectors vanish; within one j, elements between different copies
    vanish and the per-copy blocks coincide (Schur structure).  The
    blocks of all operators, stacked as vectors, have full rank equal to
    the operator count, matching sum_j (2j+1)^2.
    """
    if n_nodes > 6:
        raise CapExceeded("superselection check supported for N <= 6")
    classes = spin_basis(n_nodes)
    ops = [collective_operator(lab, n_nodes) for lab in collective_labels(n_nodes, b_zero_only=True)]

    cross_j = 0.0
    cross_copy = 0.0
    copy_mismatch = 0.0
    compressed = []
    for op in ops:
        blocks = []
        for ci, cls_i in enumerate(classes):
            for ri in range(cls_i.multiplicity):
                vi = cls_i.vectors[ri]
                for cj, cls_j in enumerate(classes):
                    for rj in range(cls_j.multiplicity):
                        block = vi.conj() @ op @ cls_j.vectors[rj].T
                        if ci != cj:
                            cross_j = max(cross_j, float(np.max(np.abs(block))))
                        elif ri != rj:
                            cross_copy = max(cross_copy, float(np.max(np.abs(block))))
                        elif ri == 0:
                            blocks.append(block)
                        else:
                            ref = cls_i.vectors[0].conj() @ op @ cls_i.vectors[0].T
                            copy_mismatch = max(copy_mismatch, float(np.max(np.abs(block - ref))))
        compressed.append(np.concatenate([b.ravel() for b in blocks]))
    stack = np.array(compressed)
    rank = int(np.linalg.matrix_rank(stack, tol=1e-8))
    return SuperselectionReport(
        n_nodes=n_nodes,
        max_cross_j_element=cross_j,
        max_cross_copy_element=cross_copy,
        max_copy_mismatch=copy_mismatch,
        operator_count=len(ops),
        parameter_count=sum(c.degeneracy ** 2 for c in classes),
        independent_rank=rank,
    )


# ---------------------------------------------------------------------------
# symmetry breaking scenario
# ---------------------------------------------------------------------------

@dataclass
class ScenarioReport:
    initial_weights: dict
    prepared_weights: dict
    max_leakage: float
    times: np.ndarray
    pair_singlet_weights: dict
    pair_singlet_scalar_residual: float


def _unitary_sending(dim: int, source: int, target: np.ndarray) -> np.ndarray:
    """Any unitary mapping |source> to the given unit vector (Gram-Schmidt)."""
    cols = [target]
    for idx in range(dim):
        v = np.zeros(dim, dtype=complex)
        v[idx] = 1.0
        for c in cols:
            v -= c * np.vdot(c, v)
        norm = np.linalg.norm(v)
        if norm > 1e-12:
            cols.append(v / norm)
        if len(cols) == dim:
            break
    u = np.stack(cols, axis=1)
    # place the target column at `source`
    order = list(range(dim))
    order[0], order[source] = order[source], order[0]
    return u[:, np.argsort(order)]


def symmetry_breaking_scenario(
    total_time: float = 50.0, steps: int = 60, seed: int = 0
) -> ScenarioReport:
    """Selective preparation moves |0000> into the j = 1 class and stays.

    A selective two-node unitary turns nodes 1-2 into the antisymmetric
    pair state; the four-node state then has all its weight at j = 1,
    and any permutation-symmetric evolution keeps it there.  The fully
    paired state (both node pairs antisymmetric) sits at j = 0 and is an
    eigenvector of every b = 0 collective operator.
    """
    n_nodes = 4
    dim = 16
    projectors = spin_projectors(n_nodes)

    psi0 = np.zeros(dim, dtype=complex)
    psi0[0] = 1.0
    initial = {j: float(np.real(psi0.conj() @ p @ psi0)) for j, p in projectors.items()}

    singlet = np.zeros(4, dtype=complex)
    singlet[0b01] = 1 / _S2
    singlet[0b10] = -1 / _S2
    v = _unitary_sending(4, 0, singlet)
    u_prep = np.kron(v, np.eye(4, dtype=complex))
    psi1 = u_prep @ psi0
    prepared = {j: float(np.real(psi1.conj() @ p @ psi1)) for j, p in projectors.items()}

    rng = np.random.default_rng(seed)
    h = np.zeros((dim, dim), dtype=complex)
    for lab in collective_labels(n_nodes, b_zero_only=True):
        h += rng.normal() * collective_operator(lab, n_nodes)
    vals, vecs = np.linalg.eigh(h)
    p1 = projectors[1.0]
    times = np.linspace(0.0, total_time, steps + 1)
    leakage = 0.0
    for t in times:
        u = vecs @ np.diag(np.exp(-1j * vals * t)) @ vecs.conj().T
        psi_t = u @ psi1
        leakage = max(leakage, abs(1.0 - float(np.real(psi_t.conj() @ p1 @ psi_t))))

    paired = np.kron(singlet, singlet)
    pair_weights = {j: float(np.real(paired.conj() @ p @ paired)) for j, p in projectors.items()}
    scalar_residual = 0.0
    for lab in collective_labels(n_nodes, b_zero_only=True):
        op = collective_operator(lab, n_nodes)
        image = op @ paired
        expect = np.vdot(paired, image)
        scalar_residual = max(scalar_residual, float(np.linalg.norm(image - expect * paired)))

    return ScenarioReport(
        initial_weights=initial,
        prepared_weights=prepared,
        max_leakage=leakage,
        times=times,
        pair_singlet_weights=pair_weights,
        pair_singlet_scalar_residual=scalar_residual,
    )
