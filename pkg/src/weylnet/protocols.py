"""Piecewise-constant evolution, cyclic-permutation echoes and control pulses.

A schedule is a list of segments, each either a hermitian Hamiltonian
acting for a finite duration or an instantaneous gate (duration 0).
The echo protocol interleaves free evolution with the cyclic
permutation of the Hamiltonian's eigenstates: after n rounds every
eigenstate has spent equal time at every energy, so a traceless
spectrum accumulates zero net phase and any initial state returns.

hbar = 1; a Hamiltonian segment applies exp(-i H dt).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .basis import WeylIndex, weyl_matrix
from .cluster import kron_all
from .collective import SIGMA_Z, collective_operator, CollectiveLabel
from .errors import CapExceeded, DimensionMismatch, InputError

#: spectral trace tolerance for echo Hamiltonians
TRACE_ATOL = 1e-10


def hermitian_expm(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) through the spectral decomposition (h hermitian)."""
    vals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(-1j * vals * t)) @ vecs.conj().T


def pade_expm(m: np.ndarray) -> np.ndarray:
    """Scaling-and-squaring matrix exponential (general matrices)."""
    return expm(m)


def phase_distance(u: np.ndarray, v: np.ndarray | None = None) -> float:
    """min over global phases of ||u - e^(i phi) v||_2 (v defaults to 1).

    The optimum phase is the argument of tr{v^dag u}; with a vanishing
    trace the plain distance at phi = 0 is an upper bound and returned.
    """
    if v is None:
        v = np.eye(u.shape[0], dtype=complex)
    overlap = np.trace(v.conj().T @ u)
    if abs(overlap) < 1e-300:
        return float(np.linalg.norm(u - v, 2))
    phase = overlap / abs(overlap)
    return float(np.linalg.norm(u - phase * v, 2))


@dataclass(frozen=True)
class Segment:
    """One schedule entry: a Hamiltonian for dt > 0 or a gate at dt = 0."""

    kind: str  # "hamiltonian" | "gate"
    operator: np.ndarray
    duration: float = 0.0

    def __post_init__(self):
        op = np.asarray(self.operator, dtype=complex)
        if op.ndim != 2 or op.shape[0] != op.shape[1]:
            raise InputError("segment operator must be square")
        if not np.isfinite(self.duration):
            raise InputError("segment duration must be finite")
        if self.kind == "hamiltonian":
            if self.duration < 0:
                raise InputError("negative duration")
            if np.max(np.abs(op - op.conj().T)) > 1e-10:
                raise InputError("Hamiltonian segment must be hermitian")
        elif self.kind == "gate":
            if self.duration != 0.0:
                raise InputError("instantaneous gates carry zero duration")
            if np.max(np.abs(op.conj().T @ op - np.eye(op.shape[0]))) > 1e-10:
                raise InputError("gate segment must be unitary")
        else:
            raise InputError(f"unknown segment kind {self.kind!r}")
        object.__setattr__(self, "operator", op)

    def unitary(self) -> np.ndarray:
        if self.kind == "gate":
            return self.operator
        return hermitian_expm(self.operator, self.duration)


@dataclass
class PulseSchedule:
    segments: list = field(default_factory=list)

    def __post_init__(self):
        dims = {s.operator.shape[0] for s in self.segments}
        if len(dims) > 1:
            raise DimensionMismatch(f"segments of mixed dimension {sorted(dims)}")

    @property
    def dim(self) -> int:
        return self.segments[0].operator.shape[0] if self.segments else 0

    @property
    def total_time(self) -> float:
        return sum(s.duration for s in self.segments)

    def unitary(self) -> np.ndarray:
        if not self.segments:
            raise InputError("empty schedule has no fixed dimension")
        u = np.eye(self.dim, dtype=complex)
        for seg in self.segments:
            u = seg.unitary() @ u
        return u


def evolve(schedule: PulseSchedule, psi0) -> list[np.ndarray]:
    """States after each segment (norm preserved to machine precision)."""
    psi = np.asarray(psi0, dtype=complex).ravel()
    out = []
    for seg in schedule.segments:
        if seg.operator.shape[0] != psi.shape[0]:
            raise DimensionMismatch("segment dimension does not match the state")
        psi = seg.unitary() @ psi
        out.append(psi)
    return out


# ---------------------------------------------------------------------------
# cyclic-permutation echo
# ---------------------------------------------------------------------------

@dataclass
class EchoReport:
    n: int
    dt: float
    cycles: int
    residual: float
    stroboscopic_residual: float
    pulse_count: int  # n(n-1) selective two-level pulses per period


def cyclic_permutation(h: np.ndarray) -> np.ndarray:
    """The eigenstate-cycling unitary of a hermitian h.

    Diagonal h uses the computational shift directly; otherwise the
    shift is conjugated into the (deterministically ordered) eigenbasis.
    """
    n = h.shape[0]
    shift = weyl_matrix(WeylIndex(n - 1, 0, n))
    if np.max(np.abs(h - np.diag(np.diag(h)))) < 1e-14:
        return shift
    _, vecs = np.linalg.eigh(h)
    return vecs @ shift @ vecs.conj().T


def echo_schedule(h, dt: float, cycles: int = 1) -> tuple[PulseSchedule, EchoReport]:
    """Evolution-suppressing schedule (C U_H(dt/n))^n, repeated ``cycles`` times.

    Requires a traceless Hamiltonian; a violating input is rejected with
    the trace shift that would fix it.  The per-period pulse cost is
    n(n-1) state-selective two-level pulses (n applications of the
    (n-1)-pulse cyclic permutation).
    """
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    if np.max(np.abs(h - h.conj().T)) > 1e-10:
        raise InputError("echo Hamiltonian must be hermitian")
    tr = complex(np.trace(h))
    if abs(tr) > TRACE_ATOL * max(1.0, float(np.linalg.norm(h, 2))):
        raise InputError(
            f"echo requires a traceless Hamiltonian; shift by {-tr / n:.6g} * identity first")
    perm = cyclic_permutation(h)
    segments = []
    for _ in range(cycles * n):
        segments.append(Segment("hamiltonian", h, dt / n))
        segments.append(Segment("gate", perm, 0.0))
    schedule = PulseSchedule(segments)
    u_period = np.eye(n, dtype=complex)
    for seg in schedule.segments[: 2 * n]:
        u_period = seg.unitary() @ u_period
    u_total = np.linalg.matrix_power(u_period, cycles)
    report = EchoReport(
        n=n,
        dt=dt,
        cycles=cycles,
        residual=phase_distance(u_period),
        stroboscopic_residual=phase_distance(u_total),
        pulse_count=n * (n - 1) * cycles,
    )
    return schedule, report


def cyclic_to_pi_pulses(n: int) -> list[np.ndarray]:
    """n-1 adjacent-level swaps whose product is the cyclic shift.

    Returned in application order: multiplying right-to-left
    (last @ ... @ first) reproduces the shift |k> -> |k-1 mod n>
    entry-exactly.
    """
    if n < 2:
        raise InputError("need n >= 2")
    pulses = []
    for k in range(n - 1):
        swap = np.eye(n, dtype=complex)
        swap[k, k] = swap[k + 1, k + 1] = 0.0
        swap[k, k + 1] = swap[k + 1, k] = 1.0
        pulses.append(swap)
    return pulses


# ---------------------------------------------------------------------------
# Gray sequences
# ---------------------------------------------------------------------------

@dataclass
class GraySequence:
    """Circular ordering of all 2^N bitstrings at Hamming distance 1."""

    n_bits: int
    codes: np.ndarray  # uint64 codes in visit order

    def strings(self) -> list[str]:
        return [format(int(c), "b").zfill(self.n_bits) for c in self.codes]

    def hamming_check(self) -> bool:
        nxt = np.roll(self.codes, -1)
        diff = np.bitwise_xor(self.codes, nxt)
        # power of two <=> exactly one bit differs
        return bool(np.all(diff != 0) and np.all(np.bitwise_and(diff, diff - 1) == 0))

    def covers_all(self) -> bool:
        return len(np.unique(self.codes)) == 1 << self.n_bits


def gray_sequence(n_bits: int) -> GraySequence:
    """Sequence built by the doubling recursion.

    Each member of the previous sequence is repeated and extended on the
    right by 0,1 for even positions and 1,0 for odd positions.
    """
    if not 1 <= n_bits <= 20:
        raise CapExceeded("gray sequences supported for 1 <= N <= 20")
    codes = np.array([0, 1], dtype=np.uint64)
    for _ in range(n_bits - 1):
        doubled = np.repeat(codes << np.uint64(1), 2)
        tail = np.tile(np.array([0, 1, 1, 0], dtype=np.uint64), len(codes) // 2 or 1)[: len(doubled)]
        codes = doubled + tail
    return GraySequence(n_bits=n_bits, codes=codes)


def reflected_gray_codes(n_bits: int) -> np.ndarray:
    """Independent closed form k ^ (k >> 1) (cross-check oracle)."""
    k = np.arange(1 << n_bits, dtype=np.uint64)
    return np.bitwise_xor(k, k >> np.uint64(1))


# ---------------------------------------------------------------------------
# collective control
# ---------------------------------------------------------------------------

def collective_control(m: int, alpha_t: float, n_nodes: int) -> np.ndarray:
    """U = exp(-i alpha_t E_{m00,0}) for the all-x collective coupling.

    m = 1 is a collective single-node drive; m = 2 the pairwise drive
    whose quarter-period pulse turns the ground state into the
    equal-weight two-branch superposition in a single step.
    """
    if m not in (1, 2):
        raise InputError("collective control supports m in {1, 2}")
    if n_nodes > 12:
        raise CapExceeded("collective control supported for N <= 12")
    h = collective_operator(CollectiveLabel(m, 0, 0, 0), n_nodes)
    return hermitian_expm(h, alpha_t)


def collective_control_expansion(m: int, alpha_t: float, n_nodes: int) -> np.ndarray:
    """Closed-form product over placements (verification route).

    prod_p (cos(alpha_t) 1 - i sin(alpha_t) C_p); all placements of
    sigma_x factors commute, so the product equals the exponential.
    """
    from .collective import placements, selective_operator

    dim = 2 ** n_nodes
    u = np.eye(dim, dtype=complex)
    for s in placements(m, 0, 0, n_nodes):
        u = u @ (math.cos(alpha_t) * np.eye(dim) - 1j * math.sin(alpha_t) * selective_operator(s))
    return u


def cat_creation_target(n_nodes: int) -> np.ndarray:
    """(|0...0> + i^s |1...1>)/sqrt(2) with s = +1 for even N/2, else -1."""
    if n_nodes % 2:
        raise InputError("single-step creation needs even N")
    sign = 1j if (n_nodes // 2) % 2 == 0 else -1j
    v = np.zeros(2 ** n_nodes, dtype=complex)
    v[0] = 1 / math.sqrt(2)
    v[-1] = sign / math.sqrt(2)
    return v


def cat_creation_fidelity(n_nodes: int) -> float:
    """|<target| U_{pi/4} |0...0>| for the pairwise collective drive."""
    u = collective_control(2, math.pi / 4, n_nodes)
    psi = u[:, 0]  # image of |0...0>
    return float(abs(np.vdot(cat_creation_target(n_nodes), psi)))


# ---------------------------------------------------------------------------
# selective network echo
# ---------------------------------------------------------------------------

@dataclass
class NetworkEchoReport:
    n_nodes: int
    cycle_length: int
    residual: float
    eigenstates_product: bool
    single_node_steps: bool
    pulses_per_period: int


def network_zz_hamiltonian(n_nodes: int, couplings, frequencies=None) -> np.ndarray:
    """Diagonal network model: pair couplings on sigma_z (x) sigma_z plus
    optional local sigma_z/2 terms.

    ``couplings`` maps node pairs (mu, nu) to strengths; missing pairs
    couple with 0.
    """
    dim = 2 ** n_nodes
    h = np.zeros((dim, dim), dtype=complex)
    for (mu, nu), c in dict(couplings).items():
        if not (0 <= mu < nu < n_nodes):
            raise InputError(f"bad node pair ({mu},{nu})")
        mats = [np.eye(2, dtype=complex)] * n_nodes
        mats[mu] = SIGMA_Z
        mats[nu] = SIGMA_Z
        h += c * kron_all(mats)
    if frequencies is not None:
        for mu, w in enumerate(frequencies):
            mats = [np.eye(2, dtype=complex)] * n_nodes
            mats[mu] = SIGMA_Z
            h += (w / 2) * kron_all(mats)
    return h


def selective_network_echo(n_nodes: int, couplings, dt: float, frequencies=None) -> NetworkEchoReport:
    """Gray-cycle echo for a diagonal interacting network.

    The interaction shifts the spectrum while the eigenstates stay the
    computational product states; cycling them along the Hamming-1
    sequence with free evolution of dt/2^N per step nulls the total
    phase because the full spectrum is traceless.
    """
    if n_nodes > 6:
        raise CapExceeded("network echo supported for N <= 6")
    h = network_zz_hamiltonian(n_nodes, couplings, frequencies)
    dim = 2 ** n_nodes

    # eigenstates must be the computational product states
    off = h - np.diag(np.diag(h))
    eigen_product = bool(np.max(np.abs(off)) < 1e-12)

    seq = gray_sequence(n_nodes)
    codes = [int(c) for c in seq.codes]
    single_node = seq.hamming_check()
    perm = np.zeros((dim, dim), dtype=complex)
    for i, c in enumerate(codes):
        perm[codes[(i + 1) % dim], c] = 1.0

    step = hermitian_expm(h, dt / dim)
    u = np.eye(dim, dtype=complex)
    for _ in range(dim):
        u = perm @ step @ u
    return NetworkEchoReport(
        n_nodes=n_nodes,
        cycle_length=dim,
        residual=phase_distance(u),
        eigenstates_product=eigen_product,
        single_node_steps=single_node,
        pulses_per_period=dim,
    )
