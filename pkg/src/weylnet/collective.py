"""Collective operator families for networks of two-level nodes.

A product operator on N qubits is a placement of single-node factors
sigma_x, sigma_y, sigma_z (multiplicities alpha, beta, gamma) on
distinct nodes, identity elsewhere.  Summing one multiplicity class
over all of its Omega = N!/(alpha! beta! gamma! (N-a-b-g)!) placements
with a discrete phase gradient gives the collective operators

    E_{abg,b} = sum_p w_Omega^(p b) C_{abg,p},   w_Omega = exp(2 pi i / Omega).

b = 0 members are permutation symmetric.  Placements are canonically
the length-N strings over {I, X, Y, Z} with the given multiplicities in
lexicographic order; p is the rank in that order (the numbering is a
convention, fixed here so phased members are reproducible).

Single-node matrices follow the hermitian generator set of the
shift/phase basis: sigma_z = diag(-1, +1), so |0> is the lower level,
and sigma_y = i(|0><1| - |1><0|).

The coarser families F (net flip z and sigma_z count gamma, built on
sigma_+/sigma_-/sigma_z) and G (total operator count m) are grouped the
same way; each group's phase transform is an invertible DFT over its
placements, so both families stay complete.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cluster import NetworkState, kron_all
from .coherence import validate_state
from .errors import InputError

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, 1j], [-1j, 0]], dtype=complex)
SIGMA_Z = np.array([[-1, 0], [0, 1]], dtype=complex)
SIGMA_PLUS = SIGMA_X + 1j * SIGMA_Y    # 2 |1><0|
SIGMA_MINUS = SIGMA_X - 1j * SIGMA_Y   # 2 |0><1|
ID2 = np.eye(2, dtype=complex)

_CHAR_MATS = {"I": ID2, "X": SIGMA_X, "Y": SIGMA_Y, "Z": SIGMA_Z,
              "P": SIGMA_PLUS, "M": SIGMA_MINUS}


@dataclass(frozen=True, order=True)
class CollectiveLabel:
    """(alpha, beta, gamma, b) multiplicities and phase index."""

    alpha: int
    beta: int
    gamma: int
    b: int

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma, self.b) < 0:
            raise InputError("collective label entries must be non-negative")

    @property
    def order(self) -> int:
        return self.alpha + self.beta + self.gamma


def multiplicity(alpha: int, beta: int, gamma: int, n_nodes: int) -> int:
    """Omega: number of placements of the multiplicity class on N nodes."""
    rest = n_nodes - alpha - beta - gamma
    if rest < 0:
        raise InputError(f"multiplicities ({alpha},{beta},{gamma}) exceed N={n_nodes}")
    return math.factorial(n_nodes) // (
        math.factorial(alpha) * math.factorial(beta) * math.factorial(gamma) * math.factorial(rest)
    )


@lru_cache(maxsize=None)
def placements(alpha: int, beta: int, gamma: int, n_nodes: int) -> tuple[str, ...]:
    """Lexicographically ordered placement strings over {I, X, Y, Z}."""
    rest = n_nodes - alpha - beta - gamma
    if rest < 0:
        raise InputError(f"multiplicities ({alpha},{beta},{gamma}) exceed N={n_nodes}")
    chars = "I" * rest + "X" * alpha + "Y" * beta + "Z" * gamma
    return tuple(sorted({"".join(p) for p in itertools.permutations(chars)}))


def selective_operator(placement: str) -> np.ndarray:
    """Dense matrix of one placement string."""
    return kron_all(_CHAR_MATS[ch] for ch in placement)


def collective_operator(label: CollectiveLabel, n_nodes: int) -> np.ndarray:
    """E_{abg,b} = sum_p w_Omega^(p b) C_p over the canonical placements."""
    strings = placements(label.alpha, label.beta, label.gamma, n_nodes)
    omega = len(strings)
    if not 0 <= label.b < omega:
        raise InputError(f"phase index {label.b} out of range for Omega={omega}")
    acc = np.zeros((2 ** n_nodes, 2 ** n_nodes), dtype=complex)
    for p, s in enumerate(strings):
        acc += np.exp(2j * np.pi * ((p * label.b) % omega) / omega) * selective_operator(s)
    return acc


def collective_labels(n_nodes: int, b_zero_only: bool = False):
    """All labels; 4^N in total, (N+1)(N+2)(N+3)/6 with b = 0."""
    for alpha in range(n_nodes + 1):
        for beta in range(n_nodes + 1 - alpha):
            for gamma in range(n_nodes + 1 - alpha - beta):
                omega = multiplicity(alpha, beta, gamma, n_nodes)
                for b in ([0] if b_zero_only else range(omega)):
                    yield CollectiveLabel(alpha, beta, gamma, b)


def selective_to_collective(p0: int, alpha: int, beta: int, gamma: int, n_nodes: int) -> dict:
    """Coefficients of the inverse transform sum_b w^(-b p0) E_b = Omega C_p0.

    Returns {b: w_Omega^(-b p0) / Omega}; applying it to the collective
    family reproduces the selective operator C_{abg,p0} exactly.
    """
    omega = multiplicity(alpha, beta, gamma, n_nodes)
    if not 0 <= p0 < omega:
        raise InputError(f"permutation index {p0} out of range for Omega={omega}")
    return {b: np.exp(-2j * np.pi * ((b * p0) % omega) / omega) / omega for b in range(omega)}


def selective_from_collective(p0: int, alpha: int, beta: int, gamma: int, n_nodes: int) -> np.ndarray:
    """Reassemble C_{abg,p0} from the phased collective family."""
    coeffs = selective_to_collective(p0, alpha, beta, gamma, n_nodes)
    acc = np.zeros((2 ** n_nodes, 2 ** n_nodes), dtype=complex)
    for b, c in coeffs.items():
        acc += c * collective_operator(CollectiveLabel(alpha, beta, gamma, b), n_nodes)
    return acc


def _as_rho(state, n_nodes: int | None) -> tuple[np.ndarray, int]:
    if isinstance(state, NetworkState):
        if any(d != 2 for d in state.dims):
            raise InputError("collective operators are defined for two-level nodes")
        return state.rho, state.n_nodes
    rho = validate_state(state)
    nn = int(round(np.log2(rho.shape[0]))) if n_nodes is None else n_nodes
    if 2 ** nn != rho.shape[0]:
        raise InputError("operator dimension is not a power of two")
    return rho, nn


def decompose_collective(state, n_nodes: int | None = None) -> dict:
    """Expectation map E_{abg,b} = (1/Omega) tr{rho E^dag}.

    The density operator reconstructs as (1/2^N) sum E_{abg,b} E_hat;
    permutation-symmetric states have all b != 0 coefficients zero.
    """
    rho, nn = _as_rho(state, n_nodes)
    out = {}
    for alpha in range(nn + 1):
        for beta in range(nn + 1 - alpha):
            for gamma in range(nn + 1 - alpha - beta):
                strings = placements(alpha, beta, gamma, nn)
                omega = len(strings)
                c = np.array([np.sum(rho * selective_operator(s).conj()) for s in strings])
                for b in range(omega):
                    phases = np.exp(-2j * np.pi * (np.arange(omega) * b % omega) / omega)
                    out[CollectiveLabel(alpha, beta, gamma, b)] = complex(phases @ c) / omega
    return out


def reconstruct_collective(coeffs: dict, n_nodes: int) -> np.ndarray:
    """Inverse of :func:`decompose_collective`."""
    dim = 2 ** n_nodes
    acc = np.zeros((dim, dim), dtype=complex)
    grouped: dict = {}
    for label, value in coeffs.items():
        grouped.setdefault((label.alpha, label.beta, label.gamma), {})[label.b] = value
    for (alpha, beta, gamma), by_b in grouped.items():
        strings = placements(alpha, beta, gamma, n_nodes)
        omega = len(strings)
        for p, s in enumerate(strings):
            weight = sum(
                value * np.exp(2j * np.pi * ((p * b) % omega) / omega)
                for b, value in by_b.items()
            )
            acc += weight * selective_operator(s)
    return acc / dim


# ---------------------------------------------------------------------------
# F and G families
# ---------------------------------------------------------------------------

def f_labels(n_nodes: int):
    """(z, gamma) groups: z in [-(N-gamma), N-gamma]; (N+1)^2 groups."""
    for gamma in range(n_nodes + 1):
        for z in range(-(n_nodes - gamma), n_nodes - gamma + 1):
            yield z, gamma


@lru_cache(maxsize=None)
def f_placements(z: int, gamma: int, n_nodes: int) -> tuple[str, ...]:
    """All sigma_+/sigma_-/sigma_z placements with net flip z and gamma z's.

    Every (alpha, beta) pair with alpha - beta = z contributes its
    placements; the joint list is ordered lexicographically and indexed
    by one permutation label, which keeps the phase transform an
    invertible DFT and the family complete.
    """
    out = set()
    for alpha in range(n_nodes + 1):
        beta = alpha - z
        if beta < 0 or alpha + beta + gamma > n_nodes:
            continue
        rest = n_nodes - alpha - beta - gamma
        chars = "I" * rest + "M" * beta + "P" * alpha + "Z" * gamma
        out |= {"".join(p) for p in itertools.permutations(chars)}
    return tuple(sorted(out))


def f_operator(z: int, gamma: int, b: int, n_nodes: int) -> np.ndarray:
    strings = f_placements(z, gamma, n_nodes)
    omega = len(strings)
    if not 0 <= b < omega:
        raise InputError(f"phase index {b} out of range for Omega={omega}")
    acc = np.zeros((2 ** n_nodes, 2 ** n_nodes), dtype=complex)
    for p, s in enumerate(strings):
        acc += np.exp(2j * np.pi * ((p * b) % omega) / omega) * selective_operator(s)
    return acc


def g_labels(n_nodes: int):
    return range(n_nodes + 1)


@lru_cache(maxsize=None)
def g_placements(m: int, n_nodes: int) -> tuple[str, ...]:
    """All placements of m non-identity factors of any type; 3^m C(N,m)."""
    out = set()
    for alpha in range(m + 1):
        for beta in range(m + 1 - alpha):
            gamma = m - alpha - beta
            chars = "I" * (n_nodes - m) + "X" * alpha + "Y" * beta + "Z" * gamma
            out |= {"".join(p) for p in itertools.permutations(chars)}
    return tuple(sorted(out))


def g_operator(m: int, b: int, n_nodes: int) -> np.ndarray:
    strings = g_placements(m, n_nodes)
    omega = len(strings)
    if not 0 <= b < omega:
        raise InputError(f"phase index {b} out of range for Omega={omega}")
    acc = np.zeros((2 ** n_nodes, 2 ** n_nodes), dtype=complex)
    for p, s in enumerate(strings):
        acc += np.exp(2j * np.pi * ((p * b) % omega) / omega) * selective_operator(s)
    return acc


def family_operators(family: str, n_nodes: int):
    """(label, matrix) pairs of a complete family: "E", "F" or "G"."""
    if family == "E":
        for label in collective_labels(n_nodes):
            yield label, collective_operator(label, n_nodes)
    elif family == "F":
        for z, gamma in f_labels(n_nodes):
            for b in range(len(f_placements(z, gamma, n_nodes))):
                yield (z, gamma, b), f_operator(z, gamma, b, n_nodes)
    elif family == "G":
        for m in g_labels(n_nodes):
            for b in range(len(g_placements(m, n_nodes))):
                yield (m, b), g_operator(m, b, n_nodes)
    else:
        raise InputError(f"unknown family {family!r}")


def decompose_in_family(op, family: str, n_nodes: int) -> tuple[dict, float]:
    """Solve for coefficients of ``op`` over a family; returns (map, residual).

    The F and G families are complete but not trace-orthogonal, so the
    coefficients come from a dense linear solve; the reported residual
    is the max-entry reconstruction error (completeness means ~0).
    """
    dim = 2 ** n_nodes
    labels, columns = [], []
    for label, mat in family_operators(family, n_nodes):
        labels.append(label)
        columns.append(mat.ravel())
    basis = np.array(columns).T
    target = np.asarray(op, dtype=complex).ravel()
    coeffs, *_ = np.linalg.lstsq(basis, target, rcond=None)
    residual = float(np.max(np.abs(basis @ coeffs - target)))
    return dict(zip(labels, coeffs)), residual


def count_parameters(family: str, n_nodes: int) -> int:
    """Closed-form count of b = 0 operators: E, F, G families."""
    if family in ("E0", "E"):
        return (n_nodes + 1) * (n_nodes + 2) * (n_nodes + 3) // 6
    if family in ("F0", "F"):
        return (n_nodes + 1) ** 2
    if family in ("G0", "G"):
        return n_nodes + 1
    raise InputError(f"unknown family {family!r}")


def enumerate_parameters(family: str, n_nodes: int) -> int:
    """The same count by direct enumeration of the b = 0 labels."""
    if family in ("E0", "E"):
        return sum(1 for _ in collective_labels(n_nodes, b_zero_only=True))
    if family in ("F0", "F"):
        return sum(1 for _ in f_labels(n_nodes))
    if family in ("G0", "G"):
        return len(list(g_labels(n_nodes)))
    raise InputError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# two-node Hamiltonian models and their collective invariants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantExpression:
    """Real-coefficient linear form over collective expectation values."""

    name: str
    terms: tuple[tuple[float, CollectiveLabel], ...]

    def evaluate(self, coeffs: dict) -> complex:
        return sum(c * coeffs[label] for c, label in self.terms)


@dataclass
class InvariantSet:
    model: str
    hamiltonian: np.ndarray
    n_nodes: int
    expressions: tuple[InvariantExpression, ...]


def _e(alpha, beta, gamma, b=0) -> CollectiveLabel:
    return CollectiveLabel(alpha, beta, gamma, b)


def hamiltonian_invariants(model: str, **params) -> InvariantSet:
    """Two-node models with their conserved collective expectation values.

    "foerster" (params omega, c_f): excitation-exchange coupling; the
    conserved forms are E_{001,0}, E_{002,0} and E_{200,0} + E_{020,0}.

    "renormalization" (params omega_1, omega_2, c_r): detuned pair with
    a zz coupling; conserves E_{001,0}, E_{002,0} and the antisymmetric
    E_{001,1}.

    "stimulation" (params g, delta): collectively driven pair in the
    rotating frame; conserves the driven-field projection, its tensor
    square, and a cubic form that can only be nonzero when permutation
    symmetry was broken beforehand.
    """
    if model == "foerster":
        omega, c_f = params["omega"], params["c_f"]
        h = omega / 2 * collective_operator(_e(0, 0, 1), 2) + \
            c_f / 2 * (collective_operator(_e(2, 0, 0), 2) + collective_operator(_e(0, 2, 0), 2))
        exprs = (
            InvariantExpression("E_001_0", ((1.0, _e(0, 0, 1)),)),
            InvariantExpression("E_002_0", ((1.0, _e(0, 0, 2)),)),
            InvariantExpression("E_200_0+E_020_0", ((1.0, _e(2, 0, 0)), (1.0, _e(0, 2, 0)))),
        )
    elif model == "renormalization":
        w1, w2, c_r = params["omega_1"], params["omega_2"], params["c_r"]
        h = (w1 + w2) / 4 * collective_operator(_e(0, 0, 1), 2) + \
            (w1 - w2) / 4 * collective_operator(_e(0, 0, 1, b=1), 2) + \
            c_r / 2 * collective_operator(_e(0, 0, 2), 2)
        exprs = (
            InvariantExpression("E_001_0", ((1.0, _e(0, 0, 1)),)),
            InvariantExpression("E_002_0", ((1.0, _e(0, 0, 2)),)),
            InvariantExpression("E_001_1", ((1.0, _e(0, 0, 1, b=1)),)),
        )
    elif model == "stimulation":
        g, delta = params["g"], params["delta"]
        h = g / 2 * collective_operator(_e(1, 0, 0), 2) + \
            delta / 2 * collective_operator(_e(0, 0, 1), 2)
        g2d2 = g * g + delta * delta
        exprs = (
            InvariantExpression("linear", ((delta, _e(0, 0, 1)), (g, _e(1, 0, 0)))),
            InvariantExpression("quadratic", (
                (delta ** 2, _e(0, 0, 2)),
                (2 * g * delta, _e(1, 0, 1)),
                (g ** 2, _e(2, 0, 0)),
            )),
            InvariantExpression("cubic", (
                (4 * delta ** 2 * g2d2, _e(0, 0, 1, b=1)),
                (-g ** 4, _e(0, 0, 2)),
                (-g ** 2 * g2d2, _e(0, 2, 0)),
                (4 * g * delta * g2d2, _e(1, 0, 0, b=1)),
                (2 * g ** 3 * delta, _e(1, 0, 1)),
                (-g ** 2 * delta ** 2, _e(2, 0, 0)),
            )),
        )
    else:
        raise InputError(f"unknown model {model!r}; expected foerster|renormalization|stimulation")
    return InvariantSet(model=model, hamiltonian=h, n_nodes=2, expressions=exprs)


@dataclass
class DriftReport:
    model: str
    values_at_zero: dict
    max_drift: dict

    @property
    def worst(self) -> float:
        return max(self.max_drift.values())

    def failed(self, rtol: float = 1e-8) -> list[str]:
        return [
            name for name, drift in self.max_drift.items()
            if drift > rtol * (1.0 + abs(self.values_at_zero[name]))
        ]


def verify_invariants(inv: InvariantSet, rho0, total_time: float, steps: int = 80) -> DriftReport:
    """Propagate rho exactly (spectral 4x4 exponential) and track drift.

    Drift of each expression is max_t |value(t) - value(0)|; the
    propagation is exact up to diagonalization roundoff so drift
    measures formula correctness, not integrator error.
    """
    rho = validate_state(rho0)
    vals, vecs = np.linalg.eigh(inv.hamiltonian)
    coeffs0 = decompose_collective(rho, inv.n_nodes)
    at_zero = {e.name: e.evaluate(coeffs0) for e in inv.expressions}
    drift = {e.name: 0.0 for e in inv.expressions}
    for t in np.linspace(0.0, total_time, steps + 1)[1:]:
        u = vecs @ np.diag(np.exp(-1j * vals * t)) @ vecs.conj().T
        coeffs = decompose_collective(u @ rho @ u.conj().T, inv.n_nodes)
        for e in inv.expressions:
            drift[e.name] = max(drift[e.name], abs(e.evaluate(coeffs) - at_zero[e.name]))
    return DriftReport(model=inv.model, values_at_zero=at_zero, max_drift=drift)


def foerster_eigensystem(omega: float, c_f: float) -> list[tuple[float, np.ndarray]]:
    """Closed-form eigensystem of the excitation-exchange model.

    Returns [(energy, vector)] for |00>, (|01> -+ |10>)/sqrt(2), |11>;
    matches the numerical diagonalization of the model Hamiltonian.
    """
    v00 = np.array([1, 0, 0, 0], dtype=complex)
    v11 = np.array([0, 0, 0, 1], dtype=complex)
    vp = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
    vm = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
    return [(-omega, v00), (c_f, vp), (-c_f, vm), (omega, v11)]
