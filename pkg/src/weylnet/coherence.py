"""Complex coherence vector of a density operator and its unitary motion.

A state rho on an n-level system expands as rho = (1/n) sum_i u_i U_i
over the shift/phase unitaries with u_i = tr{U_i^dag rho}.  The i = 0
component is always 1 and is dropped; the remaining n^2 - 1 complex
components form the coherence vector u.  Unitary evolution rotates u:
u(t) = T(t) u(0), infinitesimally du/dt = Omega u.

hbar = 1 throughout; Hamiltonians are in angular-frequency units.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import from_single_index, weyl_matrix
from .errors import InputError

#: tolerance for state validation (hermiticity, trace, positivity)
STATE_ATOL = 1e-10


def single_index(a: int, b: int, n: int) -> int:
    return n * a + b


def index_pair(i: int, n: int) -> tuple[int, int]:
    return i // n, i % n


@dataclass(frozen=True)
class CoherenceVector:
    """Coherence vector: u[i-1] holds u_i for i = n*a + b, i = 1..n^2-1."""

    n: int
    u: np.ndarray

    def __post_init__(self):
        if self.u.shape != (self.n * self.n - 1,):
            raise InputError(f"coherence vector must have length {self.n**2 - 1}")

    def entry(self, a: int, b: int) -> complex:
        i = single_index(a, b, self.n)
        if i == 0:
            return 1.0 + 0j
        return complex(self.u[i - 1])

    @property
    def length_sq(self) -> float:
        """|u|^2 = n tr{rho^2} - 1; equals n-1 exactly on pure states."""
        return float(np.sum(np.abs(self.u) ** 2))

    def symmetry_residual(self) -> float:
        """Max violation of u_ab = conj(u_{-a,-b}) * w^(ab)."""
        n = self.n
        w = np.exp(2j * np.pi / n)
        worst = 0.0
        for i in range(1, n * n):
            a, b = index_pair(i, n)
            j = single_index((-a) % n, (-b) % n, n)
            other = 1.0 if j == 0 else self.u[j - 1]
            worst = max(worst, abs(self.u[i - 1] - np.conj(other) * w ** ((a * b) % n)))
        return worst

    def csv_rows(self) -> list[tuple[int, int, float, float]]:
        """(a, b, Re u, Im u) rows for every i != 0, in index order."""
        rows = []
        for i in range(1, self.n * self.n):
            a, b = index_pair(i, self.n)
            rows.append((a, b, float(self.u[i - 1].real), float(self.u[i - 1].imag)))
        return rows


def _basis_stack(n: int) -> np.ndarray:
    """Stack of all n^2 basis matrices indexed by i = n*a + b."""
    return np.stack([weyl_matrix(from_single_index(i, n)) for i in range(n * n)])


def validate_state(rho, atol: float = STATE_ATOL) -> np.ndarray:
    """Check hermiticity, unit trace and positivity; return the array."""
    m = np.asarray(rho, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"density operator must be square, got {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > atol:
        raise InputError("density operator is not hermitian")
    if abs(np.trace(m) - 1.0) > atol:
        raise InputError(f"density operator trace {np.trace(m):.3g} != 1")
    if np.min(np.linalg.eigvalsh((m + m.conj().T) / 2)) < -atol:
        raise InputError("density operator is not positive semidefinite")
    return m


def expand_state(rho, atol: float = STATE_ATOL) -> CoherenceVector:
    """Coherence vector of a valid density operator."""
    m = validate_state(rho, atol)
    n = m.shape[0]
    ops = _basis_stack(n)
    u = np.einsum("ikl,kl->i", ops.conj(), m)  # tr{U_i^dag rho} entrywise
    return CoherenceVector(n=n, u=u[1:])


def reconstruct_state(cv: CoherenceVector) -> np.ndarray:
    """rho = (1/n) (1 + sum_{i != 0} u_i U_i)."""
    n = cv.n
    m = np.eye(n, dtype=complex)
    for i in range(1, n * n):
        m += cv.u[i - 1] * weyl_matrix(from_single_index(i, n))
    return m / n


def rotation_matrix(u_t, atol: float = 1e-8) -> np.ndarray:
    """Coherence-space rotation T with T_ij = (1/n) tr{U_j U(t)^dag U_i^dag U(t)}.

    T is unitary on the (n^2-1)-dimensional coherence space and satisfies
    expand_state(U rho U^dag).u == T @ expand_state(rho).u.
    """
    U = np.asarray(u_t, dtype=complex)
    n = U.shape[0]
    if np.max(np.abs(U.conj().T @ U - np.eye(n))) > atol:
        raise InputError("evolution operator is not unitary")
    ops = _basis_stack(n)
    conj = np.stack([U.conj().T @ ops[i].conj().T @ U for i in range(n * n)])
    t_full = np.einsum("jlk,ikl->ij", ops, conj) / n
    return t_full[1:, 1:]


def generator_matrix(h) -> np.ndarray:
    """Rotation generator Omega_ij = -(1/(n i)) tr{H [U_i^dag, U_j]_-}.

    Omega is anti-hermitian in the sense Omega_ij = -conj(Omega_ji), has
    zero trace, and du/dt = Omega u reproduces the conjugated state.
    """
    H = np.asarray(h, dtype=complex)
    n = H.shape[0]
    if np.max(np.abs(H - H.conj().T)) > STATE_ATOL:
        raise InputError("Hamiltonian must be hermitian")
    ops = _basis_stack(n)
    omega = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n * n):
        di = ops[i].conj().T
        for j in range(n * n):
            omega[i, j] = 1j / n * np.trace(H @ (di @ ops[j] - ops[j] @ di))
    return omega[1:, 1:]


def evolve_coherence(omega: np.ndarray, u0: np.ndarray, t: float,
                     max_step: float = 0.002) -> np.ndarray:
    """Integrate du/dt = Omega u with classical fixed-step RK4.

    The step is at most ``max_step`` (in units of 1/||Omega||, i.e. the
    step actually used is max_step / max(1, ||Omega||_2)); the default
    keeps the global error safely below 1e-8 for t*||H|| <= 10.
    """
    scale = max(1.0, float(np.linalg.norm(omega, 2)))
    nsteps = max(1, int(np.ceil(abs(t) * scale / max_step)))
    h = t / nsteps
    u = np.asarray(u0, dtype=complex).copy()
    for _ in range(nsteps):
        k1 = omega @ u
        k2 = omega @ (u + h / 2 * k1)
        k3 = omega @ (u + h / 2 * k2)
        k4 = omega @ (u + h * k3)
        u = u + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return u


def coherence_csv(cv: CoherenceVector) -> str:
    """CSV export with rows (a, b, Re u, Im u)."""
    lines = ["a,b,re_u,im_u"]
    for a, b, re, im in cv.csv_rows():
        lines.append(f"{a},{b},{re!r},{im!r}")
    return "\n".join(lines) + "\n"
