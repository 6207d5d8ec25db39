"""Complex coherence vector of a qutrit and its rotation under evolution.

The squared length of the coherence vector separates pure from mixed
states; unitary evolution only rotates the vector, and the rotation can
be generated either by the map T(t) or by integrating du/dt = Omega u.
"""

import numpy as np

from weylnet import coherence
from weylnet.protocols import hermitian_expm

rng = np.random.default_rng(1)
n = 3

print("== purity from the coherence-vector length ==")
pure_vec = rng.normal(size=n) + 1j * rng.normal(size=n)
pure_vec /= np.linalg.norm(pure_vec)
for name, rho in [
    ("pure state", np.outer(pure_vec, pure_vec.conj())),
    ("maximally mixed", np.eye(n) / n),
    ("half-half blend", 0.5 * np.outer(pure_vec, pure_vec.conj()) + 0.5 * np.eye(n) / n),
]:
    cv = coherence.expand_state(rho)
    print(f"  {name:16s} |u|^2 = {cv.length_sq:.6f}  (pure would be {n - 1})")

print("\n== rotation by a random Hamiltonian ==")
a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
h = (a + a.conj().T) / 2
rho = 0.7 * np.outer(pure_vec, pure_vec.conj()) + 0.3 * np.eye(n) / n
cv = coherence.expand_state(rho)
t = 2.0
u_t = hermitian_expm(h, t)
rotation = coherence.rotation_matrix(u_t)
rotated = rotation @ cv.u
direct = coherence.expand_state(u_t @ rho @ u_t.conj().T)
print(f"  map vs direct conjugation: {np.max(np.abs(rotated - direct.u)):.2e}")
print(f"  length before {np.linalg.norm(cv.u):.8f}, after {np.linalg.norm(rotated):.8f}")

print("\n== generator route ==")
omega = coherence.generator_matrix(h)
print(f"  antisymmetry max |Omega_ij + conj(Omega_ji)| = "
      f"{np.max(np.abs(omega + omega.conj().T)):.2e}")
integrated = coherence.evolve_coherence(omega, cv.u, t)
print(f"  RK4 integration vs map: {np.max(np.abs(integrated - rotated)):.2e}")

print("\n== CSV export of the components ==")
print(coherence.coherence_csv(cv))
