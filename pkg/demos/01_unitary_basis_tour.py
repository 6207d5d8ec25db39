"""Tour of the shift/phase unitary basis on a single n-level system.

Builds the basis matrices, exercises the closed product algebra, and
converts a random operator between the three basis sets.
"""

import numpy as np

from weylnet import basis
from weylnet.basis import WeylIndex, weyl_matrix

n = 3
print(f"== the {n * n} basis unitaries for n = {n} ==")
for a in range(n):
    for b in range(n):
        m = weyl_matrix(WeylIndex(a, b, n))
        print(f"U_{a}{b} =\n{np.round(m, 3)}")

print("\n== products close on the set up to a root-of-unity phase ==")
x, y = WeylIndex(1, 1, n), WeylIndex(1, 2, n)
phase, z = basis.weyl_product(x, y)
print(f"U_11 U_12 = ({phase:.4f}) U_{z.a}{z.b}")
phase, z = basis.weyl_adjoint(x)
print(f"U_11^dag  = ({phase:.4f}) U_{z.a}{z.b}")

print("\n== two operators generate everything ==")
report = basis.two_generator_span(n)
print(f"all {n * n} members reached as words in U_{{0,{n-1}}} and U_{{{n-1},0}}: "
      f"{report.all_reached} (max matrix error {report.max_error:.2e})")
for target in [(0, 0), (1, 0), (2, 2)]:
    exp, word = report.words[target]
    print(f"  U_{target[0]}{target[1]} = w^{exp} * {''.join(word) or '1'}")

print("\n== commuting partners follow the gcd rule ==")
for idx in [WeylIndex(1, 1, 6), WeylIndex(2, 4, 6), WeylIndex(3, 3, 6)]:
    print(f"  U_{idx.a}{idx.b} (n=6) commutes with {basis.commuting_partner_count(idx)} members")

print("\n== basis conversions round-trip exactly ==")
rng = np.random.default_rng(0)
op = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
coeffs = basis.expand(op, "weyl")
via_sun = basis.convert_coefficients(coeffs, n, "weyl", "sun")
back = basis.assemble(n, "sun", via_sun)
print(f"random op -> weyl -> su({n}) -> dense: max error {np.max(np.abs(back - op)):.2e}")
