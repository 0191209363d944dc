"""Quantum Renyi entropy and its spectral bounds.

Builds density matrices (diagonal, rotated, rank deficient), computes their
Renyi entropies from the Jacobi spectrum, and evaluates the support bound
and the log-dimension cap.
"""

import numpy as np

from renyi import (
    DensityMatrix,
    log_dim_cap,
    quantum_renyi_entropy,
    random_density,
    spectral_decompose,
    t3_bound,
)

# A density matrix carries its spectral decomposition; entropies come from
# the eigenvalues, never from powered matrices.
rho = random_density(4, seed=3)
print("random 4x4 state, eigenvalues:", np.round(rho.eigenvalues, 6))
for alpha in (0.5, 1.0, 2.0, 5.0):
    h = quantum_renyi_entropy(rho, alpha)
    print(f"  H_{alpha:3.1f} = {h.value:.6f} nats"
          f" = {quantum_renyi_entropy(rho, alpha, units='bits').value:.6f} bits")

# The entropy is unitarily invariant: a rotated copy has the same spectrum.
basis = spectral_decompose(random_density(4, seed=9).matrix).eigenvectors
rotated = DensityMatrix(basis @ rho.matrix @ basis.conj().T)
print(
    "\nrotated copy H_2:",
    f"{quantum_renyi_entropy(rotated, 2.0).value:.12f}",
    "vs original",
    f"{quantum_renyi_entropy(rho, 2.0).value:.12f}",
)

# The support bound is one-sided in alpha: below the entropy for alpha < 1,
# above it for alpha > 1; the dimension cap log(d) always sits on top.
print("\nsupport bound on a rank-deficient state:")
deficient = random_density(5, seed=11, rank=3)
for alpha in (0.3, 0.5, 2.0, 5.0):
    rep = t3_bound(deficient, alpha)
    side = "<=" if alpha < 1 else ">="
    print(
        f"  alpha={alpha:3.1f}: bound {rep.extras['bound']:+.6f} {side} "
        f"H {rep.extras['entropy']:.6f} <= cap {rep.extras['cap']:.6f} "
        f"(d0={rep.extras['d0']}, passed={rep.passed})"
    )

# Maximally mixed states saturate both the bound and the cap.
mm = DensityMatrix(np.eye(4) / 4)
rep = t3_bound(mm, 0.5)
print(
    "\nmaximally mixed: bound", f"{rep.extras['bound']:.6f}",
    "entropy", f"{rep.extras['entropy']:.6f}",
    "cap", f"{rep.extras['cap']:.6f}",
    "equality flag", rep.equality,
)
cap = log_dim_cap(mm, 2.0)
print("log-dim cap report:", cap.passed, "equality", cap.equality)
