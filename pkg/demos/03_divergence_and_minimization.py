"""Renyi relative entropy, its bounds, and the optimized quantities.

Reproduces the maximally mixed worked example end to end, then runs the
Nelder-Mead minimization on a generic state and cross-checks it against the
brute-force Bloch-ball grid.
"""

import math

import numpy as np

from renyi import (
    DensityMatrix,
    bloch_grid_minimum,
    conditional_entropy,
    equality_condition_check,
    mutual_information,
    random_density,
    renyi_relative_entropy,
    t4_lower_bound,
    t5_closed_form,
    t6_lower_bound,
    triangle_bound_check,
)

alpha = 2.0

# Relative entropy basics: self-divergence vanishes, and the determinant
# bound (with its proportionality flag) sits underneath.
rho = DensityMatrix(np.diag([0.5, 0.5]))
sigma = np.diag([0.25, 0.75])
print("D_2(rho||sigma) =", renyi_relative_entropy(rho, sigma, alpha).value)
print("D_2(rho||rho)   =", renyi_relative_entropy(rho, rho.matrix, alpha).value)
rep = t4_lower_bound(rho, sigma, alpha)
print("t4 bound", rep.extras["bound"], "<= divergence", rep.extras["divergence"])
flag, c = equality_condition_check(rho, sigma, alpha)
print("proportionality flag:", flag, " c =", c)

# The worked example: for the maximally mixed two-qubit state the mutual
# information is zero, the conditional entropy is ln(2), and the optimizer
# lands on sigma_B = I/2.
mm = DensityMatrix(np.eye(4) / 4, dims=(2, 2))
mi, out = mutual_information(mm, alpha)
ce, _ = conditional_entropy(mm, alpha)
print("\nmaximally mixed worked example:")
print("  I_2(A;B)  =", mi)
print("  H_2(A|B)  =", ce, " (ln 2 =", math.log(2), ")")
print("  sigma_B   =\n", np.round(out.optimizer_sigma.matrix.real, 6))

# The proportionality condition holds here, so the closed form applies and
# agrees: c1 = c2 = (1/4)^(1-2a) = 64 at alpha = 2.
closed = t5_closed_form(mm, alpha, "mutual")
print("  closed form: value", closed.value, " c =", closed.c)

# The determinant lower bound on the mutual information (natural log).
print("  t6 bound  =", t6_lower_bound(mm, alpha).extras["bound"])

# A generic full-rank two-qubit state: optimizer vs exhaustive grid.
state = DensityMatrix(random_density(4, seed=5).matrix, dims=(2, 2))
value, out = mutual_information(state, alpha)
grid = bloch_grid_minimum(state, alpha, "mutual", step=0.02)
print("\ngeneric state:")
print(f"  optimizer {value:.6f} vs grid {grid:.6f} (|diff| {abs(value-grid):.2e})")
print(f"  restarts {out.restarts_used}, iterations {out.iterations},"
      f" converged {out.converged}")
bound = t6_lower_bound(state, alpha)
print(f"  t6: bound {bound.extras['bound']:.6f} <= I {value:.6f}"
      f" (passed {bound.passed})")

# Triangle-style bound through the identity reference.
tri = triangle_bound_check(state, np.diag([0.6, 0.9, 1.2, 1.5]), alpha)
print(f"  triangle: {tri.lhs:.6f} <= {tri.rhs:.6f} (passed {tri.passed})")
