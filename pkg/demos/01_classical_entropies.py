"""Classical entropies: type beta, order beta, and the support bounds.

Walks through the two classical entropy families on a few concrete
distributions, shows the transform tying them together, and checks the
support-based bounds numerically.
"""

import numpy as np

from renyi import (
    entropy_type_beta,
    entropy_type_beta_chain,
    info_function_beta,
    order_from_type,
    renyi_entropy,
    t1_bound,
    type_beta_product_bound,
)

# The information function of type beta generates the type-beta entropy.
# Its normalization pins f(1/2) = 1 and both endpoints to zero.
print("information function, beta = 2:")
for x in (0.0, 0.25, 0.5, 0.75, 1.0):
    print(f"  f({x:4.2f}) = {info_function_beta(x, 2.0):.6f}")

# Entropy of type beta: closed form vs the defining chain sum.
p = [0.5, 0.3, 0.2]
for beta in (0.5, 2.0):
    closed = entropy_type_beta(p, beta)
    chain = entropy_type_beta_chain(p, beta)
    print(f"\ntype-{beta} entropy of {p}: closed {closed:.12f}  chain {chain:.12f}")

# Renyi entropy of order beta (bits).  Uniform distributions give log2(n)
# for every order; skewed ones spread out with beta.
uniform8 = [1 / 8] * 8
print("\nRenyi entropy (bits):")
for beta in (0.5, 1.0, 2.0, 5.0):
    print(
        f"  beta={beta:3.1f}: uniform-8 {renyi_entropy(uniform8, beta):.6f}"
        f"   (0.75,0.25) {renyi_entropy([0.75, 0.25], beta):.6f}"
    )

# The transform between the two families is an exact round trip.
for beta in (0.5, 2.0):
    h_type = entropy_type_beta(p, beta)
    print(
        f"\norder_from_type(type-{beta} entropy) = "
        f"{order_from_type(h_type, beta):.12f}"
        f"  vs renyi_entropy = {renyi_entropy(p, beta):.12f}"
    )

# Support-based bounds.  t1_bound sits below the Renyi entropy for beta < 1
# and above it for beta > 1; the product bound does the same on the
# type-beta scale for beta < 1, tight exactly at uniform support.
rng = np.random.default_rng(0)
print("\nbounds on random distributions (with a forced zero):")
for _ in range(3):
    draws = rng.standard_exponential(3)
    q = np.append(draws / draws.sum() , 0.0)
    h_low = renyi_entropy(q, 0.5)
    print(
        f"  p = {np.round(q, 4)}:"
        f"  t1(0.5) {t1_bound(q, 0.5):+.4f} <= H_0.5 {h_low:.4f};"
        f"  t1(2) {t1_bound(q, 2.0):.4f} >= H_2 {renyi_entropy(q, 2.0):.4f};"
        f"  product(0.5) {type_beta_product_bound(q, 0.5):.4f}"
        f" <= type(0.5) {entropy_type_beta(q, 0.5):.4f}"
    )
