"""Random instance generators and the randomized property suites.

Randomness comes from numpy's Philox counter-based generator keyed by
``(seed, stream)``, so every trial owns an order-independent substream and
suite reports are reproducible bit for bit.  Each suite knows how to
generate one trial's inputs (already in serialized form, shared with the
CLI file format), how to check them, and the tolerance above which a
normalized violation counts as a failure.  One trial in a hundred is a
constructed equality-case instance so the equality flags get exercised.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .classical import (
    entropy_type_beta,
    probability_vector,
    renyi_entropy,
    t1_bound,
    type_beta_product_bound,
    order_from_type,
    info_function_beta,
)
from .divergence import (
    OPT_TOL,
    renyi_relative_entropy,
    t4_lower_bound,
    t6_lower_bound,
    triangle_bound_check,
)
from .exceptions import BadRank, BadZeros, UnknownSuite
from .fileformat import (
    distribution_from_payload,
    distribution_payload,
    matrix_from_payload,
    matrix_payload,
)
from .linalg import (
    CHAIN_TOL,
    EQ_TOL,
    lemma2_check,
    lemma3_check,
    lemma4_check,
    spectral_decompose,
)
from .quantum import DensityMatrix, log_dim_cap, quantum_renyi_entropy, t3_bound
from .report import BoundReport, chain_report, identity_report, normalized_slack

_MASK64 = (1 << 64) - 1

DIMS_CYCLE = (1, 2, 3, 4, 5, 6, 7, 8)
ORDERS_CYCLE = (0.3, 0.5, 0.9, 1.5, 2.0, 3.0, 5.0)
ORDERS_BELOW_ONE = (0.3, 0.5, 0.9)
ORDERS_ABOVE_ONE = (1.5, 2.0, 3.0, 5.0)
T6_DIMS_CYCLE = ((2, 2), (2, 3), (3, 2), (3, 3))
CONDITION_CAPS = (10.0, 100.0, 1000.0)

_EQUALITY_EVERY = 100


def derive_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox generator keyed by (seed, stream): portable and splittable."""
    key = np.array([int(seed) & _MASK64, int(stream) & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def _density_from_rng(rng, dim: int, rank: int) -> DensityMatrix:
    g = _ginibre(rng, dim, rank)
    m = g @ g.conj().T
    m /= np.trace(m).real
    return DensityMatrix(m)


def _basis_from_rng(rng, dim: int) -> np.ndarray:
    g = _ginibre(rng, dim, dim)
    return spectral_decompose((g + g.conj().T) / 2.0).eigenvectors


def _pd_from_rng(rng, dim: int, condition_cap: float) -> np.ndarray:
    if condition_cap < 1.0:
        raise ValueError("condition_cap must be at least 1")
    basis = _basis_from_rng(rng, dim)
    lo, hi = 1.0 / math.sqrt(condition_cap), math.sqrt(condition_cap)
    spectrum = rng.uniform(lo, hi, dim)
    m = (basis * spectrum) @ basis.conj().T
    return (m + m.conj().T) / 2.0


def _simplex_from_rng(rng, n: int, zeros: int) -> np.ndarray:
    if zeros < 0 or zeros >= n:
        raise BadZeros(f"zeros must lie in [0, n), got {zeros} for n = {n}")
    m = n - zeros
    draws = rng.standard_exponential(m)
    p = np.zeros(n)
    p[:m] = draws / draws.sum()
    rng.shuffle(p)
    return probability_vector(p)


def random_density(
    dim: int, seed: int, rank: int | None = None
) -> DensityMatrix:
    """Ginibre-construction random density matrix, deterministic per seed."""
    rank = dim if rank is None else int(rank)
    if not 1 <= rank <= dim:
        raise BadRank(f"rank must lie in [1, {dim}], got {rank}")
    return _density_from_rng(derive_rng(seed), dim, rank)


def random_pd(dim: int, seed: int, condition_cap: float = 100.0) -> np.ndarray:
    """Random PD matrix with eigenvalue ratio at most ``condition_cap``."""
    return _pd_from_rng(derive_rng(seed), dim, condition_cap)


def random_simplex(n: int, seed: int, zeros: int = 0) -> np.ndarray:
    """Uniform (Dirichlet) distribution with ``zeros`` exact zero entries."""
    return _simplex_from_rng(derive_rng(seed), n, zeros)


# --- suite generators / checks -------------------------------------------

def _psd_pair(rng, i: int, equal_case: bool) -> tuple[np.ndarray, np.ndarray]:
    dim = DIMS_CYCLE[i % 8]
    if equal_case:
        if dim == 1:
            return np.array([[rng.uniform(0.5, 2.0)]]), np.array([[0.0]])
        basis = _basis_from_rng(rng, dim)
        split = int(rng.integers(1, dim))
        wa = np.zeros(dim)
        wb = np.zeros(dim)
        wa[:split] = rng.uniform(0.5, 2.0, split)
        wb[split:] = rng.uniform(0.5, 2.0, dim - split)
        a = (basis * wa) @ basis.conj().T
        b = (basis * wb) @ basis.conj().T
        return (a + a.conj().T) / 2.0, (b + b.conj().T) / 2.0
    rank_a = int(rng.integers(1, dim + 1))
    rank_b = int(rng.integers(1, dim + 1))
    ga = _ginibre(rng, dim, rank_a)
    gb = _ginibre(rng, dim, rank_b)
    return ga @ ga.conj().T, gb @ gb.conj().T


def _gen_lemma2(rng, i: int) -> dict:
    eq = i % _EQUALITY_EVERY == 0
    a, b = _psd_pair(rng, i, eq)
    return {
        "a": matrix_payload(a),
        "b": matrix_payload(b),
        "equality_injected": eq,
    }


def _check_lemma2(inputs: dict) -> BoundReport:
    a, _ = matrix_from_payload(inputs["a"])
    b, _ = matrix_from_payload(inputs["b"])
    return lemma2_check(a, b)


def _gen_lemma3(rng, i: int) -> dict:
    eq = i % _EQUALITY_EVERY == 0
    if eq:
        dim = DIMS_CYCLE[i % 8]
        basis = _basis_from_rng(rng, dim)
        spectrum = rng.uniform(0.5, 2.0, dim)
        c = rng.uniform(0.5, 3.0)
        b = (basis * spectrum) @ basis.conj().T
        a = (basis * (c / spectrum)) @ basis.conj().T
        a = (a + a.conj().T) / 2.0
        b = (b + b.conj().T) / 2.0
    else:
        a, b = _psd_pair(rng, i, False)
    return {
        "a": matrix_payload(a),
        "b": matrix_payload(b),
        "equality_injected": eq,
    }


def _check_lemma3(inputs: dict) -> BoundReport:
    a, _ = matrix_from_payload(inputs["a"])
    b, _ = matrix_from_payload(inputs["b"])
    return lemma3_check(a, b)


def _gen_lemma4(rng, i: int) -> dict:
    eq = i % _EQUALITY_EVERY == 0
    dim = DIMS_CYCLE[i % 8]
    if eq:
        a = np.eye(dim)
    else:
        a = _pd_from_rng(rng, dim, CONDITION_CAPS[i % 3])
    return {"a": matrix_payload(a), "equality_injected": eq}


def _check_lemma4(inputs: dict) -> BoundReport:
    a, _ = matrix_from_payload(inputs["a"])
    return lemma4_check(a)


def _uniform_support(rng, n: int, zeros: int) -> np.ndarray:
    p = np.zeros(n)
    p[: n - zeros] = 1.0 / (n - zeros)
    rng.shuffle(p)
    return p


def _gen_t1(rng, i: int) -> dict:
    eq = i % _EQUALITY_EVERY == 0
    n = DIMS_CYCLE[i % 8]
    beta = ORDERS_CYCLE[i % 7]
    zeros = int(rng.integers(0, n))
    p = _uniform_support(rng, n, zeros) if eq else _simplex_from_rng(rng, n, zeros)
    return {"p": distribution_payload(p), "beta": beta, "equality_injected": eq}


def _check_t1(inputs: dict) -> BoundReport:
    p = probability_vector(distribution_from_payload(inputs["p"]))
    beta = float(inputs["beta"])
    h = renyi_entropy(p, beta)
    bound = t1_bound(p, beta)
    parts = [("t1", bound, h)] if beta < 1.0 else [("t1", h, bound)]
    eq = abs(normalized_slack(*parts[0][1:])) <= EQ_TOL
    return chain_report("t1", parts, CHAIN_TOL, eq, extras={"entropy": h, "bound": bound})


def _gen_t2_2(rng, i: int) -> dict:
    eq = i % _EQUALITY_EVERY == 0
    n = DIMS_CYCLE[i % 8]
    beta = ORDERS_BELOW_ONE[i % 3]
    zeros = int(rng.integers(0, n))
    p = _uniform_support(rng, n, zeros) if eq else _simplex_from_rng(rng, n, zeros)
    return {"p": distribution_payload(p), "beta": beta, "equality_injected": eq}


def _check_t2_2(inputs: dict) -> BoundReport:
    p = probability_vector(distribution_from_payload(inputs["p"]))
    beta = float(inputs["beta"])
    h = entropy_type_beta(p, beta)
    bound = type_beta_product_bound(p, beta)
    parts = [("nonneg", 0.0, h), ("product", bound, h)]
    eq = min(abs(normalized_slack(lo, hi)) for _, lo, hi in parts) <= EQ_TOL
    return chain_report("t2_2", parts, CHAIN_TOL, eq, extras={"bound": bound})


def _gen_t3(rng, i: int) -> dict:
    eq = i % _EQUALITY_EVERY == 0
    dim = DIMS_CYCLE[i % 8]
    alpha = ORDERS_CYCLE[i % 7]
    rank = int(rng.integers(1, dim + 1))
    if eq:
        basis = _basis_from_rng(rng, dim)
        w = np.zeros(dim)
        w[:rank] = 1.0 / rank
        m = (basis * w) @ basis.conj().T
        rho = DensityMatrix((m + m.conj().T) / 2.0)
    else:
        rho = _density_from_rng(rng, dim, rank)
    return {
        "rho": matrix_payload(rho.matrix),
        "alpha": alpha,
        "equality_injected": eq,
    }


def _check_t3(inputs: dict) -> BoundReport:
    m, _ = matrix_from_payload(inputs["rho"])
    return t3_bound(DensityMatrix(m), float(inputs["alpha"]))


def _check_t3_2(inputs: dict) -> BoundReport:
    m, _ = matrix_from_payload(inputs["rho"])
    return log_dim_cap(DensityMatrix(m), float(inputs["alpha"]))


def _gen_t3_2(rng, i: int) -> dict:
    eq = i % _EQUALITY_EVERY == 0
    dim = DIMS_CYCLE[i % 8]
    alpha = ORDERS_CYCLE[i % 7]
    if eq:
        rho = DensityMatrix(np.eye(dim) / dim)
    else:
        rho = _density_from_rng(rng, dim, int(rng.integers(1, dim + 1)))
    return {
        "rho": matrix_payload(rho.matrix),
        "alpha": alpha,
        "equality_injected": eq,
    }


def _gen_t4(rng, i: int) -> dict:
    eq = i % _EQUALITY_EVERY == 0
    dim = DIMS_CYCLE[i % 8]
    alpha = ORDERS_ABOVE_ONE[i % 4]
    if eq:
        # maximally mixed against a scaled identity: the bound is exactly
        # tight there and the proportionality flag fires
        rho = DensityMatrix(np.eye(dim) / dim)
        sigma = rng.uniform(0.5, 2.0) * np.eye(dim)
    else:
        rho = _density_from_rng(rng, dim, dim)
        sigma = _pd_from_rng(rng, dim, CONDITION_CAPS[i % 3])
    return {
        "rho": matrix_payload(rho.matrix),
        "sigma": matrix_payload(sigma),
        "alpha": alpha,
        "equality_injected": eq,
    }


def _check_t4(inputs: dict) -> BoundReport:
    rho, _ = matrix_from_payload(inputs["rho"])
    sigma, _ = matrix_from_payload(inputs["sigma"])
    return t4_lower_bound(DensityMatrix(rho), sigma, float(inputs["alpha"]))


def _gen_triangle(rng, i: int) -> dict:
    eq = i % _EQUALITY_EVERY == 0
    dim = 1 if eq else DIMS_CYCLE[i % 8]
    alpha = ORDERS_ABOVE_ONE[i % 4]
    rho = (
        DensityMatrix(np.array([[1.0]]))
        if eq
        else _density_from_rng(rng, dim, dim)
    )
    sigma = (
        np.array([[rng.uniform(0.5, 2.0)]])
        if eq
        else _pd_from_rng(rng, dim, CONDITION_CAPS[i % 3])
    )
    return {
        "rho": matrix_payload(rho.matrix),
        "sigma": matrix_payload(sigma),
        "alpha": alpha,
        "equality_injected": eq,
    }


def _check_triangle(inputs: dict) -> BoundReport:
    rho, _ = matrix_from_payload(inputs["rho"])
    sigma, _ = matrix_from_payload(inputs["sigma"])
    return triangle_bound_check(DensityMatrix(rho), sigma, float(inputs["alpha"]))


def _gen_t6(rng, i: int) -> dict:
    eq = i % _EQUALITY_EVERY == 0
    d_a, d_b = T6_DIMS_CYCLE[i % 4]
    alpha = ORDERS_ABOVE_ONE[(i // 4) % 4]
    dim = d_a * d_b
    if eq:
        rho = DensityMatrix(np.eye(dim) / dim, dims=(d_a, d_b))
    else:
        rho = DensityMatrix(_density_from_rng(rng, dim, dim).matrix, dims=(d_a, d_b))
    return {
        "rho": matrix_payload(rho.matrix, dims=(d_a, d_b)),
        "alpha": alpha,
        "equality_injected": eq,
    }


def _check_t6(inputs: dict) -> BoundReport:
    m, dims = matrix_from_payload(inputs["rho"])
    return t6_lower_bound(DensityMatrix(m, dims=dims), float(inputs["alpha"]))


def _gen_info_fn_eq(rng, i: int) -> dict:
    eq = i % _EQUALITY_EVERY == 0
    beta = ORDERS_CYCLE[i % 7]
    if eq:
        x = y = float(rng.uniform(0.0, 0.49))
    else:
        x = float(rng.uniform(0.0, 1.0 - 1e-5))
        y = float(rng.uniform(0.0, 1.0 - 1e-5 - x))
    return {"x": x, "y": y, "beta": beta, "equality_injected": eq}


def _check_info_fn_eq(inputs: dict) -> BoundReport:
    x, y, beta = float(inputs["x"]), float(inputs["y"]), float(inputs["beta"])
    lhs = info_function_beta(x, beta) + (1.0 - x) ** beta * info_function_beta(
        y / (1.0 - x), beta
    )
    rhs = info_function_beta(y, beta) + (1.0 - y) ** beta * info_function_beta(
        x / (1.0 - y), beta
    )
    return identity_report("info_fn_eq", lhs, rhs, 1e-9)


def _gen_eq4(rng, i: int) -> dict:
    eq = i % _EQUALITY_EVERY == 0
    n = DIMS_CYCLE[i % 8]
    beta = ORDERS_CYCLE[i % 7]
    zeros = int(rng.integers(0, n))
    p = _uniform_support(rng, n, zeros) if eq else _simplex_from_rng(rng, n, zeros)
    return {"p": distribution_payload(p), "beta": beta, "equality_injected": eq}


def _check_eq4(inputs: dict) -> BoundReport:
    p = probability_vector(distribution_from_payload(inputs["p"]))
    beta = float(inputs["beta"])
    roundtrip = order_from_type(entropy_type_beta(p, beta), beta)
    return identity_report("eq4_roundtrip", roundtrip, renyi_entropy(p, beta), 1e-10)


def _gen_diag_oracle(rng, i: int) -> dict:
    eq = i % _EQUALITY_EVERY == 0
    n = 2 + (i % 7)
    alpha = ORDERS_CYCLE[i % 7]
    if eq:
        p = np.full(n, 1.0 / n)
        q = np.full(n, 1.0 / n)
    else:
        p = _simplex_from_rng(rng, n, int(rng.integers(0, n // 2 + 1)))
        # keep the reference spectrum comfortably positive definite
        q = 0.99 * _simplex_from_rng(rng, n, 0) + 0.01 / n
    return {
        "p": distribution_payload(p),
        "q": distribution_payload(q),
        "alpha": alpha,
        "equality_injected": eq,
    }


def _check_diag_oracle(inputs: dict) -> BoundReport:
    p = probability_vector(distribution_from_payload(inputs["p"]))
    q = probability_vector(distribution_from_payload(inputs["q"]))
    alpha = float(inputs["alpha"])
    rho = DensityMatrix(np.diag(p))
    h_quantum = quantum_renyi_entropy(rho, alpha, units="bits").value
    h_classical = renyi_entropy(p, alpha)
    d_quantum = renyi_relative_entropy(rho, np.diag(q), alpha).value
    support = p > 0.0
    d_classical = (
        math.log(float(np.sum(p[support] ** alpha * q[support] ** (1.0 - alpha))))
        / (alpha - 1.0)
    )
    gap_h = -abs(h_quantum - h_classical) / (1.0 + abs(h_classical))
    gap_d = -abs(d_quantum - d_classical) / (1.0 + abs(d_classical))
    gap = min(gap_h, gap_d)
    return BoundReport(
        "diag_oracle",
        h_quantum,
        h_classical,
        gap,
        gap >= -1e-10,
        gap >= -1e-10,
        1e-10,
        {
            "entropy_diff": abs(h_quantum - h_classical),
            "divergence_diff": abs(d_quantum - d_classical),
        },
    )


@dataclass(frozen=True)
class Suite:
    tolerance: float
    gen: Callable[[np.random.Generator, int], dict]
    check: Callable[[dict], BoundReport]


SUITES: dict[str, Suite] = {
    "lemma2": Suite(CHAIN_TOL, _gen_lemma2, _check_lemma2),
    "lemma3": Suite(CHAIN_TOL, _gen_lemma3, _check_lemma3),
    "lemma4": Suite(CHAIN_TOL, _gen_lemma4, _check_lemma4),
    "t1": Suite(CHAIN_TOL, _gen_t1, _check_t1),
    "t2_2": Suite(CHAIN_TOL, _gen_t2_2, _check_t2_2),
    "t3": Suite(CHAIN_TOL, _gen_t3, _check_t3),
    "t3_2": Suite(CHAIN_TOL, _gen_t3_2, _check_t3_2),
    "t4": Suite(CHAIN_TOL, _gen_t4, _check_t4),
    "t6": Suite(OPT_TOL, _gen_t6, _check_t6),
    "triangle": Suite(CHAIN_TOL, _gen_triangle, _check_triangle),
    "info_fn_eq": Suite(1e-9, _gen_info_fn_eq, _check_info_fn_eq),
    "eq4_roundtrip": Suite(1e-10, _gen_eq4, _check_eq4),
    "diag_oracle": Suite(1e-10, _gen_diag_oracle, _check_diag_oracle),
}


@dataclass(frozen=True)
class FailureRecord:
    trial: int
    inputs: dict
    report: BoundReport

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "inputs": self.inputs,
            "report": self.report.to_dict(),
        }


@dataclass(frozen=True)
class SuiteReport:
    name: str
    trials: int
    failures: list[FailureRecord] = field(default_factory=list)
    max_violation: float = 0.0
    elapsed: float = 0.0
    injected_equality: int = 0
    equality_flagged: int = 0

    def to_dict(self, include_elapsed: bool = False) -> dict:
        out = {
            "suite": self.name,
            "trials": self.trials,
            "failures": [f.to_dict() for f in self.failures],
            "max_violation": self.max_violation,
            "injected_equality": self.injected_equality,
            "equality_flagged": self.equality_flagged,
        }
        if include_elapsed:
            out["elapsed"] = self.elapsed
        return out


def run_suite(
    name: str, trials: int, seed: int, tolerance: float | None = None
) -> SuiteReport:
    """Run ``trials`` randomized instances of one suite.

    Failures (normalized violation above the suite tolerance) keep the full
    serialized input so they replay exactly.
    """
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    suite = SUITES[name]
    tol = suite.tolerance if tolerance is None else float(tolerance)
    start = time.perf_counter()
    failures: list[FailureRecord] = []
    max_violation = 0.0
    injected = flagged = 0
    for trial in range(int(trials)):
        inputs = suite.gen(derive_rng(seed, trial), trial)
        rep = suite.check(inputs)
        violation = rep.violation
        if violation > max_violation:
            max_violation = violation
        if inputs.get("equality_injected"):
            injected += 1
            flagged += int(rep.equality)
        if violation > tol:
            failures.append(FailureRecord(trial, inputs, rep))
    return SuiteReport(
        name=name,
        trials=int(trials),
        failures=failures,
        max_violation=max_violation,
        elapsed=time.perf_counter() - start,
        injected_equality=injected,
        equality_flagged=flagged,
    )


def replay(name: str, inputs: dict) -> BoundReport:
    """Re-run one suite check from a failure record's serialized inputs."""
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}")
    return SUITES[name].check(inputs)
