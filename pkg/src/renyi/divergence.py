"""Renyi relative entropy, its lower bounds, and the optimized quantities.

The conditional entropy and mutual information are defined through a
minimization of ``D_alpha(rho_AB || ref_A (x) sigma_B)`` over density
matrices ``sigma_B``.  The paper-independent machinery here parametrizes
``sigma_B = expm(H)/tr expm(H)`` over Hermitian ``H`` (keeping it strictly
positive definite, as alpha > 1 requires) and minimizes with restarted
Nelder-Mead.  A brute-force Bloch-ball grid search provides an independent
oracle for the two-dimensional case.

All divergences are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .exceptions import (
    AlphaOne,
    AlphaOutOfRange,
    DimensionMismatch,
    MarginalSingular,
    NotBipartite,
    NotPd,
    NotPsd,
    OptimizerFailure,
    SigmaSingular,
    TraceNonpositive,
)
from .linalg import (
    CHAIN_TOL,
    EQ_TOL,
    PSD_TOL,
    SpectralDecomposition,
    _decompose_trusted,
    as_hermitian,
    clip_spectrum,
    max_abs,
    partial_trace_a,
    partial_trace_b,
    power_spectrum,
    recombine,
    spectral_decompose,
    trace_product,
)
from .quantum import ALPHA_ONE_BAND, DensityMatrix
from .report import BoundReport, chain_report, normalized_slack

OPT_TOL = 1e-4

_RESTARTS = 5
_NM_MAX_ITER = 5000
_NM_FATOL = 1e-10
_RESTART_KEY = 0x52454E5949


@dataclass(frozen=True)
class DivergenceResult:
    value: float
    alpha: float
    equality_case: bool


@dataclass(frozen=True)
class OptimizationOutcome:
    optimum_value: float
    optimizer_sigma: DensityMatrix
    iterations: int
    restarts_used: int
    converged: bool


@dataclass(frozen=True)
class T5ClosedForm:
    value: float
    c: float
    sigma_b: DensityMatrix


def _check_alpha_nonneg(alpha: float) -> float:
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha < 0.0:
        raise AlphaOutOfRange(f"alpha must be >= 0, got {alpha!r}")
    if abs(alpha - 1.0) < ALPHA_ONE_BAND:
        raise AlphaOne("alpha = 1 is not admitted for the relative entropy")
    return alpha


def _check_alpha_gt1(alpha: float) -> float:
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha <= 1.0:
        raise AlphaOutOfRange(f"alpha must exceed 1, got {alpha!r}")
    if alpha - 1.0 < ALPHA_ONE_BAND:
        raise AlphaOne("alpha is indistinguishable from 1")
    return alpha


def _density_power(rho: DensityMatrix, exponent: float) -> np.ndarray:
    return recombine(rho.spectrum, power_spectrum(rho.eigenvalues, exponent))


def _sigma_spectrum(sigma, alpha: float) -> SpectralDecomposition:
    """Validate a PSD reference matrix, enforcing PD when alpha > 1."""
    dec = spectral_decompose(as_hermitian(sigma))
    if float(dec.eigenvalues[0]) < -PSD_TOL:
        raise NotPsd(f"sigma has eigenvalue {dec.eigenvalues[0]:.3e}")
    if alpha > 1.0 and float(dec.eigenvalues[0]) <= PSD_TOL:
        raise SigmaSingular("alpha > 1 requires a positive definite sigma")
    return dec


def _equality_case(
    sigma_pow: np.ndarray, rho_pow: np.ndarray
) -> tuple[bool, float]:
    """Proportionality test ``sigma^(1-alpha) == c rho^alpha``."""
    tr_rho = float(np.trace(rho_pow).real)
    c = float(np.trace(sigma_pow).real) / tr_rho
    scaled = c * rho_pow
    scale = 1.0 + max(max_abs(sigma_pow), max_abs(scaled))
    return max_abs(sigma_pow - scaled) <= EQ_TOL * scale, c


def renyi_relative_entropy(
    rho: DensityMatrix, sigma, alpha: float
) -> DivergenceResult:
    """``D_alpha(rho || sigma) = (alpha-1)^(-1) ln tr(rho^alpha sigma^(1-alpha))``.

    ``sigma`` is any PSD Hermitian matrix (unit trace not required; the
    identity is a legitimate reference).  For alpha > 1 it must be positive
    definite.  The ``equality_case`` flag records whether sigma is, up to the
    trace-matched constant, the power of rho that makes the dimension bound
    tight; it is only meaningful (and only computed) for alpha > 1.
    """
    alpha = _check_alpha_nonneg(alpha)
    dec = _sigma_spectrum(sigma, alpha)
    if dec.eigenvalues.size != rho.dim:
        raise DimensionMismatch("rho and sigma must share dimensions")
    rho_pow = _density_power(rho, alpha)
    sigma_pow = recombine(dec, power_spectrum(clip_spectrum(dec.eigenvalues), 1.0 - alpha))
    t = trace_product(rho_pow, sigma_pow)
    if t <= 0.0:
        raise TraceNonpositive(f"tr(rho^a sigma^(1-a)) = {t!r} is not positive")
    equality = False
    if alpha > 1.0:
        equality, _ = _equality_case(sigma_pow, rho_pow)
    return DivergenceResult(math.log(t) / (alpha - 1.0), alpha, equality)


def equality_condition_check(
    rho: DensityMatrix, sigma, alpha: float
) -> tuple[bool, float]:
    """Test ``sigma^(1-alpha) == c rho^alpha`` with ``c`` trace-matched.

    Returns the flag and ``c = tr(sigma^(1-alpha)) / tr(rho^alpha)``.
    """
    alpha = _check_alpha_gt1(alpha)
    dec = spectral_decompose(as_hermitian(sigma))
    if float(dec.eigenvalues[0]) <= PSD_TOL:
        raise NotPd("equality condition requires a positive definite sigma")
    sigma_pow = recombine(dec, dec.eigenvalues ** (1.0 - alpha))
    rho_pow = _density_power(rho, alpha)
    return _equality_case(sigma_pow, rho_pow)


def t4_lower_bound(rho: DensityMatrix, sigma, alpha: float) -> BoundReport:
    """Dimension/determinant lower bound on ``D_alpha`` for PD inputs, alpha > 1.

    ``bound = (alpha-1)^(-1) (ln d + (alpha/d) ln det rho
    + ((1-alpha)/d) ln det sigma)``.
    """
    alpha = _check_alpha_gt1(alpha)
    if not rho.is_positive_definite:
        raise NotPd("rho must be positive definite")
    dec = spectral_decompose(as_hermitian(sigma))
    if float(dec.eigenvalues[0]) <= PSD_TOL:
        raise NotPd("sigma must be positive definite")
    if dec.eigenvalues.size != rho.dim:
        raise DimensionMismatch("rho and sigma must share dimensions")
    d = rho.dim
    logdet_rho = float(np.sum(np.log(rho.eigenvalues)))
    logdet_sigma = float(np.sum(np.log(dec.eigenvalues)))
    bound = (
        math.log(d) + alpha / d * logdet_rho + (1.0 - alpha) / d * logdet_sigma
    ) / (alpha - 1.0)
    result = renyi_relative_entropy(rho, sigma, alpha)
    eq, c = equality_condition_check(rho, sigma, alpha)
    return chain_report(
        "t4",
        [("t4", bound, result.value)],
        CHAIN_TOL,
        eq,
        extras={"divergence": result.value, "bound": bound, "c": c},
    )


def _bipartite_dims(rho_ab: DensityMatrix) -> tuple[int, int]:
    if rho_ab.dims is None:
        raise NotBipartite("density matrix carries no (d_a, d_b) tag")
    return rho_ab.dims


def _hermitian_builder(d: int):
    """Map ``d*d`` real parameters to a Hermitian ``d x d`` matrix."""
    idx = np.arange(d)
    iu_r, iu_c = np.triu_indices(d, 1)

    def build(theta: np.ndarray) -> np.ndarray:
        h = np.zeros((d, d), dtype=np.complex128)
        h[idx, idx] = theta[:d]
        if iu_r.size:
            off = theta[d::2] + 1j * theta[d + 1 :: 2]
            h[iu_r, iu_c] = off
            h[iu_c, iu_r] = off.conjugate()
        return h

    return build


def _sigma_from_theta(theta: np.ndarray, build) -> DensityMatrix:
    dec = _decompose_trusted(build(np.asarray(theta, dtype=np.float64)))
    w = dec.eigenvalues
    m = float(w[-1])
    weights = np.exp(w - m)
    return DensityMatrix(recombine(dec, weights / weights.sum()))


def _contraction(rho_ab: DensityMatrix, alpha: float, x_a: np.ndarray) -> np.ndarray:
    """Collapse ``tr(rho^alpha (X_A (x) Y_B))`` to ``sum C * Y^T`` over B."""
    d_a, d_b = _bipartite_dims(rho_ab)
    r = _density_power(rho_ab, alpha).reshape(d_a, d_b, d_a, d_b)
    return np.einsum("abcd,ca->bd", r, x_a)


def _minimize_over_sigma(
    rho_ab: DensityMatrix, alpha: float, x_a: np.ndarray
) -> OptimizationOutcome:
    """Minimize ``D_alpha(rho_AB || ref_A (x) sigma_B)`` over density sigma_B.

    ``x_a = ref_A^(1-alpha)`` is the fixed reference factor already powered.
    Five Nelder-Mead restarts (the flat start ``H = 0`` plus four seeded
    Gaussian draws); convergence is declared on function-value spread alone
    (``fatol = 1e-10``) with a 5000-iteration cap per restart.
    """
    _, d_b = _bipartite_dims(rho_ab)
    c_matrix = _contraction(rho_ab, alpha, x_a)
    build = _hermitian_builder(d_b)
    inv = 1.0 / (alpha - 1.0)
    n_params = d_b * d_b

    best = {"f": math.inf, "theta": None}

    def objective(theta: np.ndarray) -> float:
        dec = _decompose_trusted(build(theta))
        w = dec.eigenvalues
        m = float(w[-1])
        log_z = m + math.log(float(np.sum(np.exp(w - m))))
        with np.errstate(over="ignore"):
            y = np.exp((1.0 - alpha) * (w - log_z))
        if not np.all(np.isfinite(y)):
            return math.inf
        t = float(np.einsum("bd,db->", c_matrix, recombine(dec, y)).real)
        if not np.isfinite(t) or t <= 0.0:
            return math.inf
        value = math.log(t) * inv
        if value < best["f"]:
            best["f"] = value
            best["theta"] = np.array(theta, dtype=np.float64)
        return value

    starts = [np.zeros(n_params)]
    for k in range(1, _RESTARTS):
        rng = np.random.Generator(np.random.Philox(key=(_RESTART_KEY, k)))
        starts.append(rng.standard_normal(n_params))

    iterations = 0
    converged = False
    for x0 in starts:
        res = scipy.optimize.minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "maxiter": _NM_MAX_ITER,
                "maxfev": 3 * _NM_MAX_ITER,
                "fatol": _NM_FATOL,
                "xatol": math.inf,
            },
        )
        iterations += int(res.nit)
        converged = converged or bool(res.success)
    if not converged:
        raise OptimizerFailure("no Nelder-Mead restart reached the spread tolerance")
    if best["theta"] is None:
        raise OptimizerFailure("objective was never finite")
    return OptimizationOutcome(
        optimum_value=best["f"],
        optimizer_sigma=_sigma_from_theta(best["theta"], build),
        iterations=iterations,
        restarts_used=len(starts),
        converged=converged,
    )


def conditional_entropy(
    rho_ab: DensityMatrix, alpha: float
) -> tuple[float, OptimizationOutcome]:
    """``H_alpha(A|B) = ln d_A - min_sigma D_alpha(rho_AB || mu_A (x) sigma_B)``.

    ``mu_A`` is the maximally mixed state on A.  Returns the value in nats
    together with the optimization record.
    """
    alpha = _check_alpha_gt1(alpha)
    d_a, _ = _bipartite_dims(rho_ab)
    x_a = d_a ** (alpha - 1.0) * np.eye(d_a, dtype=np.complex128)
    outcome = _minimize_over_sigma(rho_ab, alpha, x_a)
    return math.log(d_a) - outcome.optimum_value, outcome


def mutual_information(
    rho_ab: DensityMatrix, alpha: float
) -> tuple[float, OptimizationOutcome]:
    """``I_alpha(A;B) = min_sigma D_alpha(rho_AB || rho_A (x) sigma_B)``."""
    alpha = _check_alpha_gt1(alpha)
    d_a, d_b = _bipartite_dims(rho_ab)
    rho_a = DensityMatrix(partial_trace_b(rho_ab.matrix, d_a, d_b))
    if not rho_a.is_positive_definite:
        raise MarginalSingular("marginal rho_A must be positive definite")
    x_a = _density_power(rho_a, 1.0 - alpha)
    outcome = _minimize_over_sigma(rho_ab, alpha, x_a)
    return outcome.optimum_value, outcome


def subsystem_entropy(rho: DensityMatrix, alpha: float) -> float:
    """``H_alpha(A) = -D_alpha(rho || identity)`` in nats."""
    return -renyi_relative_entropy(
        rho, np.eye(rho.dim, dtype=np.complex128), alpha
    ).value


def t5_closed_form(
    rho_ab: DensityMatrix, alpha: float, mode: str
) -> T5ClosedForm | None:
    """Closed-form optimum when the proportionality condition holds.

    Looks for ``sigma_B`` with ``ref_A^(1-alpha) (x) sigma_B^(1-alpha)
    = c rho_AB^alpha`` (``ref_A`` is ``mu_A`` for ``mode="conditional"``,
    ``rho_A`` for ``mode="mutual"``) by factorizing ``rho_AB^alpha`` through
    its partial traces.   Returns None when the condition fails.
    """
    alpha = _check_alpha_gt1(alpha)
    if mode not in ("conditional", "mutual"):
        raise ValueError(f"mode must be 'conditional' or 'mutual', got {mode!r}")
    d_a, d_b = _bipartite_dims(rho_ab)
    if not rho_ab.is_positive_definite:
        return None
    m_alpha = _density_power(rho_ab, alpha)
    tr_m = float(np.trace(m_alpha).real)
    x0 = partial_trace_b(m_alpha, d_a, d_b)
    y0 = partial_trace_a(m_alpha, d_a, d_b)
    if max_abs(m_alpha - np.kron(x0, y0) / tr_m) > EQ_TOL * (1.0 + max_abs(m_alpha)):
        return None
    if mode == "conditional":
        trial = x0
        ref_pow = d_a ** (alpha - 1.0) * np.eye(d_a, dtype=np.complex128)
    else:
        rho_a = DensityMatrix(partial_trace_b(rho_ab.matrix, d_a, d_b))
        if not rho_a.is_positive_definite:
            return None
        ref_pow = _density_power(rho_a, 1.0 - alpha)
        trial = x0 @ _density_power(rho_a, alpha - 1.0)
    dev = trial - float(np.trace(trial).real) / d_a * np.eye(d_a)
    if max_abs(dev) > EQ_TOL * (1.0 + max_abs(trial)):
        return None
    dec_y = spectral_decompose(y0)
    sigma_raw = recombine(dec_y, dec_y.eigenvalues ** (1.0 / (1.0 - alpha)))
    sigma_b = DensityMatrix(sigma_raw / float(np.trace(sigma_raw).real))
    sigma_pow = recombine(sigma_b.spectrum, sigma_b.eigenvalues ** (1.0 - alpha))
    lhs = np.kron(ref_pow, sigma_pow)
    c = float(np.trace(lhs).real) / tr_m
    if max_abs(lhs - c * m_alpha) > EQ_TOL * (1.0 + max_abs(lhs)):
        return None
    d = d_a * d_b
    logdet = float(np.sum(np.log(rho_ab.eigenvalues)))
    optimum = (math.log(d) + 2.0 * alpha / d * logdet + math.log(c)) / (alpha - 1.0)
    value = math.log(d_a) - optimum if mode == "conditional" else optimum
    return T5ClosedForm(value=value, c=c, sigma_b=sigma_b)


def t6_lower_bound(rho_ab: DensityMatrix, alpha: float) -> BoundReport:
    """Determinant lower bound on the mutual information for PD states.

    ``bound = alpha/(alpha-1) (ln(d_A d_B) + ln det(rho_AB)/(d_A d_B))`` in
    nats; the report compares it against the optimized mutual information at
    the optimizer tolerance.
    """
    alpha = _check_alpha_gt1(alpha)
    d_a, d_b = _bipartite_dims(rho_ab)
    if not rho_ab.is_positive_definite:
        raise NotPd("t6 bound requires a positive definite state")
    d = d_a * d_b
    logdet = float(np.sum(np.log(rho_ab.eigenvalues)))
    bound = alpha / (alpha - 1.0) * (math.log(d) + logdet / d)
    value, outcome = mutual_information(rho_ab, alpha)
    eq = abs(normalized_slack(bound, value)) <= OPT_TOL
    return chain_report(
        "t6",
        [("t6", bound, value)],
        OPT_TOL,
        eq,
        extras={
            "mutual_information": value,
            "bound": bound,
            "iterations": outcome.iterations,
            "converged": outcome.converged,
        },
    )


def divergence_vs_identity(rho: DensityMatrix, alpha: float) -> float:
    """``D_alpha(rho || identity) = (alpha-1)^(-1) ln tr rho^alpha``."""
    alpha = _check_alpha_gt1(alpha)
    return math.log(float(np.sum(rho.eigenvalues**alpha))) / (alpha - 1.0)


def identity_vs_divergence(sigma, alpha: float) -> float:
    """``D_alpha(identity || sigma) = (alpha-1)^(-1) ln tr sigma^(1-alpha)``."""
    alpha = _check_alpha_gt1(alpha)
    dec = spectral_decompose(as_hermitian(sigma))
    if float(dec.eigenvalues[0]) <= PSD_TOL:
        raise NotPd("identity reference needs a positive definite sigma")
    return math.log(float(np.sum(dec.eigenvalues ** (1.0 - alpha)))) / (alpha - 1.0)


def triangle_bound_check(rho: DensityMatrix, sigma, alpha: float) -> BoundReport:
    """Check ``D(rho||sigma) <= D(rho||I) + D(I||sigma)`` for alpha > 1."""
    alpha = _check_alpha_gt1(alpha)
    lhs = renyi_relative_entropy(rho, sigma, alpha).value
    d_rho_i = divergence_vs_identity(rho, alpha)
    d_i_sigma = identity_vs_divergence(sigma, alpha)
    rhs = d_rho_i + d_i_sigma
    eq = abs(normalized_slack(lhs, rhs)) <= EQ_TOL
    return chain_report(
        "triangle",
        [("triangle", lhs, rhs)],
        CHAIN_TOL,
        eq,
        extras={"d_rho_identity": d_rho_i, "d_identity_sigma": d_i_sigma},
    )


def bloch_grid_minimum(
    rho_ab: DensityMatrix,
    alpha: float,
    mode: str = "mutual",
    step: float = 0.01,
) -> float:
    """Exhaustive interior Bloch-ball grid minimum for ``d_B = 2``.

    Independent oracle for the Nelder-Mead optimizer: evaluates the
    divergence at every grid point ``sigma_B = (I + r . pauli)/2`` with
    ``|r| < 1``, using closed-form 2x2 spectral powers and an explicit
    Kronecker product (no shared code path with the optimizer's objective).
    """
    alpha = _check_alpha_gt1(alpha)
    d_a, d_b = _bipartite_dims(rho_ab)
    if d_b != 2:
        raise DimensionMismatch("grid oracle is defined for d_B = 2 only")
    if mode == "conditional":
        x_a = d_a ** (alpha - 1.0) * np.eye(d_a, dtype=np.complex128)
    elif mode == "mutual":
        rho_a = DensityMatrix(partial_trace_b(rho_ab.matrix, d_a, d_b))
        if not rho_a.is_positive_definite:
            raise MarginalSingular("marginal rho_A must be positive definite")
        x_a = _density_power(rho_a, 1.0 - alpha)
    else:
        raise ValueError(f"mode must be 'conditional' or 'mutual', got {mode!r}")
    m_alpha = _density_power(rho_ab, alpha)

    half = int(math.floor((1.0 - 1e-9) / step))
    axis = step * np.arange(-half, half + 1)
    xs, ys, zs = (g.ravel() for g in np.meshgrid(axis, axis, axis, indexing="ij"))
    rr = xs * xs + ys * ys + zs * zs
    keep = rr < 1.0 - 1e-12
    xs, ys, zs, rr = xs[keep], ys[keep], zs[keep], rr[keep]

    exponent = 1.0 - alpha
    best = math.inf
    chunk = 65536
    eye2 = np.eye(2, dtype=np.complex128)
    for lo in range(0, xs.size, chunk):
        x = xs[lo : lo + chunk]
        y = ys[lo : lo + chunk]
        z = zs[lo : lo + chunk]
        r = np.sqrt(rr[lo : lo + chunk])
        lam_p = (1.0 + r) / 2.0
        lam_m = (1.0 - r) / 2.0
        pow_p = lam_p**exponent
        pow_m = lam_m**exponent
        # sigma^(1-alpha) = a * sigma + b * I via the two spectral projectors
        safe_r = np.where(r > 1e-14, r, 1.0)
        a = np.where(r > 1e-14, (pow_p - pow_m) / safe_r, 0.0)
        b = np.where(
            r > 1e-14, (lam_p * pow_m - lam_m * pow_p) / safe_r, 0.5**exponent
        )
        sig = np.empty((x.size, 2, 2), dtype=np.complex128)
        sig[:, 0, 0] = (1.0 + z) / 2.0
        sig[:, 1, 1] = (1.0 - z) / 2.0
        sig[:, 0, 1] = (x - 1j * y) / 2.0
        sig[:, 1, 0] = (x + 1j * y) / 2.0
        y_pow = a[:, None, None] * sig + b[:, None, None] * eye2
        k = (x_a[None, :, None, :, None] * y_pow[:, None, :, None, :]).reshape(
            x.size, 2 * d_a, 2 * d_a
        )
        t = np.einsum("ij,nji->n", m_alpha, k).real
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = np.where(t > 0.0, np.log(np.maximum(t, 1e-300)), np.inf)
        best = min(best, float(vals.min()) / (alpha - 1.0))
    return best
