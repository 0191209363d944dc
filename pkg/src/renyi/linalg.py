"""Dense complex Hermitian linear algebra.

Self-contained: the eigensolver is a cyclic Jacobi iteration for complex
Hermitian matrices, and every spectral function (fractional powers, log-det,
definiteness tests) is built on it.  Matrices are plain ``complex128``
ndarrays; validation happens at the operation boundary.

Spectral conventions used throughout the package:

* eigenvalues in ``[-PSD_TOL, 0)`` are treated as exact zeros,
* ``0**r == 0`` for ``r > 0`` and ``0**0 == 1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    ConvergenceFailure,
    DimensionMismatch,
    NonHermitianInput,
    NotPd,
    NotPsd,
    SingularPower,
)
from .report import BoundReport, chain_report

HERM_TOL = 1e-10
PSD_TOL = 1e-10
RECON_TOL = 1e-9
CHAIN_TOL = 1e-8
EQ_TOL = 1e-7
ZERO_THRESHOLD = 1e-12

_JACOBI_REL_TOL = 1e-12
_SWEEP_LIMIT = 100


def max_abs(a: np.ndarray) -> float:
    """Max-norm of a matrix (0 for empty input)."""
    return float(np.max(np.abs(a))) if a.size else 0.0


def as_hermitian(matrix, tol: float = HERM_TOL) -> np.ndarray:
    """Validate and return a Hermitian ``complex128`` matrix.

    Checks squareness, finiteness, the scaled Hermiticity bound
    ``max|A - A†| <= tol * (1 + max|A|)`` and that diagonal imaginary parts
    are below ``tol``.  Returns the Hermitian average ``(A + A†)/2`` so later
    arithmetic never sees the (tolerated) asymmetry dust.
    """
    a = np.asarray(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise NonHermitianInput("matrix contains non-finite entries")
    scale = 1.0 + max_abs(a)
    asym = max_abs(a - a.conj().T)
    if asym > tol * scale:
        raise NonHermitianInput(
            f"matrix is not Hermitian: max|A - A^dagger| = {asym:.3e}"
        )
    if max_abs(np.diag(a).imag) > tol:
        raise NonHermitianInput("diagonal entries have non-negligible imaginary part")
    return (a + a.conj().T) / 2.0


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (real, ascending) and unitary eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _rotation(app: float, aqq: float, apq: complex, r: float) -> tuple[float, float, complex]:
    """Jacobi rotation parameters zeroing a pivot with modulus ``r = |apq|``."""
    tau = (aqq - app) / (2.0 * r)
    # small-magnitude root of t^2 - 2*tau*t - 1 = 0
    if tau >= 0.0:
        t = -1.0 / (tau + math.hypot(1.0, tau))
    else:
        t = 1.0 / (-tau + math.hypot(1.0, tau))
    c = 1.0 / math.hypot(1.0, t)
    s = (t * c) * (apq / r).conjugate()
    return t, c, s


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    """Cyclic Jacobi diagonalization of a Hermitian matrix (mutates ``a``).

    Rotations zero one off-diagonal pair at a time; a sweep visits every
    ``p < q``.  Converged once the off-diagonal Frobenius mass drops below
    ``1e-12 * ||A||_F``; gives up after 100 sweeps.
    """
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return np.array([a[0, 0].real]), v, 0
    fro = math.sqrt(float(np.sum(np.abs(a) ** 2)))
    threshold = _JACOBI_REL_TOL * fro
    if fro == 0.0:
        return np.zeros(n), v, 0
    if n == 2:
        # one rotation diagonalizes exactly
        app, aqq = a[0, 0].real, a[1, 1].real
        apq = complex(a[0, 1])
        r = abs(apq)
        if math.sqrt(2.0) * r <= threshold:
            return np.array([app, aqq]), v, 0
        t, c, s = _rotation(app, aqq, apq, r)
        cc = c * c
        w = np.array([cc * (app + 2.0 * t * r + aqq * t * t),
                      cc * (app * t * t - 2.0 * t * r + aqq)])
        v = np.array([[c, -s.conjugate()], [s, c]], dtype=np.complex128)
        return w, v, 1
    off_mask = ~np.eye(n, dtype=bool)
    # entries this small cannot lift the off-diagonal mass above threshold
    skip = threshold / (2.0 * n)
    for sweep in range(_SWEEP_LIMIT):
        off = math.sqrt(float(np.sum(np.abs(a[off_mask]) ** 2)))
        if off <= threshold:
            return a.diagonal().real.copy(), v, sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= skip:
                    continue
                _, c, s = _rotation(a[p, p].real, a[q, q].real, apq, r)
                sc = s.conjugate()
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap + sc * aq
                a[q, :] = c * aq - s * ap
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap + s * aq
                a[:, q] = c * aq - sc * ap
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp + s * vq
                v[:, q] = c * vq - sc * vp
    raise ConvergenceFailure(
        f"Jacobi sweeps exceeded {_SWEEP_LIMIT} without reaching tolerance"
    )


def _decompose_trusted(a: np.ndarray) -> SpectralDecomposition:
    """Decompose a matrix already known to be Hermitian complex128."""
    w, v, sweeps = _jacobi(a.copy())
    order = np.argsort(w, kind="stable")
    return SpectralDecomposition(w[order], np.ascontiguousarray(v[:, order]), sweeps)


def spectral_decompose(matrix, tol: float = HERM_TOL) -> SpectralDecomposition:
    """Diagonalize a Hermitian matrix: ``A = V diag(w) V†``, ``w`` ascending."""
    a = as_hermitian(matrix, tol)
    w, v, sweeps = _jacobi(a)
    order = np.argsort(w, kind="stable")
    return SpectralDecomposition(w[order], np.ascontiguousarray(v[:, order]), sweeps)


def recombine(dec: SpectralDecomposition, w: np.ndarray) -> np.ndarray:
    """Assemble ``V diag(w) V†`` (Hermitian-symmetrized) from a decomposition."""
    v = dec.eigenvectors
    m = (v * w) @ v.conj().T
    return (m + m.conj().T) / 2.0


class Definiteness(enum.Enum):
    POSITIVE_DEFINITE = "positive_definite"
    POSITIVE_SEMIDEFINITE = "positive_semidefinite"
    INDEFINITE = "indefinite"


@dataclass(frozen=True)
class PsdClass:
    kind: Definiteness
    min_eigenvalue: float


def classify_definiteness(matrix, tol: float = PSD_TOL) -> PsdClass:
    """Classify a Hermitian matrix by its smallest eigenvalue against ``tol``."""
    w = spectral_decompose(matrix).eigenvalues
    lo = float(w[0])
    if lo > tol:
        kind = Definiteness.POSITIVE_DEFINITE
    elif lo >= -tol:
        kind = Definiteness.POSITIVE_SEMIDEFINITE
    else:
        kind = Definiteness.INDEFINITE
    return PsdClass(kind, lo)


def clip_spectrum(w: np.ndarray, tol: float = PSD_TOL) -> np.ndarray:
    """Zero out eigenvalue dust in ``[-tol, 0)``; raise NotPsd below that."""
    if float(w[0]) < -tol:
        raise NotPsd(f"matrix has eigenvalue {w[0]:.3e} < -{tol:.0e}")
    out = w.copy()
    out[out < 0.0] = 0.0
    return out


def power_spectrum(w: np.ndarray, r: float) -> np.ndarray:
    """Elementwise power of a clipped (nonnegative) spectrum.

    Applies the conventions ``0**r = 0`` for ``r > 0`` and ``0**0 = 1``;
    callers must rule out ``r < 0`` with zeros present beforehand.
    """
    out = np.empty_like(w)
    zero = w == 0.0
    out[~zero] = w[~zero] ** r
    out[zero] = 1.0 if r == 0.0 else 0.0
    return out


def matrix_power(matrix, r: float) -> np.ndarray:
    """Spectral power ``A^r`` of a PSD matrix (PD required when ``r < 0``)."""
    dec = spectral_decompose(matrix)
    w = clip_spectrum(dec.eigenvalues)
    if r < 0.0 and float(w[0]) <= PSD_TOL:
        raise SingularPower(
            f"negative power {r} of a singular matrix (min eigenvalue {w[0]:.3e})"
        )
    return recombine(dec, power_spectrum(w, r))


def log_det(matrix) -> float:
    """Natural-log determinant of a positive definite matrix."""
    w = spectral_decompose(matrix).eigenvalues
    if float(w[0]) <= PSD_TOL:
        raise NotPd(f"log_det needs a positive definite matrix (min eig {w[0]:.3e})")
    return float(np.sum(np.log(w)))


def kron(a, b) -> np.ndarray:
    """Kronecker product with A-major composite indexing."""
    return np.kron(as_hermitian(a), as_hermitian(b))


def partial_trace_b(matrix, d_a: int, d_b: int) -> np.ndarray:
    """Trace out the second factor of a ``d_a * d_b`` composite matrix."""
    m = as_hermitian(matrix)
    if d_a <= 0 or d_b <= 0 or m.shape[0] != d_a * d_b:
        raise DimensionMismatch(
            f"matrix dimension {m.shape[0]} != d_a*d_b = {d_a}*{d_b}"
        )
    return np.trace(m.reshape(d_a, d_b, d_a, d_b), axis1=1, axis2=3)


def partial_trace_a(matrix, d_a: int, d_b: int) -> np.ndarray:
    """Trace out the first factor of a ``d_a * d_b`` composite matrix."""
    m = as_hermitian(matrix)
    if d_a <= 0 or d_b <= 0 or m.shape[0] != d_a * d_b:
        raise DimensionMismatch(
            f"matrix dimension {m.shape[0]} != d_a*d_b = {d_a}*{d_b}"
        )
    return np.trace(m.reshape(d_a, d_b, d_a, d_b), axis1=0, axis2=2)


def trace_product(a: np.ndarray, b: np.ndarray) -> float:
    """``tr(AB)`` as the real part of the entrywise sum of A[i,j] B[j,i]."""
    return float(np.sum(a * b.T).real)


def _require_psd_spectrum(matrix, name: str) -> SpectralDecomposition:
    dec = spectral_decompose(matrix)
    if float(dec.eigenvalues[0]) < -PSD_TOL:
        raise NotPsd(f"{name} is not PSD (min eigenvalue {dec.eigenvalues[0]:.3e})")
    return dec


def lemma2_check(a, b, tolerance: float = CHAIN_TOL) -> BoundReport:
    """Check ``0 <= tr(AB) <= tr(A) tr(B)`` for PSD A, B."""
    am = as_hermitian(a)
    bm = as_hermitian(b)
    if am.shape != bm.shape:
        raise DimensionMismatch("A and B must share dimensions")
    _require_psd_spectrum(am, "A")
    _require_psd_spectrum(bm, "B")
    tr_ab = trace_product(am, bm)
    tr_a = float(np.trace(am).real)
    tr_b = float(np.trace(bm).real)
    parts = [("lower", 0.0, tr_ab), ("upper", tr_ab, tr_a * tr_b)]
    eq = min(abs((hi - lo) / (1.0 + abs(hi))) for _, lo, hi in parts) <= EQ_TOL
    return chain_report(
        "lemma2", parts, tolerance, eq, extras={"trace_product": tr_ab}
    )


def lemma3_check(a, b, tolerance: float = CHAIN_TOL) -> BoundReport:
    """Check ``n (det A det B)^(1/n) <= tr(AB)`` for same-size PSD A, B.

    Equality is detected structurally: ``B^(1/2) A B^(1/2)`` must be a
    positive multiple of the identity.
    """
    am = as_hermitian(a)
    bm = as_hermitian(b)
    if am.shape != bm.shape:
        raise DimensionMismatch("A and B must share dimensions")
    dec_a = _require_psd_spectrum(am, "A")
    dec_b = _require_psd_spectrum(bm, "B")
    n = am.shape[0]
    w_a = clip_spectrum(dec_a.eigenvalues)
    w_b = clip_spectrum(dec_b.eigenvalues)
    det_a = float(np.prod(w_a))
    det_b = float(np.prod(w_b))
    lhs = n * (det_a * det_b) ** (1.0 / n)
    rhs = trace_product(am, bm)
    root_b = recombine(dec_b, np.sqrt(w_b))
    middle = root_b @ am @ root_b
    c = float(np.trace(middle).real) / n
    eq = max_abs(middle - c * np.eye(n)) <= EQ_TOL * (1.0 + abs(c))
    return chain_report(
        "lemma3",
        [("amgm", lhs, rhs)],
        tolerance,
        eq,
        extras={"det_a": det_a, "det_b": det_b, "c": c},
    )


def lemma4_check(a, tolerance: float = CHAIN_TOL) -> BoundReport:
    """Check ``tr(I - A^{-1}) <= log det(A) <= tr(A - I)`` for PD A.

    Natural log throughout; equality detected when ``A`` is the identity to
    within ``EQ_TOL`` in max-norm.
    """
    am = as_hermitian(a)
    w = spectral_decompose(am).eigenvalues
    if float(w[0]) <= PSD_TOL:
        raise NotPd(f"lemma4 needs a positive definite matrix (min eig {w[0]:.3e})")
    lower = float(np.sum(1.0 - 1.0 / w))
    mid = float(np.sum(np.log(w)))
    upper = float(np.sum(w - 1.0))
    eq = max_abs(am - np.eye(am.shape[0])) <= EQ_TOL
    return chain_report(
        "lemma4",
        [("lower", lower, mid), ("upper", mid, upper)],
        tolerance,
        eq,
        extras={"log_det": mid},
    )
