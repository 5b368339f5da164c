"""Schmidt spectrum and entanglement entropy of the network Gaussian.

The state analyzed is ``psi(x) ~ exp(-x^T V x / 2)`` with ``V = I + 2gL``.
Splitting ``V = [[A, B], [B^T, C]]`` along a bipartition, the direct route
rotates ``A`` and ``C`` to diagonal form, rescales both to the identity and
takes the singular values ``d_i`` of the whitened cross block. Each ``d_i``
pairs one mode of each side into a two-mode state with

    nu_i = (1 - d_i**2) ** -1/2
    S_i  = (nu+1)/2 log((nu+1)/2) - (nu-1)/2 log((nu-1)/2)

and the total entropy is the sum over modes.

``entropy_oracle`` reaches the same number by a different road (covariance
matrices and symplectic eigenvalues) and exists to check the direct route.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .exceptions import NotPositiveDefiniteError, NumericalError, SchmidtClampWarning
from .graphs import PotentialMatrix, as_bipartition

__all__ = [
    "SchmidtSpectrum",
    "EntropyResult",
    "schmidt_spectrum_direct",
    "spectrum_from_d",
    "entropy_from_d",
    "schmidt_probabilities",
    "entropy",
    "entropy_oracle",
    "single_node_entropy",
    "single_node_mu",
    "ZERO_THRESHOLD",
    "CLAMP_TOLERANCE",
]

ZERO_THRESHOLD = 1e-12
CLAMP_TOLERANCE = 1e-9
_CLAMPED = 1.0 - 1e-12
_PD_EIG_FLOOR = 1e-12


def _log_scale(log_base) -> float:
    if log_base in ("e", None) or (isinstance(log_base, float) and log_base == np.e):
        return 1.0
    if log_base in (2, "2", 2.0):
        return np.log(2.0)
    raise ValueError(f"log_base must be 'e' or 2, got {log_base!r}")


def _base_tag(log_base):
    return "e" if _log_scale(log_base) == 1.0 else 2


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Per-mode coefficients, sorted with ``d`` descending."""

    d: np.ndarray
    nu: np.ndarray
    mode_entropy: np.ndarray

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.d))

    def __len__(self):
        return len(self.d)


@dataclass(frozen=True)
class EntropyResult:
    total: float
    spectrum: SchmidtSpectrum
    log_base: object = "e"
    method: str = "direct"

    def to_json(self) -> dict:
        return {
            "total": float(self.total),
            "log_base": self.log_base,
            "method": self.method,
            "d": [float(x) for x in self.spectrum.d],
            "nu": [float(x) for x in self.spectrum.nu],
            "mode_entropy": [float(x) for x in self.spectrum.mode_entropy],
        }


def _as_matrix(v) -> np.ndarray:
    if isinstance(v, PotentialMatrix):
        return v.v
    m = np.asarray(v, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    return m


def _clean_d(d) -> np.ndarray:
    """Clamp values in [1, 1 + tol] below one, zero out noise, sort descending."""
    d = np.abs(np.asarray(d, dtype=float))
    if np.any(d > 1.0 + CLAMP_TOLERANCE):
        raise NotPositiveDefiniteError(
            f"Schmidt coefficient {d.max():.17g} exceeds 1; V is not positive definite"
        )
    over = d >= 1.0
    if np.any(over):
        warnings.warn(
            f"{int(over.sum())} Schmidt coefficient(s) within {CLAMP_TOLERANCE} of 1 "
            "were clamped",
            SchmidtClampWarning,
            stacklevel=3,
        )
        d = np.where(over, _CLAMPED, d)
    d = np.where(d < ZERO_THRESHOLD, 0.0, d)
    return np.sort(d)[::-1]


def _pd_eigh(block: np.ndarray, what: str):
    w, o = np.linalg.eigh(block)
    if w.size and w.min() <= _PD_EIG_FLOOR:
        raise NotPositiveDefiniteError(
            f"{what} has eigenvalue {w.min():.3g}; the potential matrix must be "
            "positive definite"
        )
    return w, o


def _mode_entropy(d: np.ndarray) -> np.ndarray:
    # x = (nu - 1)/2 = d^2 / (2s(1 + s)) with s = sqrt(1 - d^2); (nu + 1)/2 = 1 + x
    d = np.asarray(d, dtype=float)
    s = np.sqrt((1.0 - d) * (1.0 + d))
    x = d * d / (2.0 * s * (1.0 + s))
    return (1.0 + x) * np.log1p(x) - xlogy(x, x)


def spectrum_from_d(d) -> SchmidtSpectrum:
    """Build a spectrum (nu and nat-based mode entropies) from raw coefficients."""
    d = _clean_d(d)
    s = np.sqrt((1.0 - d) * (1.0 + d))
    return SchmidtSpectrum(d=d, nu=1.0 / s, mode_entropy=_mode_entropy(d))


def _result(spectrum: SchmidtSpectrum, log_base, method: str) -> EntropyResult:
    scale = _log_scale(log_base)
    if scale != 1.0:
        spectrum = SchmidtSpectrum(spectrum.d, spectrum.nu, spectrum.mode_entropy / scale)
    return EntropyResult(
        total=float(np.sum(spectrum.mode_entropy)),
        spectrum=spectrum,
        log_base=_base_tag(log_base),
        method=method,
    )


def schmidt_spectrum_direct(v, p) -> SchmidtSpectrum:
    """Schmidt coefficients by rotation, rescaling and SVD of the cross block.

    Parameters
    ----------
    v : PotentialMatrix or array_like
        Symmetric positive definite ``N x N`` matrix.
    p : Bipartition or sequence of int
        Nodes of part A.

    Returns
    -------
    SchmidtSpectrum
        ``min(|A|, |B|)`` coefficients, descending.
    """
    m = _as_matrix(v)
    p = as_bipartition(p, m.shape[0])
    a_idx, b_idx = list(p.part_a), list(p.part_b)
    a_blk = m[np.ix_(a_idx, a_idx)]
    c_blk = m[np.ix_(b_idx, b_idx)]
    b_blk = m[np.ix_(a_idx, b_idx)]

    da, oa = _pd_eigh(a_blk, "block A")
    dc, oc = _pd_eigh(c_blk, "block C")
    b_hat = oa.T @ b_blk @ oc
    b_tilde = b_hat / np.sqrt(da)[:, None] / np.sqrt(dc)[None, :]
    try:
        d = np.linalg.svd(b_tilde, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD failed: {exc}") from exc
    return spectrum_from_d(d)


def entropy_from_d(d: float, log_base="e") -> float:
    """Entropy of one two-mode pair with coefficient ``d`` in [0, 1)."""
    d = float(d)
    if not (0.0 <= d < 1.0):
        raise ValueError(f"Schmidt coefficient must lie in [0, 1), got {d}")
    return float(_mode_entropy(np.array([d]))[0]) / _log_scale(log_base)


def schmidt_probabilities(d: float, n_max: int) -> np.ndarray:
    """Occupation probabilities ``p_n`` of one reduced mode, ``n = 0..n_max``."""
    d = float(d)
    if not (0.0 <= d < 1.0):
        raise ValueError(f"Schmidt coefficient must lie in [0, 1), got {d}")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    s = np.sqrt((1.0 - d) * (1.0 + d))
    # 2/(nu+1) = 2s/(1+s),  (nu-1)/(nu+1) = (1-s)/(1+s) = d^2/(1+s)^2
    ratio = (d / (1.0 + s)) ** 2
    return 2.0 * s / (1.0 + s) * ratio ** np.arange(n_max + 1)


def entropy(v, p, log_base="e") -> EntropyResult:
    """Entanglement entropy across ``p`` by the direct SVD route."""
    return _result(schmidt_spectrum_direct(v, p), log_base, "direct")


def entropy_oracle(v, p, log_base="e", kernel: str = "potential") -> EntropyResult:
    """Entropy from covariance matrices and symplectic eigenvalues.

    ``kernel="potential"`` treats the state as ``exp(-x^T V x / 2)``, the
    same state the direct route decomposes, with covariances
    ``gamma_x = V^-1 / 2`` and ``gamma_p = V / 2``.  ``kernel="sqrt"``
    uses ``exp(-x^T V^1/2 x / 2)``, the ground state of
    ``H = (p^T p + x^T V x) / 2``; it does *not* agree with the direct
    route and is provided for comparison only.
    """
    m = _as_matrix(v)
    p = as_bipartition(p, m.shape[0])
    w, o = np.linalg.eigh(m)
    if w.min() <= _PD_EIG_FLOOR:
        raise NotPositiveDefiniteError(f"V has eigenvalue {w.min():.3g}")
    if kernel == "potential":
        fx, fp = 1.0 / w, w
    elif kernel == "sqrt":
        fx, fp = 1.0 / np.sqrt(w), np.sqrt(w)
    else:
        raise ValueError(f"unknown kernel {kernel!r}")
    a = list(p.part_a)
    oa = o[a, :]
    gx = 0.5 * (oa * fx) @ oa.T
    gp = 0.5 * (oa * fp) @ oa.T

    # eigenvalues of gx @ gp via the symmetric form gp^1/2 gx gp^1/2
    wp, op = np.linalg.eigh(gp)
    root = (op * np.sqrt(wp)) @ op.T
    mu = np.sqrt(np.clip(np.linalg.eigvalsh(root @ gx @ root), 0.25, None))
    mu = np.sort(mu)[::-1][: min(len(a), m.shape[0] - len(a))]

    hi, lo = mu + 0.5, mu - 0.5
    s_modes = xlogy(hi, hi) - xlogy(lo, lo)
    nu = 2.0 * mu
    d = np.sqrt(np.clip(1.0 - 1.0 / nu**2, 0.0, None))
    d = np.where(d < ZERO_THRESHOLD, 0.0, d)
    return _result(SchmidtSpectrum(d=d, nu=nu, mode_entropy=s_modes), log_base, "oracle")


def single_node_mu(v, node: int) -> float:
    """``mu`` with ``mu**2 = V_ii (V^-1)_ii / 4`` for a single node."""
    m = _as_matrix(v)
    e = np.zeros(m.shape[0])
    e[node] = 1.0
    try:
        inv_col = np.linalg.solve(m, e)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"V is singular: {exc}") from exc
    return float(np.sqrt(0.25 * m[node, node] * inv_col[node]))


def single_node_entropy(v, node: int, log_base="e") -> EntropyResult:
    """Entropy of one node against the rest, using ``nu = 2 mu``."""
    m = _as_matrix(v)
    if not 0 <= node < m.shape[0]:
        raise ValueError(f"node {node} out of range")
    if m.shape[0] < 2:
        raise ValueError("need at least two nodes")
    nu = max(2.0 * single_node_mu(m, node), 1.0)
    d = np.sqrt(1.0 - 1.0 / nu**2)
    return _result(spectrum_from_d([d]), log_base, "closed_form")
