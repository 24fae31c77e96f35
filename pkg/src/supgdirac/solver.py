"""Dense generalized eigensolves and extraction of the bound-state window."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .assembly import GALERKIN, Pencil
from .errors import InsufficientStatesError, NumericalError
from .physics import PhysicalParams

logger = logging.getLogger(__name__)


@dataclass
class RawSpectrum:
    """All ``2n`` generalized eigenvalues of a pencil (unshifted, possibly complex or infinite)."""

    eigenvalues: np.ndarray
    method: str
    pencil: Pencil | None = None
    diagnostics: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.eigenvalues)


@dataclass
class BoundSpectrum:
    """Shifted bound-state energies inside the selection window, ascending."""

    energies: np.ndarray
    eigenvalues: np.ndarray
    window: tuple[float, float]
    discarded: dict
    residuals: np.ndarray | None = None
    method: str = ""

    def __len__(self) -> int:
        return len(self.energies)


def right_condition_estimate(right: sp.spmatrix) -> float:
    """1-norm condition estimate of the right-hand matrix; ``inf`` when singular."""
    try:
        lu = spla.splu(sp.csc_matrix(right))
    except RuntimeError:
        return float("inf")
    n = right.shape[0]
    inv = spla.LinearOperator((n, n), matvec=lu.solve, rmatvec=lambda x: lu.solve(x, trans="T"))
    return float(spla.norm(right, 1) * spla.onenormest(inv))


def solve_pencil(pencil: Pencil, algorithm: str = "qz", max_condition: float = 1e14) -> RawSpectrum:
    """All generalized eigenvalues of ``(pencil.left, pencil.right)``.

    Parameters
    ----------
    algorithm : {"qz", "symmetric"}
        ``qz`` runs the dense QZ decomposition on any pencil.  ``symmetric``
        exploits a symmetric left matrix and positive definite right matrix
        (the Galerkin pencil) and is an order of magnitude faster.
    """
    cond = right_condition_estimate(pencil.right)
    if not np.isfinite(cond) or cond > max_condition:
        raise NumericalError(f"right-hand matrix is numerically singular (condition estimate {cond:.3e})")
    A, B = pencil.dense()
    if algorithm == "symmetric":
        if pencil.method != GALERKIN:
            raise ValueError("the symmetric solver only applies to the Galerkin pencil")
        try:
            ev = sla.eigh(A, B, eigvals_only=True).astype(complex)
        except sla.LinAlgError as exc:
            raise NumericalError(f"symmetric-definite solve failed: {exc}") from exc
    elif algorithm == "qz":
        try:
            ev = sla.eig(A, B, right=False)
        except sla.LinAlgError as exc:
            raise NumericalError(f"QZ failed: {exc}") from exc
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    finite = np.isfinite(ev)
    diag = {
        "algorithm": algorithm,
        "right_condition_estimate": cond,
        "n_infinite": int(np.sum(~finite)),
        "max_abs_imag": float(np.max(np.abs(ev[finite].imag), initial=0.0)),
    }
    logger.debug("solved %s pencil of size %d: %s", pencil.method, pencil.dim, diag)
    return RawSpectrum(ev, pencil.method, pencil, diag)


def spectral_norm(M: sp.spmatrix) -> float:
    """Largest singular value of ``M``."""
    if min(M.shape) <= 64:
        return float(np.linalg.norm(M.toarray(), 2))
    return float(spla.svds(M, k=1, return_singular_vectors=False, random_state=0)[0])


def eigenpair_residuals(pencil: Pencil, eigenvalues, iterations: int = 2, seed: int = 0) -> np.ndarray:
    """Relative residual ``|(A - lam B) y| / (|A| |y|)`` of each eigenvalue.

    The vector ``y`` comes from inverse iteration with the computed eigenvalue
    as shift, so a small residual certifies ``lam`` as an eigenvalue of a
    nearby pencil.
    """
    A = sp.csc_matrix(pencil.left)
    B = sp.csc_matrix(pencil.right)
    normA = spectral_norm(A)
    rng = np.random.default_rng(seed)
    out = []
    for lam in np.atleast_1d(eigenvalues):
        lam = complex(lam)
        dtype = float if lam.imag == 0 else complex
        M = sp.csc_matrix(A - (lam.real if dtype is float else lam) * B, dtype=dtype)
        try:
            lu = spla.splu(M)
        except RuntimeError:
            # exactly singular shift: lam is an eigenvalue to working precision
            out.append(0.0)
            continue
        y = rng.standard_normal(A.shape[0]).astype(dtype)
        for _ in range(iterations):
            y = lu.solve(B @ y)
            y /= np.linalg.norm(y)
        r = A @ y - lam * (B @ y)
        out.append(float(np.linalg.norm(r) / (normA * np.linalg.norm(y))))
    return np.array(out)


def select_bound_states(
    raw: RawSpectrum,
    params: PhysicalParams,
    count: int | None = None,
    window_rel: float = 1e-3,
    abs_floor: float = 1e-6,
    imag_tol: float = 1e-6,
    dedup_tol: float = 1e-12,
    residuals: bool = True,
) -> BoundSpectrum:
    """Shift by ``-m c**2`` and keep the values inside the bound-state window.

    The window is ``(-2 m c^2 (1 - window_rel), -abs_floor m c^2)``.  Values
    with ``|Im| > imag_tol |Re|`` are discarded as complex.  Eigenvalues closer
    than ``dedup_tol m c^2`` count once.  Returns the lowest ``count`` states
    (all of them when ``count`` is None).
    """
    mc2 = params.rest_energy
    lo, hi = -2.0 * mc2 * (1.0 - window_rel), -abs_floor * mc2
    ev = np.asarray(raw.eigenvalues)
    finite = np.isfinite(ev)
    is_complex = finite & (np.abs(ev.imag) > imag_tol * np.abs(ev.real))
    real = finite & ~is_complex
    shifted = ev.real - mc2
    inside = real & (shifted > lo) & (shifted < hi)
    discarded = {
        "infinite": int(np.sum(~finite)),
        "complex": int(np.sum(is_complex & (ev.real - mc2 > lo) & (ev.real - mc2 < hi))),
        "complex_total": int(np.sum(is_complex)),
        "positive_continuum": int(np.sum(real & (shifted >= hi))),
        "negative_continuum": int(np.sum(real & (shifted <= lo))),
    }
    order = np.argsort(shifted[inside], kind="stable")
    energies = shifted[inside][order]
    values = ev[inside][order].real
    if energies.size > 1:
        keep = np.concatenate([[True], np.diff(energies) > dedup_tol * mc2])
        discarded["duplicates"] = int(np.sum(~keep))
        energies, values = energies[keep], values[keep]
    else:
        discarded["duplicates"] = 0
    if count is not None:
        if energies.size < count:
            raise InsufficientStatesError(f"requested {count} bound states, only {energies.size} in the window")
        energies, values = energies[:count], values[:count]
    res = None
    if residuals and raw.pencil is not None and energies.size:
        res = eigenpair_residuals(raw.pencil, values)
    return BoundSpectrum(energies, values, (lo, hi), discarded, res, raw.method)
