"""Linear hat basis and the tridiagonal element-integral families.

An integral family is indexed by ``(rho, sigma, nu)`` and an optional
potential weight ``q``::

    (i, j) entry = integral of phi_j^(sigma) * phi_i^(rho) * r**(-nu) * q(r) dr

``rho`` is the derivative order on the test function (row ``i``), ``sigma``
on the trial function (column ``j``).  Only interior nodes ``1..n`` enter,
the boundary nodes carry homogeneous Dirichlet values.

Polynomial integrands use closed forms; ``1/r`` integrands use exact
logarithmic forms evaluated without cancellation; smooth potentials with a
kink (the uniform-sphere nucleus) use per-element Gauss-Legendre quadrature
with the kink inserted as a subdivision point.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import NumericalError
from .mesh import Mesh
from .physics import PotentialModel, potential as eval_potential

# --- basis --------------------------------------------------------------------


def hat_value(mesh: Mesh, j: int, r):
    """Value of the hat function of node ``j`` (``0 <= j <= n+1``) at ``r``."""
    x = mesh.nodes
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    if j > 0:
        left = (r >= x[j - 1]) & (r <= x[j])
        out = np.where(left, (r - x[j - 1]) / (x[j] - x[j - 1]), out)
    if j < x.size - 1:
        right = (r >= x[j]) & (r <= x[j + 1])
        out = np.where(right, (x[j + 1] - r) / (x[j + 1] - x[j]), out)
    if j == 0:
        out = np.where(r == x[0], 1.0, out)
    return out if out.ndim else float(out)


def hat_derivative(mesh: Mesh, j: int, r):
    """Slope of the hat function of node ``j``.

    Uses the left limit at nodes and the right limit at ``r_0``.
    """
    x = mesh.nodes
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    if j > 0:
        out = np.where((r > x[j - 1]) & (r <= x[j]), 1.0 / (x[j] - x[j - 1]), out)
        if j == 1:
            out = np.where(r == x[0], 1.0 / (x[1] - x[0]), out)
    if j < x.size - 1:
        out = np.where((r > x[j]) & (r <= x[j + 1]), -1.0 / (x[j + 1] - x[j]), out)
        if j == 0:
            out = np.where(r == x[0], -1.0 / (x[1] - x[0]), out)
    return out if out.ndim else float(out)


# --- tridiagonal storage ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TriDiag:
    """Square tridiagonal matrix; ``sub[k] = M[k+1, k]``, ``sup[k] = M[k, k+1]``."""

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray

    def __post_init__(self):
        n = len(self.diag)
        if len(self.sub) != n - 1 or len(self.sup) != n - 1:
            raise ValueError("off-diagonals must have length n - 1")

    @property
    def n(self) -> int:
        return len(self.diag)

    @property
    def T(self) -> "TriDiag":
        return TriDiag(self.sup, self.diag, self.sub)

    def row(self, i: int) -> tuple[float, float, float]:
        """Entries ``(M[i, i-1], M[i, i], M[i, i+1])`` with zeros past the edges."""
        left = self.sub[i - 1] if i > 0 else 0.0
        right = self.sup[i] if i < self.n - 1 else 0.0
        return float(left), float(self.diag[i]), float(right)

    def scale_rows(self, w) -> "TriDiag":
        """``diag(w) @ self``."""
        w = np.broadcast_to(np.asarray(w, dtype=float), (self.n,))
        return TriDiag(self.sub * w[1:], self.diag * w, self.sup * w[:-1])

    def __add__(self, other: "TriDiag") -> "TriDiag":
        return TriDiag(self.sub + other.sub, self.diag + other.diag, self.sup + other.sup)

    def __sub__(self, other: "TriDiag") -> "TriDiag":
        return self + (-other)

    def __neg__(self) -> "TriDiag":
        return TriDiag(-self.sub, -self.diag, -self.sup)

    def __mul__(self, s: float) -> "TriDiag":
        return TriDiag(self.sub * s, self.diag * s, self.sup * s)

    __rmul__ = __mul__

    def tosparse(self) -> sp.csr_matrix:
        return sp.diags([self.sub, self.diag, self.sup], [-1, 0, 1], format="csr")

    def toarray(self) -> np.ndarray:
        return self.tosparse().toarray()


@dataclass(frozen=True)
class IntegralSpec:
    """Derivative orders on test (``rho``) and trial (``sigma``), inverse-radius power ``nu``.

    ``weighted`` multiplies the integrand by the nuclear potential.
    """

    rho: int
    sigma: int
    nu: int
    weighted: bool = False

    def __post_init__(self):
        if self.rho not in (0, 1) or self.sigma not in (0, 1) or self.nu not in (0, 1):
            raise ValueError("linear elements support orders and powers 0 or 1 only")

    @property
    def key(self) -> str:
        return f"{self.rho}{self.sigma}{self.nu}" + ("V" if self.weighted else "")


# --- element integrals ------------------------------------------------------------


def inverse_radius_moments(w):
    """``J_k(w) = int_0^1 s**k / (w + s) ds`` for ``k = 0, 1, 2``.

    ``w = r_left / h`` of an element.  For ``w > 2`` a series in ``1/w`` is
    summed; below that the upward recurrence ``J_k = 1/k - w J_{k-1}`` is
    stable.  ``w = 0`` gives ``J_0 = inf``.
    """
    w = np.asarray(w, dtype=float)
    J0, J1, J2 = (np.empty_like(w) for _ in range(3))
    big = w > 2.0
    if np.any(big):
        wb = w[big]
        # ratio <= 1/2: 60 terms reach double precision
        m = np.arange(60)[:, None]
        t = (-1.0 / wb) ** m
        J0[big] = (t / (m + 1)).sum(0) / wb
        J1[big] = (t / (m + 2)).sum(0) / wb
        J2[big] = (t / (m + 3)).sum(0) / wb
    small = ~big
    ws = w[small]
    with np.errstate(divide="ignore"):
        j0 = np.log1p(1.0 / ws)
    j1 = 1.0 - ws * np.where(ws > 0, j0, 0.0)
    J0[small], J1[small], J2[small] = j0, j1, 0.5 - ws * j1
    return J0, J1, J2


def _closed_form_elements(h: np.ndarray, r_left: np.ndarray, rho: int, sigma: int, nu: int) -> np.ndarray:
    ne = h.size
    K = np.empty((ne, 2, 2))
    d = np.stack([-1.0 / h, 1.0 / h], axis=1)  # shape slopes, local (left, right)
    if nu == 0:
        if rho == 0 and sigma == 0:
            K[:] = np.array([[1 / 3, 1 / 6], [1 / 6, 1 / 3]])[None] * h[:, None, None]
        elif rho == 1 and sigma == 0:
            K[:] = d[:, :, None] * (h / 2)[:, None, None]
        elif rho == 0 and sigma == 1:
            K[:] = d[:, None, :] * (h / 2)[:, None, None]
        else:
            K[:] = d[:, :, None] * d[:, None, :] * h[:, None, None]
        return K
    with np.errstate(divide="ignore", invalid="ignore"):
        J0, J1, J2 = inverse_radius_moments(r_left / h)
        if rho == 0 and sigma == 0:
            K[:, 0, 0] = J0 - 2 * J1 + J2
            K[:, 0, 1] = K[:, 1, 0] = J1 - J2
            K[:, 1, 1] = J2
        elif rho + sigma == 1:
            P = np.stack([J0 - J1, J1], axis=1)  # int psi_beta / (w + s) ds
            if rho == 1:
                K[:] = d[:, :, None] * P[:, None, :]
            else:
                K[:] = P[:, :, None] * d[:, None, :]
        else:
            K[:] = d[:, :, None] * d[:, None, :] * J0[:, None, None]
    return K


def _quadrature_elements(
    nodes: np.ndarray, spec: IntegralSpec, weight, points: int, breakpoints=()
) -> np.ndarray:
    x, wq = np.polynomial.legendre.leggauss(points)
    s_all, w_all = (x + 1) / 2, wq / 2
    r0, h = nodes[:-1], np.diff(nodes)

    def integrate(r0, h, lo, hi):
        # sub-interval [lo, hi] of the reference element, per element
        s = lo[:, None] + (hi - lo)[:, None] * s_all[None, :]
        r = r0[:, None] + h[:, None] * s
        f = np.ones_like(r) if weight is None else weight(r)
        if spec.nu:
            f = f / r
        vals = [1.0 - s, s]
        slopes = [-1.0 / h[:, None] * np.ones_like(s), 1.0 / h[:, None] * np.ones_like(s)]
        test = slopes if spec.rho else vals
        trial = slopes if spec.sigma else vals
        wts = (h * (hi - lo))[:, None] * w_all[None, :] * f
        K = np.empty((r0.size, 2, 2))
        for a in range(2):
            for b in range(2):
                K[:, a, b] = np.sum(wts * test[a] * trial[b], axis=1)
        return K

    ones, zeros = np.ones_like(h), np.zeros_like(h)
    with np.errstate(divide="ignore", invalid="ignore"):
        K = integrate(r0, h, zeros, ones)
        for bp in breakpoints:
            inside = np.nonzero((r0 < bp) & (nodes[1:] > bp))[0]
            if inside.size:
                sb = (bp - r0[inside]) / h[inside]
                o, zz = np.ones_like(sb), np.zeros_like(sb)
                K[inside] = integrate(r0[inside], h[inside], zz, sb) + integrate(r0[inside], h[inside], sb, o)
    return K


def element_matrices(
    mesh: Mesh,
    spec: IntegralSpec,
    model: PotentialModel | None = None,
    z: float | None = None,
    method: str = "auto",
    points: int = 16,
) -> np.ndarray:
    """Local 2x2 matrices ``K[e, test, trial]`` for elements ``e = 0..n``."""
    if spec.weighted and (model is None or z is None):
        raise ValueError("weighted integral needs a potential model and charge number")
    if method not in ("auto", "analytic", "quadrature"):
        raise ValueError(f"unknown integration method {method!r}")
    nodes = mesh.nodes
    h, r_left = np.diff(nodes), nodes[:-1]

    if method != "quadrature":
        if not spec.weighted:
            return _closed_form_elements(h, r_left, spec.rho, spec.sigma, spec.nu)
        if model.is_point and spec.nu == 0:
            # -z/r weight: same as the 1/r family scaled by -z
            return -z * _closed_form_elements(h, r_left, spec.rho, spec.sigma, 1)
        if method == "analytic":
            raise ValueError(f"no closed form for family {spec.key} with this potential")

    weight = None
    breakpoints = ()
    if spec.weighted:
        weight = lambda r: eval_potential(model, z, r)  # noqa: E731
        if not model.is_point:
            breakpoints = (model.R,)
        elif nodes[0] <= 0:
            raise NumericalError("point potential on a mesh touching r = 0 needs the analytic path")
    K = _quadrature_elements(nodes, spec, weight, points, breakpoints)
    if not np.all(np.isfinite(K[1:])) or not np.all(np.isfinite(K[0, 1, 1])):
        raise NumericalError(f"quadrature of family {spec.key} produced non-finite values")
    return K


def assemble_from_elements(K: np.ndarray) -> TriDiag:
    """Sum local element matrices into the interior-node tridiagonal matrix."""
    n = K.shape[0] - 1
    diag = K[:-1, 1, 1] + K[1:, 0, 0]
    sup = K[1:n, 0, 1].copy()
    sub = K[1:n, 1, 0].copy()
    return TriDiag(sub, diag, sup)


def assemble_integral(
    mesh: Mesh,
    spec: IntegralSpec,
    model: PotentialModel | None = None,
    z: float | None = None,
    method: str = "auto",
    points: int = 16,
) -> TriDiag:
    """Assemble one integral family over the interior nodes of ``mesh``.

    Parameters
    ----------
    method : {"auto", "analytic", "quadrature"}
        ``auto`` prefers closed forms and falls back to Gauss-Legendre with
        ``points`` nodes per element (per sub-element when the nuclear
        radius splits an element).
    """
    K = element_matrices(mesh, spec, model, z, method, points)
    M = assemble_from_elements(K)
    if not (np.all(np.isfinite(M.diag)) and np.all(np.isfinite(M.sub)) and np.all(np.isfinite(M.sup))):
        raise NumericalError(f"family {spec.key} diverges on this mesh")
    return M
