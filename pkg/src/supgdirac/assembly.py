"""Galerkin and SUPG pencils for the radial Dirac operator.

Unknowns are ordered ``[zeta_1..zeta_n | xi_1..xi_n]`` (nodal values of the
large component ``f`` then the small component ``g``).
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .femcore import IntegralSpec, TriDiag, assemble_integral
from .mesh import Mesh
from .physics import PhysicalParams, PotentialModel

GALERKIN = "galerkin"
SUPG = "supg"


@dataclass(frozen=True, eq=False)
class Pencil:
    """Generalized eigenproblem ``left @ y = lam * right @ y`` of size ``2n``."""

    left: sp.csr_matrix
    right: sp.csr_matrix
    method: str
    params: PhysicalParams
    mesh: Mesh
    model: PotentialModel = field(default_factory=PotentialModel.point)

    @property
    def n(self) -> int:
        return self.mesh.n

    @property
    def dim(self) -> int:
        return self.left.shape[0]

    def block(self, which: str, i: int, j: int) -> np.ndarray:
        """Dense ``n x n`` block (``i, j`` in ``{0, 1}``) of ``"left"`` or ``"right"``."""
        M = self.left if which == "left" else self.right
        n = self.n
        return M[i * n:(i + 1) * n, j * n:(j + 1) * n].toarray()

    def dense(self) -> tuple[np.ndarray, np.ndarray]:
        return self.left.toarray(), self.right.toarray()

    def dump_csv(self, path) -> None:
        """Write ``matrix,row,col,value`` triplets of both matrices."""
        path = Path(path)
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["matrix", "row", "col", "value"])
            for name, M in (("left", self.left), ("right", self.right)):
                coo = M.tocoo()
                order = np.lexsort((coo.col, coo.row))
                for k in order:
                    w.writerow([name, int(coo.row[k]), int(coo.col[k]), format(coo.data[k], ".17g")])


def integral_families(mesh: Mesh, params: PhysicalParams, model: PotentialModel) -> dict[str, TriDiag]:
    """All element-integral families needed by either pencil, keyed ``"rho sigma nu[V]"``."""
    specs = [
        IntegralSpec(0, 0, 0), IntegralSpec(0, 0, 1), IntegralSpec(1, 0, 0),
        IntegralSpec(0, 1, 0), IntegralSpec(1, 1, 0), IntegralSpec(1, 0, 1),
        IntegralSpec(0, 0, 0, weighted=True), IntegralSpec(1, 0, 0, weighted=True),
    ]
    return {s.key: assemble_integral(mesh, s, model, params.z) for s in specs}


def _pencil_from_blocks(blocks_left, blocks_right, method, params, mesh, model) -> Pencil:
    def bmat(blocks):
        return sp.bmat([[b.tosparse() for b in row] for row in blocks], format="csr")

    return Pencil(bmat(blocks_left), bmat(blocks_right), method, params, mesh, model)


def assemble_galerkin(
    mesh: Mesh, params: PhysicalParams, model: PotentialModel | None = None, families=None
) -> Pencil:
    """Standard Galerkin pencil ``(A, B)``; both matrices symmetric, ``B`` positive definite."""
    model = model or PotentialModel.point()
    a = families or integral_families(mesh, params, model)
    mc2, c, k = params.rest_energy, params.c, params.kappa
    A11 = a["000"] * mc2 + a["000V"]
    A12 = a["010"] * (-c) + a["001"] * (c * k)
    A21 = a["010"] * c + a["001"] * (c * k)
    A22 = a["000"] * (-mc2) + a["000V"]
    zero = a["000"] * 0.0
    return _pencil_from_blocks([[A11, A12], [A21, A22]], [[a["000"], zero], [zero, a["000"]]],
                               GALERKIN, params, mesh, model)


def assemble_supg(
    mesh: Mesh,
    params: PhysicalParams,
    model: PotentialModel | None = None,
    tau_scale: float = 1.0,
    taus=None,
    families=None,
) -> Pencil:
    """Streamline-upwind Petrov-Galerkin pencil.

    The test pair ``(v, tau v')`` / ``(tau v', v)`` adds the residual of the
    other equation weighted by ``tau v'``.  Because ``tau`` multiplies the
    test function, every stabilization term is scaled row-wise by the
    ``tau`` of the test node.

    Parameters
    ----------
    tau_scale : float
        Multiplier on the mesh stability parameters (1 reproduces the
        derived value; 0 recovers the Galerkin pencil).
    taus : array_like, optional
        Explicit per-node values overriding the mesh ones.
    """
    model = model or PotentialModel.point()
    a = families or integral_families(mesh, params, model)
    mc2, c, k = params.rest_energy, params.c, params.kappa
    t = (mesh.taus if taus is None else np.asarray(taus, dtype=float)) * tau_scale
    if t.shape != (mesh.n,):
        raise ValueError(f"need one tau per interior node ({mesh.n}), got shape {t.shape}")

    def tr(M: TriDiag) -> TriDiag:
        return M.scale_rows(t)

    A11 = a["000"] * mc2 + a["000V"] + tr(a["110"] * c + a["101"] * (c * k))
    A12 = a["010"] * (-c) + a["001"] * (c * k) + tr(a["100"] * (-mc2) + a["100V"])
    A21 = a["010"] * c + a["001"] * (c * k) + tr(a["100"] * mc2 + a["100V"])
    A22 = a["000"] * (-mc2) + a["000V"] + tr(a["110"] * (-c) + a["101"] * (c * k))
    B12 = tr(a["100"])
    return _pencil_from_blocks([[A11, A12], [A21, A22]], [[a["000"], B12], [B12, a["000"]]],
                               SUPG, params, mesh, model)


def assemble(method: str, mesh: Mesh, params: PhysicalParams, model: PotentialModel | None = None,
             families=None) -> Pencil:
    if method == GALERKIN:
        return assemble_galerkin(mesh, params, model, families)
    if method == SUPG:
        return assemble_supg(mesh, params, model, families=families)
    raise ValueError(f"unknown method {method!r}")
