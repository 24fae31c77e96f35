"""Physical parameters, the exact Dirac-Coulomb spectrum and nuclear potentials.

Everything is in atomic units (hbar = m_e = e = 1), so the fine structure
constant is ``1/c``.  Energies returned by this module are *shifted* by the
rest energy ``m c**2`` so that bound states lie in ``(-2 m c**2, 0)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError

#: Default speed of light in atomic units.
SPEED_OF_LIGHT = 137.0359895
#: CODATA 2018 inverse fine structure constant.
SPEED_OF_LIGHT_CODATA2018 = 137.035999084

BOHR_RADIUS_M = 5.29177210903e-11
FERMI_M = 1.0e-15


@dataclass(frozen=True)
class PhysicalParams:
    """Parameters of a hydrogen-like ion.

    Parameters
    ----------
    z : int
        Nuclear charge number, ``1 <= z <= 137``.
    kappa : int
        Relativistic spin-orbit quantum number, nonzero.
    c : float
        Speed of light in atomic units.
    m : float
        Electron rest mass in atomic units.
    """

    z: int
    kappa: int
    c: float = SPEED_OF_LIGHT
    m: float = 1.0

    def __post_init__(self):
        if int(self.z) != self.z or not 1 <= self.z <= 137:
            raise DomainError(f"charge number must be an integer in [1, 137], got {self.z}")
        if int(self.kappa) != self.kappa or self.kappa == 0:
            raise DomainError(f"kappa must be a nonzero integer, got {self.kappa}")
        if not self.m > 0 or not self.c > 0:
            raise DomainError("mass and speed of light must be positive")
        if self.kappa**2 - (self.z / self.c) ** 2 <= 0:
            raise DomainError(f"kappa**2 - (z/c)**2 <= 0 for z={self.z}, kappa={self.kappa}")

    @property
    def gamma(self) -> float:
        """Fine structure constant ``1/c``."""
        return 1.0 / self.c

    @property
    def rest_energy(self) -> float:
        return self.m * self.c**2

    def mirrored(self) -> "PhysicalParams":
        """Same ion with ``kappa -> -kappa``."""
        return PhysicalParams(self.z, -self.kappa, self.c, self.m)

    def with_kappa(self, kappa: int) -> "PhysicalParams":
        return PhysicalParams(self.z, kappa, self.c, self.m)


def first_radial_level(kappa: int) -> int:
    """Lowest admissible ``n_r``: 1 for negative kappa, 2 for positive kappa."""
    return 1 if kappa < 0 else 2


def exact_eigenvalue(params: PhysicalParams, n_r: int) -> float:
    """Shifted Dirac-Coulomb energy of radial level ``n_r`` for a point nucleus.

    Evaluated as ``-m c**2 x / (sqrt(1+x) (1+sqrt(1+x)))`` with
    ``x = (z/c)**2 / (n_r - 1 + sqrt(kappa**2 - (z/c)**2))**2``, which is the
    relativistic formula minus ``m c**2`` without the cancellation of the
    naive subtraction.
    """
    if int(n_r) != n_r or n_r < 1:
        raise DomainError(f"n_r must be a positive integer, got {n_r}")
    if n_r < first_radial_level(params.kappa):
        raise DomainError(f"n_r = {n_r} does not exist for kappa = {params.kappa} > 0")
    zg2 = (params.z * params.gamma) ** 2
    root = params.kappa**2 - zg2
    if root <= 0:
        raise DomainError("kappa**2 - (z/c)**2 must be positive")
    x = zg2 / (n_r - 1 + np.sqrt(root)) ** 2
    s = np.sqrt(1.0 + x)
    return float(-params.rest_energy * x / (s * (1.0 + s)))


def exact_spectrum(params: PhysicalParams, count: int) -> np.ndarray:
    """The ``count`` lowest shifted bound-state energies, ascending."""
    if int(count) != count or count < 1:
        raise DomainError(f"count must be a positive integer, got {count}")
    start = first_radial_level(params.kappa)
    return np.array([exact_eigenvalue(params, n) for n in range(start, start + count)])


class NucleusModel(enum.Enum):
    POINT = "point"
    EXTENDED_UNIFORM = "extended"


@dataclass(frozen=True)
class PotentialModel:
    """Nuclear charge distribution: point charge or uniformly charged sphere of radius ``R``."""

    kind: NucleusModel = NucleusModel.POINT
    R: float | None = None

    def __post_init__(self):
        if self.kind is NucleusModel.EXTENDED_UNIFORM and not (self.R is not None and self.R > 0):
            raise DomainError("extended nucleus needs a radius R > 0")

    @classmethod
    def point(cls) -> "PotentialModel":
        return cls(NucleusModel.POINT)

    @classmethod
    def extended(cls, R: float) -> "PotentialModel":
        return cls(NucleusModel.EXTENDED_UNIFORM, R)

    @property
    def is_point(self) -> bool:
        return self.kind is NucleusModel.POINT


def potential(model: PotentialModel, z: float, r):
    """Electron potential energy at radius ``r`` (scalar or array).

    Point nucleus: ``-z/r``.  Uniform sphere: ``-z (3 - r**2/R**2) / (2R)``
    inside ``R`` and ``-z/r`` outside.
    """
    r_arr = np.asarray(r, dtype=float)
    if model.is_point:
        if np.any(r_arr <= 0):
            raise DomainError("point-nucleus potential requires r > 0")
        out = -z / r_arr
    else:
        if np.any(r_arr < 0):
            raise DomainError("potential requires r >= 0")
        R = model.R
        inside = r_arr <= R
        with np.errstate(divide="ignore"):
            outer = -z / np.where(inside, 1.0, r_arr)
        out = np.where(inside, -z * (3.0 - (r_arr / R) ** 2) / (2.0 * R), outer)
    return float(out) if np.ndim(out) == 0 else out


def nucleus_radius(mass_number: float, r0_fm: float = 1.2) -> float:
    """Nuclear radius ``r0 * A**(1/3)`` converted from femtometres to bohr."""
    if mass_number <= 0:
        raise DomainError("mass number must be positive")
    return r0_fm * mass_number ** (1.0 / 3.0) * FERMI_M / BOHR_RADIUS_M


def max_relative_mismatch(c: float, z: int, kappa: int, reference: Sequence[float], m: float = 1.0) -> float:
    """Largest ``|exact - ref| / |ref|`` over consecutive levels starting at the first one."""
    ref = np.asarray(reference, dtype=float)
    exact = exact_spectrum(PhysicalParams(z, kappa, c, m), len(ref))
    return float(np.max(np.abs((exact - ref) / ref)))


def calibrate_speed_of_light(
    reference: Sequence[float],
    z: int,
    kappa: int,
    bracket: tuple[float, float] = (137.0359, 137.0361),
    m: float = 1.0,
    grid: int = 4001,
) -> tuple[float, float]:
    """Find the ``c`` whose exact spectrum best reproduces ``reference``.

    Minimises the maximum relative mismatch.  The objective is a maximum of
    smooth terms and has kinks, so a dense grid scan locates the basin and a
    bounded scalar search refines inside the neighbouring grid cells.

    Returns
    -------
    c, mismatch : float
    """
    lo, hi = bracket
    if not lo < hi:
        raise DomainError("bracket must be increasing")
    cs = np.linspace(lo, hi, grid)
    vals = np.array([max_relative_mismatch(c, z, kappa, reference, m) for c in cs])
    k = int(np.argmin(vals))
    left, right = cs[max(k - 1, 0)], cs[min(k + 1, grid - 1)]
    res = minimize_scalar(
        lambda c: max_relative_mismatch(c, z, kappa, reference, m),
        bounds=(left, right),
        method="bounded",
        options={"xatol": 1e-13},
    )
    if res.fun <= vals[k]:
        return float(res.x), float(res.fun)
    return float(cs[k]), float(vals[k])
