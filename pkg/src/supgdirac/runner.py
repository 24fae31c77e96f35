"""Run configuration and the end-to-end pipelines behind the command line."""
from __future__ import annotations

import dataclasses
import functools
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import reference
from .analysis import ConvergenceStudy, Label, SpectrumReport, classify, convergence_study
from .assembly import GALERKIN, SUPG, assemble, integral_families
from .errors import ConfigError, InsufficientStatesError
from .mesh import Mesh, MeshConfig, generate_exponential, generate_two_segment
from .physics import (
    SPEED_OF_LIGHT,
    PhysicalParams,
    PotentialModel,
    calibrate_speed_of_light,
    exact_spectrum,
    max_relative_mismatch,
    nucleus_radius,
)
from .solver import BoundSpectrum, select_bound_states, solve_pencil

logger = logging.getLogger(__name__)

METHODS = (GALERKIN, SUPG)


@dataclass
class RunConfig:
    """Everything that determines a run.  Defaults reproduce the z=118 benchmark."""

    z: int = reference.Z_OG
    kappa: int = -2
    m: float = 1.0
    c: float | str = SPEED_OF_LIGHT
    nucleus: str = "point"
    R: float | None = None
    mass_number: float = reference.A_OG
    a: float | None = None
    b: float = 50.0
    n: int = 600
    epsilon: float = 1e-4
    n_inner: int = 40
    method: str = "both"
    levels: int = 15
    solver: str = "auto"
    tol_rel: float = 1e-3
    tol_coin: float = 1e-5
    kappas: list[int] = field(default_factory=lambda: [-2, 2, -3, 3, -4, 4, -5, 5])

    def __post_init__(self):
        if self.nucleus not in ("point", "extended"):
            raise ConfigError(f"nucleus must be 'point' or 'extended', got {self.nucleus!r}")
        if self.method not in ("galerkin", "supg", "both"):
            raise ConfigError(f"method must be galerkin, supg or both, got {self.method!r}")
        if self.solver not in ("auto", "qz", "symmetric"):
            raise ConfigError(f"unknown solver {self.solver!r}")
        if isinstance(self.c, str) and self.c != "calibrate":
            try:
                self.c = float(self.c)
            except ValueError:
                raise ConfigError(f"c must be a number or 'calibrate', got {self.c!r}") from None
        if self.levels < 1:
            raise ConfigError("levels must be positive")
        if self.nucleus == "extended" and not 2 < self.n_inner < self.n - 1:
            raise ConfigError("n_inner must leave nodes on both sides of R")
        # surface invariant violations as configuration errors
        MeshConfig(self.resolved_a, self.b, self.n, self.epsilon)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_sources(cls, config_file: str | Path | None = None, overrides: dict | None = None) -> "RunConfig":
        """Built-in defaults, then the JSON file, then explicit overrides."""
        data: dict = {}
        if config_file is not None:
            try:
                data.update(json.loads(Path(config_file).read_text()))
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read config file {config_file}: {exc}") from exc
        data.update({k: v for k, v in (overrides or {}).items() if v is not None})
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @property
    def nucleus_R(self) -> float:
        return self.R if self.R is not None else nucleus_radius(self.mass_number)

    @property
    def resolved_a(self) -> float:
        return self.a if self.a is not None else 0.0

    @property
    def methods(self) -> tuple[str, ...]:
        return METHODS if self.method == "both" else (self.method,)

    def resolved_c(self) -> float:
        if self.c == "calibrate":
            return calibrate_reference_c()[0]
        return float(self.c)

    def params(self, kappa: int | None = None) -> PhysicalParams:
        return PhysicalParams(self.z, self.kappa if kappa is None else kappa, self.resolved_c(), self.m)

    def potential_model(self) -> PotentialModel:
        return PotentialModel.point() if self.nucleus == "point" else PotentialModel.extended(self.nucleus_R)

    def build_mesh(self, n: int | None = None) -> Mesh:
        n = self.n if n is None else n
        if self.nucleus == "point":
            return generate_exponential(MeshConfig(self.resolved_a, self.b, n, self.epsilon))
        inner = max(3, round(self.n_inner * n / self.n))
        return generate_two_segment(self.resolved_a, self.nucleus_R, self.b, inner, n - inner, self.epsilon)

    def metadata(self, method: str, kappa: int | None = None, n: int | None = None) -> dict:
        return {
            "method": method,
            "z": self.z,
            "kappa": self.kappa if kappa is None else kappa,
            "m": self.m,
            "c": self.resolved_c(),
            "nucleus": self.nucleus,
            "R": self.nucleus_R if self.nucleus == "extended" else None,
            "a": self.resolved_a,
            "b": self.b,
            "n": self.n if n is None else n,
            "epsilon": self.epsilon,
        }


@functools.lru_cache(maxsize=8)
def calibrate_reference_c(bracket=(137.0359, 137.0361)) -> tuple[float, float]:
    """Speed of light best reproducing the published z=118, kappa=-2 exact energies."""
    return calibrate_speed_of_light(reference.EXACT_KAPPA_M2, reference.Z_OG, -2, bracket)


def calibration_summary(bracket=(137.0359, 137.0361)) -> dict:
    c, mis = calibrate_reference_c(bracket)
    return {
        "c": c,
        "max_rel_mismatch_kappa_m2": mis,
        "max_rel_mismatch_kappa_p2": max_relative_mismatch(c, reference.Z_OG, 2, reference.EXACT_KAPPA_P2),
        "default_c": SPEED_OF_LIGHT,
        "default_max_rel_mismatch_kappa_m2": max_relative_mismatch(
            SPEED_OF_LIGHT, reference.Z_OG, -2, reference.EXACT_KAPPA_M2),
        "bracket": list(bracket),
    }


@dataclass
class MethodRun:
    method: str
    bound: BoundSpectrum
    report: SpectrumReport
    exact: np.ndarray


def _solver_for(config: RunConfig, method: str) -> str:
    if config.solver == "auto":
        return "symmetric" if method == GALERKIN else "qz"
    return config.solver


def truncate_report(report: SpectrumReport, levels: int) -> SpectrumReport:
    """Keep entries up to and including genuine level ``levels``."""
    cut = len(report.entries)
    for i, e in enumerate(report.entries):
        if e.label is Label.GENUINE and e.level >= levels:
            cut = i + 1
            break
    return dataclasses.replace(report, entries=report.entries[:cut])


def run_method(config: RunConfig, method: str, kappa: int | None = None, n: int | None = None,
               mesh: Mesh | None = None, families=None, levels: int | None = None) -> MethodRun:
    """Assemble, solve and classify one method for one ``kappa``."""
    params = config.params(kappa)
    mesh = mesh or config.build_mesh(n)
    model = config.potential_model()
    pencil = assemble(method, mesh, params, model, families)
    raw = solve_pencil(pencil, _solver_for(config, method))
    levels = levels or config.levels
    bound = select_bound_states(raw, params, residuals=False)
    if len(bound) < levels:
        raise InsufficientStatesError(
            f"{method}: {levels} levels requested but only {len(bound)} states in the bound window (n={mesh.n})")
    exact = exact_spectrum(params, len(bound) + 1)
    report = classify(bound, exact, params, config.tol_rel, config.tol_coin,
                      metadata=config.metadata(method, params.kappa, mesh.n))
    report.metadata["solver"] = raw.diagnostics
    report = truncate_report(report, levels)
    # residuals only for what is reported
    k = len(report.entries)
    bound = select_bound_states(raw, params, count=k)
    report.metadata["max_residual"] = float(np.max(bound.residuals, initial=0.0))
    return MethodRun(method, bound, report, exact)


def run_spectrum(config: RunConfig, kappa: int | None = None) -> dict[str, MethodRun]:
    params = config.params(kappa)
    mesh = config.build_mesh()
    families = integral_families(mesh, params, config.potential_model())
    return {m: run_method(config, m, kappa, mesh=mesh, families=families) for m in config.methods}


def run_convergence(config: RunConfig, node_counts: Sequence[int], levels: int | None = None) -> ConvergenceStudy:
    """Stabilized-method convergence over ``node_counts``."""
    params = config.params()
    model = config.potential_model()

    def solve(n: int) -> np.ndarray:
        mesh = config.build_mesh(n)
        raw = solve_pencil(assemble(SUPG, mesh, params, model), _solver_for(config, SUPG))
        return select_bound_states(raw, params, residuals=False).energies

    meta = config.metadata(SUPG)
    meta.pop("n")
    return convergence_study(node_counts, params, solve, levels or config.levels, config.tol_rel, meta)


def table_slot(kappa: int, index: int) -> int:
    """Row of the ``index``-th (0-based) state of ``kappa`` in the staggered multi-kappa layout.

    Columns are staggered so that ``-2, 2, -3, 3, ...`` start on rows
    ``1, 2, 3, 4, ...``.
    """
    return max(1, 2 * abs(kappa) - 3 + (kappa > 0)) + index


def run_extended(config: RunConfig, kappas: Sequence[int] | None = None) -> dict[int, MethodRun]:
    """Stabilized runs for several ``kappa`` on the extended-nucleus mesh."""
    if config.nucleus != "extended":
        config = dataclasses.replace(config, nucleus="extended")
    kappas = list(kappas or config.kappas)
    mesh = config.build_mesh()
    return {k: run_method(config, SUPG, k, mesh=mesh) for k in kappas}

