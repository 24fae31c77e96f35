"""Classification of computed spectra and convergence studies."""
from __future__ import annotations

import enum
import logging
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import MatchingError
from .physics import PhysicalParams, exact_eigenvalue, exact_spectrum

logger = logging.getLogger(__name__)


class Label(str, enum.Enum):
    GENUINE = "genuine"
    INSTILLED = "spurious:instilled"
    COINCIDENCE = "spurious:coincidence"

    @property
    def spurious(self) -> bool:
        return self is not Label.GENUINE


@dataclass
class ReportEntry:
    energy: float
    label: Label
    level: int | None = None
    exact: float | None = None
    rel_error: float | None = None


@dataclass
class SpectrumReport:
    entries: list[ReportEntry]
    metadata: dict = field(default_factory=dict)
    conflicts: list[dict] = field(default_factory=list)

    def genuine(self) -> list[ReportEntry]:
        return [e for e in self.entries if e.label is Label.GENUINE]

    def spurious(self, label: Label | None = None) -> list[ReportEntry]:
        return [e for e in self.entries if e.label.spurious and (label is None or e.label is label)]

    def counts(self) -> dict[str, int]:
        return {lab.value: sum(e.label is lab for e in self.entries) for lab in Label}

    def to_dict(self) -> dict:
        entries = []
        for e in self.entries:
            d = asdict(e)
            d["label"] = e.label.value
            entries.append(d)
        return {
            "metadata": self.metadata,
            "counts": self.counts(),
            "entries": entries,
            "conflicts": self.conflicts,
        }


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def coincidence_candidates(params: PhysicalParams) -> list[float]:
    """Exact levels of the mirrored ``-kappa`` problem that ``kappa`` itself lacks.

    The two spectra share every level except the ``n_r = 1`` state of the
    negative member, so only ``kappa > 0`` has a candidate.
    """
    if params.kappa > 0:
        return [exact_eigenvalue(params.mirrored(), 1)]
    return []


def classify(
    computed,
    exact: Sequence[float],
    params: PhysicalParams,
    tol_rel: float = 1e-3,
    tol_coin: float = 1e-5,
    strict: bool = False,
    metadata: dict | None = None,
) -> SpectrumReport:
    """Label each computed energy as genuine or spurious.

    Walks the computed values in ascending order and matches each to the next
    unconsumed exact level when within ``tol_rel`` of it; levels are never
    skipped, so a lost genuine state shows up as a run of spurious labels.  When two consecutive computed
    values fall within tolerance of the same level, the closer one is genuine
    and the other is recorded in ``conflicts`` (or raises with ``strict``).
    Unmatched values near a level of the mirrored problem missing from this
    one (within ``tol_coin``) are coincidence-spurious, all others instilled.
    """
    energies = np.sort(np.asarray(getattr(computed, "energies", computed), dtype=float))
    exact = np.asarray(exact, dtype=float)
    if exact.size < energies.size + 1:
        raise ValueError("need at least one more exact level than computed values")
    mirror = coincidence_candidates(params)
    entries: list[ReportEntry] = []
    conflicts: list[dict] = []
    p = 0

    def within(e, q):
        return q < exact.size and _rel(e, exact[q]) <= tol_rel

    for i, e in enumerate(energies):
        q = p if within(e, p) else None
        if q is not None and i + 1 < energies.size and within(energies[i + 1], q) \
                and _rel(energies[i + 1], exact[q]) < _rel(e, exact[q]):
            conflicts.append({"level": q + 1, "energy": float(e), "winner": float(energies[i + 1])})
            q = None
        if q is None and p > 0 and within(e, p - 1):
            prev = next(x for x in reversed(entries) if x.label is Label.GENUINE)
            conflicts.append({"level": p, "energy": float(e), "winner": prev.energy})
        if q is not None:
            entries.append(ReportEntry(float(e), Label.GENUINE, q + 1, float(exact[q]), _rel(e, exact[q])))
            p = q + 1
            continue
        near = [m for m in mirror if _rel(e, m) <= tol_coin]
        if near:
            entries.append(ReportEntry(float(e), Label.COINCIDENCE, None, float(near[0]), _rel(e, near[0])))
        else:
            entries.append(ReportEntry(float(e), Label.INSTILLED))

    if conflicts:
        msg = f"{len(conflicts)} computed values competed for one exact level: {conflicts}"
        if strict:
            raise MatchingError(msg)
        logger.info(msg)
    return SpectrumReport(entries, dict(metadata or {}), conflicts)


def relative_errors(report: SpectrumReport) -> np.ndarray:
    """``|computed - exact| / |exact|`` of the genuine entries, ordered by level."""
    g = sorted(report.genuine(), key=lambda e: e.level)
    return np.array([e.rel_error for e in g])


# --- convergence ----------------------------------------------------------------


def fit_loglog_rate(node_counts, errors) -> float:
    """Least-squares slope of ``log(error)`` against ``log(n)``."""
    x = np.log(np.asarray(node_counts, dtype=float))
    err = np.asarray(errors, dtype=float)
    y = np.log(np.maximum(err, np.finfo(float).tiny))
    if x.size < 2 or not np.all(np.isfinite(y)):
        return float("nan")
    return float(np.polyfit(x, y, 1)[0])


@dataclass
class ConvergenceStudy:
    node_counts: list[int]
    levels: list[int]
    energies: np.ndarray  # (levels, node counts)
    exact: np.ndarray
    errors: np.ndarray
    rates: np.ndarray
    metadata: dict = field(default_factory=dict)

    @property
    def low_confidence(self) -> bool:
        """Fewer than three node counts: a line through two points always fits."""
        return len(self.node_counts) < 3

    def to_dict(self) -> dict:
        return {
            "metadata": self.metadata,
            "node_counts": list(self.node_counts),
            "levels": list(self.levels),
            "energies": self.energies.tolist(),
            "exact": self.exact.tolist(),
            "rel_errors": self.errors.tolist(),
            "rates": self.rates.tolist(),
            "low_confidence": self.low_confidence,
        }


def convergence_study(
    node_counts: Sequence[int],
    params: PhysicalParams,
    solve: Callable[[int], np.ndarray],
    levels: int = 5,
    tol_rel: float = 1e-3,
    metadata: dict | None = None,
) -> ConvergenceStudy:
    """Per-level relative errors and fitted log-log rates over ``node_counts``.

    ``solve(n)`` returns the ascending bound-state energies computed with
    ``n`` interior nodes.  Levels are identified by :func:`classify`, so a
    spurious value never masquerades as a genuine one; a level not found at
    some ``n`` gets ``nan``.
    """
    ns = [int(n) for n in node_counts]
    if len(ns) < 2:
        raise ValueError("a convergence study needs at least two node counts")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("node counts must be strictly increasing")
    exact = exact_spectrum(params, levels + 1)[:levels]
    E = np.full((levels, len(ns)), np.nan)
    for k, n in enumerate(ns):
        energies = np.asarray(solve(n))[: levels + 4]
        rep = classify(energies, exact_spectrum(params, energies.size + 1), params, tol_rel)
        for e in rep.genuine():
            if e.level <= levels:
                E[e.level - 1, k] = e.energy
    errors = np.abs((E - exact[:, None]) / exact[:, None])
    rates = np.array([fit_loglog_rate(ns, row) for row in errors])
    return ConvergenceStudy(ns, list(range(1, levels + 1)), E, exact, errors, rates, dict(metadata or {}))
