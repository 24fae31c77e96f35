"""CSV / JSON / TSV emission.  Files are written atomically."""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .analysis import ConvergenceStudy, Label, SpectrumReport

SPECTRUM_HEADER = ["level", "usual_fem", "stabilized_fem", "exact", "label_usual", "label_stab", "rel_err_stab"]


def fmt(x) -> str:
    """Numbers with 16 significant digits (trailing zeros kept); empty for missing."""
    if x is None or (isinstance(x, float) and np.isnan(x)):
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), "#.16g")


def atomic_write(path: str | Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
    return path


def csv_text(header: Sequence[str], rows: Iterable[Sequence], delimiter: str = ",") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, float) and not np.isfinite(obj):
        return None
    return obj


def json_text(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def spectrum_rows(reports: Mapping[str, SpectrumReport]) -> list[list]:
    """Merge Galerkin and stabilized reports into one table.

    Genuine rows are keyed by level.  Spurious rows get an empty level and are
    placed among the genuine rows by energy; a coincidence row shows the
    mirrored level it reproduces in the ``exact`` column.
    """
    genuine: dict[int, dict] = {}
    keyed: list[tuple[float, list]] = []
    for col, method in ((0, "galerkin"), (1, "supg")):
        rep = reports.get(method)
        if rep is None:
            continue
        for e in rep.entries:
            if e.label is Label.GENUINE:
                genuine.setdefault(e.level, {"exact": e.exact})[col] = e
                continue
            values, labels = [None, None], ["", ""]
            values[col], labels[col] = e.energy, e.label.value
            keyed.append((e.energy, ["", *values, e.exact, *labels, None]))
    for level, row in genuine.items():
        u, s = row.get(0), row.get(1)
        keyed.append((row["exact"], [
            level,
            u and u.energy,
            s and s.energy,
            row["exact"],
            u.label.value if u else "",
            s.label.value if s else "",
            s and s.rel_error,
        ]))
    keyed.sort(key=lambda kv: kv[0])
    return [r for _, r in keyed]


def spectrum_csv(reports: Mapping[str, SpectrumReport]) -> str:
    return csv_text(SPECTRUM_HEADER, spectrum_rows(reports))


def convergence_csv(study: ConvergenceStudy) -> str:
    header = ["level"] + [f"n={n}" for n in study.node_counts] + ["exact", "rate", "rate_confidence"]
    conf = "low" if study.low_confidence else "ok"
    rows = []
    for i, level in enumerate(study.levels):
        rows.append([level, *study.energies[i], study.exact[i], study.rates[i], conf])
    return csv_text(header, rows)


def convergence_tsv(study: ConvergenceStudy) -> str:
    rows = []
    for k, n in enumerate(study.node_counts):
        for i, level in enumerate(study.levels):
            rows.append([n, level, study.errors[i, k]])
    return csv_text(["n", "level", "rel_error"], rows, delimiter="\t")


def extended_csv(reports: Mapping[int, SpectrumReport], slot) -> str:
    """Staggered multi-kappa table; ``slot(kappa, index)`` places each state on a row."""
    kappas = list(reports)
    cells: dict[int, dict[int, str]] = {}
    for k, rep in reports.items():
        for idx, e in enumerate(rep.entries):
            mark = "" if e.label is Label.GENUINE else "*"
            cells.setdefault(slot(k, idx), {})[k] = fmt(e.energy) + mark
    header = ["level"] + [f"kappa={k}" for k in kappas]
    rows = [[s] + [cells[s].get(k, "") for k in kappas] for s in sorted(cells)]
    return csv_text(header, rows)
