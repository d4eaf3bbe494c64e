"""JSON records for solutions, censuses, traces and Jacobian sweeps; CSV figure data.

Floats are written with Python's shortest round-trip repr, so parsing a
written document gives back bit-identical values. Root arrays are stored in
canonical order, and nothing time- or host-dependent is written, so reruns
produce identical bytes.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import IO, Iterable

import numpy as np
from scipy.optimize import linear_sum_assignment

from .blz_core import BlzConfig, MonsterSolution, phi_map
from .partitions import Partition
from .polynomials import canonical_order

SCHEMA_VERSION = 1


class FormatError(ValueError):
    pass


@dataclass(frozen=True)
class SolutionRecord:
    alpha: float
    big_l: complex
    partition: tuple[int, ...]
    roots: tuple[complex, ...]
    blz_residual: float
    monodromy_residual: float
    classification: tuple[int, ...] | None = None
    classification_score: float | None = None
    seed_kind: str = ""
    options_hash: str = ""
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(complex(r) for r in canonical_order(self.roots)))
        object.__setattr__(self, "big_l", complex(self.big_l))
        object.__setattr__(self, "partition", tuple(self.partition))
        if self.classification is not None:
            object.__setattr__(self, "classification", tuple(self.classification))
        if self.classification_score is not None and not math.isfinite(self.classification_score):
            object.__setattr__(self, "classification_score", None)


def options_hash(opts) -> str:
    """Short stable digest of a dataclass of solver options."""
    if opts is None:
        return ""
    text = json.dumps(asdict(opts), sort_keys=True)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def record_from_solution(sol: MonsterSolution, partition: Partition, seed_kind: str = "",
                         classification: Partition | None = None, score: float | None = None,
                         opts=None) -> SolutionRecord:
    return SolutionRecord(
        alpha=sol.config.alpha,
        big_l=sol.config.big_l,
        partition=partition.parts,
        roots=sol.z_roots,
        blz_residual=sol.blz_residual_inf,
        monodromy_residual=sol.monodromy_residual_inf,
        classification=classification.parts if classification is not None else None,
        classification_score=score,
        seed_kind=seed_kind,
        options_hash=options_hash(opts),
    )


def records_from_census(report, opts=None) -> list[SolutionRecord]:
    out = []
    for e in report.entries:
        if e.solution is None:
            continue
        out.append(record_from_solution(e.solution, e.partition, e.seed_kind,
                                        e.classified_as, e.classification_score, opts))
    return out


# ----------------------------------------------------------------- encoding


def _num(x: float):
    x = float(x)
    return x if math.isfinite(x) else None


def _cplx(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _record_to_json(r: SolutionRecord) -> dict:
    return {
        "schema_version": r.schema_version,
        "alpha": r.alpha,
        "L": _cplx(r.big_l),
        "partition": list(r.partition),
        "roots": [_cplx(z) for z in r.roots],
        "residuals": {"blz": _num(r.blz_residual), "monodromy": _num(r.monodromy_residual)},
        "classification": list(r.classification) if r.classification is not None else None,
        "classification_score": _num(r.classification_score) if r.classification_score is not None else None,
        "provenance": {"seed_kind": r.seed_kind, "options_hash": r.options_hash},
    }


def _expect(obj: dict, key: str, where: str):
    if key not in obj:
        raise FormatError(f"{where}: missing field '{key}'")
    return obj[key]


def _parse_real(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise FormatError(f"{where}: expected a number, got {v!r}")
    return float(v)


def _parse_complex(v, where: str) -> complex:
    if not isinstance(v, list) or len(v) != 2:
        raise FormatError(f"{where}: expected [re, im], got {v!r}")
    return complex(_parse_real(v[0], where), _parse_real(v[1], where))


def _optional_real(v, where: str) -> float:
    return math.inf if v is None else _parse_real(v, where)


def _record_from_json(obj, where: str) -> SolutionRecord:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    version = _expect(obj, "schema_version", where)
    if version != SCHEMA_VERSION:
        raise FormatError(f"{where}: unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
    roots = _expect(obj, "roots", where)
    if not isinstance(roots, list):
        raise FormatError(f"{where}.roots: expected a list")
    res = _expect(obj, "residuals", where)
    prov = _expect(obj, "provenance", where)
    cls = obj.get("classification")
    score = obj.get("classification_score")
    parts = _expect(obj, "partition", where)
    if not isinstance(parts, list) or not all(isinstance(p, int) and not isinstance(p, bool) for p in parts):
        raise FormatError(f"{where}.partition: expected a list of integers")
    return SolutionRecord(
        alpha=_parse_real(_expect(obj, "alpha", where), f"{where}.alpha"),
        big_l=_parse_complex(_expect(obj, "L", where), f"{where}.L"),
        partition=tuple(parts),
        roots=tuple(_parse_complex(z, f"{where}.roots[{i}]") for i, z in enumerate(roots)),
        blz_residual=_optional_real(_expect(res, "blz", f"{where}.residuals"), f"{where}.residuals.blz"),
        monodromy_residual=_optional_real(_expect(res, "monodromy", f"{where}.residuals"),
                                          f"{where}.residuals.monodromy"),
        classification=tuple(cls) if cls is not None else None,
        classification_score=_optional_real(score, f"{where}.classification_score") if score is not None else None,
        seed_kind=_expect(prov, "seed_kind", f"{where}.provenance"),
        options_hash=_expect(prov, "options_hash", f"{where}.provenance"),
    )


def dumps_solutions(records: Iterable[SolutionRecord]) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "kind": "solutions",
           "records": [_record_to_json(r) for r in records]}
    return json.dumps(doc, indent=1, sort_keys=True, allow_nan=False) + "\n"


def loads_solutions(text: str) -> list[SolutionRecord]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise FormatError("document: expected an object")
    version = _expect(doc, "schema_version", "document")
    if version != SCHEMA_VERSION:
        raise FormatError(f"document: unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
    if doc.get("kind") != "solutions":
        raise FormatError(f"document: expected kind 'solutions', got {doc.get('kind')!r}")
    recs = _expect(doc, "records", "document")
    if not isinstance(recs, list):
        raise FormatError("document.records: expected a list")
    return [_record_from_json(r, f"records[{i}]") for i, r in enumerate(recs)]


def _open_target(destination, mode: str):
    if isinstance(destination, (str, Path)):
        return open(destination, mode, encoding="utf-8", newline=""), True
    return destination, False


def write_solutions(records: Iterable[SolutionRecord], destination) -> None:
    fh, close = _open_target(destination, "w")
    try:
        fh.write(dumps_solutions(records))
    finally:
        if close:
            fh.close()


def read_solutions(source) -> list[SolutionRecord]:
    fh, close = _open_target(source, "r")
    try:
        return loads_solutions(fh.read())
    finally:
        if close:
            fh.close()


# ------------------------------------------------------- other documents


def dumps_document(kind: str, payload: dict) -> str:
    """Generic versioned JSON document (traces, census summaries, sweeps)."""
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind, **payload}
    return json.dumps(doc, indent=1, sort_keys=True, allow_nan=False, default=_default) + "\n"


def _default(obj):
    if isinstance(obj, complex):
        return _cplx(obj)
    if isinstance(obj, np.ndarray):
        return [_default(x) if isinstance(x, complex) else x for x in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.complexfloating):
        return _cplx(complex(obj))
    if isinstance(obj, Partition):
        return list(obj.parts)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def trace_payload(trace) -> dict:
    return {
        "path": trace.path,
        "samples": [{"L": _cplx(l), "roots": [_cplx(z) for z in roots], "residual": _num(res)}
                    for l, roots, res in trace.samples],
    }


def census_payload(report) -> dict:
    return {
        "alpha": report.config.alpha,
        "L": _cplx(report.config.big_l),
        "expected": report.expected,
        "distinct": report.distinct_count,
        "min_pairwise_distance": _num(report.min_pairwise_distance),
        "failures": list(report.failures),
        "entries": [
            {"partition": list(e.partition.parts),
             "classified_as": list(e.classified_as.parts) if e.classified_as is not None else None,
             "score": _num(e.classification_score),
             "blz_residual": _num(e.solution.blz_residual_inf) if e.solution else None}
            for e in report.entries
        ],
    }


def jacobian_payload(reports) -> dict:
    return {
        "reports": [
            {"partition": list(r.partition.parts),
             "eigenvalues": [_cplx(complex(x)) for x in np.sort_complex(r.eigenvalues)],
             "predicted": [float(x) for x in r.predicted],
             "max_relative_deviation": _num(r.max_relative_deviation)}
            for r in reports
        ]
    }


# ------------------------------------------------------------ figure data

FIGURE_COLUMNS = ("partition", "k", "re_z_seed", "im_z_seed", "re_z_solved", "im_z_solved",
                  "abs_z_minus_centre", "re_centre", "im_centre")


def emit_figure_data(census, cfg: BlzConfig, destination: IO[str] | None = None) -> str:
    """One CSV row per (partition, root), seed and solution paired by nearest match."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FIGURE_COLUMNS)
    centre = cfg.centre
    for e in census.entries:
        if e.solution is None:
            continue
        solved = np.array(e.solution.z_roots)
        seed = phi_map(cfg, np.array(e.seed_t))
        cost = np.abs(seed[:, None] - solved[None, :])
        rows, cols = linear_sum_assignment(cost)
        pairs = sorted(zip(rows, cols), key=lambda rc: rc[1])
        for k, (i, j) in enumerate(pairs, start=1):
            zs, zf = complex(seed[i]), complex(solved[j])
            values = (zs.real, zs.imag, zf.real, zf.imag, abs(zf - centre), centre.real, centre.imag)
            writer.writerow([str(e.partition), k, *(repr(float(v)) for v in values)])
    text = buf.getvalue()
    if destination is not None:
        destination.write(text)
    return text
