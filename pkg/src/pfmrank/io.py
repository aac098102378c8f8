"""Problem files, report serialization, and plot-ready data.

Two on-disk problem formats are supported and documented in the README:

* CSV -- header row of criterion labels (first cell is ignored), one row
  per alternative with its label in the first column, and a final row
  labeled ``weights``.
* JSON -- an object with keys ``criteria``, ``alternatives``, ``values``
  (row-major), ``weights`` and an optional ``metadata`` object.

Serialization is deterministic: identical inputs produce byte-identical
output.  JSON and CSV carry full precision (shortest round-trip float
text); TEXT tables round to the display precision used throughout the
documentation (4 decimals for normalized scores, 5 for aggregated
scores, integers for the [0, 100] rescaling).
"""

from __future__ import annotations

import csv
import io as _io
import json
from dataclasses import dataclass

import numpy as np

from .aggregation import AggregationResult, Method, Ranking, weighted_centroid
from .core import PreferenceMatrix, WeightVector, z_normalize
from .diagnostics import (
    ComparabilityReport,
    ComparisonReport,
    EquilibriumReport,
    InvarianceReport,
)
from .errors import DimensionMismatch, ParseError, ValidationError

__all__ = [
    "ProblemDocument",
    "PlotPoint",
    "PlotAlternative",
    "PlotData",
    "parse_problem",
    "write_problem",
    "load_problem",
    "write_result",
    "to_jsonable",
    "emit_plot_data",
]

#: Display names used in TEXT tables.
METHOD_LABELS = {
    Method.PSTAR: "P*",
    Method.WAM: "WAM",
    Method.WGM: "WGM",
    Method.KCENTROID: "Pi*",
    Method.DEUCLID: "D_E",
    Method.DMANHATTAN: "D_M",
}

WEIGHTS_LABEL = "weights"


@dataclass(frozen=True, eq=False)
class ProblemDocument:
    """A decision problem: matrix, weights, and optional metadata."""

    matrix: PreferenceMatrix
    weights: WeightVector
    metadata: dict

    def __post_init__(self):
        if len(self.weights) != len(self.matrix.criteria):
            raise DimensionMismatch(
                f"{len(self.weights)} weights for {len(self.matrix.criteria)} criteria"
            )
        if not isinstance(self.metadata, dict):
            raise ValidationError("metadata must be a mapping")

    def __eq__(self, other):
        if not isinstance(other, ProblemDocument):
            return NotImplemented
        return (
            self.matrix == other.matrix
            and self.weights == other.weights
            and self.metadata == other.metadata
        )


def _decode(data) -> str:
    if isinstance(data, str):
        return data
    try:
        return bytes(data).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"input is not valid UTF-8: {exc}") from None


def _parse_number(cell: str, line: int, field: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ParseError(f"line {line}: {field}: not a number: {cell!r}") from None
    return value


def _parse_csv(text: str) -> tuple[list, list, list, list, dict]:
    rows = [r for r in csv.reader(text.splitlines()) if any(cell.strip() for cell in r)]
    if len(rows) < 4:
        raise ParseError(
            "CSV needs a header row, at least two alternative rows, and a weights row"
        )
    header = [cell.strip() for cell in rows[0]]
    if len(header) < 2:
        raise ParseError("line 1: header must name at least one criterion")
    criteria = header[1:]
    width = len(header)
    if rows[-1][0].strip() != WEIGHTS_LABEL:
        raise ParseError(f"last row must be labeled {WEIGHTS_LABEL!r}")
    alternatives, values = [], []
    for n, row in enumerate(rows[1:-1], start=2):
        if len(row) != width:
            raise ParseError(f"line {n}: expected {width} cells, got {len(row)}")
        alternatives.append(row[0].strip())
        values.append(
            [_parse_number(c.strip(), n, criteria[j]) for j, c in enumerate(row[1:])]
        )
    wrow = rows[-1]
    if len(wrow) != width:
        raise ParseError(f"weights row: expected {width} cells, got {len(wrow)}")
    weights = [
        _parse_number(c.strip(), len(rows), criteria[j]) for j, c in enumerate(wrow[1:])
    ]
    return criteria, alternatives, values, weights, {}


def _parse_json(text: str) -> tuple[list, list, list, list, dict]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    for key in ("criteria", "alternatives", "values", "weights"):
        if key not in obj:
            raise ParseError(f"missing required key {key!r}")
    criteria = obj["criteria"]
    alternatives = obj["alternatives"]
    values = obj["values"]
    weights = obj["weights"]
    if not (isinstance(criteria, list) and all(isinstance(c, str) for c in criteria)):
        raise ParseError("'criteria' must be a list of strings")
    if not (isinstance(alternatives, list) and all(isinstance(a, str) for a in alternatives)):
        raise ParseError("'alternatives' must be a list of strings")
    if not isinstance(values, list) or not all(isinstance(r, list) for r in values):
        raise ParseError("'values' must be a list of rows")

    def number(x, where):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise ParseError(f"{where}: not a number: {x!r}")
        return float(x)

    values = [
        [number(x, f"values[{i}][{j}]") for j, x in enumerate(row)]
        for i, row in enumerate(values)
    ]
    if not isinstance(weights, list):
        raise ParseError("'weights' must be a list of numbers")
    weights = [number(x, f"weights[{j}]") for j, x in enumerate(weights)]
    metadata = obj.get("metadata", {})
    if not isinstance(metadata, dict):
        raise ParseError("'metadata' must be an object")
    return criteria, alternatives, values, weights, metadata


def parse_problem(data, format: str = "csv", *, normalize_weights: bool = False) -> ProblemDocument:
    """Parse problem bytes (or text) into a validated :class:`ProblemDocument`.

    Parameters
    ----------
    data : bytes or str
        UTF-8 input; LF and CRLF line endings are both accepted.
    format : {"csv", "json"}
    normalize_weights : bool
        When True, weights are divided by their sum before validation;
        otherwise weights must already sum to 1.

    Raises
    ------
    ParseError
        Malformed input (with line/field context where available).
    ValidationError
        Structurally sound input whose values break an invariant.
    DimensionMismatch
        Row lengths or weight counts that do not line up.
    """
    text = _decode(data)
    if format == "csv":
        criteria, alternatives, values, weights, metadata = _parse_csv(text)
    elif format == "json":
        criteria, alternatives, values, weights, metadata = _parse_json(text)
    else:
        raise ValueError(f"unknown problem format {format!r}")
    for i, row in enumerate(values):
        if len(row) != len(criteria):
            raise DimensionMismatch(
                f"row {i + 1} has {len(row)} values for {len(criteria)} criteria"
            )
    if len(weights) != len(criteria):
        raise DimensionMismatch(f"{len(weights)} weights for {len(criteria)} criteria")
    if normalize_weights:
        total = sum(weights)
        if total <= 0:
            raise ValidationError("cannot normalize weights with non-positive sum")
        weights = [wj / total for wj in weights]
    matrix = PreferenceMatrix(tuple(alternatives), tuple(criteria), values)
    return ProblemDocument(matrix, WeightVector(weights), dict(metadata))


def write_problem(doc: ProblemDocument, format: str = "csv") -> bytes:
    """Serialize a problem document; the JSON path round-trips exactly."""
    if format == "csv":
        buf = _io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["alternative", *doc.matrix.criteria])
        for label, row in zip(doc.matrix.alternatives, doc.matrix.values):
            writer.writerow([label, *(repr(float(v)) for v in row)])
        writer.writerow([WEIGHTS_LABEL, *(repr(float(v)) for v in doc.weights.weights)])
        return buf.getvalue().encode("utf-8")
    if format == "json":
        obj = {
            "criteria": list(doc.matrix.criteria),
            "alternatives": list(doc.matrix.alternatives),
            "values": [[float(v) for v in row] for row in doc.matrix.values],
            "weights": [float(v) for v in doc.weights.weights],
            "metadata": doc.metadata,
        }
        return _json_bytes(obj)
    raise ValueError(f"unknown problem format {format!r}")


def load_problem(path, format: str | None = None, *, normalize_weights: bool = False) -> ProblemDocument:
    """Read a problem file, inferring the format from the suffix by default."""
    if format is None:
        format = "json" if str(path).endswith(".json") else "csv"
    with open(path, "rb") as fh:
        return parse_problem(fh.read(), format, normalize_weights=normalize_weights)


# -- report serialization ---------------------------------------------------


def _json_bytes(obj) -> bytes:
    return (json.dumps(obj, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _full(x) -> str:
    """Shortest round-trip float text."""
    return repr(float(x))


def _ranking_jsonable(ranking: Ranking, labels) -> dict:
    return {
        "tie_groups": [[labels[i] for i in group] for group in ranking.tie_groups],
        "dense_ranks": list(ranking.dense_ranks),
        "order": ranking.order_notation(labels),
    }


def _matrix_jsonable(matrix: PreferenceMatrix) -> dict:
    return {
        "alternatives": list(matrix.alternatives),
        "criteria": list(matrix.criteria),
        "values": [[float(v) for v in row] for row in matrix.values],
    }


def to_jsonable(report) -> dict:
    """Convert any report type into a JSON-ready dict (full precision)."""
    if isinstance(report, AggregationResult):
        return {
            "method": report.score_vector.method.value,
            "direction": report.score_vector.direction.value,
            "alternatives": list(report.alternatives),
            "scores": [float(v) for v in report.score_vector.scores],
            "scaled": None if report.scaled is None else [float(v) for v in report.scaled],
            "ranking": _ranking_jsonable(report.ranking, report.alternatives),
            "warnings": list(report.warnings),
        }
    if isinstance(report, ComparisonReport):
        return {
            "alternatives": list(report.alternatives),
            "methods": [m.value for m in report.methods],
            "rank_table": [list(row) for row in report.rank_table],
            "rankings": {
                m.value: _ranking_jsonable(r, report.alternatives)
                for m, r in zip(report.methods, report.rankings)
            },
            "agreement": [
                {"pair": [a.value, b.value], "identical": same}
                for a, b, same in report.agreement
            ],
            "errors": [{"method": m.value, "message": msg} for m, msg in report.errors],
        }
    if isinstance(report, InvarianceReport):
        ce = report.first_counterexample
        return {
            "method": report.method.value,
            "trials": report.trials,
            "violations": report.violations,
            "skipped": report.skipped,
            "seed": report.seed,
            "first_counterexample": None
            if ce is None
            else {
                "trial": ce.trial,
                "maps": [
                    {"criterion": c, "slope": m.slope, "intercept": m.intercept}
                    for c, m in zip(ce.matrix.criteria, ce.maps)
                ],
                "matrix": _matrix_jsonable(ce.matrix),
                "ranking_before": _ranking_jsonable(ce.ranking_before, ce.matrix.alternatives),
                "ranking_after": _ranking_jsonable(ce.ranking_after, ce.matrix.alternatives),
            },
        }
    if isinstance(report, ComparabilityReport):
        return {
            "comparable": report.comparable,
            "per_criterion": [
                {"criterion": c, "min": lo, "max": hi, "range": span}
                for c, (lo, hi, span) in zip(report.criteria, report.per_criterion)
            ],
            "violating_pairs": [
                [report.criteria[j], report.criteria[k]] for j, k in report.violating_pairs
            ],
        }
    if isinstance(report, EquilibriumReport):
        return {
            "horizontal_residuals": list(report.horizontal),
            "vertical_residuals": list(report.vertical),
            "max_horizontal": report.max_horizontal,
            "max_vertical": report.max_vertical,
        }
    if isinstance(report, PlotData):
        return {
            "alternatives": [
                {
                    "label": alt.label,
                    "points": [
                        {"criterion": p.criterion, "z": p.z, "weight": p.weight}
                        for p in alt.points
                    ],
                    "centroid": alt.centroid,
                }
                for alt in report.alternatives
            ],
            "z_range": list(report.z_range),
        }
    raise TypeError(f"cannot serialize {type(report).__name__}")


def _text_table(rows, align) -> list[str]:
    widths = [max(len(row[c]) for row in rows) for c in range(len(rows[0]))]
    out = []
    for row in rows:
        cells = [
            cell.ljust(w) if a == "l" else cell.rjust(w)
            for cell, w, a in zip(row, widths, align)
        ]
        out.append("  ".join(cells).rstrip())
    return out


def _aggregation_text(result: AggregationResult) -> list[str]:
    method = result.score_vector.method
    lines = [f"Aggregated preference ranking (method: {method.value})"]
    header = ["Alternative", METHOD_LABELS[method]]
    align = ["l", "r"]
    if result.scaled is not None:
        header.append("scaled")
        align.append("r")
    header.append("Rank")
    align.append("r")
    rows = [header]
    for i, label in enumerate(result.alternatives):
        row = [label, f"{result.score_vector.scores[i]:.5f}"]
        if result.scaled is not None:
            row.append(f"{result.scaled[i]:.0f}")
        row.append(str(result.ranking.dense_ranks[i]))
        rows.append(row)
    lines.extend(_text_table(rows, align))
    lines.append(f"order: {result.ranking.order_notation(result.alternatives)}")
    lines.extend(f"warning: {w}" for w in result.warnings)
    return lines


def _comparison_text(report: ComparisonReport) -> list[str]:
    lines = ["Method comparison (dense ranks, 1 = best)"]
    if report.methods:
        rows = [["Alternative", *(m.value for m in report.methods)]]
        for i, label in enumerate(report.alternatives):
            rows.append([label, *(str(r) for r in report.rank_table[i])])
        lines.extend(_text_table(rows, ["l"] + ["r"] * len(report.methods)))
        for m, ranking in zip(report.methods, report.rankings):
            lines.append(f"{m.value}: {ranking.order_notation(report.alternatives)}")
    for a, b, same in report.agreement:
        verdict = "agree" if same else "differ"
        lines.append(f"{a.value} vs {b.value}: {verdict}")
    lines.extend(f"error: {m.value}: {msg}" for m, msg in report.errors)
    return lines


def _invariance_text(report: InvarianceReport) -> list[str]:
    lines = [
        f"Affine-invariance fuzzing (method: {report.method.value})",
        f"trials      {report.trials}",
        f"violations  {report.violations}",
        f"skipped     {report.skipped}",
        f"seed        {report.seed}",
    ]
    ce = report.first_counterexample
    if ce is not None:
        lines.append(f"first counterexample (trial {ce.trial}):")
        for c, m in zip(ce.matrix.criteria, ce.maps):
            lines.append(f"  {c}: p -> {_full(m.slope)}*p + {_full(m.intercept)}")
        labels = ce.matrix.alternatives
        lines.append(f"  ranking before: {ce.ranking_before.order_notation(labels)}")
        lines.append(f"  ranking after:  {ce.ranking_after.order_notation(labels)}")
    return lines


def _comparability_text(report: ComparabilityReport) -> list[str]:
    lines = ["Scale comparability"]
    rows = [["Criterion", "min", "max", "range"]]
    for c, (lo, hi, span) in zip(report.criteria, report.per_criterion):
        rows.append([c, f"{lo:g}", f"{hi:g}", f"{span:g}"])
    lines.extend(_text_table(rows, ["l", "r", "r", "r"]))
    if report.comparable:
        lines.append("comparable: yes (all criteria share their extremes)")
    else:
        pairs = ", ".join(
            f"({report.criteria[j]}, {report.criteria[k]})" for j, k in report.violating_pairs
        )
        lines.append("comparable: no")
        lines.append(f"violating pairs: {pairs}")
    return lines


def _equilibrium_text(report: EquilibriumReport) -> list[str]:
    return [
        "Barycentre equilibrium",
        f"max |horizontal residual|  {report.max_horizontal:.3e}",
        f"max |vertical residual|    {report.max_vertical:.3e}",
    ]


def _csv_rows(report) -> list[list[str]]:
    if isinstance(report, AggregationResult):
        rows = [["alternative", "score", "scaled", "rank"]]
        for i, label in enumerate(report.alternatives):
            rows.append(
                [
                    label,
                    _full(report.score_vector.scores[i]),
                    "" if report.scaled is None else _full(report.scaled[i]),
                    str(report.ranking.dense_ranks[i]),
                ]
            )
        return rows
    if isinstance(report, ComparisonReport):
        rows = [["alternative", *(m.value for m in report.methods)]]
        for i, label in enumerate(report.alternatives):
            rows.append([label, *(str(r) for r in report.rank_table[i])])
        return rows
    if isinstance(report, InvarianceReport):
        return [
            ["method", "trials", "violations", "skipped", "seed"],
            [
                report.method.value,
                str(report.trials),
                str(report.violations),
                str(report.skipped),
                str(report.seed),
            ],
        ]
    if isinstance(report, ComparabilityReport):
        rows = [["criterion", "min", "max", "range"]]
        for c, (lo, hi, span) in zip(report.criteria, report.per_criterion):
            rows.append([c, _full(lo), _full(hi), _full(span)])
        rows.append(["comparable", "true" if report.comparable else "false", "", ""])
        return rows
    if isinstance(report, EquilibriumReport):
        rows = [["kind", "index", "residual"]]
        for i, r in enumerate(report.horizontal):
            rows.append(["horizontal", str(i), _full(r)])
        for j, r in enumerate(report.vertical):
            rows.append(["vertical", str(j), _full(r)])
        return rows
    raise TypeError(f"no CSV form for {type(report).__name__}")


def write_result(report, format: str = "text") -> bytes:
    """Serialize a report deterministically.

    ``format`` is one of ``"text"``, ``"csv"`` or ``"json"``.  TEXT uses
    the documentation's display precision; CSV and JSON carry full float
    precision.  :class:`PlotData` supports JSON only.
    """
    if format == "json":
        return _json_bytes(to_jsonable(report))
    if isinstance(report, PlotData):
        raise ValueError("plot data is JSON-only")
    if format == "csv":
        buf = _io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(_csv_rows(report))
        return buf.getvalue().encode("utf-8")
    if format == "text":
        if isinstance(report, AggregationResult):
            lines = _aggregation_text(report)
        elif isinstance(report, ComparisonReport):
            lines = _comparison_text(report)
        elif isinstance(report, InvarianceReport):
            lines = _invariance_text(report)
        elif isinstance(report, ComparabilityReport):
            lines = _comparability_text(report)
        elif isinstance(report, EquilibriumReport):
            lines = _equilibrium_text(report)
        else:
            raise TypeError(f"no TEXT form for {type(report).__name__}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown result format {format!r}")


# -- plot data ---------------------------------------------------------------


@dataclass(frozen=True)
class PlotPoint:
    criterion: str
    z: float
    weight: float


@dataclass(frozen=True)
class PlotAlternative:
    label: str
    points: tuple[PlotPoint, ...]
    centroid: float


@dataclass(frozen=True)
class PlotData:
    """Per-alternative normalized points and centroid, ready for plotting.

    Each alternative carries its J normalized scores with their weights
    plus the aggregated centroid; ``z_range`` spans all normalized values
    for axis setup.  The weighted sum of each alternative's points equals
    its centroid within 1e-9.
    """

    alternatives: tuple[PlotAlternative, ...]
    z_range: tuple[float, float]


def emit_plot_data(matrix: PreferenceMatrix, w: WeightVector) -> PlotData:
    """Normalized scores, weights, and centroids for a beam-style figure."""
    z = z_normalize(matrix)
    scores = weighted_centroid(z, w)
    alts = tuple(
        PlotAlternative(
            label=label,
            points=tuple(
                PlotPoint(criterion, float(z.values[i, j]), float(w.weights[j]))
                for j, criterion in enumerate(matrix.criteria)
            ),
            centroid=float(scores.scores[i]),
        )
        for i, label in enumerate(matrix.alternatives)
    )
    return PlotData(alts, (float(z.values.min()), float(z.values.max())))
