"""Domain types shared by the engine, the expansion and the simulation harness.

An :class:`EvaluationMatrix` is an immutable ``n x m`` grid of evaluations in
``[0, 1]`` whose rows are labelled by :class:`AlternativeId`.  A
:class:`Ranking` is a total preorder: an ordered tuple of tie groups, best
group first.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateColumn,
    DimensionMismatch,
    EmptyMatrix,
    OutOfRange,
    ParseError,
    UnknownAlternative,
)


class Origin(str, enum.Enum):
    ORIGINAL = "original"
    VIRTUAL = "virtual"
    ADDED = "added"


@dataclass(frozen=True, order=True)
class AlternativeId:
    label: str
    origin: Origin = Origin.ORIGINAL

    def __str__(self) -> str:
        return self.label


def _freeze(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1) if arr.size else arr.reshape(0, 0)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class EvaluationMatrix:
    """Alternatives x criteria grid of evaluations.

    Construction only checks shapes and label uniqueness; use
    :func:`validate_matrix` to enforce the value-level invariants.
    """

    rows: tuple[AlternativeId, ...]
    criteria: tuple[str, ...]
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "criteria", tuple(self.criteria))
        object.__setattr__(self, "values", _freeze(self.values))
        if self.values.size and self.values.shape != (len(self.rows), len(self.criteria)):
            raise DimensionMismatch(
                f"values shape {self.values.shape} does not match "
                f"{len(self.rows)} rows x {len(self.criteria)} criteria"
            )
        labels = [r.label for r in self.rows]
        if len(set(labels)) != len(labels):
            raise ValueError("alternative labels must be unique")

    @classmethod
    def from_array(
        cls,
        values,
        labels: Sequence[str] | None = None,
        criteria: Sequence[str] | None = None,
        origin: Origin = Origin.ORIGINAL,
    ) -> "EvaluationMatrix":
        arr = np.atleast_2d(np.asarray(values, dtype=float))
        n, m = arr.shape
        if labels is None:
            labels = [f"a{i}" for i in range(1, n + 1)]
        if criteria is None:
            criteria = [f"c{j}" for j in range(1, m + 1)]
        return cls(tuple(AlternativeId(lbl, origin) for lbl in labels), tuple(criteria), arr)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.criteria)

    @property
    def labels(self) -> list[str]:
        return [r.label for r in self.rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, EvaluationMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.criteria == other.criteria
            and self.values.shape == other.values.shape
            and bool(np.array_equal(self.values, other.values))
        )

    __hash__ = None

    def with_values(self, values) -> "EvaluationMatrix":
        return EvaluationMatrix(self.rows, self.criteria, values)

    def append(
        self,
        values,
        labels: Sequence[str] | None = None,
        origin: Origin = Origin.ADDED,
    ) -> "EvaluationMatrix":
        """Return a new matrix with extra rows appended after the existing ones."""
        extra = np.atleast_2d(np.asarray(values, dtype=float))
        if extra.shape[1] != self.m:
            raise DimensionMismatch(f"appended rows have {extra.shape[1]} columns, expected {self.m}")
        if labels is None:
            prefix = {Origin.ADDED: "added", Origin.VIRTUAL: "virtual", Origin.ORIGINAL: "a"}[origin]
            start = sum(1 for r in self.rows if r.origin is origin) + 1
            labels = [f"{prefix}_{start + i}" for i in range(extra.shape[0])]
        new_rows = self.rows + tuple(AlternativeId(lbl, origin) for lbl in labels)
        return EvaluationMatrix(new_rows, self.criteria, np.vstack([self.values, extra]))

    def select(self, keep) -> "EvaluationMatrix":
        """Rows for which ``keep(alternative_id)`` is true, order preserved."""
        idx = [i for i, r in enumerate(self.rows) if keep(r)]
        return EvaluationMatrix(
            tuple(self.rows[i] for i in idx),
            self.criteria,
            self.values[idx, :] if idx else np.empty((0, self.m)),
        )


def validate_matrix(matrix: EvaluationMatrix) -> EvaluationMatrix:
    """Return ``matrix`` unchanged if every value-level invariant holds."""
    values = matrix.values
    if matrix.n == 0 or matrix.m == 0 or values.size == 0:
        raise EmptyMatrix()
    bad = ~((values >= 0.0) & (values <= 1.0))
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        raise OutOfRange(i + 1, j + 1, float(values[i, j]))
    for j in range(matrix.m):
        if values[:, j].max() == values[:, j].min():
            raise DegenerateColumn(j + 1)
    return matrix


class Relation(str, enum.Enum):
    A_PREFERRED = "a_preferred"
    B_PREFERRED = "b_preferred"
    INDIFFERENT = "indifferent"


@dataclass(frozen=True)
class Ranking:
    """Ordered tie groups, best first."""

    groups: tuple[frozenset[AlternativeId], ...]

    def __post_init__(self):
        groups = tuple(frozenset(g) for g in self.groups)
        if any(not g for g in groups):
            raise ValueError("ranking contains an empty group")
        seen: set[AlternativeId] = set()
        for g in groups:
            if seen & g:
                raise ValueError("ranking groups overlap")
            seen |= g
        object.__setattr__(self, "groups", groups)

    @classmethod
    def from_sequence(cls, ordered: Iterable[AlternativeId | Iterable[AlternativeId]]) -> "Ranking":
        groups = []
        for item in ordered:
            groups.append(frozenset([item]) if isinstance(item, AlternativeId) else frozenset(item))
        return cls(tuple(groups))

    @property
    def alternatives(self) -> frozenset[AlternativeId]:
        return frozenset().union(*self.groups) if self.groups else frozenset()

    def position(self, alt: AlternativeId) -> int:
        for k, g in enumerate(self.groups):
            if alt in g:
                return k
        raise UnknownAlternative(f"{alt.label!r} is not in the ranking")

    def positions(self) -> dict[AlternativeId, int]:
        return {a: k for k, g in enumerate(self.groups) for a in g}

    def __len__(self) -> int:
        return sum(len(g) for g in self.groups)

    def __str__(self) -> str:
        return format_ranking(self)


def restrict_ranking(ranking: Ranking, keep: Iterable[AlternativeId]) -> Ranking:
    keep = frozenset(keep)
    unknown = keep - ranking.alternatives
    if unknown:
        raise UnknownAlternative(
            "not in ranking: " + ", ".join(sorted(a.label for a in unknown))
        )
    return Ranking(tuple(g & keep for g in ranking.groups if g & keep))


def pairwise_relation(ranking: Ranking, a: AlternativeId, b: AlternativeId) -> Relation:
    pa, pb = ranking.position(a), ranking.position(b)
    if pa < pb:
        return Relation.A_PREFERRED
    if pb < pa:
        return Relation.B_PREFERRED
    return Relation.INDIFFERENT


def format_ranking(ranking: Ranking) -> str:
    """Render as ``a8>a1>a4~a6``; members of a tie group are sorted by label."""
    return ">".join("~".join(sorted(a.label for a in g)) for g in ranking.groups)


def parse_ranking(text: str, origins: dict[str, Origin] | None = None) -> Ranking:
    """Inverse of :func:`format_ranking`.

    ``origins`` maps labels to origin tags; unlisted labels are ``original``.
    """
    origins = origins or {}
    text = text.strip()
    if not text:
        raise ParseError("empty ranking string")
    groups = []
    for chunk in text.split(">"):
        labels = [s.strip() for s in chunk.split("~")]
        if any(not s for s in labels):
            raise ParseError(f"malformed ranking string: {text!r}")
        groups.append(frozenset(AlternativeId(s, origins.get(s, Origin.ORIGINAL)) for s in labels))
    try:
        return Ranking(tuple(groups))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def read_matrix_csv(source) -> EvaluationMatrix:
    """Read ``alternative,c1,...,cm`` CSV from a path or a text stream.

    An optional trailing ``origin`` column (as written by :func:`write_matrix_csv`
    with origins) is honoured; otherwise every row is ``original``.
    """
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, newline="", encoding="utf-8") as fh:
            return read_matrix_csv(fh)
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty CSV input") from None
    header = [h.strip() for h in header]
    has_origin = bool(header) and header[-1] == "origin"
    criteria = header[1:-1] if has_origin else header[1:]
    if len(header) < 2 or not criteria:
        raise ParseError("header must be 'alternative,c1,...,cm'")
    rows, values = [], []
    for lineno, rec in enumerate(reader, start=2):
        if not rec or all(not c.strip() for c in rec):
            continue
        if len(rec) != len(header):
            raise ParseError(f"line {lineno}: expected {len(header)} fields, got {len(rec)}")
        origin = Origin.ORIGINAL
        if has_origin:
            try:
                origin = Origin(rec[-1].strip())
            except ValueError:
                raise ParseError(f"line {lineno}: unknown origin {rec[-1]!r}") from None
            rec = rec[:-1]
        try:
            values.append([float(x) for x in rec[1:]])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        rows.append(AlternativeId(rec[0].strip(), origin))
    if not rows:
        raise ParseError("CSV has a header but no data rows")
    try:
        return EvaluationMatrix(tuple(rows), tuple(criteria), np.array(values))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def write_matrix_csv(matrix: EvaluationMatrix, out=None, *, with_origin: bool = False) -> str | None:
    """Write CSV to ``out`` (a text stream) or return it as a string."""
    buf = io.StringIO() if out is None else out
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["alternative", *matrix.criteria] + (["origin"] if with_origin else []))
    for row_id, row in zip(matrix.rows, matrix.values):
        rec = [row_id.label, *(repr(float(x)) for x in row)]
        if with_origin:
            rec.append(row_id.origin.value)
        writer.writerow(rec)
    return buf.getvalue() if out is None else None
