"""Rank reversal between two rankings over overlapping alternative sets.

Every unordered pair of common alternatives is classified by its relation
before and after.  The four printed conditions collapse into three kinds:

* ``flip``              strict one way before, strict the other way after
* ``strict_to_indiff``  strict before, tied after
* ``indiff_to_strict``  tied before, strict after
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations

from .core import AlternativeId, Origin, Ranking, restrict_ranking
from .errors import EmptyIntersection


class ReversalKind(str, enum.Enum):
    FLIP = "flip"
    STRICT_TO_INDIFF = "strict_to_indiff"
    INDIFF_TO_STRICT = "indiff_to_strict"


@dataclass(frozen=True)
class ReversedPair:
    a: AlternativeId
    b: AlternativeId
    kind: ReversalKind


@dataclass(frozen=True)
class ReversalReport:
    reversed_pairs: tuple[ReversedPair, ...] = ()

    @property
    def occurred(self) -> bool:
        return bool(self.reversed_pairs)

    def to_dict(self) -> dict:
        return {
            "occurred": self.occurred,
            "pairs": [{"a": p.a.label, "b": p.b.label, "kind": p.kind.value} for p in self.reversed_pairs],
        }


def classify(before_sign: int, after_sign: int) -> ReversalKind | None:
    """Signs are +1 (first preferred), -1 (second preferred), 0 (tied)."""
    if before_sign == after_sign:
        return None
    if before_sign == 0:
        return ReversalKind.INDIFF_TO_STRICT
    if after_sign == 0:
        return ReversalKind.STRICT_TO_INDIFF
    return ReversalKind.FLIP


def _sign(pos: dict, a, b) -> int:
    return (pos[a] < pos[b]) - (pos[a] > pos[b])


def detect_reversal(before: Ranking, after: Ranking) -> ReversalReport:
    common = sorted(before.alternatives & after.alternatives, key=lambda x: (x.label, x.origin.value))
    if len(common) < 2:
        raise EmptyIntersection(f"rankings share {len(common)} alternative(s); need at least 2")
    pb, pa = before.positions(), after.positions()
    pairs = []
    for a, b in combinations(common, 2):
        kind = classify(_sign(pb, a, b), _sign(pa, a, b))
        if kind is not None:
            pairs.append(ReversedPair(a, b, kind))
    return ReversalReport(tuple(pairs))


def count_reversed_pairs(report: ReversalReport) -> int:
    return len(report.reversed_pairs)


def consistency_check(original: Ranking, expanded: Ranking) -> ReversalReport:
    """Compare an original ranking with an expanded one restricted to the originals."""
    return detect_reversal(original, restrict_ranking(expanded, original.alternatives))


def originals_only(ranking: Ranking) -> Ranking:
    keep = [a for a in ranking.alternatives if a.origin is Origin.ORIGINAL]
    return restrict_ranking(ranking, keep)
