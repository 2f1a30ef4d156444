"""Entropy-weight TODIM.

Pipeline: max-normalise each criterion, weight criteria by one minus their
normalised entropy, take prospect-theory dominance degrees per criterion,
sum them into a total dominance matrix, score each alternative by its row
sum and rank by descending score.

The dominance function is kept exactly as the procedure states it: the gain
branch raises ``w * diff`` to the gain exponent, the loss branch raises only
``diff`` and multiplies by ``loss_aversion * w``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import AlternativeId, EvaluationMatrix, Ranking, validate_matrix
from .errors import DegenerateWeights, DimensionMismatch, TooFewAlternatives, ZeroColumnMax


class EntropyConvention(str, enum.Enum):
    """How the per-criterion entropy is read.

    ``literal``     sum(x ln x) / ln n on max-normalised values, sign as printed
                    (always <= 0, so every weight numerator is >= 1).
    ``signed``      -sum(x ln x) / ln n on max-normalised values.  Can exceed 1,
                    in which case weighting fails with DegenerateWeights.
    ``proportion``  textbook entropy of p = x / sum(x), scaled by 1 / ln n.
    """

    LITERAL = "literal"
    SIGNED = "signed"
    PROPORTION = "proportion"


DEFAULT_CONVENTION = EntropyConvention.PROPORTION


@dataclass(frozen=True)
class TodimParameters:
    gain_exponent: float = 0.88
    loss_aversion: float = 2.25
    entropy_convention: EntropyConvention = DEFAULT_CONVENTION
    tie_epsilon: float = 1e-9

    def __post_init__(self):
        object.__setattr__(self, "entropy_convention", EntropyConvention(self.entropy_convention))
        if not 0.0 < self.gain_exponent <= 1.0:
            raise ValueError(f"gain_exponent must be in (0, 1], got {self.gain_exponent}")
        if not self.loss_aversion > 0.0:
            raise ValueError(f"loss_aversion must be > 0, got {self.loss_aversion}")
        if not self.tie_epsilon >= 0.0:
            raise ValueError(f"tie_epsilon must be >= 0, got {self.tie_epsilon}")


@dataclass(frozen=True)
class TodimResult:
    weights: np.ndarray
    scores: np.ndarray
    ranking: Ranking


def _xlogx(x: np.ndarray) -> np.ndarray:
    # 0 * ln 0 := 0
    safe = np.where(x > 0, x, 1.0)
    return np.where(x > 0, x * np.log(safe), 0.0)


def normalize_values(values: np.ndarray) -> np.ndarray:
    col_max = values.max(axis=0)
    zero = np.flatnonzero(col_max == 0)
    if zero.size:
        raise ZeroColumnMax(int(zero[0]) + 1)
    return values / col_max


def normalize_columns(matrix: EvaluationMatrix) -> EvaluationMatrix:
    """Divide every column by its maximum."""
    return matrix.with_values(normalize_values(matrix.values))


def column_entropy(normalized_column, n: int | None = None,
                   convention: EntropyConvention | str = DEFAULT_CONVENTION) -> float:
    col = np.asarray(normalized_column, dtype=float)
    n = col.size if n is None else n
    return float(_entropies(col.reshape(-1, 1), EntropyConvention(convention), n)[0])


def _entropies(normalized: np.ndarray, convention: EntropyConvention, n: int) -> np.ndarray:
    if n < 2:
        raise TooFewAlternatives(f"entropy needs at least 2 alternatives, got {n}")
    ln_n = math.log(n)
    if convention is EntropyConvention.PROPORTION:
        p = normalized / normalized.sum(axis=0)
        return -_xlogx(p).sum(axis=0) / ln_n
    h = _xlogx(normalized).sum(axis=0) / ln_n
    return h if convention is EntropyConvention.LITERAL else -h


def weights_from_normalized(normalized: np.ndarray, convention: EntropyConvention) -> np.ndarray:
    divergence = 1.0 - _entropies(normalized, convention, normalized.shape[0])
    total = divergence.sum()
    if (divergence < 0).any() or not total > 0:
        raise DegenerateWeights(
            f"entropy convention {convention.value!r} gives 1 - e = {np.round(divergence, 6).tolist()}"
        )
    return divergence / total


def entropy_weights(matrix: EvaluationMatrix, params: TodimParameters = TodimParameters()) -> np.ndarray:
    """Entropy weights of an already normalised matrix."""
    return weights_from_normalized(matrix.values, params.entropy_convention)


def dominance_degree(x1: float, x2: float, w: float, params: TodimParameters = TodimParameters()) -> float:
    diff = x1 - x2
    if diff > 0:
        return (w * diff) ** params.gain_exponent
    if diff < 0:
        return -params.loss_aversion * w * (-diff) ** params.gain_exponent
    return 0.0


def dominance_from_normalized(normalized: np.ndarray, weights: np.ndarray,
                              params: TodimParameters) -> np.ndarray:
    if weights.shape != (normalized.shape[1],):
        raise DimensionMismatch(f"{weights.size} weights for {normalized.shape[1]} criteria")
    diff = normalized[:, None, :] - normalized[None, :, :]
    a = params.gain_exponent
    gain = np.power(weights * np.clip(diff, 0.0, None), a)
    loss = -params.loss_aversion * weights * np.power(np.clip(-diff, 0.0, None), a)
    per_criterion = np.where(diff > 0, gain, np.where(diff < 0, loss, 0.0))
    return per_criterion.sum(axis=2)


def total_dominance(matrix: EvaluationMatrix, weights, params: TodimParameters = TodimParameters()) -> np.ndarray:
    """``D[i1, i2]``: total dominance of alternative ``i1`` over ``i2``."""
    return dominance_from_normalized(matrix.values, np.asarray(weights, dtype=float), params)


def scores(dominance: np.ndarray) -> np.ndarray:
    return np.asarray(dominance, dtype=float).sum(axis=1)


def tie_groups(score_vector: np.ndarray, tie_epsilon: float) -> list[list[int]]:
    """Indices grouped by descending score.

    Neighbours in sorted order within ``tie_epsilon`` are chained together,
    which is the transitive closure of the tie relation.
    """
    s = np.asarray(score_vector, dtype=float)
    order = np.argsort(-s, kind="stable")
    groups: list[list[int]] = []
    prev = None
    for idx in order:
        if prev is not None and abs(s[prev] - s[idx]) <= tie_epsilon:
            groups[-1].append(int(idx))
        else:
            groups.append([int(idx)])
        prev = idx
    return groups


def rank(score_vector, ids: Sequence[AlternativeId], tie_epsilon: float = 1e-9) -> Ranking:
    s = np.asarray(score_vector, dtype=float)
    if s.shape != (len(ids),):
        raise DimensionMismatch(f"{s.size} scores for {len(ids)} alternatives")
    return Ranking(tuple(frozenset(ids[i] for i in g) for g in tie_groups(s, tie_epsilon)))


def score_values(values: np.ndarray, params: TodimParameters = TodimParameters()) -> tuple[np.ndarray, np.ndarray]:
    """Array fast path used by the simulation: returns ``(weights, scores)``."""
    normalized = normalize_values(values)
    w = weights_from_normalized(normalized, params.entropy_convention)
    return w, dominance_from_normalized(normalized, w, params).sum(axis=1)


def evaluate(matrix: EvaluationMatrix, params: TodimParameters = TodimParameters()) -> TodimResult:
    validate_matrix(matrix)
    normalized = normalize_columns(matrix)
    w = entropy_weights(normalized, params)
    s = scores(total_dominance(normalized, w, params))
    return TodimResult(w, s, rank(s, matrix.rows, params.tie_epsilon))
