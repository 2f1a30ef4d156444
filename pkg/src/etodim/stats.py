"""Pearson, Spearman and Kendall tau-b coefficients with large-sample p-values."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats as _st

from .errors import ConstantSeries, DimensionMismatch


@dataclass(frozen=True)
class CorrelationResult:
    pearson: float
    spearman: float
    kendall: float
    pearson_p: float
    spearman_p: float
    kendall_p: float

    def to_dict(self) -> dict:
        return asdict(self)


def _pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DimensionMismatch("x and y must be 1-D and of equal length")
    if x.size < 3:
        raise ValueError("need at least 3 observations")
    for name, s in (("x", x), ("y", y)):
        if np.all(s == s[0]):
            raise ConstantSeries(f"{name} is constant")
    return x, y


def _clip(r: float) -> float:
    return float(min(1.0, max(-1.0, r)))


def pearson(x, y) -> float:
    x, y = _pair(x, y)
    dx, dy = x - x.mean(), y - y.mean()
    return _clip(np.dot(dx, dy) / np.sqrt(np.dot(dx, dx) * np.dot(dy, dy)))


def spearman(x, y) -> float:
    x, y = _pair(x, y)
    return pearson(_st.rankdata(x), _st.rankdata(y))


def kendall(x, y) -> float:
    x, y = _pair(x, y)
    return _clip(_st.kendalltau(x, y, variant="b").statistic)


def _t_pvalue(r: float, n: int) -> float:
    if abs(r) >= 1.0:
        return 0.0
    t = r * np.sqrt((n - 2) / (1.0 - r * r))
    return float(2 * _st.t.sf(abs(t), n - 2))


def correlate(x, y) -> CorrelationResult:
    x, y = _pair(x, y)
    n = x.size
    rp, rs = pearson(x, y), spearman(x, y)
    tau = _st.kendalltau(x, y, variant="b", method="asymptotic")
    return CorrelationResult(
        pearson=rp,
        spearman=rs,
        kendall=_clip(tau.statistic),
        pearson_p=_t_pvalue(rp, n),
        spearman_p=_t_pvalue(rs, n),
        kendall_p=float(tau.pvalue),
    )
