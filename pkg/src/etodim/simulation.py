"""Monte Carlo study of rank reversal with and without matrix expansion.

For every (alternatives n, criteria m) cell and every replicate, one uniform
random matrix is drawn.  It is ranked as is, and expanded with each level
parameter v.  For each number of added alternatives k, k uniform random rows
are drawn once and appended both to the original matrix and to every
expanded matrix.  Comparing rankings of the original alternatives gives

* consistency: does expansion alone change the original ranking?
* reversal (original path): does adding k rows change it?
* reversal (expanded path): does adding k rows change the expanded ranking?

Randomness is keyed on ``(seed, n, m, replicate, stream)`` through
:class:`numpy.random.SeedSequence`, so every cell is reproducible on its own
and results do not depend on worker scheduling.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from .core import EvaluationMatrix, validate_matrix
from .errors import ConstantSeries, DegenerateWeights
from .expansion import virtual_rows
from .stats import correlate
from .todim import EntropyConvention, TodimParameters, score_values, tie_groups

log = logging.getLogger(__name__)

PAPER_ALTERNATIVES = (3, 6, 9, 11, 15)
PAPER_CRITERIA = (3, 6, 9, 11, 15)
PAPER_LEVELS = (2, 4, 6, 8, 10, 15, 20)
PAPER_ADDED = (1, 3, 5, 7, 9)
PAPER_REPLICATES = 500
DEFAULT_SEED = 20240501

MATRIX_STREAM = 0


@dataclass(frozen=True)
class GridConfig:
    alternative_counts: tuple[int, ...] = PAPER_ALTERNATIVES
    criteria_counts: tuple[int, ...] = PAPER_CRITERIA
    level_parameters: tuple[int, ...] = PAPER_LEVELS
    added_counts: tuple[int, ...] = PAPER_ADDED
    replicates: int = PAPER_REPLICATES
    seed: int = DEFAULT_SEED
    params: TodimParameters = field(default_factory=TodimParameters)

    def __post_init__(self):
        for name in ("alternative_counts", "criteria_counts", "level_parameters", "added_counts"):
            vals = tuple(int(x) for x in getattr(self, name))
            if not vals:
                raise ValueError(f"{name} is empty")
            if len(set(vals)) != len(vals):
                raise ValueError(f"{name} has duplicates")
            object.__setattr__(self, name, vals)
        if min(self.alternative_counts) < 2:
            raise ValueError("alternative counts must be >= 2 (entropy needs ln n > 0)")
        if min(self.criteria_counts) < 1 or min(self.added_counts) < 1:
            raise ValueError("criteria and added counts must be >= 1")
        if min(self.level_parameters) < 2:
            raise ValueError("level parameters must be >= 2")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a non-negative 64-bit integer")

    @property
    def combinations(self) -> int:
        return (len(self.alternative_counts) * len(self.criteria_counts)
                * len(self.level_parameters) * len(self.added_counts))


_LIST_KEYS = ("alternative_counts", "criteria_counts", "level_parameters", "added_counts")
_PARAM_KEYS = {
    "gain_exponent": float,
    "loss_aversion": float,
    "entropy_convention": EntropyConvention,
    "tie_epsilon": float,
}


def parse_config(text: str) -> GridConfig:
    """Parse ``key = value`` lines; lists are comma separated, ``#`` starts a comment.

    Recognised keys: alternative_counts, criteria_counts, level_parameters,
    added_counts, replicates, seed, gain_exponent, loss_aversion,
    entropy_convention, tie_epsilon.  Missing keys take the paper defaults.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
    parser.read_string("[grid]\n" + text)
    section = parser["grid"]
    unknown = set(section) - set(_LIST_KEYS) - set(_PARAM_KEYS) - {"replicates", "seed"}
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
    kwargs: dict = {}
    for key in _LIST_KEYS:
        if key in section:
            kwargs[key] = tuple(int(x) for x in section[key].replace(",", " ").split())
    for key in ("replicates", "seed"):
        if key in section:
            kwargs[key] = int(section[key])
    params = {k: conv(section[k].strip()) for k, conv in _PARAM_KEYS.items() if k in section}
    return GridConfig(**kwargs, params=TodimParameters(**params))


def load_config(path) -> GridConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def format_config(config: GridConfig) -> str:
    lines = [f"{k} = {', '.join(map(str, getattr(config, k)))}" for k in _LIST_KEYS]
    lines += [f"replicates = {config.replicates}", f"seed = {config.seed}"]
    p = config.params
    lines += [
        f"gain_exponent = {p.gain_exponent!r}",
        f"loss_aversion = {p.loss_aversion!r}",
        f"entropy_convention = {p.entropy_convention.value}",
        f"tie_epsilon = {p.tie_epsilon!r}",
    ]
    return "\n".join(lines) + "\n"


def replicate_rng(seed: int, n: int, m: int, replicate: int, stream: int) -> np.random.Generator:
    """Independent generator for one replicate; ``stream`` 0 is the matrix, k>0 the k additions."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(n, m, replicate, stream)))


def generate_matrix(n: int, m: int, rng: np.random.Generator) -> EvaluationMatrix:
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    values = rng.random((n, m))
    for j in range(m):
        while values[:, j].max() == values[:, j].min():
            values[:, j] = rng.random(n)
    return validate_matrix(EvaluationMatrix.from_array(values))


def generate_additions(m: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """``k x m`` block of uniform rows to append as added alternatives."""
    if k < 1:
        raise ValueError(f"number of added alternatives must be >= 1, got {k}")
    return rng.random((k, m))


def group_index(score_vector: np.ndarray, tie_epsilon: float) -> np.ndarray:
    """Tie-group position (0 = best) of every alternative."""
    out = np.empty(len(score_vector), dtype=np.int64)
    for pos, members in enumerate(tie_groups(score_vector, tie_epsilon)):
        out[members] = pos
    return out


def changed_pairs(before: np.ndarray, after: np.ndarray, n: int) -> int:
    """Pairs among the first ``n`` alternatives whose relation differs."""
    b = np.sign(before[:n, None] - before[None, :n])
    a = np.sign(after[:n, None] - after[None, :n])
    return int(np.count_nonzero(np.triu(a != b, 1)))


@dataclass
class ReplicateRecord:
    failed: bool = False
    # per level v
    inconsistent: dict[int, bool] = field(default_factory=dict)
    pairs: dict[int, int] = field(default_factory=dict)
    # per added count k
    reversed_original: dict[int, bool] = field(default_factory=dict)
    # per (v, k)
    reversed_expanded: dict[tuple[int, int], bool] = field(default_factory=dict)


def replicate_from_data(values: np.ndarray, additions: dict[int, np.ndarray],
                        levels: Iterable[int], params: TodimParameters) -> ReplicateRecord:
    """Run one replicate on a given matrix and given added rows.

    ``additions`` maps k to its ``k x m`` block; the same block is appended
    on the original and on every expanded path.
    """
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    eps = params.tie_epsilon

    def groups(x):
        return group_index(score_values(x, params)[1], eps)

    rec = ReplicateRecord()
    try:
        base = groups(values)
        for k, block in additions.items():
            rec.reversed_original[k] = changed_pairs(base, groups(np.vstack([values, block])), n) > 0
        for v in levels:
            expanded = np.vstack([values, virtual_rows(values, v)])
            g_exp = groups(expanded)
            rec.pairs[v] = changed_pairs(base, g_exp, n)
            rec.inconsistent[v] = rec.pairs[v] > 0
            for k, block in additions.items():
                g_after = groups(np.vstack([expanded, block]))
                rec.reversed_expanded[(v, k)] = changed_pairs(g_exp, g_after, n) > 0
    except DegenerateWeights:
        return ReplicateRecord(failed=True)
    return rec


def run_replicate(n: int, m: int, levels: Sequence[int], added_counts: Sequence[int],
                  params: TodimParameters, seed: int, replicate: int) -> ReplicateRecord:
    matrix = generate_matrix(n, m, replicate_rng(seed, n, m, replicate, MATRIX_STREAM))
    additions = {k: generate_additions(m, k, replicate_rng(seed, n, m, replicate, k)) for k in added_counts}
    return replicate_from_data(matrix.values, additions, levels, params)


def consistency_probability(inconsistent: int, replicates: int) -> float:
    # 1 - V_c / R; the printed (1 - V_c) / 500 goes negative for V_c >= 2
    return 1.0 - inconsistent / replicates


def pair_number_mean(total_pairs: int, replicates: int) -> float:
    return total_pairs / replicates


def reversal_probability(reversed_count: int, replicates: int) -> float:
    return reversed_count / replicates


@dataclass(frozen=True)
class CombinationResult:
    n: int
    m: int
    v: int
    k: int
    replicates: int
    failed: int
    consistency_probability: float
    pair_number_mean: float
    reversal_prob_original: float
    reversal_prob_expanded: float
    probability_gap: float


CSV_FIELDS = tuple(f.name for f in fields(CombinationResult))


def _ratio(fn, count: int, valid: int) -> float:
    return fn(count, valid) if valid else math.nan


def run_cell(config: GridConfig, n: int, m: int) -> list[CombinationResult]:
    """All (v, k) combinations of one (n, m) cell."""
    levels, added = config.level_parameters, config.added_counts
    valid = failed = 0
    inconsistent = {v: 0 for v in levels}
    pairs = {v: 0 for v in levels}
    rev_o = {k: 0 for k in added}
    rev_e = {(v, k): 0 for v in levels for k in added}
    for r in range(config.replicates):
        rec = run_replicate(n, m, levels, added, config.params, config.seed, r)
        if rec.failed:
            failed += 1
            continue
        valid += 1
        for v in levels:
            inconsistent[v] += rec.inconsistent[v]
            pairs[v] += rec.pairs[v]
        for k in added:
            rev_o[k] += rec.reversed_original[k]
        for key in rev_e:
            rev_e[key] += rec.reversed_expanded[key]
    if failed:
        log.info("n=%d m=%d: %d of %d replicates failed entropy weighting", n, m, failed, config.replicates)
    out = []
    for v in levels:
        for k in added:
            p_o = _ratio(reversal_probability, rev_o[k], valid)
            p_e = _ratio(reversal_probability, rev_e[(v, k)], valid)
            out.append(CombinationResult(
                n=n, m=m, v=v, k=k, replicates=valid, failed=failed,
                consistency_probability=_ratio(consistency_probability, inconsistent[v], valid),
                pair_number_mean=_ratio(pair_number_mean, pairs[v], valid),
                reversal_prob_original=p_o,
                reversal_prob_expanded=p_e,
                probability_gap=p_o - p_e,
            ))
    return out


def _run_cell_args(args):
    return run_cell(*args)


@dataclass
class GridResult:
    config: GridConfig
    results: list[CombinationResult]
    summary: dict


def run_grid(config: GridConfig, workers: int = 1,
             progress: Callable[[int, int], None] | None = None) -> GridResult:
    """Run every combination; ``workers > 1`` spreads (n, m) cells over processes."""
    cells = [(config, n, m) for n in config.alternative_counts for m in config.criteria_counts]
    chunks: list[list[CombinationResult]] = []
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(cells))) as pool:
            for i, chunk in enumerate(pool.map(_run_cell_args, cells)):
                chunks.append(chunk)
                if progress:
                    progress(i + 1, len(cells))
    else:
        for i, cell in enumerate(cells):
            chunks.append(run_cell(*cell))
            if progress:
                progress(i + 1, len(cells))
    by_key = {(r.n, r.m, r.v, r.k): r for chunk in chunks for r in chunk}
    results = [by_key[(n, m, v, k)]
               for n in config.alternative_counts for m in config.criteria_counts
               for v in config.level_parameters for k in config.added_counts]
    return GridResult(config, results, summarize(results, config))


def _mean_std(values: Sequence[float]) -> dict:
    arr = np.asarray([x for x in values if not math.isnan(x)], dtype=float)
    if arr.size == 0:
        return {"mean": None, "std": None, "count": 0}
    std = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
    return {"mean": float(arr.mean()), "std": std, "count": int(arr.size)}


def _correlation(x, y) -> dict | None:
    try:
        return correlate(x, y).to_dict()
    except (ConstantSeries, ValueError):
        return None


def summarize(results: Sequence[CombinationResult], config: GridConfig | None = None) -> dict:
    ok = [r for r in results if r.replicates > 0]
    gaps = [r.probability_gap for r in ok]
    gap = _mean_std(gaps)
    gap["positive"] = int(sum(g > 0 for g in gaps))
    gap["positive_fraction"] = gap["positive"] / len(gaps) if gaps else None

    by_k = []
    for k in sorted({r.k for r in ok}):
        stats = _mean_std([r.probability_gap for r in ok if r.k == k])
        by_k.append({"k": k, **stats})

    cells = {}
    for r in ok:
        cells.setdefault((r.n, r.m, r.v), r)
    cons = [r.consistency_probability for r in cells.values()]
    pnm = [r.pair_number_mean for r in cells.values()]
    cons_stats = _mean_std(cons)
    incons_stats = _mean_std([1.0 - c for c in cons])

    summary = {
        "combinations": len(results),
        "failed_replicates": int(sum({(r.n, r.m): r.failed for r in results}.values())),
        "probability_gap": gap,
        "probability_gap_by_added": by_k,
        "reversal_probability": {
            "original_mean": _mean_std([r.reversal_prob_original for r in ok])["mean"],
            "expanded_mean": _mean_std([r.reversal_prob_expanded for r in ok])["mean"],
        },
        "consistency": {
            "combinations": len(cells),
            "consistency_probability_mean": cons_stats["mean"],
            "consistency_probability_std": cons_stats["std"],
            "inconsistency_probability_mean": incons_stats["mean"],
            "inconsistency_probability_std": incons_stats["std"],
            "pair_number_mean_mean": _mean_std(pnm)["mean"],
            "pair_number_mean_std": _mean_std(pnm)["std"],
        },
        "correlations": {
            "alternatives": _correlation([r.n for r in ok], gaps),
            "level": _correlation([r.v for r in ok], gaps),
            "added": _correlation([r.k for r in ok], gaps),
        },
    }
    if config is not None:
        summary["config"] = {
            **{k: list(getattr(config, k)) for k in _LIST_KEYS},
            "replicates": config.replicates,
            "seed": config.seed,
            "params": {**asdict(config.params), "entropy_convention": config.params.entropy_convention.value},
        }
    return summary


def results_to_csv(results: Sequence[CombinationResult], out=None) -> str | None:
    buf = io.StringIO() if out is None else out
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in results:
        writer.writerow([repr(getattr(r, f)) for f in CSV_FIELDS])
    return buf.getvalue() if out is None else None


def summary_to_json(summary: dict) -> str:
    return json.dumps(summary, indent=2, sort_keys=True, allow_nan=False) + "\n"


def with_seed(config: GridConfig, seed: int | None) -> GridConfig:
    return config if seed is None else replace(config, seed=seed)


def default_workers() -> int:
    return max(1, (os.cpu_count() or 1))
