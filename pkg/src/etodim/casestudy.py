"""Energy-storage technology selection data: 10 technologies x 15 criteria.

Values are the published normalised evaluations.  The two additions are the
new technologies introduced after the initial selection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import EvaluationMatrix, Ranking, restrict_ranking
from .expansion import expand_matrix
from .todim import TodimParameters, evaluate

TECHNOLOGIES = (
    "pumped storage",
    "compressed air energy storage",
    "flywheel energy storage",
    "sodium-sulfur battery",
    "vanadium flow battery",
    "colloid battery",
    "lead-carbon battery",
    "lithium iron phosphate battery",
    "superconducting energy storage",
    "supercapacitor",
)

CRITERIA = (
    "power level",
    "response speed",
    "continuous discharge time",
    "discharge depth",
    "cycle number",
    "energy conversion efficiency",
    "self-discharge rate",
    "volume power density",
    "volume energy density",
    "environmental impact",
    "capacity unit price",
    "power unit price",
    "operation and maintenance cost",
    "security",
    "technology maturity",
)

EVALUATIONS = np.array([
    [1, 1, 1, 0, 0.81, 0.46, 1, 0.28, 1, 1, 0, 0, 1, 1, 1],
    [1, 1, 1, 0, 0.19, 0, 1, 0.78, 1, 1, 0, 0.01, 0, 0.67, 0.5],
    [0.5, 1, 0, 0, 0.81, 0.73, 0, 0.56, 0.74, 1, 0.28, 0.16, 1, 0.33, 0.5],
    [0.5, 0.5, 0.67, 1, 0, 0.66, 1, 0.89, 0.99, 1, 0.01, 0.75, 1, 0, 1],
    [0.5, 0.5, 1, 1, 0.22, 0.05, 0.67, 0, 0.99, 1, 0, 0.06, 0.5, 0.67, 0.5],
    [0.5, 0.5, 1, 0.33, 0.03, 0.39, 1, 1, 1, 1, 0.02, 0.25, 0.5, 0.33, 1],
    [0.5, 0.5, 0.67, 0.33, 0.01, 0.8, 1, 1, 1, 1, 0.02, 0.13, 0.5, 0.67, 0],
    [0.5, 0.5, 0.67, 0.67, 0.05, 0.93, 0.67, 1, 1, 1, 0.33, 1, 0.5, 0.33, 1],
    [0.5, 0, 0, 0, 0.19, 0.53, 0.67, 0.42, 0, 1, 0.15, 0, 0, 0.33, 0.5],
    [0, 0, 0.33, 0, 1, 0.80, 0.33, 1, 0.97, 0, 0.32, 0, 0.5, 0.33, 0.5],
])

ADDITIONS = np.array([
    [0.02, 0.81, 0.66, 0.54, 0.81, 0.36, 0.85, 0.4, 0.58, 0.83, 0.04, 0.37, 0.76, 0.96, 0.23],
    [0.63, 0.81, 0.9, 0.26, 0.53, 0.1, 0.96, 0.61, 0.82, 0.5, 0.96, 0.19, 0.69, 0.9, 0.09],
])
ADDITION_LABELS = ("a11", "a12")

# Published rankings of the ten original technologies.
R1 = "a8>a1>a4>a6>a7>a2>a3>a5>a10>a9"  # expanded, level 8
R2 = "a8>a1>a4>a6>a7>a2>a3>a5>a10>a9"  # expanded, level 8, after additions
R3 = "a8>a1>a4>a6>a7>a2>a5>a3>a10>a9"  # no expansion
R4 = "a1>a8>a4>a6>a7>a2>a5>a3>a10>a9"  # no expansion, after additions
SENSITIVITY = {
    6: ("a8>a1>a4>a6>a7>a2>a3>a5>a10>a9", "a8>a1>a4>a6>a7>a2>a5>a3>a10>a9"),
    7: ("a8>a1>a4>a6>a7>a2>a3>a5>a10>a9", "a8>a1>a4>a6>a7>a2>a5>a3>a10>a9"),
    8: ("a8>a1>a4>a6>a7>a2>a3>a5>a10>a9", "a8>a1>a4>a6>a7>a2>a3>a5>a10>a9"),
    9: ("a8>a1>a4>a6>a7>a2>a3>a5>a10>a9", "a8>a1>a4>a6>a7>a2>a3>a5>a10>a9"),
    10: ("a8>a1>a4>a6>a7>a3>a2>a5>a10>a9", "a8>a1>a4>a6>a7>a2>a3>a5>a10>a9"),
}


def case_matrix() -> EvaluationMatrix:
    return EvaluationMatrix.from_array(EVALUATIONS, criteria=[f"c{j}" for j in range(1, 16)])


@dataclass(frozen=True)
class CaseRankings:
    level: int | None
    before: Ranking
    after: Ranking | None


def rank_case(level: int | None = 8, with_additions: bool = True,
              params: TodimParameters = TodimParameters()) -> CaseRankings:
    """Rankings of the ten technologies; ``level=None`` skips the expansion.

    The additions are appended after the virtual rows, and both rankings are
    restricted to the ten original technologies.
    """
    base = case_matrix()
    originals = base.rows
    matrix = base if level is None else expand_matrix(base, level)
    before = restrict_ranking(evaluate(matrix, params).ranking, originals)
    after = None
    if with_additions:
        grown = matrix.append(ADDITIONS, ADDITION_LABELS)
        after = restrict_ranking(evaluate(grown, params).ranking, originals)
    return CaseRankings(level, before, after)
