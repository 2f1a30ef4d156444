"""Acceptance run: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also repeated in the terminal summary.  Criterion 8 (the full grid) needs
``ETODIM_SLOW=1``.
"""

import io
import math
import time

import numpy as np
import pytest

import oracles
from conftest import EXAMPLE1, EXAMPLE1_A4
from etodim import cli
from etodim.casestudy import R1, R2, R3, R4, SENSITIVITY
from etodim.core import EvaluationMatrix, Ranking, parse_ranking, restrict_ranking
from etodim.expansion import expand_matrix, strip_virtual, virtual_rows
from etodim.reversal import detect_reversal
from etodim.simulation import (
    PAPER_ADDED,
    PAPER_ALTERNATIVES,
    PAPER_CRITERIA,
    PAPER_LEVELS,
    GridConfig,
    default_workers,
    results_to_csv,
    run_grid,
)
from etodim.stats import kendall
from etodim.todim import (
    DEFAULT_CONVENTION,
    EntropyConvention,
    TodimParameters,
    dominance_degree,
    dominance_from_normalized,
    evaluate,
    normalize_values,
    weights_from_normalized,
)

LINES: list[str] = []

SCALED = dict(alternative_counts=(3, 6, 9), criteria_counts=(3, 6, 9),
              level_parameters=(2, 6, 10), added_counts=(1, 5), replicates=200)
TABLE2_GAPS = {1: 0.1159, 3: 0.118, 5: 0.1027, 7: 0.0934, 9: 0.086}


def report(number: int, name: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name} | {detail}"
    LINES.append(line)
    print("\n" + line)
    assert ok, line


@pytest.fixture(scope="module")
def scaled():
    t0 = time.perf_counter()
    grid = run_grid(GridConfig(**SCALED))
    return grid, time.perf_counter() - t0


# -- 1 -----------------------------------------------------------------------

def example1_checks(params):
    base = EvaluationMatrix.from_array(EXAMPLE1)
    add = np.array([EXAMPLE1_A4])
    originals = base.rows
    expanded = expand_matrix(base, 2)

    def orig(m):
        try:
            return str(restrict_ranking(evaluate(m, params).ranking, originals))
        except ArithmeticError as exc:
            return type(exc).__name__

    return {
        "original": orig(base) == "a1>a2>a3",
        "original+a4": orig(base.append(add, ["a4"])) == "a2>a1>a3",
        "expanded v=2": orig(expanded) == "a1>a2>a3",
        "expanded+a4": orig(expanded.append(add, ["a4"])) == "a1>a2>a3",
    }


def test_criterion_1_calibration():
    t0 = time.perf_counter()
    outcome, notes = {}, []
    for conv in EntropyConvention:
        params = TodimParameters(entropy_convention=conv)
        checks = example1_checks(params)
        outcome[conv] = all(checks.values())
        notes.append(f"{conv.value} {sum(checks.values())}/{len(checks)} "
                     f"failed={[k for k, v in checks.items() if not v]}")
        try:
            w = weights_from_normalized(normalize_values(np.array(EXAMPLE1)), conv)
            notes.append(f"{conv.value} w={np.round(w, 4).tolist()}")
        except ArithmeticError:
            pass
    winners = [c.value for c, ok in outcome.items() if ok]
    elapsed = time.perf_counter() - t0
    ok = len(winners) == 1 and winners[0] == DEFAULT_CONVENTION.value and elapsed < 1.0
    report(1, "Example 1 calibration gate", ok,
           f"reproducing={winners} default={DEFAULT_CONVENTION.value} {elapsed:.2f}s; " + "; ".join(notes))


# -- 2 -----------------------------------------------------------------------

def run_cli(*argv):
    buf = io.StringIO()
    code = cli.main(list(argv), out=buf)
    assert code == 0, argv
    return buf.getvalue().splitlines()


def test_criterion_2_case_study():
    t0 = time.perf_counter()
    got = {}
    got["R1"] = run_cli("case-study")[0]
    got["R2"] = run_cli("case-study", "--with-additions")[1]
    r3, r4 = run_cli("case-study", "--no-expansion", "--with-additions")
    got["R3"], got["R4"] = r3, r4
    want = {"R1": R1, "R2": R2, "R3": R3, "R4": R4}
    for line in run_cli("case-study", "--sensitivity", "6..10"):
        v, before, after = line.split("\t")
        v = int(v)
        got[f"T5 v={v} before"], got[f"T5 v={v} after"] = before, after
        want[f"T5 v={v} before"], want[f"T5 v={v} after"] = SENSITIVITY[v]
    elapsed = time.perf_counter() - t0
    wrong = [k for k in want if got[k] != want[k]]
    detail = f"{len(want) - len(wrong)}/{len(want)} strings match, {elapsed:.2f}s"
    if wrong:
        detail += "; " + "; ".join(f"{k}: got {got[k]} want {want[k]}" for k in wrong[:4])
    report(2, "case-study rankings R1-R4 and sensitivity table", not wrong and elapsed < 5.0, detail)


# -- 3 to 6: scaled grid -------------------------------------------------------

def test_criterion_3_direction(scaled):
    grid, elapsed = scaled
    gap = grid.summary["probability_gap"]
    frac = gap["positive_fraction"]
    report(3, "gap direction on scaled grid", frac >= 0.95,
           f"{gap['positive']}/{gap['count']} positive ({frac:.1%}, need >= 95%), grid {elapsed:.1f}s")


def test_criterion_4_magnitude(scaled):
    grid, _ = scaled
    gap = grid.summary["probability_gap"]["mean"]
    base = grid.summary["reversal_probability"]["original_mean"]
    ok = abs(gap - 0.10) <= 0.05 and abs(base - 0.53) <= 0.12
    report(4, "gap and baseline magnitude", ok,
           f"mean gap {gap:.4f} (0.10 +/- 0.05), baseline {base:.4f} (0.53 +/- 0.12)")


def test_criterion_5_correlation_signs(scaled):
    grid, _ = scaled
    corr = grid.summary["correlations"]
    coefs = {name: [corr[name][c] for c in ("pearson", "spearman", "kendall")] for name in corr}
    ok = (all(x > 0 for x in coefs["alternatives"])
          and all(x > 0 for x in coefs["level"])
          and all(x < 0 for x in coefs["added"])
          and coefs["level"][0] > 0.4)
    detail = "; ".join(f"{k} {np.round(v, 4).tolist()}" for k, v in coefs.items())
    report(5, "correlation sign pattern", ok, detail + " (want +, + with pearson > 0.4, -)")


def test_criterion_6_consistency(scaled):
    grid, _ = scaled
    c = grid.summary["consistency"]
    cons, pairs = c["consistency_probability_mean"], c["pair_number_mean_mean"]
    ok = cons < 0.9 and pairs < 2.0
    report(6, "consistency below 0.9, pair-number mean below 2", ok,
           f"consistency mean {cons:.4f}, pair-number mean {pairs:.4f}; "
           f"0.469 vs consistency mean {cons:.4f} / std {c['consistency_probability_std']:.4f}, "
           f"vs inconsistency mean {c['inconsistency_probability_mean']:.4f} "
           f"/ std {c['inconsistency_probability_std']:.4f}")


# -- 7 -----------------------------------------------------------------------

def _random_matrix(rng, n, m):
    return rng.uniform(0.0, 1.0, size=(n, m))


def _groups(ranking: Ranking):
    return [{a.label for a in g} for g in ranking.groups]


def _random_ranking(rng, labels):
    order = list(rng.permutation(labels))
    cuts = sorted(rng.choice(range(1, len(order)), size=rng.integers(0, len(order)), replace=False)) \
        if len(order) > 1 else []
    groups, start = [], 0
    for c in list(cuts) + [len(order)]:
        groups.append(order[start:c])
        start = c
    return ">".join("~".join(sorted(g)) for g in groups if g)


def test_criterion_7_properties():
    rng = np.random.default_rng(7)
    params = TodimParameters()
    checks = {}

    sums = []
    for _ in range(200):
        x = normalize_values(_random_matrix(rng, rng.integers(2, 10), rng.integers(1, 8)))
        w = weights_from_normalized(x, params.entropy_convention)
        sums.append(abs(w.sum() - 1.0) <= 1e-12 and (w >= 0).all())
    checks["weights on simplex"] = all(sums)

    worst = 0.0
    for w in np.linspace(0.05, 1.0, 10):
        for d in np.linspace(0.01, 1.0, 10):
            for sign in np.linspace(-1.0, 1.0, 10):
                delta = sign * d
                x1, x2 = 0.5 + delta / 2, 0.5 - delta / 2
                if delta > 0:
                    ref = (w * (x1 - x2)) ** 0.88
                elif delta < 0:
                    ref = -2.25 * w * (x2 - x1) ** 0.88
                else:
                    ref = 0.0
                got = dominance_degree(x1, x2, w, params)
                vec = dominance_from_normalized(np.array([[x1], [x2]]), np.array([w]), params)[0, 1]
                worst = max(worst, abs(got - ref), abs(vec - ref))
    checks["dominance closed form"] = worst <= 1e-12

    ends = rt = True
    for _ in range(50):
        vals = _random_matrix(rng, rng.integers(2, 8), rng.integers(1, 6))
        v = int(rng.integers(2, 12))
        vr = virtual_rows(vals, v)
        ends &= bool((vr[0] == vals.min(axis=0)).all() and (vr[-1] == vals.max(axis=0)).all())
        mat = EvaluationMatrix.from_array(vals)
        rt &= strip_virtual(expand_matrix(mat, v)) == mat
    checks["virtual endpoints exact"] = ends
    checks["expand/strip round trip"] = rt

    relabel = True
    for _ in range(50):
        n, m = int(rng.integers(2, 8)), int(rng.integers(1, 6))
        vals = _random_matrix(rng, n, m)
        perm = rng.permutation(n)
        mat = EvaluationMatrix.from_array(vals)
        permuted = EvaluationMatrix(tuple(mat.rows[i] for i in perm), mat.criteria, vals[perm])
        relabel &= evaluate(mat, params).ranking == evaluate(permuted, params).ranking
    checks["relabeling invariance (50)"] = relabel

    brute = True
    for _ in range(500):
        labels = [f"a{i}" for i in range(1, int(rng.integers(2, 7)) + 1)]
        t0, t1 = _random_ranking(rng, labels), _random_ranking(rng, labels)
        r0, r1 = parse_ranking(t0), parse_ranking(t1)
        got = {(p.a.label, p.b.label, p.kind.value) for p in detect_reversal(r0, r1).reversed_pairs}
        brute &= got == oracles.naive_reversals(_groups(r0), _groups(r1))
    checks["detect_reversal brute force (500)"] = brute

    tau = True
    for _ in range(100):
        size = int(rng.integers(3, 30))
        x = rng.integers(0, 6, size).tolist()
        y = rng.integers(0, 6, size).tolist()
        if len(set(x)) < 2 or len(set(y)) < 2:
            continue
        tau &= math.isclose(kendall(x, y), oracles.kendall_tau_b(x, y), abs_tol=1e-12)
    checks["kendall tau-b oracle (100)"] = tau

    e2e = True
    for _ in range(100):
        vals = _random_matrix(rng, int(rng.integers(2, 8)), int(rng.integers(1, 6)))
        res = evaluate(EvaluationMatrix.from_array(vals), params)
        _, ref = oracles.naive_todim(vals.tolist(), params.entropy_convention.value)
        order = [res.ranking.groups[i] for i in range(len(res.ranking.groups))]
        flat = [int(a.label[1:]) - 1 for g in order for a in sorted(g)]
        e2e &= np.allclose(res.scores, ref, rtol=0, atol=1e-10) and flat == oracles.naive_order(ref)
    checks["evaluate vs naive oracle (100)"] = e2e

    cfg = GridConfig((3, 5), (3,), (2, 4), (1, 2), replicates=20, seed=11)
    checks["byte-identical CSV"] = results_to_csv(run_grid(cfg).results) == results_to_csv(run_grid(cfg).results)

    bad = [k for k, v in checks.items() if not v]
    report(7, "property suites", not bad,
           f"{len(checks) - len(bad)}/{len(checks)} hold" + (f"; failing {bad}" if bad else ""))


# -- 8 -----------------------------------------------------------------------

@pytest.mark.slow
def test_criterion_8_full_grid():
    t0 = time.perf_counter()
    grid = run_grid(GridConfig(PAPER_ALTERNATIVES, PAPER_CRITERIA, PAPER_LEVELS, PAPER_ADDED),
                    workers=default_workers())
    elapsed = time.perf_counter() - t0
    by_k = {row["k"]: row["mean"] for row in grid.summary["probability_gap_by_added"]}
    off = {k: by_k[k] - TABLE2_GAPS[k] for k in TABLE2_GAPS}
    ok = len(grid.results) == 875 and all(abs(d) <= 0.04 for d in off.values()) and elapsed < 1800
    report(8, "full grid per-k gaps", ok,
           f"{len(grid.results)} rows in {elapsed:.0f}s; per-k gaps "
           + ", ".join(f"k={k}: {by_k[k]:.4f} (ref {TABLE2_GAPS[k]})" for k in TABLE2_GAPS))
