"""Acceptance criteria, each at its stated tolerance and time budget.

Every test appends one PASS/FAIL line that pytest prints in an
"acceptance criteria" section at the end of the run.
"""

import json
import math
import random
import time
from fractions import Fraction as F
from pathlib import Path

from conftest import ACCEPTANCE_LINES

from wassalg import DiscreteMeasure, RealLine, brute_force_oracle, convex_sum, dirac, optimal_coupling, wasserstein_1d
from wassalg.experiments import cauchy_experiment, moment_growth
from wassalg.harness import BARYCENTRIC_LAWS, METRIC_LAWS, WASSERSTEIN_LAWS, run_free_extension, run_law
from wassalg.laws import dyadic_combination
from wassalg.random_instances import random_measure, random_point, random_space

GOLDENS = json.loads((Path(__file__).parent / "goldens" / "dirichlet_cauchy.json").read_text())
KINDS = ("line", "plane", "matrix")


def _verdict(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} [{number:2d}] {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def test_01_dirac_isometry():
    rng = random.Random("c1")
    start = time.perf_counter()
    bad = 0
    checks = 0
    for exact in (True, False):
        for k in range(100):
            space = random_space(rng, KINDS[k % 3], exact=exact)
            x, y = random_point(rng, space, exact=exact), random_point(rng, space, exact=exact)
            d = space.distance(x, y)
            for p in (1, 2, 3):
                wp = optimal_coupling(dirac(space, x), dirac(space, y), p).wp
                checks += 1
                if exact and isinstance(d, F):
                    bad += wp != d
                else:
                    bad += abs(wp - d) > 1e-12
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 1.0
    assert _verdict(1, "Dirac isometry", ok, f"{checks} checks, {bad} mismatches, {elapsed:.2f}s (limit 1s)")


def test_02_oracle_equivalence():
    rng = random.Random("c2")
    start = time.perf_counter()
    bad = 0
    for k in range(200):
        kind = KINDS[k % 3]
        # odd powers of irrational plane distances are not rational
        p = 2 if kind == "plane" else rng.choice((1, 2, 3))
        space = random_space(rng, kind)
        mu, nu = random_measure(rng, space, max_atoms=4), random_measure(rng, space, max_atoms=4)
        res, oracle = optimal_coupling(mu, nu, p), brute_force_oracle(mu, nu, p)
        assert isinstance(res.cost_p, F) and isinstance(oracle.cost_p, F)
        bad += res.cost_p != oracle.cost_p
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 10.0
    assert _verdict(2, "oracle equivalence", ok, f"200 instances, {bad} mismatches, {elapsed:.2f}s (limit 10s)")


def test_03_line_cross_check():
    rng = random.Random("c3")
    line = RealLine()
    start = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        p = rng.choice((1, 1.5, 2, 3))
        ms = []
        for _ in range(2):
            k = rng.randint(1, 50)
            w = [rng.random() + 1e-3 for _ in range(k)]
            ms.append(DiscreteMeasure(line, [rng.uniform(-10, 10) for _ in range(k)], [v / sum(w) for v in w]))
        a, b = optimal_coupling(*ms, p).wp, wasserstein_1d(*ms, p)
        worst = max(worst, abs(a - b) / max(abs(b), 1e-300))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 5.0
    assert _verdict(3, "1-D cross-check", ok, f"worst relative gap {worst:.2e}, {elapsed:.2f}s (limit 5s)")


def test_04_metric_properties():
    reports = [run_law(law, p, trials=500, seed=4) for p in (1, 2) for law in METRIC_LAWS]
    ok = all(r.passed for r in reports) and all(r.worst_slack >= -1e-9 for r in reports)
    detail = "; ".join(f"{r.law} fails={r.failures}" for r in reports)
    assert _verdict(4, "W_p metric properties", ok, detail)


def test_05_monotone_in_p():
    r = run_law("wp-monotone", trials=500, seed=5)
    ok = r.passed and r.worst_slack >= -1e-9
    assert _verdict(5, "monotonicity in p", ok, f"500 pairs, failures={r.failures}, worst slack {r.worst_slack:.3g}")


def test_06_algebra_laws():
    laws = [law for law in BARYCENTRIC_LAWS if law not in ("fold", "dyadic")]
    reports = [run_law(law, trials=1000, seed=6, exact=True) for law in laws]
    ok = all(r.passed and r.trials == 1000 for r in reports)
    assert _verdict(6, "algebra laws", ok, ", ".join(f"{r.law}={r.failures}" for r in reports) + " failures")


def test_07_wasserstein_suite():
    reports = [run_law(law, p, trials=1000, seed=7) for p in (1, 2, 3) for law in WASSERSTEIN_LAWS]
    ok = all(r.passed and r.worst_slack >= -1e-9 for r in reports)
    failed = [r.law for r in reports if not r.passed]
    assert _verdict(7, "Wasserstein condition suite", ok, f"{len(reports)} law/p cells x 1000 trials, failing: {failed or 'none'}")


def test_08_free_extension():
    reports = run_free_extension(2, trials=100, seed=8) + run_free_extension(1, trials=100, seed=8)
    ok = all(r.passed for r in reports)
    assert _verdict(8, "free extension", ok, ", ".join(f"{r.law} fails={r.failures}" for r in reports))


def test_09_example_two():
    start = time.perf_counter()
    t1 = cauchy_experiment(2, 1, GOLDENS["schedule"])
    t2 = cauchy_experiment(2, 2, GOLDENS["schedule"])
    elapsed = time.perf_counter() - start
    drop = t1.distances[0] / t1.distances[-1]
    floor_ok = min(t2.distances) > t2.distances[0] / 10
    golden_ok = all(math.isclose(a, b, rel_tol=1e-9) for a, b in zip(t1.distances + t2.distances, GOLDENS["p1"] + GOLDENS["p2"]))
    ok = drop >= 10 and floor_ok and golden_ok and elapsed < 30
    detail = (f"p=1 drop x{drop:.1f} (need >=10), p=2 min/first {min(t2.distances) / t2.distances[0]:.3f} "
              f"(need >0.1), goldens {'match' if golden_ok else 'differ'}, {elapsed:.1f}s (limit 30s)")
    assert _verdict(9, "Example 2 reproduction", ok, detail)


def test_10_example_one():
    conv = moment_growth(2, 1, 256)
    div = moment_growth(2, 2, 256)
    last_inc = conv.increments()[-1]
    ratio = div.value_at(256) / div.value_at(4)
    ok = last_inc < 1e-3 and ratio > 3
    detail = f"p=1 last increment {last_inc:.2e} (need <1e-3), p=2 M(256)/M(4) = {ratio:.3f} (need >3)"
    assert _verdict(10, "Example 1 reproduction", ok, detail)


def test_11_dyadic_consistency():
    rng = random.Random("c11")
    bad = checks = 0
    for k in range(50):
        space = random_space(rng, KINDS[k % 3])
        x, y = random_measure(rng, space), random_measure(rng, space)
        for e in range(7):
            den = 2**e
            for num in range(den + 1):
                checks += 1
                bad += dyadic_combination(x, y, num, den) != convex_sum(x, y, F(num, den))
    assert _verdict(11, "dyadic consistency", bad == 0, f"{checks} combinations over 50 pairs, {bad} mismatches")
