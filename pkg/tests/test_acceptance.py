"""Acceptance suite: one test per exit criterion, each at its pinned
tolerance and runtime budget.  Run with ``pytest tests/test_acceptance.py -v -s``
to see one PASS/FAIL line per criterion.
"""

import csv
import io
import time
from contextlib import contextmanager
from fractions import Fraction

from nbtail.chvatal import (
    binomial_chvatal_argmin,
    global_infimum,
    infimum_seq_integral,
    infimum_seq_sum,
    monotonicity_check,
    coefficient_identity_check,
    panel_bound_check,
    panel_decrease_check,
    tail_identity_check,
)
from nbtail.cli import main as cli_main
from nbtail.nbdist import NBParams, mean_interval_index, mean_tail_prob, nb_cdf_sum, pascal_mean_tail
from nbtail.oracle import exact_cdf_rational, mc_cdf_estimate


@contextmanager
def criterion(number: int, name: str, budget: float | None = None):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        elapsed = time.perf_counter() - started
        print(f"criterion {number} ({name}): FAIL ({elapsed:.2f}s)")
        raise
    elapsed = time.perf_counter() - started
    if budget is not None and elapsed >= budget:
        print(f"criterion {number} ({name}): FAIL (runtime {elapsed:.2f}s over {budget:g}s budget)")
        raise AssertionError(f"runtime {elapsed:.2f}s exceeded the {budget:g}s budget")
    print(f"criterion {number} ({name}): PASS ({elapsed:.2f}s)")


def rel_err(got: float, ref: float) -> float:
    return abs(got - ref) / abs(ref) if ref != 0.0 else abs(got - ref)


def test_criterion_1_closed_form_infimum_values(capsys):
    expected = {"1": 0.5, "2": 4.0 / 9.0, "3": 27.0 / 64.0}
    with criterion(1, "closed-form infimum at r = 1, 2, 3 via the CLI", budget=1.0):
        for r_text, reference in expected.items():
            code = cli_main(["inf", "--r", r_text])
            out = capsys.readouterr().out
            assert code == 0
            row = list(csv.DictReader(io.StringIO(out)))[0]
            assert row["attained"] == "false"
            assert rel_err(float(row["value"]), reference) <= 1e-15, r_text


def test_criterion_2_strict_bound_on_desk_scale_grid():
    with criterion(2, "mean-tail probability strictly above the infimum on 1e4-point grids", budget=10.0):
        points = 10**4
        for r in (0.5, 1.0, 2.0, 3.0, 7.5):
            infimum = global_infimum(r)
            grid = [i / points for i in range(1, points + 1)]
            grid.append(r / (r + 1.0) + 1e-6)
            grid_min = 2.0
            for p in grid:
                value = mean_tail_prob(NBParams(r, p)).value
                assert value > infimum, (r, p)
                if value < grid_min:
                    grid_min = value
            assert grid_min - infimum <= 1e-3, r


def test_criterion_3_sequence_forms_agree():
    with criterion(3, "sum and integral forms of the infimum sequence agree to 1e-10", budget=5.0):
        cases = 0
        for r in (0.3, 0.5, 1.0, 2.0, 2.7, 5.0, 10.0):
            for n in range(101):
                by_sum = infimum_seq_sum(r, n).value
                by_integral = infimum_seq_integral(r, n).value
                assert rel_err(by_sum, by_integral) <= 1e-10, (r, n)
                cases += 1
        assert cases == 707


def test_criterion_4_tail_identity_by_quadrature():
    with criterion(4, "improper tail integral matches its closed form to 1e-8", budget=10.0):
        exact = tail_identity_check(1.0, 0, 1e-12)
        assert exact.passed
        assert abs(exact.lhs - 0.125) <= 1e-12
        assert abs(exact.rhs - 0.125) <= 1e-12
        for r in (0.5, 1.0, 3.0, 8.0):
            for n in range(31):
                report = tail_identity_check(r, n, 1e-8)
                assert report.passed, (r, n, report)


def test_criterion_5_sequence_strictly_increasing():
    with criterion(5, "infimum sequence strictly increasing with gaps above 1e-14"):
        for r in (0.3, 0.5, 1.0, 2.0, 2.7, 5.0, 10.0):
            reports = monotonicity_check(r, 300)
            assert len(reports) == 300
            for report in reports:
                assert report.passed, (r, report)
                assert report.lhs - report.rhs > 1e-14


def test_criterion_6_coefficient_identity():
    with criterion(6, "coefficient identity residual below 1e-10 for m <= n <= 25"):
        for r in (0.5, 1.0, 2.0, 3.3):
            for n in range(1, 26):
                for m in range(1, n + 1):
                    report = coefficient_identity_check(r, n, m, 1e-10)
                    assert report.passed, (r, n, m, report)


def test_criterion_7_panel_bound_and_decrease():
    with criterion(7, "single-panel integral strictly below the closed form; integrand decreasing"):
        for r in (0.5, 1.0, 3.0, 8.0):
            for n in range(31):
                bound = panel_bound_check(r, n)
                assert bound.passed, (r, n, bound)
                assert bound.lhs < bound.rhs
                decrease = panel_decrease_check(r, n)
                assert decrease.passed, (r, n, decrease)


def test_criterion_8_pascal_shift_equivalence():
    with criterion(8, "Pascal mean-tail equals NB mean-tail to 1e-13 for integer shapes"):
        for r in (1, 2, 3, 5):
            for p in (0.2, 0.5, 0.8):
                pascal = pascal_mean_tail(r, p).value
                direct = mean_tail_prob(NBParams(float(r), p)).value
                assert rel_err(pascal, direct) <= 1e-13, (r, p)


def test_criterion_9_exact_rational_agreement():
    with criterion(9, "floating partial sums match exact rational values to 1e-13"):
        for r in (1, 2, 3, 5):
            for p in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
                params = NBParams(float(r), float(p))
                for n in range(51):
                    exact = exact_cdf_rational(r, p, n)
                    approx = nb_cdf_sum(params, n).value
                    assert rel_err(approx, float(exact)) <= 1e-13, (r, p, n)


def test_criterion_10_binomial_argmin_closest_to_two_thirds():
    with criterion(10, "binomial mean-tail argmin lands closest to 2n/3", budget=5.0):
        for n in range(2, 31):
            argmin = binomial_chvatal_argmin(n)
            target = 2 * n / 3
            best = min(abs(m - target) for m in range(n + 1))
            closest = {m for m in range(n + 1) if abs(m - target) == best}
            assert set(argmin) <= closest, (n, argmin, sorted(closest))


def test_criterion_11_monte_carlo_consistency():
    with criterion(11, "seeded Monte Carlo CDF within 4 standard errors", budget=30.0):
        seed = 20260810
        for r, p in ((1.0, 0.5), (2.5, 0.3), (3.0, 0.75)):
            params = NBParams(r, p)
            n = mean_interval_index(params)
            analytic = mean_tail_prob(params).value
            estimate, std_error = mc_cdf_estimate(r, p, n, draws=10**6, seed=seed)
            assert abs(estimate - analytic) <= 4.0 * std_error, (r, p)
        first = mc_cdf_estimate(1.0, 0.5, 1, draws=10**4, seed=seed)
        second = mc_cdf_estimate(1.0, 0.5, 1, draws=10**4, seed=seed)
        assert first == second
