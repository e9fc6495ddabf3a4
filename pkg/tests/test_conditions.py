import math
import pytest

from tsbvp.conditions import (alpha, capital_A, capital_B, check_existence_pair, check_lower_condition,
                              check_upper_condition, condition_constants, h_sup_norm, run_condition, scan_infinite,
                              scan_multiplicity)
from tsbvp.expr import parse
from tsbvp.oracle import reference_lower_threshold, reference_upper_threshold
from tsbvp.solvers import make_problem

MULTIPLICITY_F = 'min(100, max(1, 1 + 99*(u-0.3)/0.5)) + min(900, max(0, 900*(u-5)/3))'
OSCILLATING_F = 'u*(2 + 1.5*sin(log(u + 1e-300))) + 0.01'


def test_alpha():
    assert alpha(2, 1) == pytest.approx(2.0)
    assert alpha(2, 2) == pytest.approx(6.0)
    assert alpha(3, 1) == pytest.approx(2 * math.sqrt(2))
    with pytest.raises(ValueError):
        alpha(2, 0)


def test_capital_A_and_B():
    assert capital_A(1, 2, 1, 0) == pytest.approx(1 / alpha(2, 1))
    assert capital_A(1, 2, 1, 0) == pytest.approx(0.5)
    # (1 - 2 * 0.1) / 2
    assert capital_A(1, 2, 1, 0.1) == pytest.approx(0.4)
    assert capital_A(0.1, 2, 1, 0.1) < 0
    assert capital_B(2, 1, 0.5) == pytest.approx(0.5)
    assert capital_B(3, 1, 0.5) == pytest.approx(0.25)
    with pytest.raises(ValueError):
        capital_A(0, 2, 1, 0)
    with pytest.raises(ValueError):
        capital_B(2, 1, 1)


def test_capital_B_vanishes_as_eta_approaches_T():
    assert capital_B(2, 1, 1 - 1e-6) == pytest.approx(1e-6, abs=1e-12)
    assert capital_B(3, 1, 1 - 1e-6) == pytest.approx(1e-12, rel=1e-6)
    assert 0 < capital_B(1.5, 1, 1 - 1e-6) < capital_B(1.5, 1, 1 - 1e-3) < capital_B(1.5, 1, 0.5)


def test_h_sup_norm():
    assert h_sup_norm(parse('0'), 1, 11) == 0.0
    assert h_sup_norm(parse('0.5*t - 0.75'), 1, 101) == pytest.approx(0.75)
    assert h_sup_norm(parse('sin(3.141592653589793*t)'), 1, 3) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        h_sup_norm(parse('t'), 1, 1)


def test_condition_constants():
    constants = condition_constants(make_problem(2, 1, 0.5, '1', h='0.1', resolution=0.1), samples=11)
    assert constants.alpha == pytest.approx(2.0)
    assert constants.B == pytest.approx(0.5)
    assert constants.h_sup == pytest.approx(0.1)
    assert constants.A(1) == pytest.approx(0.4)


def test_constant_source_thresholds():
    constants = condition_constants(make_problem(2, 1, 0.5, '1', resolution=0.1))
    upper = check_upper_condition(parse('1'), 2, constants)
    assert upper.rhs == pytest.approx(1.0)
    assert upper.lhs == 1.0
    assert upper.passed
    lower = check_lower_condition(parse('1'), 2, constants)
    assert lower.rhs == pytest.approx(1.0)
    assert lower.passed
    assert 'PASS' in str(upper) and '(ii)' in str(lower)


def test_existence_pair():
    problem = make_problem(2, 1, 0.5, '1', resolution=0.1)
    upper, lower = check_existence_pair(4, 0.5, problem, samples=1001)
    assert upper.condition == 'i' and upper.level == 4.0
    assert upper.rhs == pytest.approx(2.0) and upper.passed
    assert lower.condition == 'ii' and lower.level == 0.5
    assert lower.rhs == pytest.approx(0.25) and lower.passed

    upper, _ = check_existence_pair(1, 0.5, problem, samples=1001)
    assert not upper.passed
    assert 'FAIL' in str(upper)

    with pytest.raises(ValueError):
        check_existence_pair(1, 2, problem)
    with pytest.raises(ValueError):
        check_existence_pair(1, 0, problem)


@pytest.mark.parametrize('p', [2, 3])
def test_upper_condition_stays_satisfied_as_a_grows_without_h(p):
    problem = make_problem(p, 1, 0.5, 'min(u, 1)', resolution=0.1)
    levels = [0.5, 1, 2, 3, 5, 10, 20]
    uppers = [check_existence_pair(a, 0.25, problem, samples=1001)[0] for a in levels]
    # max f on [0, a] is 1 for every a >= 1
    assert all(r.lhs == 1.0 for r in uppers[1:])
    first = next(i for i, r in enumerate(uppers) if r.passed)
    assert levels[first] <= 3
    assert all(r.passed for r in uppers[first:])


def test_upper_condition_reports_large_h():
    problem = make_problem(2, 1, 0.5, '1', h='10', resolution=0.1)
    upper, _ = check_existence_pair(4, 0.5, problem, samples=101)
    assert not upper.passed
    assert 'h too large for this a' in upper.diagnostic
    assert 'h too large' in str(upper)


def test_scan_multiplicity_predicts_shells():
    problem = make_problem(2, 0.1, 0.09, MULTIPLICITY_F, resolution=0.001)
    result = scan_multiplicity([0.2, 5, 200], problem, samples=20001)
    assert result.passed
    assert [r.condition for r in result.reports] == ['i', 'ii', 'i']
    assert result.shells == ((0.2, 5.0), (5.0, 200.0))
    assert result.reports[0].rhs == pytest.approx(0.2 / 0.11)
    assert result.reports[1].rhs == pytest.approx(0.05)
    assert result.reports[2].lhs == pytest.approx(1000.0)


def test_scan_multiplicity_shares_single_level_checks():
    problem = make_problem(2, 1, 0.5, '1 + u/4', h='0.05*t', resolution=0.1)
    result = scan_multiplicity([0.5, 2, 8], problem, samples=501)
    upper, lower = check_existence_pair(8, 2, problem, samples=501)
    assert result.reports[1] == lower
    assert result.reports[2] == upper


def test_scan_multiplicity_validation():
    problem = make_problem(2, 1, 0.5, '1', resolution=0.1)
    with pytest.raises(ValueError):
        scan_multiplicity([1], problem)
    with pytest.raises(ValueError):
        scan_multiplicity([1, 1], problem)
    with pytest.raises(ValueError):
        scan_multiplicity([0, 1], problem)


def test_scan_multiplicity_no_shells_on_failure():
    problem = make_problem(2, 1, 0.5, '1', resolution=0.1)
    result = scan_multiplicity([0.5, 2], problem, samples=101)
    assert not result.passed
    assert result.shells == ()


def test_scan_infinite_oscillating_source():
    problem = make_problem(2, 0.1, 0.05, OSCILLATING_F, resolution=0.001)
    result = scan_infinite(problem, a0=1, ratio=0.5, k_max=8)
    assert result.passed
    assert len(result.pairs) == 8
    assert [pair.passed for pair in result.pairs] == [True] * 4 + [False] * 4
    assert result.longest_run == (1, 4)
    assert result.longest_run[1] >= 3

    for pair in result.pairs:
        assert pair.a == pytest.approx(0.5**(2 * pair.k))
        assert pair.b == pytest.approx(0.5**(2 * pair.k + 1))
        assert pair.upper.rhs == pytest.approx(reference_upper_threshold(pair.a, 2, 0.1, 0.0), rel=1e-9)
        assert pair.lower.rhs == pytest.approx(reference_lower_threshold(pair.b, 2, 0.1, 0.05), rel=1e-9)
        assert pair.lower.passed


def test_scan_infinite_without_passing_pairs():
    problem = make_problem(2, 1, 0.5, '1', resolution=0.1)
    result = scan_infinite(problem, k_max=4, samples=101)
    assert not result.passed
    assert result.longest_run == (None, 0)


def test_scan_infinite_validation():
    problem = make_problem(2, 1, 0.5, '1', resolution=0.1)
    for kwargs in (dict(a0=0), dict(ratio=1), dict(k_max=0)):
        with pytest.raises(ValueError):
            scan_infinite(problem, **kwargs)


def test_refined_extremum():
    constants = condition_constants(make_problem(2, 1, 0.5, '1', resolution=0.1))
    f = parse('u*(1 - u)')
    upper = check_upper_condition(f, 1, constants, samples=4, refine=True)
    assert upper.lhs == pytest.approx(2 / 9)
    assert upper.refined_lhs == pytest.approx(0.25, abs=1e-8)
    assert 'refined' in str(upper)
    lower = check_lower_condition(f, 1, constants, samples=4, refine=True)
    assert lower.refined_lhs <= lower.lhs
    assert check_upper_condition(f, 1, constants, samples=4).refined_lhs is None


def test_run_condition_dispatch():
    problem = make_problem(2, 1, 0.5, '1', resolution=0.1)
    opt = {'type': 'existence', 'a': 4, 'b': 0.5, 'samples': 101}
    result = run_condition(problem, opt)
    assert result.condition == 'existence'
    assert result.passed
    assert result.shells == ((0.5, 4),)
    assert opt['type'] == 'existence'

    result = run_condition(problem, {'type': 'multiplicity', 'levels': [0.5, 2], 'samples': 101})
    assert result.condition == 'multiplicity'
    result = run_condition(problem, {'type': 'infinite', 'k_max': 2, 'samples': 101})
    assert result.condition == 'infinite'

    with pytest.raises(KeyError):
        run_condition(problem, {'type': 'unknown'})
