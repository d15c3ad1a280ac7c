import json
from fractions import Fraction

import pytest

from semicubic.arith import CapacityError, DomainError, PrimeSet
from semicubic.counting import (
    CountReport,
    CountRequest,
    RSource,
    count_report,
    indicator_1S,
    iter_points,
    n_mobius,
    n_oracle,
    n_star,
    n_star_by_divisor,
    s_sum,
    t_sum,
)
from semicubic.reps import r4k_bruteforce, r4k_star

S0 = PrimeSet.empty()
S2 = PrimeSet.of(2)
S23 = PrimeSet.of(2, 3)


def req(bound, k=1, s_set=S0, source=RSource.JACOBI):
    return CountRequest(k=k, bound=Fraction(bound), s_set=s_set, r_source=source)


# --- independent definitional oracles -------------------------------------

def _brute_indicator(num, den, s_set):
    q = Fraction(num, den)
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61):
        if p in s_set:
            continue
        v = 0
        n, d = q.numerator, q.denominator
        while n % p == 0:
            n //= p
            v += 1
        while d % p == 0:
            d //= p
            v -= 1
        if v == 1:
            return 0
    return 1


def _brute_divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


def _brute_n_star(bound, k, s_set, table):
    total = 0
    b = Fraction(bound)
    for n in range(1, int(b) + 1):
        for d in _brute_divisors(n**3):
            if Fraction(n**3) / b < d <= b * b and _brute_indicator(n * n, d, s_set):
                total += table[d]
    return 2 * total


def _brute_s(x_bound, y_bound, k, s_set):
    total = 0
    for n in range(1, int(Fraction(x_bound)) + 1):
        for d in _brute_divisors(n**3):
            if d <= Fraction(y_bound) and _brute_indicator(n * n, d, s_set):
                total += r4k_star(d, k)
    return total


def _brute_t(bound, k, s_set):
    total = 0
    b = Fraction(bound)
    for n in range(1, int(b) + 1):
        for d in _brute_divisors(n**3):
            if d <= Fraction(n**3) / b and _brute_indicator(n * n, d, s_set):
                total += r4k_star(d, k)
    return total


# --- indicator --------------------------------------------------------------

def test_indicator_examples():
    assert indicator_1S(1, 1, S0) == 1
    assert indicator_1S(4, 2, S0) == 0
    assert indicator_1S(4, 2, S2) == 1
    with pytest.raises(DomainError):
        indicator_1S(0, 1, S0)


def test_indicator_against_brute_force():
    for num in range(1, 61):
        for den in range(1, 61):
            for s_set in (S0, S2, S23):
                assert indicator_1S(num, den, s_set) == _brute_indicator(
                    num, den, s_set
                ), (num, den, str(s_set))


# --- n_star / n_mobius ------------------------------------------------------

def test_n_star_examples():
    assert n_star(1, req(1)) == 0
    assert n_star(2, req(2)) == 16
    assert n_star(2, req(2, source=RSource.EXACT)) == 16


def test_n_star_matches_definition():
    table = r4k_bruteforce(400, 1)
    for bound in (1, 2, 3, 5, 8, 13, 20):
        for s_set in (S0, S2, S23):
            got = n_star(bound, req(bound, s_set=s_set))
            want = _brute_n_star(bound, 1, s_set, table)
            assert got == want, (bound, str(s_set))


def test_n_star_r_source_consistency():
    for bound in (5, 10, 20, 30, 50):
        a = n_star(bound, req(bound, source=RSource.JACOBI))
        b = n_star(bound, req(bound, source=RSource.EXACT))
        assert a == b, bound


def test_n_mobius_examples():
    assert n_mobius(2, req(2)) == 16
    assert n_mobius(1, req(1)) == 0
    assert n_mobius(30, req(30)) == n_oracle(30, 1, S0)


def test_n_star_by_divisor_matches_individual_calls():
    from semicubic.arith import mobius

    for bound in (12, 20):
        for s_set in (S0, S23):
            by_d = n_star_by_divisor(bound, req(bound, s_set=s_set))
            # only squarefree divisors can contribute to the Mobius sum
            assert all(mobius(e) != 0 for e in by_d)
            for e in range(1, bound + 1):
                if mobius(e) == 0:
                    assert e not in by_d
                    continue
                scaled = Fraction(bound, e)
                assert by_d.get(e, 0) == n_star(scaled, req(
                    scaled, s_set=s_set)), (bound, e)


def test_monotonicity():
    vals = [n_star(b, req(b)) for b in (2, 4, 8, 12, 16)]
    assert vals == sorted(vals)
    morals = [n_mobius(b, req(b)) for b in (2, 4, 8, 12, 16)]
    assert morals == sorted(morals)
    for b in (10, 20):
        assert n_star(b, req(b, s_set=S2)) >= n_star(b, req(b))
        assert n_oracle(b, 1, S2) >= n_oracle(b, 1, S0)


def test_jacobi_requires_k1():
    with pytest.raises(DomainError):
        CountRequest(k=2, bound=Fraction(5), s_set=S0, r_source=RSource.JACOBI)


def test_exact_capacity_guard():
    with pytest.raises(CapacityError):
        n_star(10**4, req(10**4, source=RSource.EXACT))


# --- oracle -----------------------------------------------------------------

def test_oracle_examples():
    assert n_oracle(1, 1, S0) == 0
    assert n_oracle(2, 1, S0) == 16
    assert n_oracle(10, 1, S2) >= n_oracle(10, 1, S0)


def test_oracle_guard():
    with pytest.raises(CapacityError):
        n_oracle(101, 1, S0)
    with pytest.raises(CapacityError):
        n_oracle(13, 2, S0)


def test_oracle_against_point_enumeration():
    from semicubic.geometry import semi_integral_ok

    for bound in (2, 5, 9):
        for s_set in (S0, S2):
            direct = sum(
                2
                for pt in iter_points(bound, k=1, strict_z=True)
                if semi_integral_ok(pt, s_set)
            )
            assert n_oracle(bound, 1, s_set) == direct


def test_oracle_k2_small():
    # 8-dimensional enumeration cross-checked against the Mobius route
    for bound in (2, 4):
        got = n_oracle(bound, 2, S0)
        want = n_mobius(bound, req(bound, k=2, source=RSource.EXACT))
        assert got == want


def test_route_equality_small():
    for bound in (5, 10, 20):
        for s_set in (S0, S2, S23):
            a = n_oracle(bound, 1, s_set)
            b = n_mobius(bound, req(bound, s_set=s_set))
            c = n_mobius(bound, req(bound, s_set=s_set, source=RSource.EXACT))
            assert a == b == c, (bound, str(s_set))


# --- s_sum / t_sum ----------------------------------------------------------

def test_s_sum_examples():
    assert s_sum(1, 1, req(1)) == 1
    assert s_sum(0.5, 10, req(1)) == 0
    # direct expansion: n=1 contributes 1; n=2 contributes terms at
    # d in {1,4,8} (d=2 is excluded by the indicator), weights 1, 3, 3
    assert s_sum(2, 8, req(2)) == 8
    assert s_sum(2, 4, req(2)) == 5


def test_t_sum_examples():
    # direct expansion: n=2, d <= 4, d | 8: weights 1 (d=1) + 0 (d=2) + 3 (d=4)
    assert t_sum(2, req(2)) == 4
    assert t_sum(1, req(1)) == 1


def test_t_sum_vanishes_when_ranges_empty():
    # for B > n^3 at every n <= X the inner range is empty; B=2 sees only n=1
    assert t_sum(Fraction(3, 2), req(Fraction(3, 2))) == 0


def test_s_t_against_definitions():
    for s_set in (S0, S2, S23):
        for x_b, y_b in ((1, 1), (2, 8), (3, 27), (5, 25), (7, 343), (10, 100)):
            assert s_sum(x_b, y_b, req(max(x_b, 1), s_set=s_set)) == _brute_s(
                x_b, y_b, 1, s_set
            )
        for b in (1, 2, 3, 5, 8, 12):
            assert t_sum(b, req(b, s_set=s_set)) == _brute_t(b, 1, s_set)


def test_s_t_k2_against_definitions():
    r2 = CountRequest(k=2, bound=Fraction(6), s_set=S0, r_source=RSource.RSTAR)
    assert s_sum(6, 36, r2) == _brute_s(6, 36, 2, S0)
    assert t_sum(6, r2) == _brute_t(6, 2, S0)


def test_st_nstar_relation():
    # 2 (S - T) = n_star with the model weights; times 8 with the exact r_4
    for bound in (10, 25, 60):
        for s_set in (S0, S23):
            r_model = req(bound, s_set=s_set, source=RSource.RSTAR)
            r_jac = req(bound, s_set=s_set)
            st = s_sum(bound, bound * bound, r_model) - t_sum(bound, r_model)
            assert 2 * st == n_star(bound, r_model)
            assert 16 * st == n_star(bound, r_jac)


# --- reports ----------------------------------------------------------------

def test_count_report_round_trip():
    r = req(20, s_set=S23)
    rep = count_report(r, with_oracle=True, with_st=True)
    assert rep.n_oracle == rep.n_mobius
    assert rep.points == rep.tuples // 2
    blob = rep.to_json(include_timings=False)
    back = CountReport.from_json_dict(json.loads(blob))
    assert back.request == rep.request
    assert back.n_star_values == rep.n_star_values
    assert back.n_mobius == rep.n_mobius
    assert back.n_oracle == rep.n_oracle
    assert back.s_value == rep.s_value and back.t_value == rep.t_value


def test_count_report_mobius_recomputation():
    from semicubic.arith import mobius

    rep = count_report(req(30))
    recomputed = sum(mobius(e) * v for e, v in rep.n_star_values.items())
    assert recomputed == rep.n_mobius
