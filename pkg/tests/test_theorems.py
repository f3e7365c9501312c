import random

import pytest

from pisano.modular import legendre_symbol, mult_order, primes_up_to
from pisano.quadratic_field import Classification
from pisano.recurrence import RecurrenceSpec, naive_period
from pisano.theorems import (
    BoundResult,
    bound_for_prime,
    classify,
    discriminant,
    tightness_survey,
    verify_range,
)

ODD_PRIMES_500 = [p for p in primes_up_to(500) if p != 2]


def test_discriminant_examples():
    assert discriminant(1, 1) == 5
    assert discriminant(3, 2) == 17
    assert discriminant(1, 2) == 9
    assert discriminant(-3, -2) == 1


@pytest.mark.parametrize(
    "a, b, p, expected",
    [
        (1, 1, 11, Classification.SPLIT),
        (1, 1, 7, Classification.INERT),
        (1, 1, 5, Classification.RAMIFIED),
        (1, 2, 3, Classification.RAMIFIED),
        (1, 1, 2, Classification.SMALL_PRIME),
        (1, 2, 2, Classification.DEGENERATE),
        (3, 7, 7, Classification.DEGENERATE),
    ],
)
def test_classify_examples(a, b, p, expected):
    assert classify(a, b, p) is expected


def test_fibonacci_classification_by_residue_of_p_mod_5():
    for p in primes_up_to(10_000):
        if p < 7:
            continue
        cls = classify(1, 1, p)
        assert (cls is Classification.SPLIT) == (p % 5 in (1, 4))
        assert (cls is Classification.INERT) == (p % 5 in (2, 3))


@pytest.mark.parametrize(
    "a, b, p, bound, theorem",
    [
        (3, 2, 13, 12, "T6"),
        (3, 2, 7, 48, "T9"),
        (3, 2, 37, 1368, "T9"),
        (3, 1, 11, 24, "T9"),
        (3, 1, 19, 40, "T9"),
        (1, 1, 11, 10, "T2"),
        (1, 1, 7, 16, "T5"),
    ],
)
def test_bound_examples(a, b, p, bound, theorem):
    r = bound_for_prime(a, b, p)
    assert (r.bound, r.theorem) == (bound, theorem)


def test_bound_without_theorem():
    for a, b, p in [(1, 1, 5), (1, 1, 2), (3, 7, 7)]:
        r = bound_for_prime(a, b, p)
        assert r.bound is None and r.theorem is None
    assert bound_for_prime(3, 7, 7).classification is Classification.DEGENERATE


def test_bound_invariants():
    rng = random.Random(1)
    for _ in range(3000):
        p = rng.choice(ODD_PRIMES_500)
        a, b = rng.randrange(-1000, 1000), rng.randrange(-1000, 1000)
        r = bound_for_prime(a, b, p)
        if r.classification is Classification.SPLIT:
            assert r.bound == p - 1
        elif r.classification is Classification.INERT:
            assert r.bound == 2 * (p + 1) * mult_order(b * b, p)
            assert r.bound <= p * p - 1
            if b % p == 1:
                assert r.bound == 2 * (p + 1)
        else:
            assert r.bound is None
    assert BoundResult.from_dict(r.to_dict()) == r


def test_verify_range_fibonacci_100():
    reports = verify_range(1, 1, 100)
    assert [r.spec.m for r in reports] == [p for p in primes_up_to(100) if p != 2]
    assert len(reports) == 24
    assert not any(r.violation for r in reports)
    assert {r.spec.m for r in reports if not r.tight} == {5, 29, 47, 89}
    five = next(r for r in reports if r.spec.m == 5)
    assert (five.classification, five.period, five.bound) == (Classification.RAMIFIED, 20, None)


def test_verify_range_one_two_always_split():
    for r in verify_range(1, 2, 100):
        if r.spec.m == 3:
            assert r.classification is Classification.RAMIFIED
        else:
            assert r.classification is Classification.SPLIT
            assert r.bound == r.spec.m - 1 and r.divides_bound


def test_verify_range_p3():
    assert naive_period(RecurrenceSpec(1, 1, 3)) == 8
    (r,) = verify_range(1, 1, 3)
    assert (r.spec.m, r.classification, r.period, r.bound, r.tight) == (3, Classification.INERT, 8, 8, True)


def test_verify_range_skips_primes_dividing_b_and_naive_crosscheck():
    reports = verify_range(3, 10, 60, naive=True)
    assert 5 not in {r.spec.m for r in reports}
    assert all(r.method_agreement["naive"] == r.period for r in reports)
    with pytest.raises(ValueError):
        verify_range(1, 1, 2)


def test_verify_range_parallel_matches_serial():
    serial = verify_range(3, 2, 200)
    parallel = verify_range(3, 2, 200, workers=2)
    assert [r.to_dict() for r in serial] == [r.to_dict() for r in parallel]


def test_tightness_survey_rows():
    survey = tightness_survey(1, 1, 100)
    assert survey.non_tight == [29, 47, 89]
    assert 5 not in {row.p for row in survey.rows}
    row = next(row for row in survey.rows if row.p == 11)
    assert (row.p, row.period, row.bound, row.tight) == (11, 10, 10, True)
    assert survey.tight_count == len(survey.rows) - 3

    row = next(row for row in tightness_survey(3, 2, 40).rows if row.p == 37)
    assert (row.period, row.bound, row.tight) == (1368, 1368, True)


def test_theorems_hold_for_random_coefficients():
    rng = random.Random(77)
    for _ in range(20):
        a, b = rng.randrange(-500, 500), rng.randrange(-500, 500) or 1
        for r in verify_range(a, b, 200):
            assert not r.violation
            if r.bound is not None:
                assert legendre_symbol(discriminant(a, b), r.spec.m) != 0
