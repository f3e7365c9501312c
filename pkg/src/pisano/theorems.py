"""Divisibility bounds for periods modulo a prime, and range scans that check them.

For p odd with p not dividing B or delta = A**2 + 4B:

* delta a nonzero square mod p: the period divides p - 1
  (T2 for Fibonacci, T6 in general);
* delta a nonresidue: the period divides 2(p + 1) * ord(B**2 mod p)
  (T5 for Fibonacci, where ord(1) = 1, T9 in general).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Iterable

from .errors import MethodDisagreement
from .modular import legendre_symbol, mult_order, primes_up_to
from .quadratic_field import Classification
from .recurrence import PeriodReport, RecurrenceSpec, analyze, naive_periods

__all__ = [
    "BoundResult",
    "Classification",
    "SurveyResult",
    "SurveyRow",
    "bound_for_prime",
    "classify",
    "discriminant",
    "tightness_survey",
    "verify_range",
]


def discriminant(a: int, b: int) -> int:
    """A**2 + 4B over the integers."""
    return a * a + 4 * b


def classify(a: int, b: int, p: int) -> Classification:
    if b % p == 0:
        return Classification.DEGENERATE
    if p == 2:
        return Classification.SMALL_PRIME
    ls = legendre_symbol(discriminant(a, b), p)
    if ls == 0:
        return Classification.RAMIFIED
    return Classification.SPLIT if ls == 1 else Classification.INERT


@dataclass(frozen=True)
class BoundResult:
    p: int
    a: int
    b: int
    classification: Classification
    bound: int | None
    theorem: str | None

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "A": self.a,
            "B": self.b,
            "classification": self.classification.value,
            "bound": self.bound,
            "theorem": self.theorem,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> BoundResult:
        return cls(
            data["p"], data["A"], data["B"], Classification(data["classification"]), data["bound"], data["theorem"]
        )


def bound_for_prime(a: int, b: int, p: int) -> BoundResult:
    """Theorem bound on the period mod ``p``; ``bound`` is None where no theorem applies."""
    cls = classify(a, b, p)
    fib = a % p == 1 and b % p == 1
    if cls is Classification.SPLIT:
        return BoundResult(p, a, b, cls, p - 1, "T2" if fib else "T6")
    if cls is Classification.INERT:
        bound = 2 * (p + 1) * mult_order(b * b, p)
        return BoundResult(p, a, b, cls, bound, "T5" if fib else "T9")
    return BoundResult(p, a, b, cls, None, None)


def _report_for_prime(args: tuple[int, int, int]) -> PeriodReport:
    a, b, p = args
    return analyze(RecurrenceSpec(a, b, p), naive=False)


def _scan(a: int, b: int, primes: Iterable[int], naive: bool, workers: int) -> list[PeriodReport]:
    jobs = [(a, b, p) for p in primes]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_report_for_prime, jobs, chunksize=16))
    else:
        reports = [_report_for_prime(job) for job in jobs]
    if naive:
        for report, k in zip(reports, naive_periods([r.spec for r in reports])):
            report.method_agreement["naive"] = k
            if k != report.period:
                raise MethodDisagreement(f"{report.spec}: {report.method_agreement}")
    return sorted(reports, key=lambda r: r.spec.m)


def verify_range(a: int, b: int, p_max: int, *, naive: bool = False, workers: int = 1) -> list[PeriodReport]:
    """PeriodReports for every odd prime p <= p_max with p not dividing B.

    Ramified primes are reported with no bound (the theorems exclude them);
    any report with ``violation`` set is a counterexample.  ``naive`` adds the
    direct-iteration cross-check for every prime.
    """
    if p_max < 3:
        raise ValueError("p_max must be >= 3")
    primes = [p for p in primes_up_to(p_max) if p != 2 and b % p != 0]
    return _scan(a, b, primes, naive, workers)


@dataclass(frozen=True)
class SurveyRow:
    p: int
    period: int
    bound: int
    tight: bool

    def to_dict(self) -> dict[str, Any]:
        return {"p": self.p, "period": self.period, "bound": self.bound, "tight": self.tight}


@dataclass(frozen=True)
class SurveyResult:
    a: int
    b: int
    p_max: int
    rows: tuple[SurveyRow, ...]

    @property
    def tight_count(self) -> int:
        return sum(r.tight for r in self.rows)

    @property
    def non_tight(self) -> list[int]:
        return [r.p for r in self.rows if not r.tight]

    @property
    def tight_fraction(self) -> float:
        return self.tight_count / len(self.rows) if self.rows else 0.0


def tightness_survey(a: int, b: int, p_max: int, *, workers: int = 1) -> SurveyResult:
    """Compare each period with its theorem bound over odd primes p <= p_max.

    Only primes with a bound are surveyed, so ramified primes (p = 5 for
    Fibonacci) drop out.
    """
    reports = verify_range(a, b, p_max, workers=workers)
    rows = tuple(SurveyRow(r.spec.m, r.period, r.bound, r.tight) for r in reports if r.bound is not None)
    return SurveyResult(a, b, p_max, rows)
