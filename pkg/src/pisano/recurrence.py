"""Periods of E_{n+1} = A*E_n + B*E_{n-1} (mod m), with E_0 = 0, E_1 = 1.

Three independent routes for a prime modulus:

* ``naive_period``: walk the sequence until the pair (0, 1) comes back;
* ``matrix_order_period``: multiplicative order of the companion matrix
  U = [[A, B], [1, 0]], peeled down from a known multiple;
* ``eigenvalue_period``: orders of the roots of x**2 - A*x - B in the
  splitting field.

Prime powers and composite moduli are assembled from the prime case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, NamedTuple, Sequence

import numpy as np

from .errors import BoundViolation, CapExceeded, InvalidModulus, MethodDisagreement, NotPurelyPeriodic
from .modular import Factorization, factorize, is_prime, mult_order, order_from_multiple
from .quadratic_field import Classification, eigenvalues, fp2_order

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

__all__ = [
    "Mat2",
    "PeriodReport",
    "RecurrenceSpec",
    "analyze",
    "companion",
    "eigenvalue_period",
    "mat_mul",
    "mat_pow",
    "matrix_order_period",
    "naive_period",
    "naive_periods",
    "period",
    "period_composite",
    "period_prime_power",
    "sequence_slice",
]

# Above this modulus the direct walk (up to m**2 steps) is skipped by analyze().
NAIVE_LIMIT = 10_000


@dataclass(frozen=True)
class RecurrenceSpec:
    """Coefficients A, B and modulus m. A and B may be any integers."""

    a: int
    b: int
    m: int

    def __post_init__(self) -> None:
        if self.m < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {self.m}")

    @classmethod
    def fibonacci(cls, m: int) -> RecurrenceSpec:
        return cls(1, 1, m)

    @property
    def delta(self) -> int:
        return (self.a * self.a + 4 * self.b) % self.m

    @property
    def is_fibonacci(self) -> bool:
        return self.a % self.m == 1 and self.b % self.m == 1

    def require_purely_periodic(self) -> None:
        if math.gcd(self.b, self.m) != 1:
            raise NotPurelyPeriodic(f"gcd(B={self.b}, m={self.m}) != 1")

    def with_modulus(self, m: int) -> RecurrenceSpec:
        return RecurrenceSpec(self.a, self.b, m)

    def to_dict(self) -> dict[str, int]:
        return {"A": self.a, "B": self.b, "m": self.m, "delta": self.delta}


class Mat2(NamedTuple):
    """2x2 matrix [[a, b], [c, d]]; the modulus travels separately."""

    a: int
    b: int
    c: int
    d: int


IDENTITY = Mat2(1, 0, 0, 1)


def companion(a: int, b: int, m: int) -> Mat2:
    return Mat2(a % m, b % m, 1 % m, 0)


def mat_mul(x: Mat2, y: Mat2, m: int) -> Mat2:
    return Mat2(
        (x.a * y.a + x.b * y.c) % m,
        (x.a * y.b + x.b * y.d) % m,
        (x.c * y.a + x.d * y.c) % m,
        (x.c * y.b + x.d * y.d) % m,
    )


def mat_pow(mat: Mat2, e: int, m: int) -> Mat2:
    if e < 0:
        raise ValueError("exponent must be non-negative")
    result = Mat2(*(v % m for v in IDENTITY))
    base = Mat2(*(v % m for v in mat))
    while e:
        if e & 1:
            result = mat_mul(result, base, m)
        base = mat_mul(base, base, m)
        e >>= 1
    return result


def _annihilates(spec: RecurrenceSpec, n: int) -> bool:
    return mat_pow(companion(spec.a, spec.b, spec.m), n, spec.m) == (1, 0, 0, 1 % spec.m)


def sequence_slice(spec: RecurrenceSpec, count: int) -> list[int]:
    """E_0 .. E_{count-1} reduced mod m."""
    if count < 1:
        raise ValueError("count must be >= 1")
    a, b, m = spec.a % spec.m, spec.b % spec.m, spec.m
    out = [0, 1 % m]
    while len(out) < count:
        out.append((a * out[-1] + b * out[-2]) % m)
    return out[:count]


def _first_return_py(a: int, b: int, m: int, cap: int) -> int:
    e0, e1 = 0, 1
    for i in range(1, cap + 1):
        e0, e1 = e1, (a * e1 + b * e0) % m
        if e0 == 0 and e1 == 1:
            return i
    return -1


# int64 kernel; safe while a*e1 + b*e0 < 2**63, i.e. m < 2**31.
_first_return_jit = njit(cache=True, nogil=True)(_first_return_py) if njit else None
_JIT_MAX_MODULUS = 1 << 31


def _first_returns_lanes(a, b, m, lanes):
    # Steps `lanes` independent walks in lockstep so their divisions overlap in
    # the pipeline; a lane that finishes picks up the next job immediately.
    n = a.shape[0]
    out = np.full(n, -1, np.int64)
    job = np.full(lanes, -1, np.int64)
    e0 = np.zeros(lanes, np.int64)
    e1 = np.zeros(lanes, np.int64)
    la = np.zeros(lanes, np.int64)
    lb = np.zeros(lanes, np.int64)
    lm = np.ones(lanes, np.int64)
    steps = np.zeros(lanes, np.int64)
    nxt = 0
    active = 0
    for lane in range(lanes):
        if nxt < n:
            job[lane], la[lane], lb[lane], lm[lane] = nxt, a[nxt], b[nxt], m[nxt]
            e0[lane], e1[lane], steps[lane] = 0, 1, 0
            nxt += 1
            active += 1
    while active > 0:
        for lane in range(lanes):
            if job[lane] < 0:
                continue
            x0 = e1[lane]
            x1 = (la[lane] * e1[lane] + lb[lane] * e0[lane]) % lm[lane]
            e0[lane] = x0
            e1[lane] = x1
            s = steps[lane] + 1
            steps[lane] = s
            hit = x0 == 0 and x1 == 1
            if hit or s >= lm[lane] * lm[lane]:
                out[job[lane]] = s if hit else -1
                if nxt < n:
                    job[lane], la[lane], lb[lane], lm[lane] = nxt, a[nxt], b[nxt], m[nxt]
                    e0[lane], e1[lane], steps[lane] = 0, 1, 0
                    nxt += 1
                else:
                    job[lane] = -1
                    active -= 1
    return out


_first_returns_jit = njit(cache=True, nogil=True)(_first_returns_lanes) if njit else None
_LANES = 8


def naive_periods(specs: Sequence[RecurrenceSpec]) -> list[int]:
    """``naive_period`` over many specs at once; same results, better throughput."""
    for spec in specs:
        spec.require_purely_periodic()
    if _first_returns_jit is None or any(s.m >= _JIT_MAX_MODULUS for s in specs):
        return [naive_period(s) for s in specs]
    a = np.array([s.a % s.m for s in specs], dtype=np.int64)
    b = np.array([s.b % s.m for s in specs], dtype=np.int64)
    m = np.array([s.m for s in specs], dtype=np.int64)
    out = [int(k) for k in _first_returns_jit(a, b, m, _LANES)]
    for spec, k in zip(specs, out):
        if k < 0:
            raise CapExceeded(f"no return to (0, 1) within {spec.m ** 2} steps for {spec}")
    return out


def naive_period(spec: RecurrenceSpec) -> int:
    """Smallest i >= 1 with (E_i, E_{i+1}) = (0, 1), by direct iteration.

    The walk is capped at m**2 steps; the pair (0, 0) never occurs, so the
    cap is only reached through a bug.
    """
    spec.require_purely_periodic()
    a, b, m = spec.a % spec.m, spec.b % spec.m, spec.m
    cap = m * m
    if _first_return_jit is not None and m < _JIT_MAX_MODULUS:
        k = int(_first_return_jit(a, b, m, cap))
    else:
        k = _first_return_py(a, b, m, cap)
    if k < 0:
        raise CapExceeded(f"no return to (0, 1) within {cap} steps for {spec}")
    return k


def _order_candidate(spec: RecurrenceSpec, use_bound: bool) -> tuple[int, Factorization]:
    """A multiple of the companion matrix order mod a prime, with its factorization.

    Uses the theorem bound when one applies, p*(p-1) for a repeated root,
    and p*(p**2 - 1) otherwise (every element order in GL_2(F_p) divides it).
    """
    from .theorems import bound_for_prime

    p = spec.m
    if use_bound and p != 2:
        result = bound_for_prime(spec.a, spec.b, p)
        if result.bound is not None:
            return result.bound, factorize(result.bound)
        if result.classification is Classification.RAMIFIED:
            return p * (p - 1), factorize(p - 1) * Factorization({p: 1})
    return p * (p * p - 1), factorize(p - 1) * factorize(p + 1) * Factorization({p: 1})


def matrix_order_period(spec: RecurrenceSpec, candidate: int | None = None, *, use_bound: bool = True) -> int:
    """Multiplicative order of U = [[A, B], [1, 0]] modulo a prime.

    ``candidate`` overrides the starting multiple; it must satisfy U**N = I.
    With ``use_bound=False`` the start is p*(p**2 - 1), which does not rely on
    any theorem.
    """
    if not is_prime(spec.m):
        raise InvalidModulus(f"{spec.m} is not prime")
    spec.require_purely_periodic()
    if candidate is None:
        n, factors = _order_candidate(spec, use_bound)
    else:
        n, factors = candidate, factorize(candidate)
    if not _annihilates(spec, n):
        raise BoundViolation(f"U**{n} != I for {spec}")
    return order_from_multiple(lambda k: _annihilates(spec, k), n, factors)


def eigenvalue_period(spec: RecurrenceSpec) -> int:
    """Period from the eigenvalues of U in the splitting field.

    Distinct roots: lcm of their orders.  A repeated root lam gives a Jordan
    block lam*I + N with (lam*I + N)**n = lam**n * I + n*lam**(n-1) * N, so the
    order is p * ord(lam).
    """
    p = spec.m
    if p == 2 or not is_prime(p):
        raise InvalidModulus(f"eigenvalue route needs an odd prime modulus, got {p}")
    spec.require_purely_periodic()
    lam, lam_bar = eigenvalues(spec.a, spec.b, p)
    if lam.ctx.residue_class is Classification.RAMIFIED:
        return p * mult_order(lam.x, p)
    return math.lcm(fp2_order(lam), fp2_order(lam_bar))


def _prime_period(spec: RecurrenceSpec) -> int:
    if spec.m == 2:
        return naive_period(spec)
    return eigenvalue_period(spec)


def period_prime_power(spec: RecurrenceSpec) -> int:
    """Period modulo p**t from k(p), using p**(t-1) * k(p) as the starting multiple."""
    spec.require_purely_periodic()
    factors = factorize(spec.m)
    if len(factors) != 1:
        raise InvalidModulus(f"{spec.m} is not a prime power")
    ((p, t),) = factors.items()
    k_p = _prime_period(spec.with_modulus(p))
    if t == 1:
        return k_p
    n = p ** (t - 1) * k_p
    if not _annihilates(spec, n):
        raise BoundViolation(f"U**{n} != I mod {spec.m}")
    return order_from_multiple(lambda k: _annihilates(spec, k), n, factorize(k_p) * Factorization({p: t - 1}))


def period_composite(spec: RecurrenceSpec) -> int:
    """lcm of the prime-power periods over the factorization of m."""
    spec.require_purely_periodic()
    return math.lcm(*(period_prime_power(spec.with_modulus(p**t)) for p, t in factorize(spec.m).items()))


period = period_composite


@dataclass
class PeriodReport:
    spec: RecurrenceSpec
    period: int
    method_agreement: dict[str, int]
    classification: Classification | None
    bound: int | None = None
    theorem: str | None = None
    divides_bound: bool = field(init=False)
    tight: bool = field(init=False)

    def __post_init__(self) -> None:
        self.divides_bound = self.bound is not None and self.bound % self.period == 0
        self.tight = self.divides_bound and self.period == self.bound

    @property
    def violation(self) -> bool:
        """A theorem bound applies but the period does not divide it."""
        return self.bound is not None and not self.divides_bound

    def to_dict(self) -> dict[str, Any]:
        return {
            "spec": self.spec.to_dict(),
            "period": self.period,
            "method_agreement": dict(self.method_agreement),
            "classification": None if self.classification is None else self.classification.value,
            "bound": self.bound,
            "theorem": self.theorem,
            "divides_bound": self.divides_bound,
            "tight": self.tight,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> PeriodReport:
        s = data["spec"]
        cls_value = data["classification"]
        report = cls(
            spec=RecurrenceSpec(s["A"], s["B"], s["m"]),
            period=data["period"],
            method_agreement=dict(data["method_agreement"]),
            classification=None if cls_value is None else Classification(cls_value),
            bound=data["bound"],
            theorem=data["theorem"],
        )
        if (report.divides_bound, report.tight) != (data["divides_bound"], data["tight"]):
            raise ValueError("inconsistent divides_bound/tight flags")
        return report


def analyze(spec: RecurrenceSpec, naive_limit: int = NAIVE_LIMIT, naive: bool | None = None) -> PeriodReport:
    """Compute the period by every applicable method and attach the theorem bound.

    Any disagreement between methods raises MethodDisagreement.  ``naive``
    forces direct iteration on or off; by default it runs when m <= naive_limit
    and always for p = 2.
    """
    from .theorems import bound_for_prime

    spec.require_purely_periodic()
    m = spec.m
    if naive is None:
        naive = m <= naive_limit
    methods: dict[str, int] = {}
    classification = bound = theorem = None

    if is_prime(m):
        result = bound_for_prime(spec.a, spec.b, m)
        classification, bound, theorem = result.classification, result.bound, result.theorem
        if m == 2:
            methods["naive"] = naive_period(spec)
        else:
            # theorem-free start, so a false bound shows up as data, not an exception
            methods["matrix_order"] = matrix_order_period(spec, use_bound=False)
            methods["eigenvalue"] = eigenvalue_period(spec)
            if naive or classification is Classification.RAMIFIED:
                methods["naive"] = naive_period(spec)
    else:
        methods["composite"] = period_composite(spec)
        if naive:
            methods["naive"] = naive_period(spec)

    values = set(methods.values())
    if len(values) != 1:
        raise MethodDisagreement(f"{spec}: {methods}")
    return PeriodReport(spec, values.pop(), methods, classification, bound, theorem)
