"""Arithmetic in F_p(sqrt(delta)), the splitting field of x**2 - A*x - B.

Elements are pairs (x, y) standing for x + y*sqrt(delta).  When delta is a
nonresidue the pairs form the field F_{p^2}; when delta is a nonzero square
the same formulas run in F_p[t]/(t**2 - delta) and an element is read as
the F_p value x + y*r, with r = sqrt_mod(delta, p) the canonical root.
When p | delta the ring has nilpotents and is flagged RAMIFIED.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .errors import InvalidModulus, NormZero, WrongContext, ZeroElement
from .modular import Factorization, factorize, is_prime, legendre_symbol, order_from_multiple, sqrt_mod

__all__ = [
    "Classification",
    "FieldCtx",
    "Fp2Element",
    "eigenvalues",
    "fp2_arith",
    "fp2_order",
    "fp2_pow",
    "frobenius",
]


class Classification(str, enum.Enum):
    """How a prime behaves for the characteristic polynomial x**2 - A*x - B."""

    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"
    DEGENERATE = "degenerate"
    SMALL_PRIME = "small_prime"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class FieldCtx:
    p: int
    delta: int
    residue_class: Classification = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if self.p == 2 or not is_prime(self.p):
            raise InvalidModulus(f"{self.p} is not an odd prime")
        object.__setattr__(self, "delta", self.delta % self.p)
        ls = legendre_symbol(self.delta, self.p)
        cls = {1: Classification.SPLIT, -1: Classification.INERT, 0: Classification.RAMIFIED}[ls]
        object.__setattr__(self, "residue_class", cls)

    @classmethod
    def for_recurrence(cls, a: int, b: int, p: int) -> FieldCtx:
        return _ctx_for(cls, p, (a * a + 4 * b) % p)

    @cached_property
    def root(self) -> int:
        """Canonical F_p square root of delta; only defined when delta is a square."""
        if self.residue_class is Classification.INERT:
            raise WrongContext("delta has no square root in F_p")
        return sqrt_mod(self.delta, self.p)

    @cached_property
    def group_order_factors(self) -> Factorization:
        return factorize(self.p - 1) * factorize(self.p + 1)

    def element(self, x: int, y: int = 0) -> Fp2Element:
        return Fp2Element(x % self.p, y % self.p, self)

    @property
    def one(self) -> Fp2Element:
        return Fp2Element(1, 0, self)

    @property
    def zero(self) -> Fp2Element:
        return Fp2Element(0, 0, self)

    @property
    def sqrt_delta(self) -> Fp2Element:
        return Fp2Element(0, 1, self)


@lru_cache(maxsize=1 << 16)
def _ctx_for(cls: type, p: int, delta: int) -> FieldCtx:
    # one context per (p, delta); scans over many (A, B) share them
    return cls(p, delta)


@dataclass(frozen=True)
class Fp2Element:
    x: int
    y: int
    ctx: FieldCtx = field(repr=False)

    def _check(self, other: Fp2Element) -> None:
        if other.ctx != self.ctx:
            raise WrongContext(f"mixed contexts {self.ctx} and {other.ctx}")

    def __add__(self, other: Fp2Element) -> Fp2Element:
        self._check(other)
        p = self.ctx.p
        return Fp2Element((self.x + other.x) % p, (self.y + other.y) % p, self.ctx)

    def __sub__(self, other: Fp2Element) -> Fp2Element:
        self._check(other)
        p = self.ctx.p
        return Fp2Element((self.x - other.x) % p, (self.y - other.y) % p, self.ctx)

    def __neg__(self) -> Fp2Element:
        p = self.ctx.p
        return Fp2Element(-self.x % p, -self.y % p, self.ctx)

    def __mul__(self, other: Fp2Element) -> Fp2Element:
        self._check(other)
        p, d = self.ctx.p, self.ctx.delta
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        return Fp2Element((x1 * x2 + d * y1 * y2) % p, (x1 * y2 + x2 * y1) % p, self.ctx)

    def __pow__(self, e: int) -> Fp2Element:
        return fp2_pow(self, e)

    def __bool__(self) -> bool:
        return bool(self.x or self.y)

    @property
    def norm(self) -> int:
        """x**2 - delta*y**2, the product of the element and its conjugate."""
        return (self.x * self.x - self.ctx.delta * self.y * self.y) % self.ctx.p

    def conjugate(self) -> Fp2Element:
        return Fp2Element(self.x, -self.y % self.ctx.p, self.ctx)

    def inverse(self) -> Fp2Element:
        if not self:
            raise ZeroElement("inverse of zero")
        n = self.norm
        if n == 0:
            raise NormZero(f"{self} has zero norm in {self.ctx}")
        n_inv = pow(n, -1, self.ctx.p)
        return Fp2Element(self.x * n_inv % self.ctx.p, -self.y * n_inv % self.ctx.p, self.ctx)

    def embed(self) -> int:
        """Value in F_p after substituting the canonical root for sqrt(delta)."""
        return (self.x + self.y * self.ctx.root) % self.ctx.p

    def in_base_field(self) -> bool:
        return self.y == 0


def fp2_arith(op: str, u: Fp2Element, v: Fp2Element | None = None) -> Fp2Element:
    """Dispatch one of ``add``, ``sub``, ``mul``, ``inv`` on field elements."""
    if op == "inv":
        if v is not None:
            raise TypeError("inv takes a single operand")
        return u.inverse()
    if v is None:
        raise TypeError(f"{op} needs two operands")
    if op == "add":
        return u + v
    if op == "sub":
        return u - v
    if op == "mul":
        return u * v
    raise ValueError(f"unknown op {op!r}")


def fp2_pow(u: Fp2Element, e: int) -> Fp2Element:
    if e < 0:
        raise ValueError("exponent must be non-negative")
    p, d = u.ctx.p, u.ctx.delta
    rx, ry = 1, 0
    bx, by = u.x, u.y
    while e:
        if e & 1:
            rx, ry = (rx * bx + d * ry * by) % p, (rx * by + bx * ry) % p
        bx, by = (bx * bx + d * by * by) % p, 2 * bx * by % p
        e >>= 1
    return Fp2Element(rx, ry, u.ctx)


def frobenius(u: Fp2Element) -> Fp2Element:
    """The p-th power map, which on F_{p^2} is conjugation sqrt(delta) -> -sqrt(delta)."""
    if u.ctx.residue_class is not Classification.INERT:
        raise WrongContext(f"frobenius shortcut needs an inert context, got {u.ctx.residue_class}")
    return u.conjugate()


def eigenvalues(a: int, b: int, p: int) -> tuple[Fp2Element, Fp2Element]:
    """Roots (A + sqrt(delta))/2 and (A - sqrt(delta))/2 of x**2 - A*x - B.

    With a repeated root (p | delta) both are A/2.
    """
    ctx = FieldCtx.for_recurrence(a, b, p)
    half = (p + 1) // 2
    x = a * half % p
    if ctx.residue_class is Classification.RAMIFIED:
        lam = Fp2Element(x, 0, ctx)
        return lam, lam
    return Fp2Element(x, half, ctx), Fp2Element(x, p - half, ctx)


def fp2_order(u: Fp2Element) -> int:
    """Multiplicative order of ``u``.

    Inert: order in F_{p^2}^*, found by peeling p**2 - 1.  Split: order of the
    embedded F_p value (which divides p - 1 and hence p**2 - 1).  Ramified:
    units of F_p[t]/(t**2) have order p*(p - 1), used as the starting multiple.
    """
    if not u:
        raise ZeroElement("order of zero")
    ctx = u.ctx
    p = ctx.p
    one = ctx.one
    if ctx.residue_class is Classification.SPLIT:
        v = u.embed()
        if v == 0:
            raise ZeroElement(f"{u} embeds to 0 in F_{p}")
        return order_from_multiple(lambda k: pow(v, k, p) == 1, p * p - 1, ctx.group_order_factors)
    if u.norm == 0:
        raise NormZero(f"{u} is not a unit")
    if ctx.residue_class is Classification.RAMIFIED:
        n = p * (p - 1)
        return order_from_multiple(lambda k: fp2_pow(u, k) == one, n, factorize(p - 1) * Factorization({p: 1}))
    return order_from_multiple(lambda k: fp2_pow(u, k) == one, p * p - 1, ctx.group_order_factors)
