"""Exact integer helpers and Hirzebruch-Jung (negative) continued fractions.

A negative continued fraction writes a rational m/k (with 1 <= k < m,
gcd(m, k) = 1) as

    m/k = a_1 - 1/(a_2 - 1/(... - 1/a_n)),

and there is a unique such expansion with every a_i >= 2.  The terms are the
(negated) self-intersections of the chain of spheres resolving a cyclic
quotient singularity, which is why everything in this module is exact: all
arithmetic is arbitrary-precision integer arithmetic, never floating point.

The smooth case m = 1 is represented by the empty expansion (no resolution
curves) with residue 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import DomainError, EvaluationError

UNIT = (1, 0)  # value of the empty expansion; a 1/0-free stand-in for "m = 1"


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd with a canonical Bezout pair.

    Returns ``(g, x, y)`` with ``g = gcd(a, b) > 0`` and ``a*x + b*y = g``.
    For ``b != 0`` the coefficient ``x`` is normalized to ``0 <= x < |b|/g``,
    which makes the pair unique and the output deterministic.  For ``b == 0``
    the result is ``(|a|, sign(a), 0)``.
    """
    if a == 0 and b == 0:
        raise DomainError("ext_gcd(0, 0) is undefined")
    if b == 0:
        return (abs(a), 1 if a > 0 else -1, 0)
    old_r, r = a, b
    old_x, x = 1, 0
    while r != 0:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_x, x = x, old_x - quot * x
    g, xg = old_r, old_x
    if g < 0:
        g, xg = -g, -xg
    m = abs(b) // g
    xg %= m
    y = (g - a * xg) // b
    return (g, xg, y)


def mod_inverse(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m`` in ``[1, m - 1]``; requires ``m >= 2``."""
    if m < 2:
        raise DomainError(f"modulus must be >= 2, got {m}")
    a %= m
    g, x, _ = ext_gcd(a, m)
    if g != 1:
        raise DomainError(f"{a} is not invertible mod {m} (gcd = {g})")
    return x % m


@dataclass(frozen=True)
class HJExpansion:
    """The negative continued fraction of m/k with all terms >= 2.

    ``numerator == 1`` iff ``terms`` is empty, in which case ``residue`` is 0.
    """

    numerator: int
    residue: int
    terms: tuple[int, ...]

    def __post_init__(self):
        m, k = self.numerator, self.residue
        if m < 1:
            raise DomainError(f"numerator must be positive, got {m}")
        if m == 1:
            if k != 0 or self.terms:
                raise DomainError("m = 1 must carry residue 0 and no terms")
            return
        if not (1 <= k < m) or gcd(m, k) != 1:
            raise DomainError(f"residue {k} invalid for numerator {m}")
        if any(a < 2 for a in self.terms):
            raise DomainError(f"all terms must be >= 2, got {self.terms}")
        if hj_eval(self.terms) != (m, k):
            raise DomainError(f"terms {list(self.terms)} do not evaluate to {m}/{k}")

    def __len__(self) -> int:
        return len(self.terms)


def hj_eval(terms: Sequence[int] | Iterable[int]) -> tuple[int, int]:
    """Evaluate ``a_1 - 1/(a_2 - ...)`` exactly, returning ``(m, k)``.

    The result is in lowest terms with ``k >= 0``; the empty list evaluates to
    the sentinel pair ``UNIT == (1, 0)`` (the smooth case).  Terms >= 1 are
    accepted so the function can serve as an independent oracle, but an
    intermediate zero denominator (a trailing tail evaluating to 0 followed by
    another term) raises EvaluationError.
    """
    num, den = 1, 0
    for a in reversed(list(terms)):
        if num == 0:
            raise EvaluationError("intermediate zero denominator in evaluation")
        num, den = a * num - den, num
    g = gcd(num, den)
    if g > 1:
        num //= g
        den //= g
    if den < 0 or (den == 0 and num < 0):
        num, den = -num, -den
    return (num, den)


def hj_expand(m: int, k: int) -> HJExpansion:
    """The unique expansion of m/k with all terms >= 2.

    Requires ``1 <= k < m`` and ``gcd(m, k) = 1``; the smooth case ``m = 1``
    (with ``k = 0``) yields the empty expansion.
    """
    if m < 1:
        raise DomainError(f"numerator must be positive, got {m}")
    if m == 1:
        if k != 0:
            raise DomainError(f"m = 1 requires k = 0, got k = {k}")
        return HJExpansion(1, 0, ())
    if not (1 <= k < m):
        raise DomainError(f"residue must satisfy 1 <= k < m, got k = {k}, m = {m}")
    if gcd(m, k) != 1:
        raise DomainError(f"gcd({m}, {k}) = {gcd(m, k)} != 1")
    m0, k0 = m, k
    terms = []
    while k0 > 0:
        a = -(-m0 // k0)  # ceil(m0 / k0)
        terms.append(a)
        m0, k0 = k0, a * k0 - m0
    return HJExpansion(m, k, tuple(terms))


def hj_reverse(e: HJExpansion) -> HJExpansion:
    """The expansion read backwards: the expansion of m/k' with kk' = 1 mod m.

    Reversing the term list of the expansion of m/k produces the (still
    valid, all terms >= 2) expansion of m/k' where k' is the inverse of k
    modulo m.  The empty expansion reverses to itself.
    """
    if not e.terms:
        return e
    rev = tuple(reversed(e.terms))
    m, kp = hj_eval(rev)
    if m != e.numerator:
        raise DomainError(f"reversal changed the numerator: {e.numerator} -> {m}")
    return HJExpansion(m, kp, rev)
