"""Exact integer and rational substrate for the whole package.

Binomial coefficients with arbitrary (possibly negative) upper index,
q-integers and their alternating variant, p-adic valuations of exact
numbers, and the deformation-parameter container ``QParam``.  Everything
here is pure and exact: inputs and outputs are ints or Fractions, never
floats, and no operation rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import OutOfDomain, QIsOne

RationalLike = Union[int, Fraction, "QParam"]


def padic_valuation_int(n: int, p: int):
    """v_p(n) for an integer; returns math.inf for n = 0."""
    if n == 0:
        return math.inf
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_valuation(x, p: int):
    """v_p of an exact int or Fraction; math.inf for zero."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    return padic_valuation_int(x.numerator, p) - padic_valuation_int(x.denominator, p)


def binom_int(n: int, k: int) -> int:
    """Binomial coefficient n choose k, n an arbitrary integer, k >= 0.

    Computed by the falling-factorial product n(n-1)...(n-k+1)/k!, so
    negative upper indices are first-class and the reflection identity
    binom(-r, k) = (-1)^k binom(r+k-1, k) stays a genuine test rather
    than the definition.
    """
    if k < 0:
        raise OutOfDomain(f"binomial lower index must be >= 0, got {k}")
    num = 1
    for i in range(k):
        num *= n - i
    q, rem = divmod(num, math.factorial(k))
    assert rem == 0
    return q


@dataclass(frozen=True)
class QParam:
    """The deformation parameter q as an exact rational.

    An optional odd-prime context ``prime`` asserts the p-adic closeness
    condition v_p(q - 1) >= 1 (with q = 1 allowed: v_p(0) is infinite)
    and that q is a p-adic unit.  q = 1 itself is legal here; operations
    that divide by (1 - q) reject it individually with ``QIsOne``.
    """

    value: Fraction
    prime: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.prime is not None:
            p = self.prime
            if p < 3 or p % 2 == 0:
                raise OutOfDomain(f"prime context must be an odd prime, got {p}")
            if padic_valuation_int(self.value.denominator, p) != 0:
                raise OutOfDomain(f"q = {self.value} is not a p-adic integer for p = {p}")
            if padic_valuation(self.value - 1, p) < 1:
                raise OutOfDomain(
                    f"q = {self.value} violates v_{p}(q - 1) >= 1"
                )

    @property
    def is_one(self) -> bool:
        return self.value == 1


def as_fraction(q: RationalLike) -> Fraction:
    """Normalize an int, Fraction or QParam to the underlying Fraction."""
    if isinstance(q, QParam):
        return q.value
    return Fraction(q)


def q_int(x: int, q: RationalLike) -> Fraction:
    """The q-integer [x]_q = (1 - q^x)/(1 - q) = 1 + q + ... + q^(x-1).

    Degenerates to x itself at q = 1.
    """
    qv = as_fraction(q)
    if qv == 1:
        return Fraction(x)
    return (1 - qv**x) / (1 - qv)


def q_int_neg(x: int, q: RationalLike) -> Fraction:
    """The alternating q-integer [x]_{-q} = 1 - q + q^2 - ... + (-q)^(x-1).

    Evaluated in closed form as (1 - (-q)^x)/(1 + q), which is the exact
    value of the alternating geometric sum.  q = 1 is rejected: every
    caller of this quantity lives on the q-deformed side.
    """
    qv = as_fraction(q)
    if qv == 1:
        raise QIsOne("[x]_{-q} is reserved for q != 1")
    return (1 - (-qv) ** x) / (1 + qv)


# --- named binomial-coefficient identities -------------------------------
#
# These predicates are not used by any computation path; they exist so the
# verification suite can cite each identity individually.  Each returns
# the truth of the identity at one exact integer point.


def binom_product_shift(r: int, j: int, k: int) -> bool:
    """binom(-r,k) binom(1-r-k,j)/(r+k-1) == -binom(-r,k+j-1) binom(k+j,j)/(j+k).

    Requires j, k >= 0, j + k > 0 and r != 1 - k so both sides exist.
    """
    if j < 0 or k < 0 or j + k == 0 or r == 1 - k:
        raise OutOfDomain("identity requires j,k >= 0, j+k > 0, r != 1-k")
    lhs = Fraction(binom_int(-r, k) * binom_int(1 - r - k, j), r + k - 1)
    rhs = Fraction(-binom_int(-r, k + j - 1) * binom_int(k + j, j), j + k)
    return lhs == rhs


def binom_product_merge(r: int, j: int, k: int) -> bool:
    """binom(-r,k) binom(1-r-k,j)/(r+k-1) == binom(-r+1,k+j) binom(k+j,j)/(r-1).

    Requires r >= 2 and j, k >= 0 so the divisors are nonzero.
    """
    if r < 2 or j < 0 or k < 0:
        raise OutOfDomain("identity requires r >= 2 and j,k >= 0")
    lhs = Fraction(binom_int(-r, k) * binom_int(1 - r - k, j), r + k - 1)
    rhs = Fraction(binom_int(-r + 1, k + j) * binom_int(k + j, j), r - 1)
    return lhs == rhs


def binom_tail_merge(r: int, j: int, k: int) -> bool:
    """r/(r+k) binom(-r-1,k) binom(-r-k,j) == binom(-r,k+j) binom(k+j,j).

    The coefficient-merging step behind the reindexing of the double
    series in the expansion engine.  Requires r >= 1 and j, k >= 0.
    """
    if r < 1 or j < 0 or k < 0:
        raise OutOfDomain("identity requires r >= 1 and j,k >= 0")
    lhs = Fraction(r, r + k) * binom_int(-r - 1, k) * binom_int(-r - k, j)
    rhs = binom_int(-r, k + j) * binom_int(k + j, j)
    return lhs == rhs
