"""Exact-rational q-Euler numbers and polynomials.

Everything in this module is evaluated at a concrete rational q in exact
arithmetic; q is never a formal indeterminate.  The q = 1 degeneration is
served by a dedicated classical path (``euler_number_classical`` /
``euler_poly_classical``) built on the functional equation
E_n(x+1) + E_n(x) = 2 x^n, because the q-deformed closed forms divide
by (1 - q).

Fractional arguments only ever occur in the combination E_{n, q^f}(a/f),
where q^{f * (a/f)} = q^a is exact; :class:`PolyArg` packages that shape
so no fractional exponentiation is ever attempted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import OutOfDomain, QIsOne
from .kernel import QParam, as_fraction, binom_int, q_int, q_int_neg


@dataclass(frozen=True)
class PolyArg:
    """The argument x = a/f of a q-Euler polynomial taken in base q^f.

    Represents the exact evaluation point of E_{n, q^f}(a/f): the base
    is q**f and powers (q^f)^(a/f) are realized as q**a.
    """

    a: int
    f: int
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        if self.a < 0:
            raise OutOfDomain(f"numerator a must be >= 0, got {self.a}")
        if self.f < 1 or self.f % 2 == 0:
            raise OutOfDomain(f"denominator f must be odd and positive, got {self.f}")


@lru_cache(maxsize=None)
def _euler_number_q(m: int, q: Fraction) -> Fraction:
    total = Fraction(0)
    for i in range(m + 1):
        total += Fraction(binom_int(m, i) * (-1) ** i, 1) / (1 + q**i)
    return 2 * (Fraction(1) / (1 - q)) ** m * total


def euler_number_q(m: int, q) -> Fraction:
    """The q-Euler number E_{m,q}, exactly.

    E_{m,q} = 2 (1/(1-q))^m sum_{i<=m} binom(m,i) (-1)^i / (1 + q^i).
    """
    if m < 0:
        raise OutOfDomain("order must be >= 0")
    qv = as_fraction(q)
    if qv == 1:
        raise QIsOne("use euler_number_classical for q = 1")
    return _euler_number_q(m, qv)


@lru_cache(maxsize=None)
def _euler_poly_q(n: int, a: int, f: int, q: Fraction) -> Fraction:
    qf = q**f
    total = Fraction(0)
    for k in range(n + 1):
        total += binom_int(n, k) * (-(q**a)) ** k / (1 + q ** (f * k))
    return 2 * (Fraction(1) / (1 - qf)) ** n * total


def euler_poly_q(n: int, arg: PolyArg) -> Fraction:
    """The q-Euler polynomial value E_{n, q^f}(a/f), exactly.

    E_{n,q'}(x) = 2 (1/(1-q'))^n sum_k binom(n,k) (-q'^x)^k / (1 + q'^k)
    with q' = q**f and q'^x = q**a.
    """
    if n < 0:
        raise OutOfDomain("order must be >= 0")
    if arg.q == 1:
        raise QIsOne("use euler_poly_classical for q = 1")
    return _euler_poly_q(n, arg.a, arg.f, arg.q)


@lru_cache(maxsize=None)
def _euler_poly_classical(n: int, x: Fraction) -> Fraction:
    if n == 0:
        return Fraction(1)
    acc = Fraction(0)
    for k in range(n):
        acc += binom_int(n, k) * _euler_poly_classical(k, x)
    return x**n - acc / 2


def euler_poly_classical(n: int, x) -> Fraction:
    """Classical Euler polynomial E_n(x), defined through the contract
    E_n(x+1) + E_n(x) = 2 x^n with E_0 = 1."""
    if n < 0:
        raise OutOfDomain("order must be >= 0")
    return _euler_poly_classical(n, Fraction(x))


def euler_number_classical(n: int) -> Fraction:
    """Classical Euler number E_n = E_n(0); the q -> 1 limit of E_{n,q}."""
    return euler_poly_classical(n, 0)


def alt_power_sum(n: int, m: int, q) -> Fraction:
    """The finite alternating power sum 2 sum_{l<n} (-1)^l [l]_q^m, directly."""
    qv = as_fraction(q)
    return 2 * sum(((-1) ** l) * q_int(l, qv) ** m for l in range(n))


def alt_power_sum_closed(n: int, m: int, q) -> Fraction:
    """Closed form of the alternating power sum through q-Euler numbers:

    (-1)^(n+1) sum_{l<m} binom(m,l) q^(nl) E_{l,q} [n]_q^(m-l)
        + ((-1)^(n+1) q^(nm) + 1) E_{m,q}.
    """
    qv = as_fraction(q)
    if qv == 1:
        raise QIsOne("closed form needs q != 1")
    sign = (-1) ** (n + 1)
    acc = Fraction(0)
    for l in range(m):
        acc += binom_int(m, l) * qv ** (n * l) * _euler_number_q(l, qv) * q_int(n, qv) ** (m - l)
    return sign * acc + (sign * qv ** (n * m) + 1) * _euler_number_q(m, qv)


def alt_power_sum_polyform(n: int, m: int, q) -> Fraction:
    """Polynomial form of the alternating power sum:

    (-1)^(n+1) E_{m,q}(n) + E_{m,q},

    the tail-splitting of the regularized alternating series at n.
    """
    qv = as_fraction(q)
    if qv == 1:
        raise QIsOne("polynomial form needs q != 1")
    return (-1) ** (n + 1) * _euler_poly_q(m, n, 1, qv) + _euler_number_q(m, qv)


@dataclass(frozen=True)
class DistributionCheck:
    """Outcome of one multiplication-theorem instance, both sides exact."""

    passed: bool
    lhs: Fraction
    rhs: Fraction


def distribution_check(n: int, m: int, arg: PolyArg) -> DistributionCheck:
    """Check E_{n,q'}(x) = [m]_{q'}^n sum_{a<m} (-1)^a E_{n,q'^m}((a+x)/m)
    exactly at x = arg.a/arg.f with q' = arg.q**arg.f and odd m.

    The inner arguments (a + x)/m have denominator m*arg.f and are formed
    by PolyArg composition, so both sides stay exact rationals.
    """
    if m < 1 or m % 2 == 0:
        raise OutOfDomain(f"modulus m must be odd and positive, got {m}")
    lhs = euler_poly_q(n, arg)
    base = arg.q**arg.f
    rhs = q_int(m, base) ** n * sum(
        (-1) ** j * euler_poly_q(n, PolyArg(j * arg.f + arg.a, m * arg.f, arg.q))
        for j in range(m)
    )
    return DistributionCheck(lhs == rhs, lhs, rhs)


def fermionic_riemann(m: int, q: QParam, level: int) -> Fraction:
    """Level-L Riemann sum of the alternating-measure integral whose
    moments are the q-Euler numbers:

        (2/[2]_q) (1/[p^L]_{-q}) sum_{x < p^L} q^(-x) [x]_q^m (-q)^x.

    Exact rational; converges p-adically to E_{m,q} as the level grows.
    """
    if q.prime is None:
        raise OutOfDomain("fermionic_riemann needs a QParam with prime context")
    if level < 1:
        raise OutOfDomain("level must be >= 1")
    qv = q.value
    count = q.prime**level
    # q^(-x) (-q)^x collapses to (-1)^x, keeping every summand small.
    total = sum((-1) ** x * q_int(x, qv) ** m for x in range(count))
    return Fraction(2) / q_int(2, qv) / q_int_neg(count, qv) * total
