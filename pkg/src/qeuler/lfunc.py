"""p-adic l-functions for q-Euler numbers and the expansion engine.

The p-adic partial function H, the l-function built from it by a
Teichmuller-character sum, the two correction series T and K that vanish
as q -> 1, and the staged verifier for the main expansion identity: the
alternating sum of reciprocal q-integer powers over units below n*p
expanded as a series whose coefficients are p-adic l-values.

Every Euler number feeding a series is computed exactly in the rational
layer first (its denominators are p-units) and embedded afterwards, so
precision is only spent in the genuinely p-adic factors.  Truncated
series are certified by a stability window plus an audited geometric
valuation gain per term; results are reported modulo p**target of their
budget, never beyond what the certificate covers.

All computation is pure; verification grids can be evaluated in any
order and merged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import OutOfDomain, TruncationNotConverged
from .euler import (
    PolyArg,
    euler_number_classical,
    euler_number_q,
    euler_poly_classical,
    euler_poly_q,
)
from .kernel import QParam, binom_int, padic_valuation, q_int
from .padic import (
    PadicApprox,
    TeichChar,
    agreement,
    angle_bracket,
    binom_zp,
    embed,
    power_zp,
    teichmuller,
)


@dataclass(frozen=True)
class SeriesBudget:
    """Truncation policy for the p-adic series.

    target: verify modulo p**target.
    max_terms: hard truncation limit.
    window: consecutive negligible terms required before stopping.
    """

    target: int
    max_terms: int = 60
    window: int = 5

    def __post_init__(self):
        if self.target < 1:
            raise OutOfDomain("target precision must be >= 1")
        if not self.max_terms > self.window >= 3:
            raise OutOfDomain("need max_terms > window >= 3")


class _TruncatedSeries:
    """Accumulate a p-adically convergent series under a SeriesBudget.

    Stops once `window` consecutive terms have valuation >= target AND
    the audited bound v(term_k) >= k*gain - slack certifies that the
    entire dropped tail is negligible; raises TruncationNotConverged
    when max_terms is exhausted first.
    """

    def __init__(self, p, precision, budget, gain, label):
        if gain < 1:
            raise OutOfDomain(f"series '{label}' has no geometric valuation gain")
        self.budget = budget
        self.gain = gain
        self.label = label
        self.total = PadicApprox.zero(p, precision)
        self.quiet = 0
        self.slack = 0
        self.used = 0
        self.done = False

    def add(self, index: int, term: PadicApprox) -> bool:
        self.total = self.total + term
        self.used = index
        v = term.valuation
        if v is not None:
            self.slack = max(self.slack, index * self.gain - v)
        negligible = (term.precision if v is None else v) >= self.budget.target
        self.quiet = self.quiet + 1 if negligible else 0
        tail_ok = (index + 1) * self.gain - self.slack >= self.budget.target
        self.done = self.quiet >= self.budget.window and tail_ok
        return self.done

    def result(self) -> PadicApprox:
        if not self.done:
            raise TruncationNotConverged(
                f"series '{self.label}' not certified within {self.used + 1} terms "
                f"(window {self.budget.window}, target {self.budget.target})"
            )
        return self.total


def _euler_term(j: int, q: Fraction, f: int) -> Fraction:
    """E_{j, q^f}, with the classical Euler number serving the q = 1 path."""
    if q == 1:
        return euler_number_classical(j)
    return euler_number_q(j, q**f)


def _euler_poly_term(n: int, a: int, f: int, q: Fraction) -> Fraction:
    """E_{n, q^f}(a/f), classical at q = 1."""
    if q == 1:
        return euler_poly_classical(n, Fraction(a, f))
    return euler_poly_q(n, PolyArg(a, f, q))


def _require_prime(q: QParam) -> int:
    if q.prime is None:
        raise OutOfDomain("this operation needs a QParam with prime context")
    return q.prime


def _check_residue(a: int, F: int, p: int) -> None:
    if not 0 < a < F:
        raise OutOfDomain(f"need 0 < a < F, got a={a}, F={F}")
    if math.gcd(a, p) != 1:
        raise OutOfDomain(f"residue {a} is not coprime to {p}")
    if F % p != 0 or F % 2 == 0:
        raise OutOfDomain(f"F must be an odd multiple of {p}, got {F}")


def _angle_power(a: int, s, q: QParam, precision: int) -> PadicApprox:
    """<a>^(-s); exact modular power for integer s, exp/log otherwise."""
    ang = angle_bracket(a, q, precision)
    if isinstance(s, int):
        return ang ** (-s)
    return power_zp(ang, -s)


def _series_binom(s, k: int):
    """binom(-s, k) as an exact int (integer s) or a PadicApprox."""
    if isinstance(s, int):
        return binom_int(-s, k)
    return binom_zp(-s, k)


def _as_exponent(s, p: int, precision: int):
    """Normalize a series exponent: ints stay exact, rationals embed."""
    if isinstance(s, int):
        return s
    if isinstance(s, Fraction):
        return embed(s, p, precision)
    if isinstance(s, PadicApprox):
        if s.prime != p:
            raise OutOfDomain("exponent lives over a different prime")
        return s
    raise OutOfDomain(f"unsupported exponent type {type(s).__name__}")


def _default_precision(budget: SeriesBudget, precision) -> int:
    return precision if precision is not None else budget.target + 6


def H_pq(s, a: int, F: int, q: QParam, budget: SeriesBudget, precision=None) -> PadicApprox:
    """The p-adic partial function

        H(s, a:F) = ((-1)^a / 2) <a>^(-s)
                    sum_{j>=0} binom(-s, j) q^(ja) ([F]_q/[a]_q)^j E_{j, q^F}

    for s in Z_p, F an odd multiple of p, 0 < a < F coprime to p.  At
    s = -n it produces w^(-n)(a) times the exact partial-zeta value.
    Result reported modulo p**budget.target.
    """
    p = _require_prime(q)
    _check_residue(a, F, p)
    precision = _default_precision(budget, precision)
    s = _as_exponent(s, p, precision)
    qv = q.value
    ratio = q_int(F, qv) / q_int(a, qv)
    gain = int(padic_valuation(ratio, p))
    series = _TruncatedSeries(p, precision, budget, gain, f"H(a={a})")
    for j in range(budget.max_terms + 1):
        scalar = qv ** (j * a) * ratio**j * _euler_term(j, qv, F)
        b = _series_binom(s, j)
        if isinstance(b, int):
            term = embed(b * scalar, p, precision)
        else:
            term = b * scalar
        if series.add(j, term):
            break
    inner = series.result()
    val = inner * _angle_power(a, s, q, precision) * Fraction((-1) ** a, 2)
    return val.reduce(min(val.precision, budget.target))


def l_pq(s, chi: TeichChar, F: int, q: QParam, budget: SeriesBudget, precision=None) -> PadicApprox:
    """The p-adic l-value 2 sum_{a<=F, (a,p)=1} chi(a) H(s, a:F) for a
    Teichmuller-power character chi."""
    p = _require_prime(q)
    if chi.prime != p:
        raise OutOfDomain("character prime does not match q's prime context")
    precision = _default_precision(budget, precision)
    total = PadicApprox.zero(p, precision)
    for a in range(1, F + 1):
        if math.gcd(a, p) != 1:
            continue
        total = total + chi.value(a, precision) * H_pq(s, a, F, q, budget, precision)
    return (2 * total).reduce(min(total.precision, budget.target))


def gen_euler_teich(n: int, chi: TeichChar, q: QParam, precision: int) -> PadicApprox:
    """Generalized q-Euler number attached to a Teichmuller power:

        [p]_q^n sum_{a<p} chi(a) (-1)^a E_{n, q^p}(a/p),

    a finite sum of exact Euler-polynomial values with p-adic character
    weights.  The trivial character gives E_{n,q} itself.
    """
    p = _require_prime(q)
    if chi.prime != p:
        raise OutOfDomain("character prime does not match q's prime context")
    qv = q.value
    if chi.is_trivial:
        return embed(_euler_term(n, qv, 1), p, precision)
    total = PadicApprox.zero(p, precision)
    scale = q_int(p, qv) ** n
    for a in range(1, p):
        # scale * E is p-integral even at q = 1, where E_n(a/p) alone is not
        term = embed(scale * _euler_poly_term(n, a, p, qv), p, precision)
        total = total + chi.value(a, precision) * (-1) ** a * term
    return total


def _check_even(n: int) -> None:
    if n < 2 or n % 2 != 0:
        raise OutOfDomain(f"n must be a positive even integer, got {n}")


def T_pq(n: int, s, a: int, F: int, q: QParam, budget: SeriesBudget, precision=None) -> PadicApprox:
    """The first correction series (vanishing as q -> 1):

        T(s, a:F) = (-1)^a <a>^(-s) sum_{k>=1} binom(-s, k)
                    ([F]_q/[a]_q)^k q^(ak) ((-1)^n q^(nFk) - 1) E_{k, q^F},

    where [a/F]_{q^F}^(-k) is realized exactly as ([F]_q/[a]_q)^k.
    """
    p = _require_prime(q)
    _check_residue(a, F, p)
    _check_even(n)
    precision = _default_precision(budget, precision)
    qv = q.value
    if qv == 1:
        return PadicApprox.zero(p, budget.target)
    s = _as_exponent(s, p, precision)
    ratio = q_int(F, qv) / q_int(a, qv)
    gain = int(padic_valuation(ratio, p))
    series = _TruncatedSeries(p, precision, budget, gain, f"T(a={a})")
    for k in range(1, budget.max_terms + 1):
        scalar = ratio**k * qv ** (a * k) * ((-1) ** n * qv ** (n * F * k) - 1) * _euler_term(k, qv, F)
        b = _series_binom(s, k)
        term = embed(b * scalar, p, precision) if isinstance(b, int) else b * scalar
        if series.add(k, term):
            break
    val = series.result() * _angle_power(a, s, q, precision) * (-1) ** a
    return val.reduce(min(val.precision, budget.target))


def K_pq(n: int, s, a: int, F: int, q: QParam, budget: SeriesBudget, precision=None) -> PadicApprox:
    """The second correction series (vanishing as q -> 1):

        K(s, a:F) = ((-1)^a / 2) <a>^(-s) sum_{l>=1} binom(-s, l) q^(al)
                    ([F]_q/[a]_q)^l E_{l, q^F}
                    sum_{j=1}^{l} binom(l, j) [nF]_q^j (q-1)^j.
    """
    p = _require_prime(q)
    _check_residue(a, F, p)
    _check_even(n)
    precision = _default_precision(budget, precision)
    qv = q.value
    if qv == 1:
        return PadicApprox.zero(p, budget.target)
    s = _as_exponent(s, p, precision)
    ratio = q_int(F, qv) / q_int(a, qv)
    gain = int(padic_valuation(ratio, p))
    nf = q_int(n * F, qv)
    series = _TruncatedSeries(p, precision, budget, gain, f"K(a={a})")
    for l in range(1, budget.max_terms + 1):
        inner = sum(binom_int(l, j) * nf**j * (qv - 1) ** j for j in range(1, l + 1))
        scalar = qv ** (a * l) * ratio**l * _euler_term(l, qv, F) * inner
        b = _series_binom(s, l)
        term = embed(b * scalar, p, precision) if isinstance(b, int) else b * scalar
        if series.add(l, term):
            break
    val = series.result() * _angle_power(a, s, q, precision) * Fraction((-1) ** a, 2)
    return val.reduce(min(val.precision, budget.target))


def _char_sum(fn, chi: TeichChar, p: int, precision: int) -> PadicApprox:
    total = PadicApprox.zero(p, precision)
    for a in range(1, p):
        total = total + chi.value(a, precision) * fn(a)
    return 2 * total


def T_pq_chi(n: int, s, chi: TeichChar, F: int, q: QParam, budget: SeriesBudget, precision=None) -> PadicApprox:
    """Character sum 2 sum_{a<p} chi(a) T(s, a:F)."""
    p = _require_prime(q)
    precision = _default_precision(budget, precision)
    val = _char_sum(lambda a: T_pq(n, s, a, F, q, budget, precision), chi, p, precision)
    return val.reduce(min(val.precision, budget.target))


def K_pq_chi(n: int, s, chi: TeichChar, F: int, q: QParam, budget: SeriesBudget, precision=None) -> PadicApprox:
    """Character sum 2 sum_{a<p} chi(a) K(s, a:F)."""
    p = _require_prime(q)
    precision = _default_precision(budget, precision)
    val = _char_sum(lambda a: K_pq(n, s, a, F, q, budget, precision), chi, p, precision)
    return val.reduce(min(val.precision, budget.target))


# -- the expansion identity ------------------------------------------------


def theorem5_lhs_exact(r: int, n: int, q: QParam) -> Fraction:
    """The exact rational alternating sum 2 sum (-1)^j / [j]_q^r over
    1 <= j <= n*p with j coprime to p.  Each [j]_q is a p-adic unit, so
    the value is p-integral."""
    p = _require_prime(q)
    if r < 1:
        raise OutOfDomain("power r must be >= 1")
    _check_even(n)
    qv = q.value
    return 2 * sum(
        Fraction((-1) ** j, 1) / q_int(j, qv) ** r
        for j in range(1, n * p + 1)
        if math.gcd(j, p) == 1
    )


def theorem5_lhs(r: int, n: int, q: QParam, precision: int) -> PadicApprox:
    """The exact alternating power sum embedded into Z_p."""
    return embed(theorem5_lhs_exact(r, n, q), _require_prime(q), precision)


def _merge_coefficient(r: int, k: int) -> Fraction:
    """(r/(r+k)) binom(-r-1, k); integer-valued by the tail-merge identity."""
    return Fraction(r, r + k) * binom_int(-r - 1, k)


def _theorem5_rhs(r, n, q, budget, precision, residue_weighted):
    p = _require_prime(q)
    _check_even(n)
    if r < 1:
        raise OutOfDomain("power r must be >= 1")
    precision = _default_precision(budget, precision)
    F = p
    qv = q.value
    pn_q = q_int(p * n, qv)
    gain = int(padic_valuation(pn_q, p))
    series = _TruncatedSeries(p, precision, budget, gain, "assembly tail")
    used = 0
    for k in range(1, budget.max_terms + 1):
        chi = TeichChar(p, -(r + k))
        if residue_weighted:
            inner = PadicApprox.zero(p, precision)
            for a in range(1, p):
                part = H_pq(r + k, a, F, q, budget, precision) + K_pq(
                    n, r + k, a, F, q, budget, precision
                )
                inner = inner + chi.value(a, precision) * part * qv ** (a * k)
            block = 2 * inner
        else:
            block = l_pq(r + k, chi, F, q, budget, precision) + K_pq_chi(
                n, r + k, chi, F, q, budget, precision
            )
        term = block * (_merge_coefficient(r, k) * (-1) ** n) * pn_q**k
        used = k
        if series.add(k, term):
            break
    tail = series.result()
    t_chi = T_pq_chi(n, r, TeichChar(p, -r), F, q, budget, precision)
    if residue_weighted:
        t_chi = t_chi * Fraction(1, 2)
    rhs = -tail - t_chi
    return rhs.reduce(min(rhs.precision, budget.target)), used


def theorem5_rhs(r: int, n: int, q: QParam, budget: SeriesBudget, precision=None) -> PadicApprox:
    """The expansion-side value

        - sum_{k>=1} (r/(r+k)) binom(-r-1,k) (-1)^n [pn]_q^k
              [ l(r+k, w^(-r-k)) + K(r+k, w^(-r-k)) ]  -  T(r, w^(-r)),

    truncated per budget; term decay is driven by v_p([pn]_q^k) >= k.
    At q = 1 the correction sums vanish and only the l-series remains.
    """
    val, _ = _theorem5_rhs(r, n, q, budget, precision, residue_weighted=False)
    return val


def theorem5_rhs_weighted(r: int, n: int, q: QParam, budget: SeriesBudget, precision=None) -> PadicApprox:
    """Diagnostic variant of the expansion side that keeps the
    per-residue geometric weight q^(ak) inside each character sum and
    halves the correction-tail term; this is the assembly that the
    per-residue expansion supports exactly.  Coincides with
    :func:`theorem5_rhs` at q = 1."""
    val, _ = _theorem5_rhs(r, n, q, budget, precision, residue_weighted=True)
    return val


# -- staged verification ----------------------------------------------------


def _block_sum_exact(r: int, n: int, a: int, F: int, qv: Fraction) -> Fraction:
    """sum_{l<n} (-1)^(Fl+a) / [Fl+a]_q^r, exactly."""
    return sum(
        Fraction((-1) ** (F * l + a), 1) / q_int(F * l + a, qv) ** r for l in range(n)
    )


def _block_sum_series(r, n, a, F, q, budget, precision):
    """Series expansion of the per-residue block sum: the double Euler
    series plus the power-difference series (the odd-n boundary term is
    asserted to vanish on this even-n engine)."""
    p = q.prime
    qv = q.value
    qf = qv**F
    inv_ar = q_int(a, qv) ** (-r)
    ratio = q_int(F, qv) / q_int(a, qv)
    gain = int(padic_valuation(ratio, p))
    series = _TruncatedSeries(p, precision, budget, gain, f"block expansion (a={a})")
    for s_idx in range(1, budget.max_terms + 1):
        base = (
            binom_int(-r, s_idx)
            * inv_ar
            * ratio**s_idx
            * qv ** (a * s_idx)
            * (-1) ** a
        )
        inner = sum(
            binom_int(s_idx, l)
            * qv ** (n * F * l)
            * _euler_term(l, qv, F)
            * q_int(n, qf) ** (s_idx - l)
            for l in range(s_idx)
        )
        t_double = base * Fraction((-1) ** n, 2) * inner
        t_power = base * ((-1) ** n * qv ** (F * s_idx * n) - 1) / 2 * _euler_term(s_idx, qv, F)
        if series.add(s_idx, embed(-(t_double + t_power), p, precision)):
            break
    boundary = Fraction(1 - (-1) ** n, 2) * inv_ar * (-1) ** a
    assert boundary == 0, "boundary term must vanish for even n"
    total = series.result()
    return total.reduce(min(total.precision, budget.target)), series.used


def _block_sum_t_form(r, n, a, F, q, budget, precision):
    """The regrouped expansion: double Euler series plus the closed
    correction series T in place of the power-difference tail."""
    p = q.prime
    qv = q.value
    qf = qv**F
    inv_ar = q_int(a, qv) ** (-r)
    ratio = q_int(F, qv) / q_int(a, qv)
    gain = int(padic_valuation(ratio, p))
    series = _TruncatedSeries(p, precision, budget, gain, f"regrouped expansion (a={a})")
    for s_idx in range(1, budget.max_terms + 1):
        base = (
            binom_int(-r, s_idx)
            * inv_ar
            * ratio**s_idx
            * qv ** (a * s_idx)
            * (-1) ** a
        )
        inner = sum(
            binom_int(s_idx, l)
            * qv ** (n * F * l)
            * _euler_term(l, qv, F)
            * q_int(n, qf) ** (s_idx - l)
            for l in range(s_idx)
        )
        if series.add(s_idx, embed(-base * Fraction((-1) ** n, 2) * inner, p, precision)):
            break
    w_pow = teichmuller(a, p, precision) ** (-r)
    t_val = T_pq(n, r, a, F, q, budget, precision)
    total = series.result() - w_pow * t_val * Fraction(1, 2)
    return total.reduce(min(total.precision, budget.target))


def _reindex_exact_check(r, n, a, F, qv, depth) -> bool:
    """Exact finite check that merging the double series indices (s, l)
    into (k = s - l, l) with the tail-merge coefficient identity
    preserves the sum, keeping the geometric factor q^(nFl)."""
    qf = qv**F
    inv_ar = q_int(a, qv) ** (-r)
    ratio = q_int(F, qv) / q_int(a, qv)
    lhs = Fraction(0)
    for s_idx in range(1, depth + 1):
        for l in range(s_idx):
            lhs += (
                binom_int(-r, s_idx)
                * binom_int(s_idx, l)
                * inv_ar
                * ratio**s_idx
                * qv ** (a * s_idx)
                * Fraction((-1) ** a * (-1) ** n, 2)
                * qv ** (n * F * l)
                * _euler_term(l, qv, F)
                * q_int(n, qf) ** (s_idx - l)
            )
    rhs = Fraction(0)
    for k in range(1, depth + 1):
        for l in range(depth - k + 1):
            rhs += (
                _merge_coefficient(r, k)
                * binom_int(-r - k, l)
                * inv_ar
                * q_int(a, qv) ** (-k)
                * qv ** (a * k)
                * (-1) ** n
                * (q_int(F, qv) * q_int(n, qf)) ** k
                * Fraction((-1) ** a, 2)
                * qv ** (a * l)
                * ratio**l
                * _euler_term(l, qv, F)
                * qv ** (n * F * l)
            )
    return lhs == rhs


def _power_split_check(n, F, qv, l_max) -> bool:
    """Exact check of q^(nFl) = 1 + sum_{j<=l} binom(l,j) [nF]_q^j (q-1)^j."""
    nf = q_int(n * F, qv)
    for l in range(1, l_max + 1):
        rhs = 1 + sum(binom_int(l, j) * nf**j * (qv - 1) ** j for j in range(1, l + 1))
        if qv ** (n * F * l) != rhs:
            return False
    return True


def _range_reindex_check(r, n, q: QParam) -> bool:
    """Exact check that the coprime-index sum equals its per-residue
    double-sum rearrangement."""
    p = q.prime
    qv = q.value
    direct = theorem5_lhs_exact(r, n, q)
    regrouped = 2 * sum(
        Fraction((-1) ** (a + p * l), 1) / q_int(a + p * l, qv) ** r
        for a in range(1, p)
        for l in range(n)
    )
    return direct == regrouped


@dataclass
class StageResult:
    """Outcome of one derivation stage inside the expansion engine."""

    name: str
    description: str
    passed: bool
    agreement_valuation: int | None = None
    saturated: bool = False
    lhs_digits: str | None = None
    rhs_digits: str | None = None
    diagnostic: bool = False
    detail: str = ""

    def to_dict(self):
        return {
            "name": self.name,
            "description": self.description,
            "passed": self.passed,
            "agreement_valuation": self.agreement_valuation,
            "saturated": self.saturated,
            "lhs_digits": self.lhs_digits,
            "rhs_digits": self.rhs_digits,
            "diagnostic": self.diagnostic,
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    """Complete audit of the expansion identity at one (r, n) point.

    agreement_valuation is v_p(lhs - rhs) capped at the compared
    precision (saturated=True when the cap was reached); stages carry
    the same measurement for each intermediate derivation step.
    """

    r: int
    n: int
    prime: int
    q: Fraction
    target: int
    working_precision: int
    lhs: PadicApprox
    rhs: PadicApprox
    agreement_valuation: int
    agreement_saturated: bool
    stages: list = field(default_factory=list)
    truncation_indices: dict = field(default_factory=dict)

    @property
    def identity_holds(self) -> bool:
        return self.agreement_saturated or self.agreement_valuation >= self.target

    @property
    def first_failing_stage(self):
        for stage in self.stages:
            if not stage.diagnostic and not stage.passed:
                return stage.name
        return None

    @property
    def acceptable(self) -> bool:
        """True when the identity verifies at target precision, or the
        shortfall is localized to a named stage with both sides' digits
        on record (a documented discrepancy, not a silent one)."""
        if self.identity_holds:
            return True
        name = self.first_failing_stage
        if name is None:
            return False
        stage = next(s for s in self.stages if s.name == name)
        return stage.lhs_digits is not None and stage.rhs_digits is not None

    def localization_note(self):
        if self.identity_holds:
            return None
        name = self.first_failing_stage
        if name is None:
            return "identity fails but every stage passed; audit incomplete"
        note = f"first failing stage: {name}"
        weighted = next((s for s in self.stages if s.diagnostic), None)
        if name == "character-sum-assembly" and weighted is not None and weighted.passed:
            note += (
                "; every per-residue stage and the residue-weighted assembly verify at "
                "full target precision, so the discrepancy is localized to dropping the "
                "per-residue geometric weight (and the tail-term normalization) when the "
                "character sums are assembled"
            )
        return note

    def to_dict(self):
        return {
            "r": self.r,
            "n": self.n,
            "prime": self.prime,
            "q": f"{self.q.numerator}/{self.q.denominator}",
            "target": self.target,
            "working_precision": self.working_precision,
            "lhs": padic_to_dict(self.lhs),
            "rhs": padic_to_dict(self.rhs),
            "agreement_valuation": self.agreement_valuation,
            "agreement_saturated": self.agreement_saturated,
            "identity_holds": self.identity_holds,
            "acceptable": self.acceptable,
            "first_failing_stage": self.first_failing_stage,
            "localization": self.localization_note(),
            "stages": [s.to_dict() for s in self.stages],
            "truncation_indices": dict(sorted(self.truncation_indices.items())),
        }


def padic_to_dict(x: PadicApprox) -> dict:
    """JSON-ready form of a p-adic value."""
    return {
        "residue": str(x.residue),
        "mod": f"{x.prime}^{x.precision}",
        "valuation": x.valuation if x.valuation is not None else f">={x.precision}",
    }


def _padic_stage(name, description, pairs, target, diagnostic=False):
    """Build a StageResult from (label, lhs, rhs) p-adic comparisons,
    keeping the digits of the worst-agreeing pair."""
    worst = None
    details = []
    for label, lhs, rhs in pairs:
        val, sat = agreement(lhs, rhs)
        details.append(f"{label}: v>={val}" if sat else f"{label}: v={val}")
        key = (sat, val)
        if worst is None or key < worst[0]:
            worst = (key, lhs, rhs)
    (sat, val), lhs, rhs = worst
    return StageResult(
        name=name,
        description=description,
        passed=sat or val >= target,
        agreement_valuation=val,
        saturated=sat,
        lhs_digits=lhs.render(),
        rhs_digits=rhs.render(),
        diagnostic=diagnostic,
        detail="; ".join(details),
    )


def _exact_stage(name, description, ok: bool) -> StageResult:
    return StageResult(
        name=name,
        description=description,
        passed=ok,
        detail="exact rational comparison",
    )


def theorem5_verify(r: int, n: int, q: QParam, budget: SeriesBudget, precision=None) -> VerificationReport:
    """Run the full staged verification of the expansion identity at one
    (r, n) point: every intermediate derivation step is checked against
    an independent oracle, then the assembled identity itself is
    measured, with a residue-weighted diagnostic assembly to localize
    any shortfall.  Failures are report content, never exceptions.
    """
    p = _require_prime(q)
    _check_even(n)
    if r < 1:
        raise OutOfDomain("power r must be >= 1")
    precision = _default_precision(budget, precision)
    F = p
    qv = q.value
    target = budget.target
    stages = []
    trunc = {}

    pairs_series = []
    pairs_regroup = []
    for a in range(1, p):
        exact = embed(_block_sum_exact(r, n, a, F, qv), p, precision)
        ser, used = _block_sum_series(r, n, a, F, q, budget, precision)
        trunc[f"block-expansion/a={a}"] = used
        pairs_series.append((f"a={a}", exact, ser))
        pairs_regroup.append((f"a={a}", exact, _block_sum_t_form(r, n, a, F, q, budget, precision)))
    stages.append(
        _padic_stage(
            "alternating-block-series",
            "per-residue alternating block sum vs its Euler-series expansion",
            pairs_series,
            target,
        )
    )
    stages.append(
        _padic_stage(
            "correction-tail-regrouping",
            "block sum vs leading double series plus the closed vanishing correction",
            pairs_regroup,
            target,
        )
    )
    depth = 12
    stages.append(
        _exact_stage(
            "double-series-reindexing",
            f"exact reindexing of the double expansion via the coefficient-merge "
            f"identity (depth {depth}, all residues)",
            all(_reindex_exact_check(r, n, a, F, qv, depth) for a in range(1, p)),
        )
    )
    stages.append(
        _exact_stage(
            "geometric-power-splitting",
            "exact expansion of q^(nFl) - 1 through scaled q-integer powers (l <= 10)",
            _power_split_check(n, F, qv, 10),
        )
    )
    stages.append(
        _exact_stage(
            "index-range-rearrangement",
            "coprime-index alternating sum equals its per-residue double sum",
            _range_reindex_check(r, n, q),
        )
    )

    lhs = theorem5_lhs(r, n, q, precision)
    rhs, used = _theorem5_rhs(r, n, q, budget, precision, residue_weighted=False)
    trunc["assembly"] = used
    val, sat = agreement(lhs, rhs)
    stages.append(
        StageResult(
            name="character-sum-assembly",
            description="alternating power sum vs the assembled l-value expansion",
            passed=sat or val >= target,
            agreement_valuation=val,
            saturated=sat,
            lhs_digits=lhs.render(),
            rhs_digits=rhs.render(),
        )
    )
    rhs_w, used_w = _theorem5_rhs(r, n, q, budget, precision, residue_weighted=True)
    trunc["assembly-weighted"] = used_w
    stages.append(
        _padic_stage(
            "residue-weighted-assembly",
            "assembly keeping the per-residue geometric weight inside the character "
            "sums and half-normalizing the correction tail",
            [("weighted", lhs, rhs_w)],
            target,
            diagnostic=True,
        )
    )

    return VerificationReport(
        r=r,
        n=n,
        prime=p,
        q=qv,
        target=target,
        working_precision=precision,
        lhs=lhs,
        rhs=rhs,
        agreement_valuation=val,
        agreement_saturated=sat,
        stages=stages,
        truncation_indices=trunc,
    )
