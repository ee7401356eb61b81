"""Capped-precision Z_p arithmetic, Teichmuller lifts, log/exp, powers."""

import random
from fractions import Fraction

import pytest

from qeuler import (
    DenominatorDivisibleByP,
    NotCoprime,
    NotOneUnit,
    OutOfDomain,
    PadicApprox,
    PrecisionExhausted,
    QParam,
    TeichChar,
    agreement,
    angle_bracket,
    binom_int,
    binom_zp,
    embed,
    padic_exp,
    padic_log,
    padic_valuation,
    power_zp,
    teichmuller,
)


def test_embed_half():
    x = embed(Fraction(1, 2), 5, 3)
    assert x.residue == 63  # 2 * 63 == 126 == 1 mod 125
    assert 2 * 63 % 125 == 1


def test_embed_zero_and_pure_power():
    z = embed(0, 5, 4)
    assert z.residue == 0 and z.valuation is None
    assert z.valuation_label == ">=4"
    y = embed(5, 5, 3)
    assert y.residue == 5 and y.valuation == 1


def test_embed_rejects_p_in_denominator():
    with pytest.raises(DenominatorDivisibleByP):
        embed(Fraction(1, 5), 5, 3)


def test_embed_negative_rational():
    x = embed(Fraction(-7, 2), 5, 2)
    assert (2 * x.residue + 7) % 25 == 0


def test_teichmuller_values():
    assert teichmuller(1, 5, 4).residue == 1
    assert teichmuller(2, 5, 2).residue == 7
    w = teichmuller(2, 5, 3)
    assert w.residue == 57
    assert 57 * 57 % 125 == 124  # 57^2 == -1, hence 57^4 == 1 mod 125


def test_teichmuller_defining_properties():
    for p, n in ((5, 6), (7, 4)):
        for a in range(1, p):
            w = teichmuller(a, p, n)
            assert w.residue % p == a % p
            assert pow(w.residue, p - 1, p**n) == 1


def test_teichmuller_rejects_multiples():
    with pytest.raises(NotCoprime):
        teichmuller(10, 5, 3)


def test_teichmuller_multiplicative():
    p, n = 5, 5
    for a in range(1, 10):
        for b in range(1, 10):
            if a % p == 0 or b % p == 0:
                continue
            lhs = teichmuller(a, p, n) * teichmuller(b, p, n)
            rhs = teichmuller(a * b, p, n)
            assert lhs.residue == rhs.residue


def test_log_of_one_is_zero():
    assert padic_log(PadicApprox.one(5, 4)).residue == 0


def test_log_frozen_value():
    # partial sum 5 - 25/2 + 125/3 over exact rationals, reduced mod 5^4
    oracle = Fraction(5) - Fraction(25, 2) + Fraction(125, 3)
    assert embed(oracle, 5, 4).residue == 555
    assert padic_log(embed(6, 5, 4)).residue == 555


def test_log_rejects_non_one_units():
    with pytest.raises(NotOneUnit):
        padic_log(embed(2, 5, 4))


def test_exp_log_round_trips():
    u = embed(6, 5, 4)  # 1 + p
    assert padic_exp(padic_log(u)).residue == u.residue
    x = embed(5, 5, 4)
    assert padic_log(padic_exp(x)).residue == x.residue


def test_exp_trivia_and_domain():
    assert padic_exp(PadicApprox.zero(5, 4)).residue == 1
    with pytest.raises(OutOfDomain):
        padic_exp(embed(3, 5, 4))


def test_exp_is_homomorphism():
    log6 = padic_log(embed(6, 5, 4))
    assert padic_exp(2 * log6).residue == 36


def test_power_zp_trivia():
    u = embed(6, 5, 4)
    assert power_zp(u, 0).residue == 1
    assert power_zp(u, 1).residue == u.residue
    # exp(3 log 6) must equal the direct cube
    assert power_zp(u, embed(3, 5, 4)).residue == 216


def test_power_zp_additive_in_exponent():
    u = embed(11, 5, 8)
    for s1, s2 in ((2, 3), (Fraction(1, 2), 4), (Fraction(3, 2), Fraction(-1, 2))):
        lhs = power_zp(u, embed(Fraction(s1) + Fraction(s2), 5, 8))
        rhs = power_zp(u, embed(Fraction(s1), 5, 8)) * power_zp(u, embed(Fraction(s2), 5, 8))
        val, sat = agreement(lhs, rhs)
        assert sat, (s1, s2, val)


def test_binom_zp_trivia():
    s = embed(Fraction(3, 2), 5, 6)
    assert binom_zp(s, 0).residue == 1
    t = embed(-3, 5, 6)
    assert binom_zp(t, 2).residue == embed(6, 5, binom_zp(t, 2).precision).residue


def test_binom_zp_matches_exact_rational():
    # oracle: the exact rational (-7/2)(-9/2)(-11/2)/6 embedded afterwards
    oracle = Fraction(-7, 2) * Fraction(-9, 2) * Fraction(-11, 2) / 6
    assert oracle == Fraction(-231, 16)
    got = binom_zp(embed(Fraction(-7, 2), 5, 6), 3)
    want = embed(oracle, 5, got.precision)
    assert got.residue == want.residue


def test_binom_zp_matches_binom_int_everywhere():
    for s in (-6, -1, 0, 4, 9):
        for k in range(7):
            got = binom_zp(embed(s, 5, 8), k)
            assert got.residue == embed(binom_int(s, k), 5, got.precision).residue


def test_binom_zp_reports_precision_loss():
    s = embed(Fraction(1, 2), 5, 6)
    # v_5(10!) == 2 is charged, partially offset by the valuation the
    # falling factorial accumulates along the way: net one digit lost.
    got = binom_zp(s, 10)
    assert got.precision == 5
    with pytest.raises(PrecisionExhausted):
        binom_zp(embed(Fraction(1, 2), 5, 2), 25)


def test_angle_bracket_values():
    q = QParam(Fraction(6), 5)
    assert angle_bracket(1, q, 4).residue == 1
    # [2]_6 / w(2) = 7 * 57^{-1} mod 125
    want = 7 * pow(57, -1, 125) % 125
    assert want == 101
    assert angle_bracket(2, q, 3).residue == 101
    for a in range(1, 5):
        assert angle_bracket(a, q, 3).residue % 5 == 1
    with pytest.raises(NotCoprime):
        angle_bracket(5, q, 3)


def test_power_of_q_minus_one_valuation_law():
    # v_p(q^m - 1) = v_p(q - 1) + v_p(m) for q == 1 mod p, odd p
    for q in (Fraction(6), Fraction(11, 6)):
        base = padic_valuation(q - 1, 5)
        for m in range(1, 201):
            assert padic_valuation(q**m - 1, 5) == base + padic_valuation(m, 5)


def test_arithmetic_precision_rules():
    x = embed(Fraction(7, 3), 5, 6)
    y = embed(50, 5, 6)
    assert (x + y).precision == 6
    assert (x * y).precision == 6  # unit times approximate value: no gain
    assert (y * y).precision == 8  # both factors divisible by p^2
    assert (x * 25).precision == 8  # exact scalar is known to all digits
    assert (y / 25).precision == 4 and (y / 25).residue == 2
    with pytest.raises(OutOfDomain):
        x / 5  # unit not divisible by p
    with pytest.raises(PrecisionExhausted):
        PadicApprox.zero(5, 3) / embed(0, 5, 3)  # divisor valuation unknown
    with pytest.raises(OutOfDomain):
        x / y  # quotient would leave Z_p


def test_division_inverts_multiplication():
    x = embed(Fraction(7, 3), 5, 8)
    y = embed(Fraction(12, 7), 5, 8)
    z = (x * y) / y
    val, sat = agreement(z, x.reduce(z.precision))
    assert sat


def test_pow_negative_needs_unit():
    u = embed(7, 5, 6)
    assert (u ** (-1) * u).residue % 5**6 == 1
    with pytest.raises(OutOfDomain):
        embed(5, 5, 6) ** (-1)


def test_precision_soundness_randomized():
    # recomputing with extra working precision and reducing must agree
    rng = random.Random(20240817)
    p, n, extra = 5, 6, 5
    for _ in range(200):
        nums = [rng.randrange(-400, 400) for _ in range(3)]
        dens = [rng.choice([1, 2, 3, 7, 9, 11]) for _ in range(3)]
        fracs = [Fraction(a, b) for a, b in zip(nums, dens)]
        lo = [embed(f, p, n) for f in fracs]
        hi = [embed(f, p, n + extra) for f in fracs]

        def combine(xs):
            t = xs[0] * xs[1] + xs[2]
            t = t * xs[1] - xs[0]
            return t

        a, b = combine(lo), combine(hi)
        cap = min(a.precision, b.precision)
        assert a.residue % p**cap == b.residue % p**cap


def test_digit_rendering():
    x = PadicApprox(5, 290, 4)
    assert x.digits() == (0, 3, 1, 2)
    assert x.render() == "...0 3 1 2 mod 5^4"


def test_reduce_and_guards():
    x = embed(123, 5, 6)
    assert x.reduce(2).residue == 123 % 25
    with pytest.raises(PrecisionExhausted):
        x.reduce(0)
    with pytest.raises(PrecisionExhausted):
        x.reduce(7)
    with pytest.raises(OutOfDomain):
        PadicApprox(4, 1, 2)
    with pytest.raises(OutOfDomain):
        PadicApprox(9, 1, 2)


def test_teich_char_values():
    chi = TeichChar(5, 2)
    assert chi.conductor == 5
    assert chi.value(10, 4).residue == 0
    w2 = teichmuller(2, 5, 4)
    assert chi.value(2, 4).residue == (w2 * w2).residue
    triv = TeichChar(5, 0)
    assert triv.conductor == 1
    assert triv.value(5, 4).residue == 1  # trivial character is 1 even at p
    assert TeichChar(5, 6).exponent == 2  # exponent reduced mod p-1
