"""Digit-level LFSR multiplier: behaviour, cycle counts, cost model."""

import pytest

from tritfield import field397, lfsr
from tritfield.field397 import F97Element, reduce as freduce
from tritfield.gf3 import TritVector
from tritfield.lfsr import STANDARD_DIGIT_SIZES, LfsrConfig, cost_report, load, run, step
from tritfield.polymul import parse_method, schoolbook_mul


def monomial_elem(k):
    return F97Element(TritVector.from_digits([0] * k + [1] + [0] * (96 - k)))


def test_config_defaults():
    for d, name in ((1, "C1"), (2, "C2"), (4, "C4"), (7, "KC4"), (14, "KKC4")):
        assert str(LfsrConfig(d).method) == name
    assert str(LfsrConfig(5).method) == "C5"


def test_config_validation():
    with pytest.raises(ValueError):
        LfsrConfig(0)
    with pytest.raises(ValueError):
        LfsrConfig(98)
    with pytest.raises(ValueError):
        LfsrConfig(7, "C4")  # method shorter than the digit
    LfsrConfig(7, "C8")


def test_load_shapes():
    cfg = LfsrConfig(7)
    st = load(cfg, F97Element.random(1), F97Element.random(2))
    assert cfg.reg_len == 98 and cfg.n_digits == 14
    assert st.reg_a.length == 98 and st.reg_a[97] == 0  # one padding zero
    assert st.acc.is_zero() and st.cycle == 0
    cfg1 = LfsrConfig(1)
    assert cfg1.reg_len == 97 and cfg1.n_digits == 97


def test_first_step_with_zero_top_digit():
    # b = 1: every high digit is zero, so early steps accumulate nothing
    cfg = LfsrConfig(7)
    st = load(cfg, F97Element.random(3), F97Element.one())
    step(st)
    assert st.acc.is_zero() and st.cycle == 1


def test_run_one_times_one():
    for d in STANDARD_DIGIT_SIZES:
        got, cycles = run(LfsrConfig(d), F97Element.one(), F97Element.one())
        assert got == F97Element.one()
        assert cycles == -(-97 // d)


def test_run_monomials():
    # x * x^96 = x^97 = 2x^16 + 1
    got, _ = run(LfsrConfig(7), monomial_elem(1), monomial_elem(96))
    digits = got.coeffs.digits()
    assert digits[16] == 2 and digits[0] == 1 and sum(digits) == 3
    assert got == field397.mul(monomial_elem(1), monomial_elem(96))


@pytest.mark.parametrize("d", STANDARD_DIGIT_SIZES)
def test_run_matches_reference(rnd, d):
    cfg = LfsrConfig(d)
    for _ in range(60):
        a = F97Element.random(rnd.getrandbits(60))
        b = F97Element.random(rnd.getrandbits(60))
        got, cycles = run(cfg, a, b)
        assert cycles == cfg.n_digits
        assert got == field397.mul(a, b)


def test_cycle_count_every_digit_size(rnd):
    a = F97Element.random(11)
    b = F97Element.random(22)
    expected = field397.mul(a, b)
    for d in range(1, 98):
        got, cycles = run(LfsrConfig(d), a, b)
        assert cycles == -(-97 // d)
        assert got == expected, d


def test_step_past_end_raises():
    cfg = LfsrConfig(14)
    st = load(cfg, F97Element.random(5), F97Element.random(6))
    for _ in range(cfg.n_digits):
        step(st)
    assert st.finished()
    with pytest.raises(RuntimeError):
        step(st)


def test_intermediate_invariant(rnd):
    # after k steps: acc = reduce(sum_{j<k} msd_j(B) * a * x^(D*(k-1-j)))
    for d in (4, 7):
        cfg = LfsrConfig(d)
        a = F97Element.random(rnd.getrandbits(60))
        b = F97Element.random(rnd.getrandbits(60))
        st = load(cfg, a, b)
        bdig = b.coeffs.digits() + [0] * (cfg.reg_len - 97)
        expected = F97Element.zero()
        xd = freduce(TritVector.from_digits([0] * d + [1]))
        for k in range(cfg.n_digits):
            step(st)
            msd = bdig[(cfg.n_digits - 1 - k) * d : (cfg.n_digits - k) * d]
            digit_poly = TritVector.from_digits(msd)
            prod = freduce(schoolbook_mul(a.coeffs, digit_poly))
            expected = field397.mul(expected, xd) + prod
            assert st.acc == expected, (d, k)


def test_cost_trend_standard_sweep():
    reports = [(d, cost_report(LfsrConfig(d)), LfsrConfig(d).n_digits)
               for d in STANDARD_DIGIT_SIZES]
    cycles = [n for _, _, n in reports]
    muls = [r.mul_gates for _, r, _ in reports]
    assert cycles == sorted(cycles, reverse=True) and len(set(cycles)) == len(cycles)
    assert muls == sorted(muls) and len(set(muls)) == len(muls)
    assert cycles == [97, 49, 25, 14, 7]


def test_cost_digit_one():
    # a single scalar multiplier per instance
    rep = cost_report(LfsrConfig(1))
    assert rep.mul_gates == 97
    assert str(LfsrConfig(1).method) == "C1"


def test_cost_scales_with_instances():
    cfg = LfsrConfig(7)
    from tritfield.polymul import cost as circuit_cost

    per_digit = circuit_cost(cfg.digit_circuit)
    rep = cost_report(cfg)
    assert rep.mul_gates == cfg.n_digits * per_digit.mul_gates
    assert rep.add_gates > cfg.n_digits * per_digit.add_gates
