"""Tower-field multiplication: counts, oracle agreement, closed-form list."""

import pytest

from tritfield import tower
from tritfield.field397 import F97Element
from tritfield.tower import (
    APPENDIX_COMBINATION,
    FormulaDiscrepancyError,
    Fp2Element,
    Fp6Element,
    MulCounter,
    conjugate_check,
    eval_five_points,
    fp2_mul,
    fp2_mul_by_s,
    fp2_mul_schoolbook,
    fp6_mul_15,
    fp6_mul_18,
    fp6_mul_appendix,
    fp6_mul_flat,
    fp6_mul_schoolbook,
    interpolate_five,
)


def rand_fp2(rnd):
    return Fp2Element.random(rnd.getrandbits(50))


def rand_fp6(rnd):
    return Fp6Element.random(rnd.getrandbits(50))


# -- quadratic extension ---------------------------------------------------

def test_s_squared_is_minus_one():
    s = Fp2Element.s()
    assert fp2_mul(s, s) == Fp2Element(F97Element.from_int(2), F97Element.zero())


def test_fp2_identity_counts_three():
    ctr = MulCounter()
    a = Fp2Element.random(3)
    assert fp2_mul(a, Fp2Element.one(), ctr) == a
    assert ctr.base_muls == 3
    ctr.reset()
    assert ctr.base_muls == 0


def test_fp2_matches_schoolbook(rnd):
    for _ in range(100):
        a, b = rand_fp2(rnd), rand_fp2(rnd)
        c3, c4 = MulCounter(), MulCounter()
        assert fp2_mul(a, b, c3) == fp2_mul_schoolbook(a, b, c4)
        assert (c3.base_muls, c4.base_muls) == (3, 4)


def test_mul_by_s():
    assert fp2_mul_by_s(Fp2Element.one()) == Fp2Element.s()
    x = Fp2Element.random(9)
    y = x
    for _ in range(4):
        y = fp2_mul_by_s(y)
    assert y == x
    assert fp2_mul_by_s(fp2_mul_by_s(x)) == -x


def test_mul_by_s_agrees_with_mul(rnd):
    s = Fp2Element.s()
    for _ in range(30):
        a = rand_fp2(rnd)
        ctr = MulCounter()
        via_mul = fp2_mul(a, s, ctr)
        assert fp2_mul_by_s(a) == via_mul
        assert ctr.base_muls == 3  # the shortcut itself counts zero


# -- sextic extension ------------------------------------------------------

def _basis(i):
    flat = [F97Element.zero()] * 6
    flat[i] = F97Element.one()
    return Fp6Element.from_flat(flat)


def test_cubic_modulus_identities():
    r = _basis(2)
    r2 = _basis(4)
    one = Fp6Element.one()
    # r * r^2 = r^3 = 1 + r
    assert fp6_mul_schoolbook(r, r2) == Fp6Element(
        Fp2Element.one(), Fp2Element.one(), Fp2Element.zero())
    # r^2 * r^2 = r^4 = r + r^2
    assert fp6_mul_schoolbook(r2, r2) == Fp6Element(
        Fp2Element.zero(), Fp2Element.one(), Fp2Element.one())
    a = Fp6Element.random(17)
    assert fp6_mul_schoolbook(a, one) == a


def test_flat_view_roundtrip(rnd):
    a = rand_fp6(rnd)
    assert Fp6Element.from_flat(a.flat()) == a
    flat = a.flat()
    assert flat[0] == a.c0.c0 and flat[5] == a.c2.c1


def test_counts_exact(rnd):
    a, b = rand_fp6(rnd), rand_fp6(rnd)
    for fn, expected in ((fp6_mul_schoolbook, 27), (fp6_mul_flat, 36),
                         (fp6_mul_18, 18)):
        ctr = MulCounter()
        fn(a, b, ctr)
        assert ctr.base_muls == expected
    ctr = MulCounter()
    fp6_mul_15(a, b, ctr)
    assert ctr.base_muls == 15


def test_counts_data_independent():
    # multiplying by zero still runs the full schedule
    ctr = MulCounter()
    out = fp6_mul_18(Fp6Element.random(5), Fp6Element.zero(), ctr)
    assert ctr.base_muls == 18 and out == Fp6Element.zero()
    ctr = MulCounter()
    out, _ = fp6_mul_15(Fp6Element.zero(), Fp6Element.zero(), ctr)
    assert ctr.base_muls == 15 and out == Fp6Element.zero()


def test_all_paths_agree(rnd):
    for _ in range(150):
        a, b = rand_fp6(rnd), rand_fp6(rnd)
        sb = fp6_mul_schoolbook(a, b)
        assert fp6_mul_flat(a, b) == sb
        assert fp6_mul_18(a, b) == sb
        assert fp6_mul_15(a, b)[0] == sb
        assert fp6_mul_appendix(a, b)[0] == sb


def test_trace_contents(rnd):
    a, b = rand_fp6(rnd), rand_fp6(rnd)
    out, trace = fp6_mul_15(a, b)
    assert len(trace.products) == 15
    assert all(isinstance(p, F97Element) for p in trace.products)
    # point product at 1 is the product of the coefficient sums
    q1 = fp2_mul(a.c0 + a.c1 + a.c2, b.c0 + b.c1 + b.c2)
    assert trace.point_products[0] == q1
    # pre-reduction leading coefficient is the leading-coefficient product
    assert trace.pre_reduction[4] == fp2_mul(a.c2, b.c2)


def test_five_point_roundtrip(rnd):
    # evaluation then interpolation reproduces the degree-4 convolution
    for _ in range(100):
        A = tuple(rand_fp2(rnd) for _ in range(3))
        B = tuple(rand_fp2(rnd) for _ in range(3))
        points = tuple(fp2_mul(x, y) for x, y in zip(eval_five_points(A),
                                                     eval_five_points(B)))
        got = interpolate_five(points)
        expected = [Fp2Element.zero() for _ in range(5)]
        for i in range(3):
            for j in range(3):
                expected[i + j] = expected[i + j] + fp2_mul(A[i], B[j])
        assert list(got) == expected


# -- closed-form product list ----------------------------------------------

def test_appendix_matches_oracle(rnd):
    for _ in range(150):
        a, b = rand_fp6(rnd), rand_fp6(rnd)
        out, trace = fp6_mul_appendix(a, b)
        assert out == fp6_mul_schoolbook(a, b)
        assert conjugate_check(trace)


def test_appendix_identity():
    a = Fp6Element.random(123)
    out, _ = fp6_mul_appendix(a, Fp6Element.one())
    assert out == a


def test_appendix_product_slots():
    # alpha = beta with a4 = 2: the bare leading product is 4 = 1
    flat = [F97Element.zero()] * 6
    flat[4] = F97Element.from_int(2)
    e = Fp6Element.from_flat(flat)
    _, trace = fp6_mul_appendix(e, e)
    assert trace.products[12] == F97Element.one()
    assert trace.products[13] == F97Element.one()  # (a4+a5)(b4+b5) = 4
    assert trace.products[14] == F97Element.zero()


def test_appendix_zero_inputs():
    _, trace = fp6_mul_appendix(Fp6Element.zero(), Fp6Element.zero())
    assert conjugate_check(trace)


def test_appendix_real_operands_when_no_s_parts(rnd):
    # a2 = a3 = 0 (flat indices 2, 3) makes the six complex products real
    for _ in range(10):
        fa = [F97Element.random(rnd.getrandbits(50)) for _ in range(6)]
        fb = [F97Element.random(rnd.getrandbits(50)) for _ in range(6)]
        fa[2] = fa[3] = fb[2] = fb[3] = F97Element.zero()
        a, b = Fp6Element.from_flat(fa), Fp6Element.from_flat(fb)
        out, trace = fp6_mul_appendix(a, b)
        for i in (3, 4, 5, 9, 10, 11):
            assert trace.products[i].c1.is_zero()
        assert conjugate_check(trace)
        assert out == fp6_mul_schoolbook(a, b)


def test_conjugate_check_needs_appendix_trace(rnd):
    _, trace = fp6_mul_15(rand_fp6(rnd), rand_fp6(rnd))
    with pytest.raises(ValueError):
        conjugate_check(trace)


def test_discrepancy_error_reports_index(rnd, monkeypatch):
    # damaging a combination scalar on a complex product leaves an s-residual
    broken = list(APPENDIX_COMBINATION)
    row0 = tuple(((1, 0), idx) if idx == 3 else (scalar, idx)
                 for scalar, idx in broken[0])
    broken[0] = row0
    monkeypatch.setattr(tower, "APPENDIX_COMBINATION", tuple(broken))
    with pytest.raises(FormulaDiscrepancyError) as exc:
        fp6_mul_appendix(rand_fp6(rnd), rand_fp6(rnd))
    assert exc.value.index == 0
    assert not exc.value.residual.is_zero()


def _derive_combination():
    """Re-derive the combination table from the five-point structure.

    The product splits as (Ea + s*Oa)(Eb + s*Ob) with three part-products
    G = Ea*Eb, H = Oa*Ob, M = (Ea+Oa)(Eb+Ob), each known at the five points
    through the closed-form product list.  Interpolating each part,
    recombining (real = G - H, s-part = M - G - H) and reducing r^3 = r + 1
    yields one scalar per (output coefficient, product) pair.
    """
    interp = (
        ((1, 0), (1, 0), (1, 0), (1, 0), (2, 0)),
        ((1, 0), (0, 2), (2, 0), (0, 1), (0, 0)),
        ((1, 0), (2, 0), (1, 0), (2, 0), (0, 0)),
        ((1, 0), (0, 1), (2, 0), (0, 2), (0, 0)),
        ((0, 0), (0, 0), (0, 0), (0, 0), (1, 0)),
    )
    part_products = {"G": (0, 3, 6, 9, 12), "H": (2, 5, 8, 11, 14),
                     "M": (1, 4, 7, 10, 13)}

    def interp_part(name):
        rows = []
        for k in range(5):
            weights = {}
            for p in range(5):
                if interp[k][p] != (0, 0):
                    weights[part_products[name][p]] = interp[k][p]
            rows.append(weights)
        return rows

    def combine(*terms):
        out = {}
        for sign, row in terms:
            for idx, (re, im) in row.items():
                if sign < 0:
                    re, im = (-re) % 3, (-im) % 3
                cre, cim = out.get(idx, (0, 0))
                out[idx] = ((cre + re) % 3, (cim + im) % 3)
        return {k: v for k, v in out.items() if v != (0, 0)}

    g, h, m = interp_part("G"), interp_part("H"), interp_part("M")
    real = [combine((1, g[k]), (-1, h[k])) for k in range(5)]
    imag = [combine((1, m[k]), (-1, g[k]), (-1, h[k])) for k in range(5)]

    def reduce_rows(rows):
        return [
            combine((1, rows[0]), (1, rows[3])),
            combine((1, rows[1]), (1, rows[3]), (1, rows[4])),
            combine((1, rows[2]), (1, rows[4])),
        ]

    rr, ri = reduce_rows(real), reduce_rows(imag)
    table = []
    for t in range(3):
        table.append(rr[t])
        table.append(ri[t])
    return table


def test_combination_table_rederived():
    derived = _derive_combination()
    shipped = [dict((idx, scalar) for scalar, idx in row)
               for row in APPENDIX_COMBINATION]
    assert shipped == derived
    # load-bearing signs: flipping either breaks the oracle agreement
    assert shipped[1][12] == (1, 0)
    assert shipped[5][0] == (2, 0)


def test_text_codecs(rnd):
    a2 = rand_fp2(rnd)
    assert Fp2Element.from_text(a2.text()) == a2
    a6 = rand_fp6(rnd)
    assert Fp6Element.from_text(a6.text()) == a6
    assert a6.text().count(":") == 5
    with pytest.raises(ValueError):
        Fp2Element.from_text("012")
    with pytest.raises(ValueError):
        Fp6Element.from_text(a2.text())
