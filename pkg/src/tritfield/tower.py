"""Tower arithmetic over GF(3^97): the quadratic and sextic extensions.

The tower is

    GF(3^97)         base field (polynomial basis, see ``field397``)
    GF(3^(2*97))  =  base[s] / (s^2 + 1)
    GF(3^(6*97))  =  quad[r] / (r^3 - r - 1)

A sextic element is A0 + A1*r + A2*r^2 with quadratic coefficients Ai, or
equivalently the flat vector (a0..a5) over the base field with

    alpha = a0 + a1*s + a2*r + a3*r*s + a4*r^2 + a5*r^2*s.

Multiplying by s is free: s*(x + y*s) = -y + x*s, a plane swap plus a bit
permutation.  A quadratic product costs exactly 3 base multiplications
(split into low/high/sum products, then fold s^2 = -1).

Sextic products come in four flavours, all returning identical values:

* ``fp6_mul_schoolbook`` - 3x3 coefficient convolution, 9 quadratic
  products = 27 base multiplications (the oracle; a flat 36-multiplication
  variant cross-checks it from the structure constants).
* ``fp6_mul_18`` - three-term Karatsuba over r: 6 quadratic products = 18.
* ``fp6_mul_15`` - evaluates both operands at the five points
  {1, s, -1, -s, inf}; each point product is ONE quadratic product, so
  5 x 3 = 15 base multiplications.  Interpolation uses only +/-1 and +/-s
  scalars, which cost nothing.
* ``fp6_mul_appendix`` - the closed-form 15-product list: the even/odd
  split alpha = E(r) + s*O(r) gives three polynomial part-products
  (E_a*E_b, O_a*O_b, (E_a+O_a)*(E_b+O_b)), each evaluated at the same five
  points.  The six products at the points +/-s have quadratic-extension
  operands; the remaining nine are plain base products.  The combination
  constants are derived by composing five-point interpolation, the even/odd
  recombination and the reduction r^3 = r + 1 (see ``_derive_combination``
  in the tests, which re-derives and pins the table), and every combined
  coefficient is checked to have an exactly zero s-component.

Multiplication counters are threaded explicitly; one counter must not be
shared by concurrent calls.  All element types are immutable.
"""

from __future__ import annotations

from . import field397
from .field397 import F97Element


class MulCounter:
    """Counts base-field multiplications routed through an operation."""

    __slots__ = ("base_muls",)

    def __init__(self):
        self.base_muls = 0

    def reset(self):
        self.base_muls = 0

    def __repr__(self):
        return f"MulCounter(base_muls={self.base_muls})"


def _mul(a, b, ctr):
    if ctr is not None:
        ctr.base_muls += 1
    return field397.mul(a, b)


class Fp2Element:
    """c0 + c1*s with s^2 = -1; components in GF(3^97)."""

    __slots__ = ("c0", "c1")

    def __init__(self, c0, c1):
        object.__setattr__(self, "c0", c0)
        object.__setattr__(self, "c1", c1)

    def __setattr__(self, name, value):
        raise AttributeError("Fp2Element is immutable")

    @classmethod
    def zero(cls):
        return cls(F97Element.zero(), F97Element.zero())

    @classmethod
    def one(cls):
        return cls(F97Element.one(), F97Element.zero())

    @classmethod
    def s(cls):
        return cls(F97Element.zero(), F97Element.one())

    @classmethod
    def random(cls, seed):
        """Deterministic random element; component seeds are seed*8 + k."""
        return cls(F97Element.random(seed * 8), F97Element.random(seed * 8 + 1))

    @classmethod
    def from_text(cls, text):
        parts = text.split(":")
        if len(parts) != 2:
            raise ValueError("quadratic element encoding needs 2 components")
        return cls(F97Element.from_text(parts[0]), F97Element.from_text(parts[1]))

    def text(self):
        return f"{self.c0.text()}:{self.c1.text()}"

    def conjugate(self):
        """The automorphism fixing the base field: s -> -s."""
        return Fp2Element(self.c0, -self.c1)

    def is_zero(self):
        return self.c0.is_zero() and self.c1.is_zero()

    def __add__(self, other):
        return Fp2Element(self.c0 + other.c0, self.c1 + other.c1)

    def __sub__(self, other):
        return Fp2Element(self.c0 - other.c0, self.c1 - other.c1)

    def __neg__(self):
        return Fp2Element(-self.c0, -self.c1)

    def __eq__(self, other):
        if not isinstance(other, Fp2Element):
            return NotImplemented
        return self.c0 == other.c0 and self.c1 == other.c1

    def __hash__(self):
        return hash((self.c0, self.c1))

    def __repr__(self):
        return f"Fp2Element({self.c0!r}, {self.c1!r})"


def fp2_mul_by_s(a: Fp2Element) -> Fp2Element:
    """s * (c0 + c1*s) = -c1 + c0*s; costs zero multiplications."""
    return Fp2Element(-a.c1, a.c0)


def _fp2_mul(a, b, ctr, record):
    # low/high/sum split: 3 base multiplications, then fold s^2 = -1
    p0 = _mul(a.c0, b.c0, ctr)
    p1 = _mul(a.c1, b.c1, ctr)
    pm = _mul(a.c0 + a.c1, b.c0 + b.c1, ctr)
    if record is not None:
        record.append(p0)
        record.append(p1)
        record.append(pm)
    return Fp2Element(p0 - p1, pm - p0 - p1)


def fp2_mul(a: Fp2Element, b: Fp2Element, ctr: MulCounter | None = None) -> Fp2Element:
    """Quadratic-extension product: exactly 3 counted base multiplications."""
    return _fp2_mul(a, b, ctr, None)


def fp2_mul_schoolbook(a: Fp2Element, b: Fp2Element, ctr: MulCounter | None = None) -> Fp2Element:
    """Four-product reference for the quadratic extension (cross-check)."""
    return Fp2Element(
        _mul(a.c0, b.c0, ctr) - _mul(a.c1, b.c1, ctr),
        _mul(a.c0, b.c1, ctr) + _mul(a.c1, b.c0, ctr),
    )


class Fp6Element:
    """c0 + c1*r + c2*r^2 with r^3 = r + 1; components in the quadratic field."""

    __slots__ = ("c0", "c1", "c2")

    def __init__(self, c0, c1, c2):
        object.__setattr__(self, "c0", c0)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)

    def __setattr__(self, name, value):
        raise AttributeError("Fp6Element is immutable")

    @classmethod
    def zero(cls):
        return cls(Fp2Element.zero(), Fp2Element.zero(), Fp2Element.zero())

    @classmethod
    def one(cls):
        return cls(Fp2Element.one(), Fp2Element.zero(), Fp2Element.zero())

    @classmethod
    def random(cls, seed):
        """Deterministic random element; flat component seeds are seed*8 + k."""
        return cls.from_flat(
            [F97Element.random(seed * 8 + k) for k in range(6)]
        )

    @classmethod
    def from_flat(cls, flat):
        """Build from the six base-field components (a0..a5)."""
        a0, a1, a2, a3, a4, a5 = flat
        return cls(Fp2Element(a0, a1), Fp2Element(a2, a3), Fp2Element(a4, a5))

    def flat(self):
        """The six base-field components (a0..a5); lossless with from_flat."""
        return (
            self.c0.c0, self.c0.c1,
            self.c1.c0, self.c1.c1,
            self.c2.c0, self.c2.c1,
        )

    @classmethod
    def from_text(cls, text):
        parts = text.split(":")
        if len(parts) != 6:
            raise ValueError("sextic element encoding needs 6 components")
        return cls.from_flat([F97Element.from_text(p) for p in parts])

    def text(self):
        return ":".join(c.text() for c in self.flat())

    def __add__(self, other):
        return Fp6Element(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other):
        return Fp6Element(self.c0 - other.c0, self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self):
        return Fp6Element(-self.c0, -self.c1, -self.c2)

    def __eq__(self, other):
        if not isinstance(other, Fp6Element):
            return NotImplemented
        return self.c0 == other.c0 and self.c1 == other.c1 and self.c2 == other.c2

    def __hash__(self):
        return hash((self.c0, self.c1, self.c2))

    def __repr__(self):
        return f"Fp6Element({self.text()!r})"


class ProductTrace:
    """The recorded products of one counted sextic multiplication.

    ``products`` always holds 15 entries.  For :func:`fp6_mul_15` they are
    the base-field products in point-major order (low, high, sum per point);
    ``point_products`` and ``pre_reduction`` then hold the five point
    products and the degree-4 coefficients before cubic reduction.  For
    :func:`fp6_mul_appendix` the entries follow the closed-form product
    list (quadratic-extension values at indices 3..5 and 9..11) and the
    interpolation fields are None.
    """

    __slots__ = ("products", "point_products", "pre_reduction")

    def __init__(self, products, point_products=None, pre_reduction=None):
        products = tuple(products)
        if len(products) != 15:
            raise ValueError(f"expected 15 products, got {len(products)}")
        object.__setattr__(self, "products", products)
        object.__setattr__(self, "point_products", point_products)
        object.__setattr__(self, "pre_reduction", pre_reduction)

    def __setattr__(self, name, value):
        raise AttributeError("ProductTrace is immutable")


def _reduce_cubic(c0, c1, c2, c3, c4):
    # r^3 = r + 1 and r^4 = r^2 + r fold the degree-4 coefficients down
    return (c0 + c3, c1 + c3 + c4, c2 + c4)


def fp6_mul_schoolbook(a: Fp6Element, b: Fp6Element, ctr: MulCounter | None = None) -> Fp6Element:
    """Oracle product: full 3x3 convolution, 9 quadratic = 27 base muls."""
    av = (a.c0, a.c1, a.c2)
    bv = (b.c0, b.c1, b.c2)
    conv = [Fp2Element.zero() for _ in range(5)]
    for i in range(3):
        for j in range(3):
            conv[i + j] = conv[i + j] + fp2_mul(av[i], bv[j], ctr)
    return Fp6Element(*_reduce_cubic(*conv))


def _flat_basis_table():
    # Structure constants of the flat basis e_(2p+q) = r^p * s^q:
    # s^2 = -1 and r^3 = r + 1, r^4 = r^2 + r.
    r_pow = {0: (1, 0, 0), 1: (0, 1, 0), 2: (0, 0, 1), 3: (1, 1, 0), 4: (0, 1, 1)}
    table = []
    for i in range(6):
        row = []
        pi, qi = divmod(i, 2)
        for j in range(6):
            pj, qj = divmod(j, 2)
            sign = 2 if qi + qj == 2 else 1  # s^2 = -1
            q = (qi + qj) % 2
            coeffs = [0] * 6
            for t, c in enumerate(r_pow[pi + pj]):
                if c:
                    coeffs[2 * t + q] = sign
            row.append(tuple(coeffs))
        table.append(tuple(row))
    return tuple(table)


_FLAT_TABLE = _flat_basis_table()


def fp6_mul_flat(a: Fp6Element, b: Fp6Element, ctr: MulCounter | None = None) -> Fp6Element:
    """Second oracle: 36 base products against the structure constants."""
    fa = a.flat()
    fb = b.flat()
    out = [F97Element.zero() for _ in range(6)]
    for i in range(6):
        for j in range(6):
            p = _mul(fa[i], fb[j], ctr)
            for k, coef in enumerate(_FLAT_TABLE[i][j]):
                if coef == 1:
                    out[k] = out[k] + p
                elif coef == 2:
                    out[k] = out[k] - p
    return Fp6Element.from_flat(out)


def fp6_mul_18(a: Fp6Element, b: Fp6Element, ctr: MulCounter | None = None) -> Fp6Element:
    """Three-term Karatsuba over r: 6 quadratic products = 18 base muls."""
    a0, a1, a2 = a.c0, a.c1, a.c2
    b0, b1, b2 = b.c0, b.c1, b.c2
    m0 = fp2_mul(a0, b0, ctr)
    m1 = fp2_mul(a1, b1, ctr)
    m2 = fp2_mul(a2, b2, ctr)
    m01 = fp2_mul(a0 + a1, b0 + b1, ctr)
    m02 = fp2_mul(a0 + a2, b0 + b2, ctr)
    m12 = fp2_mul(a1 + a2, b1 + b2, ctr)
    conv = (
        m0,
        m01 - m0 - m1,
        m02 - m0 - m2 + m1,
        m12 - m1 - m2,
        m2,
    )
    return Fp6Element(*_reduce_cubic(*conv))


def eval_five_points(coeffs):
    """Evaluate a degree-2 polynomial over the quadratic field at
    {1, s, -1, -s, inf} (inf = leading coefficient); costs no multiplications
    because s^2 = -1 makes every power of the points a free scalar."""
    a0, a1, a2 = coeffs
    sa1 = fp2_mul_by_s(a1)
    return (
        a0 + a1 + a2,
        a0 + sa1 - a2,
        a0 - a1 + a2,
        a0 - sa1 - a2,
        a2,
    )


def interpolate_five(points):
    """Recover the degree-4 product coefficients from the five point products.

    With s^2 = -1 the evaluations at {1, s, -1, -s} of c0..c4 form a
    4-point transform whose inverse needs only +/-1 and +/-s scalars
    (4 == 1 mod 3 makes the usual 1/4 factor vanish).
    """
    q1, qs, qm1, qms, qinf = points
    sqs = fp2_mul_by_s(qs)
    sqms = fp2_mul_by_s(qms)
    return (
        q1 + qs + qm1 + qms - qinf,
        q1 - sqs - qm1 + sqms,
        q1 - qs + qm1 - qms,
        q1 + sqs - qm1 - sqms,
        qinf,
    )


def fp6_mul_15(a: Fp6Element, b: Fp6Element, ctr: MulCounter | None = None):
    """Five-point product: exactly 15 base multiplications.

    Returns (product, trace); the trace records the 15 base products, the
    five point products and the pre-reduction coefficients.
    """
    pa = eval_five_points((a.c0, a.c1, a.c2))
    pb = eval_five_points((b.c0, b.c1, b.c2))
    record = []
    points = tuple(_fp2_mul(x, y, ctr, record) for x, y in zip(pa, pb))
    pre = interpolate_five(points)
    result = Fp6Element(*_reduce_cubic(*pre))
    return result, ProductTrace(record, points, pre)


class FormulaDiscrepancyError(ArithmeticError):
    """A closed-form combination left a nonzero s-component (diagnostic)."""

    def __init__(self, index, residual):
        super().__init__(
            f"combination for coefficient {index} has nonzero s-component"
        )
        self.index = index
        self.residual = residual


# Combination constants for the closed-form product list: row i lists
# (scalar, product index) terms of output coefficient c_i, scalars as
# (re, im) pairs mod 3 standing for re + im*s.  Derived by composing the
# five-point interpolation with the even/odd recombination and r^3 = r + 1;
# the test suite re-derives the table symbolically and the oracle checks it
# numerically.
APPENDIX_COMBINATION = (
    # c0
    (((2, 0), 0), ((1, 0), 2), ((1, 1), 3), ((2, 2), 5),
     ((1, 2), 9), ((2, 1), 11), ((2, 0), 12), ((1, 0), 14)),
    # c1
    (((1, 0), 0), ((2, 0), 1), ((1, 0), 2), ((2, 2), 3), ((1, 1), 4),
     ((2, 2), 5), ((2, 1), 9), ((1, 2), 10), ((2, 1), 11), ((1, 0), 12),
     ((2, 0), 13), ((1, 0), 14)),
    # c2
    (((2, 0), 0), ((1, 0), 2), ((1, 0), 6), ((2, 0), 8),
     ((1, 0), 12), ((2, 0), 14)),
    # c3
    (((1, 0), 0), ((2, 0), 1), ((1, 0), 2), ((2, 0), 6), ((1, 0), 7),
     ((2, 0), 8), ((2, 0), 12), ((1, 0), 13), ((2, 0), 14)),
    # c4
    (((1, 0), 0), ((2, 0), 2), ((2, 0), 3), ((1, 0), 5), ((1, 0), 6),
     ((2, 0), 8), ((2, 0), 9), ((1, 0), 11), ((1, 0), 12), ((2, 0), 14)),
    # c5
    (((2, 0), 0), ((1, 0), 1), ((2, 0), 2), ((1, 0), 3), ((2, 0), 4),
     ((1, 0), 5), ((2, 0), 6), ((1, 0), 7), ((2, 0), 8), ((1, 0), 9),
     ((2, 0), 10), ((1, 0), 11), ((2, 0), 12), ((1, 0), 13), ((2, 0), 14)),
)


def _as_fp2(v):
    if isinstance(v, Fp2Element):
        return v
    return Fp2Element(v, F97Element.zero())


def _apply_scalar(v, scalar):
    # re*v + im*(s*v) with re, im in {0, 1, 2}; no multiplications
    re, im = scalar
    out = Fp2Element.zero()
    if re == 1:
        out = out + v
    elif re == 2:
        out = out - v
    if im:
        sv = fp2_mul_by_s(v)
        if im == 1:
            out = out + sv
        else:
            out = out - sv
    return out


def fp6_mul_appendix(a: Fp6Element, b: Fp6Element):
    """Closed-form product list evaluated literally.

    The nine products at the points {1, -1, inf} are base-field products;
    the six at {s, -s} have quadratic-extension operands.  Each output
    coefficient is combined with the scalars of ``APPENDIX_COMBINATION``
    (realized as negation and multiplication by s, never a counted
    multiplication) and must come out with an exactly zero s-component;
    a nonzero residual raises :class:`FormulaDiscrepancyError`.

    Returns (product, trace).
    """
    a0, a1, a2, a3, a4, a5 = a.flat()
    b0, b1, b2, b3, b4, b5 = b.flat()
    mul = field397.mul
    products = (
        mul(a0 + a2 + a4, b0 + b2 + b4),
        mul(a0 + a1 + a2 + a3 + a4 + a5, b0 + b1 + b2 + b3 + b4 + b5),
        mul(a1 + a3 + a5, b1 + b3 + b5),
        fp2_mul(Fp2Element(a0 - a4, a2), Fp2Element(b0 - b4, b2)),
        fp2_mul(
            Fp2Element((a0 + a1) - (a4 + a5), a2 + a3),
            Fp2Element((b0 + b1) - (b4 + b5), b2 + b3),
        ),
        fp2_mul(Fp2Element(a1 - a5, a3), Fp2Element(b1 - b5, b3)),
        mul(a0 - a2 + a4, b0 - b2 + b4),
        mul(a0 + a1 - a2 - a3 + a4 + a5, b0 + b1 - b2 - b3 + b4 + b5),
        mul(a1 - a3 + a5, b1 - b3 + b5),
        fp2_mul(Fp2Element(a0 - a4, -a2), Fp2Element(b0 - b4, -b2)),
        fp2_mul(
            Fp2Element((a0 + a1) - (a4 + a5), -(a2 + a3)),
            Fp2Element((b0 + b1) - (b4 + b5), -(b2 + b3)),
        ),
        fp2_mul(Fp2Element(a1 - a5, -a3), Fp2Element(b1 - b5, -b3)),
        mul(a4, b4),
        mul(a4 + a5, b4 + b5),
        mul(a5, b5),
    )
    flat = []
    for i, row in enumerate(APPENDIX_COMBINATION):
        acc = Fp2Element.zero()
        for scalar, idx in row:
            acc = acc + _apply_scalar(_as_fp2(products[idx]), scalar)
        if not acc.c1.is_zero():
            raise FormulaDiscrepancyError(i, acc.c1)
        flat.append(acc.c0)
    return Fp6Element.from_flat(flat), ProductTrace(products)


def conjugate_check(trace: ProductTrace) -> bool:
    """True iff the -s point products are the conjugates of the s ones.

    The six quadratic-extension products in the closed-form list have
    operands with base-field building blocks, so swapping s for -s
    conjugates them; this documents the structural redundancy of the list.
    Only traces from :func:`fp6_mul_appendix` carry the needed entries.
    """
    p = trace.products
    for i in (3, 4, 5, 9, 10, 11):
        if not isinstance(p[i], Fp2Element):
            raise ValueError("trace does not come from fp6_mul_appendix")
    return (
        p[9] == p[3].conjugate()
        and p[10] == p[4].conjugate()
        and p[11] == p[5].conjugate()
    )
