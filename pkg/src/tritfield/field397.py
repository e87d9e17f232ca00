"""The field GF(3^97) = GF(3)[x] / (x^97 + x^16 + 2).

Elements are length-97 coefficient vectors in polynomial basis.  Reduction
uses the rewrite x^97 = 2*x^16 + 1 (the modulus solved for x^97, with
-1 = 2 and -2 = 1 in GF(3)), applied to the overflow coefficients from the
top down; this mirrors the feedback taps of the shift-register multiplier
built on top of this module.

``mul`` here is the reference path (schoolbook product, then reduce) and
serves as the oracle for every faster multiplier in the package.
"""

from __future__ import annotations

from ._backend import kernels
from .gf3 import TritVector, _planes_add

DEGREE = 97
FEEDBACK_TAP = 16
_MASK97 = (1 << DEGREE) - 1

# x^97 + x^16 + 2, lowest coefficient first.
MODULUS = TritVector.from_digits(
    [2] + [0] * 15 + [1] + [0] * 80 + [1]
)


class F97Element:
    """An element of GF(3^97): exactly 97 trits."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        if not isinstance(coeffs, TritVector):
            raise TypeError("coeffs must be a TritVector")
        if coeffs.length != DEGREE:
            raise ValueError(f"element needs {DEGREE} coefficients, got {coeffs.length}")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("F97Element is immutable")

    @classmethod
    def _make(cls, lo, hi):
        e = object.__new__(cls)
        object.__setattr__(e, "coeffs", TritVector._make(DEGREE, lo, hi))
        return e

    @classmethod
    def zero(cls):
        return cls._make(0, 0)

    @classmethod
    def one(cls):
        return cls._make(1, 0)

    @classmethod
    def from_int(cls, value):
        """Constant element 0, 1 or 2."""
        if value == 0:
            return cls.zero()
        if value == 1:
            return cls.one()
        if value == 2:
            return cls._make(0, 1)
        raise ValueError(f"not a GF(3) constant: {value!r}")

    @classmethod
    def random(cls, seed):
        return cls(TritVector.random(DEGREE, seed))

    @classmethod
    def from_text(cls, text):
        if len(text) != DEGREE:
            raise ValueError(f"encoding needs {DEGREE} digits, got {len(text)}")
        return cls(TritVector.from_text(text))

    def text(self):
        return self.coeffs.text()

    def is_zero(self):
        return self.coeffs.is_zero()

    def __eq__(self, other):
        if not isinstance(other, F97Element):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"F97Element({self.text()!r})"

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        lo, hi = _planes_add(a.lo, a.hi, b.lo, b.hi)
        return F97Element._make(lo, hi)

    def __sub__(self, other):
        a, b = self.coeffs, other.coeffs
        lo, hi = _planes_add(a.lo, a.hi, b.hi, b.lo)
        return F97Element._make(lo, hi)

    def __neg__(self):
        c = self.coeffs
        return F97Element._make(c.hi, c.lo)


def _reduce_planes(lo, hi):
    # Rewrite every x^(97+i) into 2*x^(16+i) + x^i until nothing overflows.
    # For inputs of length <= 193 this terminates after at most two passes.
    while lo.bit_length() > DEGREE or hi.bit_length() > DEGREE:
        top_lo = lo >> DEGREE
        top_hi = hi >> DEGREE
        lo &= _MASK97
        hi &= _MASK97
        # + 2*top*x^16: scaling by 2 swaps the planes
        lo, hi = _planes_add(lo, hi, top_hi << FEEDBACK_TAP, top_lo << FEEDBACK_TAP)
        # + top
        lo, hi = _planes_add(lo, hi, top_lo, top_hi)
    return lo, hi


def reduce(p: TritVector) -> F97Element:
    """Reduce a polynomial of length <= 193 modulo x^97 + x^16 + 2."""
    if p.length > 2 * DEGREE - 1:
        raise ValueError(
            f"reduce expects length <= {2 * DEGREE - 1}, got {p.length}"
        )
    lo, hi = _reduce_planes(p.lo, p.hi)
    return F97Element._make(lo, hi)


def mul(a: F97Element, b: F97Element) -> F97Element:
    """Reference product: schoolbook polynomial product, then reduce."""
    ca, cb = a.coeffs, b.coeffs
    lo, hi = kernels.poly_mul_planes(ca.lo, ca.hi, DEGREE, cb.lo, cb.hi, DEGREE)
    lo, hi = _reduce_planes(lo, hi)
    return F97Element._make(lo, hi)


def add(a: F97Element, b: F97Element) -> F97Element:
    return a + b


def sub(a: F97Element, b: F97Element) -> F97Element:
    return a - b


def neg(a: F97Element) -> F97Element:
    return -a
