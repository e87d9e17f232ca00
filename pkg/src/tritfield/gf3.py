"""Scalar and bit-sliced vector arithmetic over GF(3).

A GF(3) coefficient ("trit") is stored as a disjoint pair of bits
``(hi, lo)``::

    0 -> (0, 0)      1 -> (0, 1)      2 -> (1, 0)

The pair ``(1, 1)`` is unrepresentable; constructors reject it and every
operation preserves the invariant ``hi & lo == 0``.

A :class:`TritVector` keeps the ``lo`` bits of all its coefficients in one
integer bit plane and the ``hi`` bits in another, so a single word-wide
boolean operation processes ``WORD_BITS`` coefficients at once.  With that
layout the three scalar formulas

    add:  t = (a_lo | b_hi) ^ (a_hi | b_lo)
          hi' = (a_lo | b_lo) ^ t,   lo' = (a_hi | b_hi) ^ t
    mul:  hi' = (a_hi & b_lo) | (a_lo & b_hi)
          lo' = (a_lo & b_lo) | (a_hi & b_hi)
    neg:  swap the two bits

lift verbatim to whole planes.  Negation (multiplication by 2) is just a
plane swap, which is why it is treated as free in every cost model built on
top of this module.

All values here are immutable; operations are pure functions, so instances
can be shared freely between threads.
"""

from __future__ import annotations

# Nominal machine word width of the packed planes.  Python integers make the
# packing transparent, but the compiled kernels and the word-boundary tests
# work in chunks of this size.
WORD_BITS = 64

_MASK64 = (1 << 64) - 1


class Trit:
    """One GF(3) coefficient as a disjoint (hi, lo) bit pair."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi, lo):
        if hi not in (0, 1) or lo not in (0, 1):
            raise ValueError("trit bits must be 0 or 1")
        if hi & lo:
            raise ValueError("invalid trit encoding (1, 1)")
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "lo", lo)

    def __setattr__(self, name, value):
        raise AttributeError("Trit is immutable")

    @classmethod
    def from_int(cls, value):
        if value not in (0, 1, 2):
            raise ValueError(f"not a GF(3) value: {value!r}")
        return cls(value >> 1, value & 1)

    def __int__(self):
        return (self.hi << 1) | self.lo

    def __eq__(self, other):
        if isinstance(other, Trit):
            return self.hi == other.hi and self.lo == other.lo
        if isinstance(other, int):
            return int(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.hi, self.lo))

    def __repr__(self):
        return f"Trit({int(self)})"


def trit_add(a: Trit, b: Trit) -> Trit:
    """Sum in GF(3), computed on the bit encoding."""
    t = (a.lo | b.hi) ^ (a.hi | b.lo)
    return Trit((a.lo | b.lo) ^ t, (a.hi | b.hi) ^ t)


def trit_mul(a: Trit, b: Trit) -> Trit:
    """Product in GF(3), computed on the bit encoding."""
    return Trit((a.hi & b.lo) | (a.lo & b.hi), (a.lo & b.lo) | (a.hi & b.hi))


def trit_neg(a: Trit) -> Trit:
    """Negation (multiplication by 2): swap the two bits."""
    return Trit(a.lo, a.hi)


def _planes_add(alo, ahi, blo, bhi):
    """Word-parallel GF(3) addition of two plane pairs; returns (lo, hi)."""
    t = (alo | bhi) ^ (ahi | blo)
    return (ahi | bhi) ^ t, (alo | blo) ^ t


def _planes_sub(alo, ahi, blo, bhi):
    # a - b = a + (-b); negation swaps planes
    return _planes_add(alo, ahi, bhi, blo)


def _splitmix64(state):
    """One step of the SplitMix64 generator: returns (new_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


class TritVector:
    """Immutable packed vector of GF(3) coefficients.

    ``lo`` and ``hi`` are the two bit planes; bit ``i`` of each holds the
    corresponding bit of coefficient ``i``.  Bits above ``length`` are zero.
    """

    __slots__ = ("length", "lo", "hi")

    def __init__(self, length, lo, hi):
        if length < 0:
            raise ValueError("length must be >= 0")
        mask = (1 << length) - 1
        if lo & ~mask or hi & ~mask:
            raise ValueError("plane bits set beyond vector length")
        if lo & hi:
            raise ValueError("invalid trit encoding (1, 1) in planes")
        object.__setattr__(self, "length", length)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("TritVector is immutable")

    @classmethod
    def _make(cls, length, lo, hi):
        # Internal fast path: caller guarantees the invariants hold.
        v = object.__new__(cls)
        object.__setattr__(v, "length", length)
        object.__setattr__(v, "lo", lo)
        object.__setattr__(v, "hi", hi)
        return v

    @classmethod
    def zeros(cls, length):
        return cls(length, 0, 0)

    @classmethod
    def from_digits(cls, digits):
        """Build from an iterable of 0/1/2 values, index = coefficient."""
        lo = hi = 0
        n = 0
        for d in digits:
            if d == 1:
                lo |= 1 << n
            elif d == 2:
                hi |= 1 << n
            elif d != 0:
                raise ValueError(f"not a GF(3) digit: {d!r}")
            n += 1
        return cls._make(n, lo, hi)

    @classmethod
    def from_text(cls, text):
        """Parse the canonical encoding: digits 0/1/2, most significant first."""
        lo = hi = 0
        n = len(text)
        for i, ch in enumerate(text):
            pos = n - 1 - i
            if ch == "1":
                lo |= 1 << pos
            elif ch == "2":
                hi |= 1 << pos
            elif ch != "0":
                raise ValueError(f"bad ternary digit {ch!r} at position {i}")
        return cls._make(n, lo, hi)

    @classmethod
    def random(cls, length, seed):
        """Deterministic pseudorandom vector, each trit uniform on {0,1,2}.

        The seed-to-stream mapping is fixed: a SplitMix64 stream seeded with
        ``seed`` is consumed in pairs of 64-bit words (x, y) per 64-coefficient
        chunk.  Bit position i maps to a trit via (x_i, y_i): (0,0) -> 0,
        (1,0) -> 1, (0,1) -> 2, and (1,1) positions are redrawn from the next
        word pair.  Rejection keeps the distribution exactly uniform.
        """
        lo = hi = 0
        state = seed & _MASK64
        pos = 0
        while pos < length:
            chunk = min(64, length - pos)
            pending = (1 << chunk) - 1
            clo = chi = 0
            while pending:
                state, x = _splitmix64(state)
                state, y = _splitmix64(state)
                clo |= x & ~y & pending
                chi |= y & ~x & pending
                pending &= x & y
            lo |= clo << pos
            hi |= chi << pos
            pos += chunk
        return cls._make(length, lo, hi)

    # -- element access -------------------------------------------------

    def __len__(self):
        return self.length

    def __getitem__(self, i):
        if not 0 <= i < self.length:
            raise IndexError(i)
        return ((self.lo >> i) & 1) | (((self.hi >> i) & 1) << 1)

    def digits(self):
        return [self[i] for i in range(self.length)]

    def text(self):
        """Canonical encoding: most significant coefficient first."""
        return "".join("012"[self[i]] for i in range(self.length - 1, -1, -1))

    def is_zero(self):
        return self.lo == 0 and self.hi == 0

    # -- arithmetic -----------------------------------------------------

    def _check_length(self, other):
        if self.length != other.length:
            raise ValueError(
                f"length mismatch: {self.length} vs {other.length}"
            )

    def __add__(self, other):
        self._check_length(other)
        lo, hi = _planes_add(self.lo, self.hi, other.lo, other.hi)
        return TritVector._make(self.length, lo, hi)

    def __sub__(self, other):
        self._check_length(other)
        lo, hi = _planes_sub(self.lo, self.hi, other.lo, other.hi)
        return TritVector._make(self.length, lo, hi)

    def __neg__(self):
        return TritVector._make(self.length, self.hi, self.lo)

    def scale(self, k):
        """Multiply every coefficient by the scalar k in {0, 1, 2}."""
        k = int(k)
        if k == 0:
            return TritVector._make(self.length, 0, 0)
        if k == 1:
            return self
        if k == 2:
            return -self
        raise ValueError(f"not a GF(3) scalar: {k!r}")

    def __eq__(self, other):
        if not isinstance(other, TritVector):
            return NotImplemented
        return (
            self.length == other.length
            and self.lo == other.lo
            and self.hi == other.hi
        )

    def __hash__(self):
        return hash((self.length, self.lo, self.hi))

    def __repr__(self):
        if self.length <= 24:
            return f"TritVector({self.digits()})"
        return f"TritVector(length={self.length}, text={self.text()!r})"


def vec_add(a: TritVector, b: TritVector) -> TritVector:
    return a + b


def vec_sub(a: TritVector, b: TritVector) -> TritVector:
    return a - b


def vec_neg(a: TritVector) -> TritVector:
    return -a


def vec_scale(a: TritVector, k) -> TritVector:
    return a.scale(k)


def vec_random(length, seed) -> TritVector:
    return TritVector.random(length, seed)
