"""Cycle-accurate model of a digit-level LFSR multiplier for GF(3^97).

Both operands are zero-padded at the high end to ``ceil(97/D) * D`` trits
and loaded into registers A and B.  Each clock cycle

  * the most significant digit of B (D trits) is multiplied by every digit
    of A through identical D x D digit-multiplier circuits, the high halves
    of adjacent digit products overlapping into their neighbours,
  * the accumulator is shifted up by D (multiplication by x^D) and reduced
    through the feedback taps x^97 = 2*x^16 + 1,
  * the row sum is added into the accumulator and B consumes its top digit.

After ``ceil(97/D)`` cycles the accumulator holds the reduced product; this
is most-significant-digit-first Horner evaluation with in-loop modular
reduction.

The digit multiplier is any method expression whose nominal length is at
least D, pruned to D (e.g. digit size 7 uses ``KC4`` pruned from length 8).
Area is reported as GF(3) gate counts: multiplications and additions of the
digit circuits plus the overlap and feedback adders; negation and scaling
by 2 are bit permutations and cost nothing.

Configs are immutable and shareable; an :class:`LfsrState` is a mutable
value owned by one caller at a time.
"""

from __future__ import annotations

from ._backend import kernels
from .field397 import DEGREE, F97Element, _reduce_planes
from .gf3 import TritVector, _planes_add
from .polymul import CostReport, MethodExpr, build_circuit, cost, parse_method

# Digit-multiplier methods used for the standard digit-size sweep.
STANDARD_METHODS = {1: "C1", 2: "C2", 4: "C4", 7: "KC4", 14: "KKC4"}
STANDARD_DIGIT_SIZES = (1, 2, 4, 7, 14)


def default_method(digit_size: int) -> MethodExpr:
    """The standard method for a digit size; classical for other sizes."""
    return parse_method(STANDARD_METHODS.get(digit_size, f"C{digit_size}"))


class LfsrConfig:
    """Digit size, digit-multiplier method, and the pruned digit circuit."""

    __slots__ = ("digit_size", "method", "digit_circuit", "n_digits", "reg_len")

    def __init__(self, digit_size, method=None):
        if not 1 <= digit_size <= DEGREE:
            raise ValueError(f"digit size must be in 1..{DEGREE}")
        if method is None:
            method = default_method(digit_size)
        elif isinstance(method, str):
            method = parse_method(method)
        if method.operand_length < digit_size:
            raise ValueError(
                f"method {method} is too short for digit size {digit_size}"
            )
        n_digits = -(-DEGREE // digit_size)
        object.__setattr__(self, "digit_size", digit_size)
        object.__setattr__(self, "method", method)
        object.__setattr__(self, "digit_circuit", build_circuit(method, digit_size))
        object.__setattr__(self, "n_digits", n_digits)
        object.__setattr__(self, "reg_len", n_digits * digit_size)

    def __setattr__(self, name, value):
        raise AttributeError("LfsrConfig is immutable")

    def __repr__(self):
        return f"LfsrConfig(digit_size={self.digit_size}, method={self.method})"


class LfsrState:
    """Registers and cycle counter of one in-flight multiplication."""

    __slots__ = ("cfg", "reg_a", "reg_b", "acc", "cycle")

    def __init__(self, cfg, reg_a, reg_b, acc, cycle):
        self.cfg = cfg
        self.reg_a = reg_a
        self.reg_b = reg_b
        self.acc = acc
        self.cycle = cycle

    def finished(self):
        return self.cycle >= self.cfg.n_digits

    def __repr__(self):
        return (
            f"LfsrState(D={self.cfg.digit_size}, cycle={self.cycle}"
            f"/{self.cfg.n_digits})"
        )


def load(cfg: LfsrConfig, a: F97Element, b: F97Element) -> LfsrState:
    """Load the operands, zero-padded at the high end; clear the accumulator."""
    reg_a = TritVector._make(cfg.reg_len, a.coeffs.lo, a.coeffs.hi)
    reg_b = TritVector._make(cfg.reg_len, b.coeffs.lo, b.coeffs.hi)
    return LfsrState(cfg, reg_a, reg_b, F97Element.zero(), 0)


def step(state: LfsrState) -> LfsrState:
    """Advance one clock cycle; errors once the multiplier has finished."""
    cfg = state.cfg
    if state.cycle >= cfg.n_digits:
        raise RuntimeError("multiplier already finished")
    d = cfg.digit_size
    reg_len = cfg.reg_len
    shift = reg_len - d
    mask_d = (1 << d) - 1
    b = state.reg_b
    digit_lo = (b.lo >> shift) & mask_d
    digit_hi = (b.hi >> shift) & mask_d
    row_lo, row_hi = kernels.lfsr_digit_row(
        cfg.digit_circuit.program(),
        state.reg_a.lo,
        state.reg_a.hi,
        reg_len,
        digit_lo,
        digit_hi,
        d,
    )
    # acc * x^D + row, reduced through the feedback taps
    acc = state.acc.coeffs
    sum_lo, sum_hi = _planes_add(acc.lo << d, acc.hi << d, row_lo, row_hi)
    lo, hi = _reduce_planes(sum_lo, sum_hi)
    state.acc = F97Element._make(lo, hi)
    # B consumes its most significant digit
    mask_reg = (1 << reg_len) - 1
    state.reg_b = TritVector._make(
        reg_len, (b.lo << d) & mask_reg, (b.hi << d) & mask_reg
    )
    state.cycle += 1
    return state


def run(cfg: LfsrConfig, a: F97Element, b: F97Element):
    """Run a full multiplication; returns (product, clock cycles)."""
    state = load(cfg, a, b)
    while state.cycle < cfg.n_digits:
        step(state)
    return state.acc, state.cycle


def cost_report(cfg: LfsrConfig) -> CostReport:
    """Combinational gate counts of the whole multiplier.

    One digit-circuit instance per digit of A, plus the overlap adders
    between adjacent instances ((n-1)*(D-1) positions), the row-accumulate
    adders (97 + D - 1 positions) and the feedback adders (two tap targets
    per overflowing power).  Depth adds the overlap, accumulate and feedback
    stages to the digit-circuit depth.
    """
    c = cost(cfg.digit_circuit)
    n = cfg.n_digits
    d = cfg.digit_size
    mul_gates = n * c.mul_gates
    add_gates = (
        n * c.add_gates
        + (n - 1) * (d - 1)
        + (DEGREE + d - 1)
        + 2 * d
    )
    return CostReport(mul_gates, add_gates, c.depth + 3)
