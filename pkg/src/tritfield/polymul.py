"""Polynomial multiplication over GF(3): reference, recursive methods, circuits.

Polynomials are :class:`~tritfield.gf3.TritVector` values indexed by
exponent; the declared length is storage, so leading zeros are legal.

A multiplication method is a recursive composition written outer-to-inner,
e.g. ``KC4``: the outermost token splits the operands into blocks and the
remaining tokens multiply the blocks.  ``K`` is the 3-product split of two
halves,

    (a1*X + a0)(b1*X + b0)
        = a1*b1*X^2 + ((a1+a0)(b1+b0) - a1*b1 - a0*b0)*X + a0*b0,

costing 3 multiplications and 4 additions/subtractions of block products
instead of the classical 4 and 1.  ``Cn`` is the classical n-block method
with n^2 block products.  ``KC4`` therefore multiplies length-8 operands,
``KKC4`` length-16.

Methods can be applied to shorter operands than their nominal length by
padding with zeros at the high (leading) end: :func:`build_circuit` binds the
padded coefficient slots to a known zero and folds away every gate that the
zeros make dead, so e.g. ``KC4`` pruned to length 7 needs fewer
multiplication gates than the full length-8 circuit.

Circuits are immutable gate DAGs; evaluation is pure, so one circuit may be
evaluated concurrently from many threads.
"""

from __future__ import annotations

from array import array

from ._backend import kernels
from .gf3 import TritVector

# A polynomial is just a coefficient vector; the alias marks intent.
Poly = TritVector

OP_ZERO, OP_ADD, OP_SUB, OP_NEG, OP_MUL = range(5)
_OP_NAMES = ("ZERO", "ADD", "SUB", "NEG", "MUL")

_ADD3 = [[(i + j) % 3 for j in range(3)] for i in range(3)]
_SUB3 = [[(i - j) % 3 for j in range(3)] for i in range(3)]
_MUL3 = [[(i * j) % 3 for j in range(3)] for i in range(3)]


def schoolbook_mul(a: Poly, b: Poly) -> Poly:
    """Exact product of two coefficient vectors; length len(a)+len(b)-1.

    This is the oracle every faster path is checked against.
    """
    if len(a) < 1 or len(b) < 1:
        raise ValueError("operands must have length >= 1")
    lo, hi = kernels.poly_mul_planes(a.lo, a.hi, a.length, b.lo, b.hi, b.length)
    return TritVector(a.length + b.length - 1, lo, hi)


class MethodExpr:
    """A recursive multiplication method: an outer-to-inner factor list.

    Each factor is ``("K", 2)`` or ``("C", n)``; the operand length is the
    product of the factor lengths.
    """

    __slots__ = ("factors",)

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("method needs at least one factor")
        for kind, n in factors:
            if kind == "K":
                if n != 2:
                    raise ValueError("K splits in halves")
            elif kind == "C":
                if n < 1:
                    raise ValueError("Cn needs n >= 1")
            else:
                raise ValueError(f"unknown factor kind {kind!r}")
        object.__setattr__(self, "factors", factors)

    def __setattr__(self, name, value):
        raise AttributeError("MethodExpr is immutable")

    @property
    def operand_length(self):
        n = 1
        for _, f in self.factors:
            n *= f
        return n

    def __str__(self):
        return "".join(k if k == "K" else f"C{n}" for k, n in self.factors)

    def __repr__(self):
        return f"MethodExpr({self})"

    def __eq__(self, other):
        if not isinstance(other, MethodExpr):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)


class MethodParseError(ValueError):
    """Malformed method string; ``position`` is the offending index."""

    def __init__(self, text, position, message):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.position = position


def parse_method(text: str) -> MethodExpr:
    """Parse a method string such as ``C4``, ``KC4`` or ``KKC4``."""
    factors = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "K":
            factors.append(("K", 2))
            i += 1
        elif ch == "C":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise MethodParseError(text, i, "C needs a block count")
            n = int(text[i + 1 : j])
            if n < 1:
                raise MethodParseError(text, i, "C block count must be >= 1")
            factors.append(("C", n))
            i = j
        else:
            raise MethodParseError(text, i, f"unexpected character {ch!r}")
    if not factors:
        raise MethodParseError(text, 0, "empty method string")
    return MethodExpr(factors)


def _rec_mul(factors, a, b):
    # a, b are equal-length lists of 0/1/2; returns the 2n-1 product list.
    if not factors:
        return [_MUL3[a[0]][b[0]]]
    kind, m = factors[0]
    rest = factors[1:]
    n = len(a)
    block = n // m
    out = [0] * (2 * n - 1)
    if kind == "K":
        a0, a1 = a[:block], a[block:]
        b0, b1 = b[:block], b[block:]
        p0 = _rec_mul(rest, a0, b0)
        p2 = _rec_mul(rest, a1, b1)
        sa = [_ADD3[x][y] for x, y in zip(a0, a1)]
        sb = [_ADD3[x][y] for x, y in zip(b0, b1)]
        p1 = _rec_mul(rest, sa, sb)
        mid = [_SUB3[_SUB3[x][y]][z] for x, y, z in zip(p1, p2, p0)]
        for i, v in enumerate(p0):
            out[i] = _ADD3[out[i]][v]
        for i, v in enumerate(mid):
            out[i + block] = _ADD3[out[i + block]][v]
        for i, v in enumerate(p2):
            out[i + 2 * block] = _ADD3[out[i + 2 * block]][v]
    else:
        for i in range(m):
            for j in range(m):
                p = _rec_mul(
                    rest,
                    a[i * block : (i + 1) * block],
                    b[j * block : (j + 1) * block],
                )
                off = (i + j) * block
                for t, v in enumerate(p):
                    out[off + t] = _ADD3[out[off + t]][v]
    return out


def recursive_mul(method: MethodExpr, a: Poly, b: Poly) -> Poly:
    """Multiply by direct recursion over the method's factor list."""
    n = method.operand_length
    if len(a) != n or len(b) != n:
        raise ValueError(
            f"method {method} needs operands of length {n}, "
            f"got {len(a)} and {len(b)}"
        )
    return TritVector.from_digits(_rec_mul(method.factors, a.digits(), b.digits()))


class Circuit:
    """An arithmetic-circuit DAG multiplying two length-n coefficient vectors.

    Nodes 0 .. n-1 are the first operand's coefficients, n .. 2n-1 the
    second's; gate k is node ``2n + k``.  Gates are topologically ordered and,
    once pruning has run, no gate reads a ZERO gate (a ZERO gate survives only
    when an output coefficient is identically zero).
    """

    __slots__ = ("method", "actual_length", "n_inputs", "gates", "outputs", "_prog")

    def __init__(self, method, actual_length, gates, outputs):
        object.__setattr__(self, "method", method)
        object.__setattr__(self, "actual_length", actual_length)
        object.__setattr__(self, "n_inputs", 2 * actual_length)
        object.__setattr__(self, "gates", tuple(gates))
        object.__setattr__(self, "outputs", tuple(outputs))
        object.__setattr__(self, "_prog", None)

    def __setattr__(self, name, value):
        raise AttributeError("Circuit is immutable")

    def program(self):
        """Compact arrays consumed by the evaluation kernels."""
        if self._prog is None:
            ops = bytes(g[0] for g in self.gates)
            xs = array("i", (g[1] for g in self.gates))
            ys = array("i", (g[2] for g in self.gates))
            outs = array("i", self.outputs)
            object.__setattr__(self, "_prog", (ops, xs, ys, outs, self.n_inputs))
        return self._prog

    def _node_name(self, node):
        n = self.actual_length
        if node < n:
            return f"a{node}"
        if node < 2 * n:
            return f"b{node - n}"
        return f"g{node - 2 * n}"

    def dump(self):
        """Deterministic text form: one ``g<k> = OP x y`` line per gate."""
        lines = []
        for k, (op, x, y) in enumerate(self.gates):
            if op == OP_ZERO:
                lines.append(f"g{k} = ZERO")
            elif op == OP_NEG:
                lines.append(f"g{k} = NEG {self._node_name(x)}")
            else:
                lines.append(
                    f"g{k} = {_OP_NAMES[op]} {self._node_name(x)} {self._node_name(y)}"
                )
        for k, node in enumerate(self.outputs):
            lines.append(f"out{k} = {self._node_name(node)}")
        return "\n".join(lines)

    def __repr__(self):
        return (
            f"Circuit({self.method}, length={self.actual_length}, "
            f"gates={len(self.gates)})"
        )


class _Builder:
    """Gate emitter with constant folding for the known-zero marker (None).

    Folding x+0 -> x, x*0 -> 0, -0 -> 0 at emission time propagates zeros to
    a fixed point, so no surviving gate ever reads a zero.
    """

    def __init__(self, actual_length):
        self.n_inputs = 2 * actual_length
        self.gates = []

    def _emit(self, op, x, y):
        self.gates.append((op, x, y))
        return self.n_inputs + len(self.gates) - 1

    def add(self, x, y):
        if x is None:
            return y
        if y is None:
            return x
        return self._emit(OP_ADD, x, y)

    def sub(self, x, y):
        if y is None:
            return x
        if x is None:
            return self.neg(y)
        return self._emit(OP_SUB, x, y)

    def neg(self, x):
        if x is None:
            return None
        return self._emit(OP_NEG, x, -1)

    def mul(self, x, y):
        if x is None or y is None:
            return None
        return self._emit(OP_MUL, x, y)


def _rec_build(bld, factors, a, b):
    # a, b are lists of node ids (None = known zero); mirrors _rec_mul.
    if not factors:
        return [bld.mul(a[0], b[0])]
    kind, m = factors[0]
    rest = factors[1:]
    n = len(a)
    block = n // m
    out = [None] * (2 * n - 1)
    if kind == "K":
        a0, a1 = a[:block], a[block:]
        b0, b1 = b[:block], b[block:]
        p0 = _rec_build(bld, rest, a0, b0)
        p2 = _rec_build(bld, rest, a1, b1)
        sa = [bld.add(x, y) for x, y in zip(a0, a1)]
        sb = [bld.add(x, y) for x, y in zip(b0, b1)]
        p1 = _rec_build(bld, rest, sa, sb)
        mid = [bld.sub(bld.sub(x, y), z) for x, y, z in zip(p1, p2, p0)]
        for i, v in enumerate(p0):
            out[i] = bld.add(out[i], v)
        for i, v in enumerate(mid):
            out[i + block] = bld.add(out[i + block], v)
        for i, v in enumerate(p2):
            out[i + 2 * block] = bld.add(out[i + 2 * block], v)
    else:
        for i in range(m):
            for j in range(m):
                p = _rec_build(
                    bld,
                    rest,
                    a[i * block : (i + 1) * block],
                    b[j * block : (j + 1) * block],
                )
                off = (i + j) * block
                for t, v in enumerate(p):
                    out[off + t] = bld.add(out[off + t], v)
    return out


def build_circuit(method: MethodExpr, actual_length: int) -> Circuit:
    """Build the pruned circuit for length ``actual_length`` operands.

    Operand slots beyond ``actual_length`` (up to the method's nominal
    length) are bound to zero at the high end and folded away; outputs are
    truncated to the ``2*actual_length - 1`` real product coefficients.
    """
    n = method.operand_length
    if actual_length < 1:
        raise ValueError("actual_length must be >= 1")
    if actual_length > n:
        raise ValueError(
            f"method {method} handles length {n}, got {actual_length}"
        )
    bld = _Builder(actual_length)
    pad = [None] * (n - actual_length)
    a = list(range(actual_length)) + pad
    b = list(range(actual_length, 2 * actual_length)) + pad
    raw = _rec_build(bld, method.factors, a, b)
    outputs = raw[: 2 * actual_length - 1]

    # Dead-gate elimination: keep only gates reachable from the outputs.
    n_inputs = bld.n_inputs
    live = set()
    stack = [o for o in outputs if o is not None and o >= n_inputs]
    while stack:
        node = stack.pop()
        if node in live:
            continue
        live.add(node)
        _, x, y = bld.gates[node - n_inputs]
        for ref in (x, y):
            if ref >= n_inputs and ref not in live:
                stack.append(ref)
    remap = {}
    gates = []
    for idx, gate in enumerate(bld.gates):
        node = n_inputs + idx
        if node in live:
            remap[node] = n_inputs + len(gates)
            op, x, y = gate
            nx = remap.get(x, x) if x >= 0 else x
            ny = remap.get(y, y) if y >= 0 else y
            gates.append((op, nx, ny))

    # An identically-zero output coefficient keeps one explicit ZERO gate.
    zero_node = None
    final_outputs = []
    for o in outputs:
        if o is None:
            if zero_node is None:
                gates.append((OP_ZERO, -1, -1))
                zero_node = n_inputs + len(gates) - 1
            final_outputs.append(zero_node)
        else:
            final_outputs.append(remap.get(o, o))
    return Circuit(method, actual_length, gates, final_outputs)


def eval_circuit(circuit: Circuit, a: Poly, b: Poly) -> Poly:
    """Evaluate the gate DAG on concrete operands; equals schoolbook_mul."""
    n = circuit.actual_length
    if len(a) != n or len(b) != n:
        raise ValueError(
            f"circuit handles length {n}, got {len(a)} and {len(b)}"
        )
    lo, hi = kernels.eval_circuit_planes(circuit.program(), a.lo, a.hi, b.lo, b.hi)
    return TritVector(2 * n - 1, lo, hi)


class CostReport:
    """Gate counts of a pruned circuit; NEG and ZERO are free bit moves."""

    __slots__ = ("mul_gates", "add_gates", "depth")

    def __init__(self, mul_gates, add_gates, depth):
        if min(mul_gates, add_gates, depth) < 0:
            raise ValueError("counts must be >= 0")
        object.__setattr__(self, "mul_gates", mul_gates)
        object.__setattr__(self, "add_gates", add_gates)
        object.__setattr__(self, "depth", depth)

    def __setattr__(self, name, value):
        raise AttributeError("CostReport is immutable")

    def __eq__(self, other):
        if not isinstance(other, CostReport):
            return NotImplemented
        return (
            self.mul_gates == other.mul_gates
            and self.add_gates == other.add_gates
            and self.depth == other.depth
        )

    def __repr__(self):
        return (
            f"CostReport(mul_gates={self.mul_gates}, "
            f"add_gates={self.add_gates}, depth={self.depth})"
        )


def cost(circuit: Circuit) -> CostReport:
    """Count gates and the longest ADD/SUB/MUL path through the DAG."""
    muls = adds = 0
    n_inputs = circuit.n_inputs
    depth = [0] * (n_inputs + len(circuit.gates))
    for k, (op, x, y) in enumerate(circuit.gates):
        node = n_inputs + k
        if op == OP_MUL:
            muls += 1
            depth[node] = max(depth[x], depth[y]) + 1
        elif op in (OP_ADD, OP_SUB):
            adds += 1
            depth[node] = max(depth[x], depth[y]) + 1
        elif op == OP_NEG:
            depth[node] = depth[x]
    max_depth = max((depth[o] for o in circuit.outputs), default=0)
    return CostReport(muls, adds, max_depth)
