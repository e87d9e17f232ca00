"""Pure-Python kernels: the hot inner loops behind the public modules.

The compiled extension ``tritfield._kernels`` implements the same three
functions with identical semantics; ``tritfield._backend`` picks whichever is
available.  This module is deliberately self-contained so the two backends
can be compared side by side.

All polynomial data crosses the kernel boundary as pairs of integer bit
planes (lo, hi): bit i of each plane carries one bit of GF(3) coefficient i,
encoded 0 -> (0,0), 1 -> (0,1), 2 -> (1,0).

A gate program is the tuple produced by ``Circuit.program()``::

    (ops, xs, ys, outs, n_inputs)

where ``ops`` is one opcode byte per gate (0 ZERO, 1 ADD, 2 SUB, 3 NEG,
4 MUL), ``xs``/``ys`` are operand node ids (inputs are nodes
0 .. n_inputs-1, gate k is node n_inputs+k) and ``outs`` lists the node id
of each product coefficient.
"""

backend_name = "python"

# GF(3) operation tables on 2-bit codes (code == value for 0, 1, 2).
_ADD = [(i + j) % 3 for i in range(3) for j in range(3)]
_SUB = [(i - j) % 3 for i in range(3) for j in range(3)]
_MUL = [(i * j) % 3 for i in range(3) for j in range(3)]
_NEG = [0, 2, 1]

OP_ZERO, OP_ADD, OP_SUB, OP_NEG, OP_MUL = range(5)


def poly_mul_planes(alo, ahi, na, blo, bhi, nb):
    """Schoolbook product of two plane-packed GF(3) polynomials.

    Returns the (lo, hi) planes of the length ``na + nb - 1`` product.
    Scans the multiplier's nonzero coefficients: a 1 adds a shifted copy of
    the multiplicand, a 2 adds the shifted negation (planes swapped).
    """
    if na < 1 or nb < 1:
        raise ValueError("operands must have length >= 1")
    clo = chi = 0
    x = blo
    while x:
        low = x & -x
        i = low.bit_length() - 1
        slo = alo << i
        shi = ahi << i
        t = (clo | shi) ^ (chi | slo)
        clo, chi = (chi | shi) ^ t, (clo | slo) ^ t
        x ^= low
    x = bhi
    while x:
        low = x & -x
        i = low.bit_length() - 1
        # coefficient 2: add the negated multiplicand (planes swapped)
        slo = ahi << i
        shi = alo << i
        t = (clo | shi) ^ (chi | slo)
        clo, chi = (chi | shi) ^ t, (clo | slo) ^ t
        x ^= low
    return clo, chi


def _eval_gates(ops, xs, ys, vals, n_inputs):
    n = n_inputs
    for k in range(len(ops)):
        op = ops[k]
        if op == OP_MUL:
            v = _MUL[vals[xs[k]] * 3 + vals[ys[k]]]
        elif op == OP_ADD:
            v = _ADD[vals[xs[k]] * 3 + vals[ys[k]]]
        elif op == OP_SUB:
            v = _SUB[vals[xs[k]] * 3 + vals[ys[k]]]
        elif op == OP_NEG:
            v = _NEG[vals[xs[k]]]
        else:  # OP_ZERO
            v = 0
        vals[n + k] = v


def eval_circuit_planes(prog, alo, ahi, blo, bhi):
    """Evaluate a gate program on one operand pair; returns product planes."""
    ops, xs, ys, outs, n_inputs = prog
    half = n_inputs // 2
    vals = [0] * (n_inputs + len(ops))
    for i in range(half):
        vals[i] = ((alo >> i) & 1) | (((ahi >> i) & 1) << 1)
        vals[half + i] = ((blo >> i) & 1) | (((bhi >> i) & 1) << 1)
    _eval_gates(ops, xs, ys, vals, n_inputs)
    olo = ohi = 0
    for k, node in enumerate(outs):
        v = vals[node]
        olo |= (v & 1) << k
        ohi |= (v >> 1) << k
    return olo, ohi


def lfsr_digit_row(prog, alo, ahi, reg_len, blo, bhi, digit_size):
    """One multiplier row: every digit of A times one digit of B.

    ``alo``/``ahi`` hold the full zero-padded register A (``reg_len`` trits,
    a multiple of ``digit_size``); ``blo``/``bhi`` hold a single digit.  The
    digit circuit ``prog`` runs once per digit of A and the partial products
    overlap-accumulate at stride ``digit_size``.  Returns the planes of the
    length ``reg_len + digit_size - 1`` row sum.
    """
    ops, xs, ys, outs, n_inputs = prog
    d = digit_size
    n_digits = reg_len // d
    vals = [0] * (n_inputs + len(ops))
    for j in range(d):
        vals[d + j] = ((blo >> j) & 1) | (((bhi >> j) & 1) << 1)
    acc = [0] * (reg_len + d - 1)
    for k in range(n_digits):
        base = k * d
        for j in range(d):
            i = base + j
            vals[j] = ((alo >> i) & 1) | (((ahi >> i) & 1) << 1)
        _eval_gates(ops, xs, ys, vals, n_inputs)
        for o, node in enumerate(outs):
            v = vals[node]
            if v:
                p = base + o
                acc[p] = _ADD[acc[p] * 3 + v]
    olo = ohi = 0
    for p, v in enumerate(acc):
        olo |= (v & 1) << p
        ohi |= (v >> 1) << p
    return olo, ohi
