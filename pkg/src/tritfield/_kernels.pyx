# cython: language_level=3
"""Compiled kernels: same contract as ``tritfield._kernels_py``.

Plane pairs cross the boundary as Python integers and are unpacked into
64-bit word arrays; gate programs arrive as the compact arrays produced by
``Circuit.program()``.  See the pure-Python module for the format notes.
"""

from libc.stdlib cimport calloc, free, malloc

backend_name = "compiled"

cdef unsigned char T_ADD[9]
cdef unsigned char T_SUB[9]
cdef unsigned char T_MUL[9]
cdef unsigned char T_NEG[3]

cdef int _ti, _tj
for _ti in range(3):
    T_NEG[_ti] = (3 - _ti) % 3
    for _tj in range(3):
        T_ADD[_ti * 3 + _tj] = (_ti + _tj) % 3
        T_SUB[_ti * 3 + _tj] = (_ti - _tj + 3) % 3
        T_MUL[_ti * 3 + _tj] = (_ti * _tj) % 3

cdef enum:
    OP_ZERO = 0
    OP_ADD = 1
    OP_SUB = 2
    OP_NEG = 3
    OP_MUL = 4


cdef int _plane_to_words(object plane, int nwords, unsigned long long *buf) except -1:
    cdef bytes raw = plane.to_bytes(nwords * 8, "little")
    cdef const unsigned char *p = raw
    cdef int w, k
    cdef unsigned long long word
    for w in range(nwords):
        word = 0
        for k in range(8):
            word |= (<unsigned long long>p[w * 8 + k]) << (8 * k)
        buf[w] = word
    return 0


cdef object _words_to_plane(unsigned long long *buf, int nwords):
    cdef bytearray raw = bytearray(nwords * 8)
    cdef unsigned char[:] mv = raw
    cdef int w, k
    for w in range(nwords):
        for k in range(8):
            mv[w * 8 + k] = <unsigned char>((buf[w] >> (8 * k)) & 0xFF)
    return int.from_bytes(bytes(raw), "little")


def poly_mul_planes(alo, ahi, int na, blo, bhi, int nb):
    """Schoolbook product of plane-packed GF(3) polynomials."""
    if na < 1 or nb < 1:
        raise ValueError("operands must have length >= 1")
    cdef int wa = (na + 63) >> 6
    cdef int wb = (nb + 63) >> 6
    cdef int nc = na + nb - 1
    cdef int wc = (nc + 63) >> 6
    cdef int wbuf = wc + 2
    cdef unsigned long long *mem = <unsigned long long *>calloc(
        2 * wa + 2 * wb + 2 * wbuf, sizeof(unsigned long long))
    if mem is NULL:
        raise MemoryError()
    cdef unsigned long long *a_lo = mem
    cdef unsigned long long *a_hi = mem + wa
    cdef unsigned long long *b_lo = a_hi + wa
    cdef unsigned long long *b_hi = b_lo + wb
    cdef unsigned long long *c_lo = b_hi + wb
    cdef unsigned long long *c_hi = c_lo + wbuf
    cdef unsigned long long *src_lo
    cdef unsigned long long *src_hi
    cdef unsigned long long chunk_lo, chunk_hi, t, acc_lo, acc_hi
    cdef int i, w, sh, code, w2, k
    try:
        _plane_to_words(alo, wa, a_lo)
        _plane_to_words(ahi, wa, a_hi)
        _plane_to_words(blo, wb, b_lo)
        _plane_to_words(bhi, wb, b_hi)
        for i in range(nb):
            code = <int>(((b_lo[i >> 6] >> (i & 63)) & 1)
                         | (((b_hi[i >> 6] >> (i & 63)) & 1) << 1))
            if code == 0:
                continue
            if code == 1:
                src_lo = a_lo
                src_hi = a_hi
            else:
                # coefficient 2 adds the negation: planes swapped
                src_lo = a_hi
                src_hi = a_lo
            w = i >> 6
            sh = i & 63
            for w2 in range(wa + 1):
                chunk_lo = 0
                chunk_hi = 0
                if sh == 0:
                    if w2 < wa:
                        chunk_lo = src_lo[w2]
                        chunk_hi = src_hi[w2]
                else:
                    if w2 < wa:
                        chunk_lo = src_lo[w2] << sh
                        chunk_hi = src_hi[w2] << sh
                    if w2 > 0:
                        chunk_lo |= src_lo[w2 - 1] >> (64 - sh)
                        chunk_hi |= src_hi[w2 - 1] >> (64 - sh)
                if chunk_lo | chunk_hi:
                    k = w + w2
                    acc_lo = c_lo[k]
                    acc_hi = c_hi[k]
                    t = (acc_lo | chunk_hi) ^ (acc_hi | chunk_lo)
                    c_lo[k] = (acc_hi | chunk_hi) ^ t
                    c_hi[k] = (acc_lo | chunk_lo) ^ t
        return _words_to_plane(c_lo, wc), _words_to_plane(c_hi, wc)
    finally:
        free(mem)


cdef void _eval_gates(const unsigned char[:] ops, const int[:] xs,
                      const int[:] ys, unsigned char *vals, int n_inputs):
    cdef int k, n_gates = ops.shape[0]
    cdef int op
    cdef unsigned char v
    for k in range(n_gates):
        op = ops[k]
        if op == OP_MUL:
            v = T_MUL[vals[xs[k]] * 3 + vals[ys[k]]]
        elif op == OP_ADD:
            v = T_ADD[vals[xs[k]] * 3 + vals[ys[k]]]
        elif op == OP_SUB:
            v = T_SUB[vals[xs[k]] * 3 + vals[ys[k]]]
        elif op == OP_NEG:
            v = T_NEG[vals[xs[k]]]
        else:
            v = 0
        vals[n_inputs + k] = v


def eval_circuit_planes(prog, alo, ahi, blo, bhi):
    """Evaluate a gate program on one operand pair; returns product planes."""
    ops_obj, xs_obj, ys_obj, outs_obj, n_inputs_obj = prog
    cdef const unsigned char[:] ops = ops_obj
    cdef const int[:] xs = xs_obj
    cdef const int[:] ys = ys_obj
    cdef const int[:] outs = outs_obj
    cdef int n_inputs = n_inputs_obj
    cdef int half = n_inputs // 2
    cdef int n_out = outs.shape[0]
    cdef int wh = (half + 63) >> 6
    cdef int wo = (n_out + 63) >> 6
    cdef int n_nodes = n_inputs + ops.shape[0]
    cdef unsigned long long *words = <unsigned long long *>calloc(
        4 * wh + 2 * wo, sizeof(unsigned long long))
    cdef unsigned char *vals = <unsigned char *>malloc(n_nodes if n_nodes else 1)
    if words is NULL or vals is NULL:
        free(words)
        free(vals)
        raise MemoryError()
    cdef unsigned long long *wa_lo = words
    cdef unsigned long long *wa_hi = words + wh
    cdef unsigned long long *wb_lo = words + 2 * wh
    cdef unsigned long long *wb_hi = words + 3 * wh
    cdef unsigned long long *wo_lo = words + 4 * wh
    cdef unsigned long long *wo_hi = wo_lo + wo
    cdef int i, k, node
    cdef unsigned char v
    try:
        _plane_to_words(alo, wh, wa_lo)
        _plane_to_words(ahi, wh, wa_hi)
        _plane_to_words(blo, wh, wb_lo)
        _plane_to_words(bhi, wh, wb_hi)
        for i in range(half):
            vals[i] = <unsigned char>(((wa_lo[i >> 6] >> (i & 63)) & 1)
                                      | (((wa_hi[i >> 6] >> (i & 63)) & 1) << 1))
            vals[half + i] = <unsigned char>(((wb_lo[i >> 6] >> (i & 63)) & 1)
                                             | (((wb_hi[i >> 6] >> (i & 63)) & 1) << 1))
        _eval_gates(ops, xs, ys, vals, n_inputs)
        for k in range(n_out):
            v = vals[outs[k]]
            wo_lo[k >> 6] |= (<unsigned long long>(v & 1)) << (k & 63)
            wo_hi[k >> 6] |= (<unsigned long long>(v >> 1)) << (k & 63)
        return _words_to_plane(wo_lo, wo), _words_to_plane(wo_hi, wo)
    finally:
        free(words)
        free(vals)


def lfsr_digit_row(prog, alo, ahi, int reg_len, blo, bhi, int digit_size):
    """Every digit of A times one digit of B, overlap-accumulated."""
    ops_obj, xs_obj, ys_obj, outs_obj, n_inputs_obj = prog
    cdef const unsigned char[:] ops = ops_obj
    cdef const int[:] xs = xs_obj
    cdef const int[:] ys = ys_obj
    cdef const int[:] outs = outs_obj
    cdef int n_inputs = n_inputs_obj
    cdef int d = digit_size
    cdef int n_digits = reg_len // d
    cdef int n_out = outs.shape[0]
    cdef int row_len = reg_len + d - 1
    cdef int wr = (reg_len + 63) >> 6
    cdef int wd = (d + 63) >> 6
    cdef int wrow = (row_len + 63) >> 6
    cdef int n_nodes = n_inputs + ops.shape[0]
    cdef unsigned long long *words = <unsigned long long *>calloc(
        2 * wr + 2 * wd + 2 * wrow, sizeof(unsigned long long))
    cdef unsigned char *vals = <unsigned char *>malloc(n_nodes if n_nodes else 1)
    cdef unsigned char *acc = <unsigned char *>calloc(row_len if row_len else 1, 1)
    if words is NULL or vals is NULL or acc is NULL:
        free(words)
        free(vals)
        free(acc)
        raise MemoryError()
    cdef unsigned long long *wa_lo = words
    cdef unsigned long long *wa_hi = words + wr
    cdef unsigned long long *wb_lo = words + 2 * wr
    cdef unsigned long long *wb_hi = wb_lo + wd
    cdef unsigned long long *row_lo = wb_hi + wd
    cdef unsigned long long *row_hi = row_lo + wrow
    cdef int i, j, k, base, p
    cdef unsigned char v
    try:
        _plane_to_words(alo, wr, wa_lo)
        _plane_to_words(ahi, wr, wa_hi)
        _plane_to_words(blo, wd, wb_lo)
        _plane_to_words(bhi, wd, wb_hi)
        for j in range(d):
            vals[d + j] = <unsigned char>(((wb_lo[j >> 6] >> (j & 63)) & 1)
                                          | (((wb_hi[j >> 6] >> (j & 63)) & 1) << 1))
        for k in range(n_digits):
            base = k * d
            for j in range(d):
                i = base + j
                vals[j] = <unsigned char>(((wa_lo[i >> 6] >> (i & 63)) & 1)
                                          | (((wa_hi[i >> 6] >> (i & 63)) & 1) << 1))
            _eval_gates(ops, xs, ys, vals, n_inputs)
            for j in range(n_out):
                v = vals[outs[j]]
                if v:
                    p = base + j
                    acc[p] = T_ADD[acc[p] * 3 + v]
        for p in range(row_len):
            v = acc[p]
            row_lo[p >> 6] |= (<unsigned long long>(v & 1)) << (p & 63)
            row_hi[p >> 6] |= (<unsigned long long>(v >> 1)) << (p & 63)
        return _words_to_plane(row_lo, wrow), _words_to_plane(row_hi, wrow)
    finally:
        free(words)
        free(vals)
        free(acc)
