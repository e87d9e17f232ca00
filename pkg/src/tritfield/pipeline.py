"""Three-stage pipelined sextic multiplier built on one base-field multiplier.

The 15 base products of the five-point method (see :func:`tritfield.tower.
fp6_mul_15`) are independent, so a single GF(3^97) multiplier can stream
them: while product j is being multiplied, the input stage forms the operand
linear combinations of product j+1 and the output stage folds product j-1
into six coefficient accumulators.  Operand combinations use only 0/+1/-1
coefficients of the flat components; accumulation scalars come from the set
{+1, -1, +s, -s, s+1, -(s+1), s-1, -(s-1)}, all realizable with negation,
multiplication by s and addition - never a counted multiplication.

Every schedule constant below is composed symbolically from three pieces of
data: the five-point interpolation rows, the quadratic-product recombination
Q = (1-s)*P_re - (1+s)*P_im + s*P_mix, and the reduction r^3 = r + 1.
Nothing is hand-tuned; executing the schedule must reproduce the schoolbook
product exactly, which the tests check.

Fifteen jobs through three stages occupy 15 + 2 multiplier slots (pipeline
fill and drain).
"""

from __future__ import annotations

from . import field397
from .field397 import F97Element
from .tower import Fp6Element

_POINT_NAMES = ("1", "s", "-1", "-s", "inf")
_SLOT_NAMES = ("re", "im", "mix")

# Five-point interpolation rows (points 1, s, -1, -s, inf), one row per
# degree-4 product coefficient; scalars are (re, im) pairs mod 3.
_INTERP_ROWS = (
    ((1, 0), (1, 0), (1, 0), (1, 0), (2, 0)),
    ((1, 0), (0, 2), (2, 0), (0, 1), (0, 0)),
    ((1, 0), (2, 0), (1, 0), (2, 0), (0, 0)),
    ((1, 0), (0, 1), (2, 0), (0, 2), (0, 0)),
    ((0, 0), (0, 0), (0, 0), (0, 0), (1, 0)),
)

# Per-slot factors of one quadratic product: Q = (re_part) + s*(im_part)
# with re_part = P_re - P_im and im_part = P_mix - P_re - P_im.
_SLOT_FACTORS = ((1, 2), (2, 2), (0, 1))

# Evaluation points as quadratic scalars (inf handled separately).
_POINTS = ((1, 0), (0, 1), (2, 0), (0, 2))

_SCALAR_NAMES = {
    (1, 0): "+1",
    (2, 0): "-1",
    (0, 1): "+s",
    (0, 2): "-s",
    (1, 1): "s+1",
    (2, 2): "-(s+1)",
    (2, 1): "s-1",
    (1, 2): "-(s-1)",
}


def _smul(a, b):
    return ((a[0] * b[0] - a[1] * b[1]) % 3, (a[0] * b[1] + a[1] * b[0]) % 3)


def _sadd(a, b):
    return ((a[0] + b[0]) % 3, (a[1] + b[1]) % 3)


class Job:
    """One multiplier slot: operand combinations plus accumulation targets.

    ``left_spec``/``right_spec`` hold one 0/1/2 scalar per flat component
    (2 standing for -1); ``accum_spec`` lists (accumulator index, scalar)
    pairs where the scalar's real part adds to the indexed accumulator and
    its s part to the next one.
    """

    __slots__ = ("label", "left_spec", "right_spec", "accum_spec")

    def __init__(self, label, left_spec, right_spec, accum_spec):
        if not accum_spec:
            raise ValueError("job needs at least one accumulation target")
        for scalar in list(accum_spec):
            if scalar[1] not in _SCALAR_NAMES:
                raise ValueError(f"accumulation scalar {scalar[1]} not realizable")
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "left_spec", tuple(left_spec))
        object.__setattr__(self, "right_spec", tuple(right_spec))
        object.__setattr__(self, "accum_spec", tuple(accum_spec))

    def __setattr__(self, name, value):
        raise AttributeError("Job is immutable")

    def _spec_text(self, spec, names):
        parts = []
        for coef, name in zip(spec, names):
            if coef == 1:
                parts.append(f"+{name}")
            elif coef == 2:
                parts.append(f"-{name}")
        return "".join(parts) or "0"

    def dump_line(self):
        left = self._spec_text(self.left_spec, [f"a{i}" for i in range(6)])
        right = self._spec_text(self.right_spec, [f"b{i}" for i in range(6)])
        acc = ", ".join(
            f"c{idx}<-{_SCALAR_NAMES[scalar]}" for idx, scalar in self.accum_spec
        )
        return f"[{self.label}] left={left} right={right} acc=({acc})"


class Schedule:
    """An ordered list of jobs whose execution equals the schoolbook product."""

    __slots__ = ("jobs",)

    def __init__(self, jobs):
        object.__setattr__(self, "jobs", tuple(jobs))

    def __setattr__(self, name, value):
        raise AttributeError("Schedule is immutable")

    def __len__(self):
        return len(self.jobs)

    def dump(self):
        return "\n".join(
            f"job {i:02d} {job.dump_line()}" for i, job in enumerate(self.jobs)
        )


def _operand_specs(point_index):
    # Components of the operand evaluated at the point, split into the real
    # slot, the s slot and their sum: for w = point, position 2j+0 carries
    # re(w^j) / im(w^j) and position 2j+1 carries -im(w^j) / re(w^j).
    if point_index == 4:  # inf: the leading flat pair, untouched
        re_spec = [0, 0, 0, 0, 1, 0]
        im_spec = [0, 0, 0, 0, 0, 1]
    else:
        w = _POINTS[point_index]
        re_spec = [0] * 6
        im_spec = [0] * 6
        power = (1, 0)
        for j in range(3):
            re_spec[2 * j] = power[0]
            re_spec[2 * j + 1] = (-power[1]) % 3
            im_spec[2 * j] = power[1]
            im_spec[2 * j + 1] = power[0]
            power = _smul(power, w)
    mix_spec = [(x + y) % 3 for x, y in zip(re_spec, im_spec)]
    return re_spec, im_spec, mix_spec


def build_schedule() -> Schedule:
    """Compose the fixed 15-job schedule from the interpolation data."""
    # Degree-4 coefficients fold into three accumulator pairs through
    # r^3 = r + 1: pair0 = k0+k3, pair1 = k1+k3+k4, pair2 = k2+k4.
    pair_rows = []
    for combo in ((0, 3), (1, 3, 4), (2, 4)):
        row = []
        for p in range(5):
            w = (0, 0)
            for k in combo:
                w = _sadd(w, _INTERP_ROWS[k][p])
            row.append(w)
        pair_rows.append(row)

    jobs = []
    for p in range(5):
        specs = _operand_specs(p)
        for slot in range(3):
            spec = specs[slot]
            right = [x for x in spec]  # same combination on the b side
            accum = []
            for k in range(3):
                scalar = _smul(pair_rows[k][p], _SLOT_FACTORS[slot])
                if scalar != (0, 0):
                    accum.append((2 * k, scalar))
            jobs.append(
                Job(
                    f"{_POINT_NAMES[p]}:{_SLOT_NAMES[slot]}",
                    spec,
                    right,
                    accum,
                )
            )
    return Schedule(jobs)


def _form_operand(spec, flat):
    out = F97Element.zero()
    for coef, comp in zip(spec, flat):
        if coef == 1:
            out = out + comp
        elif coef == 2:
            out = out - comp
    return out


def execute(schedule: Schedule, alpha: Fp6Element, beta: Fp6Element,
            ctr=None, record_writes=None):
    """Run the pipeline cycle by cycle; returns (product, multiplier slots).

    Stage k of job j overlaps stage k-1 of job j+1, so the multiplier is
    busy for len(schedule) slots plus one fill and one drain slot.  Passing
    a list as ``record_writes`` collects (cycle, job index) accumulator
    write events.
    """
    flat_a = alpha.flat()
    flat_b = beta.flat()
    acc = [F97Element.zero() for _ in range(6)]
    n = len(schedule.jobs)
    formed = None   # input-stage register: (job index, left, right)
    product = None  # multiplier output register: (job index, value)
    for cycle in range(n + 2):
        # output stage: fold the product computed last cycle
        if product is not None:
            j, value = product
            for idx, (re, im) in schedule.jobs[j].accum_spec:
                if re == 1:
                    acc[idx] = acc[idx] + value
                elif re == 2:
                    acc[idx] = acc[idx] - value
                if im == 1:
                    acc[idx + 1] = acc[idx + 1] + value
                elif im == 2:
                    acc[idx + 1] = acc[idx + 1] - value
            if record_writes is not None:
                record_writes.append((cycle, j))
        # multiplier stage: consume the operands formed last cycle
        if formed is not None:
            j, left, right = formed
            if ctr is not None:
                ctr.base_muls += 1
            product = (j, field397.mul(left, right))
        else:
            product = None
        # input stage: form the next job's operands
        if cycle < n:
            job = schedule.jobs[cycle]
            formed = (
                cycle,
                _form_operand(job.left_spec, flat_a),
                _form_operand(job.right_spec, flat_b),
            )
        else:
            formed = None
    return Fp6Element.from_flat(acc), n + 2
