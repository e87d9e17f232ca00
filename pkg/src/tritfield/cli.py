"""Command-line harness: products, cost tables, test vectors, counts, bench.

Exit codes: 0 success, 1 verification failure, 2 usage error.  Every
command is deterministic given its arguments and seed; only ``bench``
reports wall-clock times and is explicitly informational.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

from . import _backend, field397, lfsr, pipeline, tower
from .field397 import F97Element
from .lfsr import STANDARD_DIGIT_SIZES, LfsrConfig
from .polymul import cost
from .tower import Fp2Element, Fp6Element, MulCounter


class _UsageError(Exception):
    pass


def _parse_operand(name, text, parser_fn):
    try:
        return parser_fn(text)
    except ValueError as exc:
        raise _UsageError(f"operand {name}: {exc}") from exc


def _f397_method(method):
    if method == "schoolbook":
        return field397.mul
    if method.startswith("lfsr:"):
        try:
            d = int(method.split(":", 1)[1])
        except ValueError:
            raise _UsageError(f"bad digit size in {method!r}")
        cfg = LfsrConfig(d)
        return lambda a, b: lfsr.run(cfg, a, b)[0]
    raise _UsageError(f"unknown f397 method {method!r}")


def _fp2_method(method):
    if method == "schoolbook":
        return tower.fp2_mul_schoolbook
    if method == "karatsuba":
        return tower.fp2_mul
    raise _UsageError(f"unknown fp2 method {method!r}")


def _fp6_method(method):
    if method == "schoolbook":
        return tower.fp6_mul_schoolbook
    if method == "flat":
        return tower.fp6_mul_flat
    if method == "karatsuba18":
        return tower.fp6_mul_18
    if method == "new15":
        return lambda a, b: tower.fp6_mul_15(a, b)[0]
    if method == "appendix":
        return lambda a, b: tower.fp6_mul_appendix(a, b)[0]
    if method == "pipeline":
        schedule = pipeline.build_schedule()
        return lambda a, b: pipeline.execute(schedule, a, b)[0]
    raise _UsageError(f"unknown fp6 method {method!r}")


_FIELDS = {
    "f397": (F97Element.from_text, _f397_method),
    "fp2": (Fp2Element.from_text, _fp2_method),
    "fp6": (Fp6Element.from_text, _fp6_method),
}


def cmd_mul(args):
    parse, method_for = _FIELDS[args.field]
    fn = method_for(args.method)
    a = _parse_operand("a", args.a, parse)
    b = _parse_operand("b", args.b, parse)
    print(fn(a, b).text())
    return 0


def cmd_table(args):
    digits = args.digit or list(STANDARD_DIGIT_SIZES)
    for d in digits:
        if not 1 <= d <= 97:
            raise _UsageError(f"digit size {d} out of range 1..97")
    print(f"{'D':>3} {'method':>8} {'cycles':>7} {'mul_gates':>10} "
          f"{'add_gates':>10} {'gates*cycles':>13}")
    for d in digits:
        cfg = LfsrConfig(d)
        rep = lfsr.cost_report(cfg)
        name = "-" if d == 1 and str(cfg.method) == "C1" else str(cfg.method)
        gates = rep.mul_gates + rep.add_gates
        print(f"{d:>3} {name:>8} {cfg.n_digits:>7} {rep.mul_gates:>10} "
              f"{rep.add_gates:>10} {gates * cfg.n_digits:>13}")
    return 0


_VECTOR_OPS = ("f397_mul", "fp2_mul", "fp6_mul")


def _vector_record(op, rec_seed):
    if op == "f397_mul":
        a = F97Element.random(rec_seed * 2)
        b = F97Element.random(rec_seed * 2 + 1)
        expected = field397.mul(a, b)
    elif op == "fp2_mul":
        a = Fp2Element.random(rec_seed * 2)
        b = Fp2Element.random(rec_seed * 2 + 1)
        expected = tower.fp2_mul_schoolbook(a, b)
    else:
        a = Fp6Element.random(rec_seed * 2)
        b = Fp6Element.random(rec_seed * 2 + 1)
        expected = tower.fp6_mul_schoolbook(a, b)
    return (
        f"op={op} seed={rec_seed} a={a.text()} b={b.text()} "
        f"expected={expected.text()}"
    )


def cmd_vectors(args):
    if args.count < 1:
        raise _UsageError("--count must be >= 1")
    ops = _VECTOR_OPS if args.field == "all" else (f"{args.field}_mul",)
    lines = []
    for i in range(args.count):
        op = ops[i % len(ops)]
        lines.append(_vector_record(op, args.seed + i))
    data = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(data)
    else:
        with open(args.out, "w") as fh:
            fh.write(data)
        print(f"wrote {args.count} records to {args.out}")
    return 0


_VERIFY_METHODS = {
    "f397_mul": ("schoolbook", "lfsr:1", "lfsr:2", "lfsr:4", "lfsr:7", "lfsr:14"),
    "fp2_mul": ("schoolbook", "karatsuba"),
    "fp6_mul": ("schoolbook", "flat", "karatsuba18", "new15", "appendix", "pipeline"),
}


def _parse_record(line, lineno):
    fields = {}
    for part in line.split():
        key, sep, value = part.partition("=")
        if not sep:
            raise ValueError(f"line {lineno}: bad field {part!r}")
        fields[key] = value
    for key in ("op", "seed", "a", "b", "expected"):
        if key not in fields:
            raise ValueError(f"line {lineno}: missing field {key!r}")
    if fields["op"] not in _VECTOR_OPS:
        raise ValueError(f"line {lineno}: unknown op {fields['op']!r}")
    return fields


def cmd_verify(args):
    try:
        with open(args.file) as fh:
            raw = fh.read().splitlines()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    results = {}
    failures = []
    for lineno, line in enumerate(raw, 1):
        if not line.strip():
            continue
        try:
            rec = _parse_record(line, lineno)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        field_name = rec["op"].rsplit("_", 1)[0]
        parse, method_for = _FIELDS[field_name]
        try:
            a = parse(rec["a"])
            b = parse(rec["b"])
            expected = parse(rec["expected"])
        except ValueError as exc:
            print(f"error: line {lineno}: {exc}", file=sys.stderr)
            return 1
        bad_methods = []
        for method in _VERIFY_METHODS[rec["op"]]:
            got = method_for(method)(a, b)
            key = (rec["op"], method)
            passed, total = results.get(key, (0, 0))
            ok = got == expected
            results[key] = (passed + (1 if ok else 0), total + 1)
            if not ok:
                bad_methods.append(method)
        if bad_methods:
            failures.append((lineno, rec["op"], bad_methods))
    for (op, method), (passed, total) in sorted(results.items()):
        print(f"{op:>9} {method:<12} {passed}/{total} passed")
    if failures:
        for lineno, op, methods in failures:
            print(
                f"FAIL line {lineno}: {op} via {', '.join(methods)}",
                file=sys.stderr,
            )
        print(f"{len(failures)} record(s) failed", file=sys.stderr)
        return 1
    print("all records verified")
    return 0


def cmd_counts(args):
    a = Fp6Element.random(args.seed * 2)
    b = Fp6Element.random(args.seed * 2 + 1)
    rows = []
    for name, fn in (
        ("schoolbook (nested)", tower.fp6_mul_schoolbook),
        ("schoolbook (flat)", tower.fp6_mul_flat),
        ("karatsuba18", tower.fp6_mul_18),
        ("new15", lambda x, y, ctr: tower.fp6_mul_15(x, y, ctr)[0]),
    ):
        ctr = MulCounter()
        fn(a, b, ctr)
        rows.append((name, ctr.base_muls))
    for name, count in rows:
        print(f"{name:<20} {count:>3} base multiplications")
    k18 = dict(rows)["karatsuba18"]
    n15 = dict(rows)["new15"]
    print(f"new15/karatsuba18    {n15 / k18:.3f} "
          f"({(1 - n15 / k18) * 100:.1f}% fewer base multiplications)")
    return 0


def _median_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def cmd_bench(args):
    repeat = args.repeat
    inner = 200
    a = F97Element.random(11)
    b = F97Element.random(12)
    print(f"active backend: {_backend.backend_name()} (informational timings)")
    print(f"{'benchmark':<34} {'median':>12}")
    for name in _backend.available_backends():
        k = _backend.load_backend(name)
        ca, cb = a.coeffs, b.coeffs

        def kernel_loop():
            for _ in range(inner):
                k.poly_mul_planes(ca.lo, ca.hi, 97, cb.lo, cb.hi, 97)

        t = _median_time(kernel_loop, repeat) / inner
        print(f"{'poly_mul_planes[' + name + ']':<34} {t * 1e6:>9.2f} us")
    cfg = LfsrConfig(7)
    t = _median_time(lambda: lfsr.run(cfg, a, b), repeat)
    print(f"{'lfsr run D=7':<34} {t * 1e6:>9.2f} us")
    fa = Fp6Element.random(21)
    fb = Fp6Element.random(22)
    for name, fn in (
        ("fp6 schoolbook", lambda: tower.fp6_mul_schoolbook(fa, fb)),
        ("fp6 karatsuba18", lambda: tower.fp6_mul_18(fa, fb)),
        ("fp6 new15", lambda: tower.fp6_mul_15(fa, fb)),
    ):
        t = _median_time(fn, repeat)
        print(f"{name:<34} {t * 1e6:>9.2f} us")
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="tritfield",
        description="GF(3^97) and tower-field multiplication toolbox",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mul", help="multiply two elements")
    p.add_argument("--field", choices=sorted(_FIELDS), default="f397")
    p.add_argument("--method", default="schoolbook",
                   help="schoolbook | lfsr:D | karatsuba | flat | "
                        "karatsuba18 | new15 | appendix | pipeline")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(fn=cmd_mul)

    p = sub.add_parser("table", help="digit-size cost/cycle table")
    p.add_argument("--digit", type=lambda s: [int(x) for x in s.split(",")],
                   help="comma-separated digit sizes (default 1,2,4,7,14)")
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("vectors", help="generate test vectors")
    p.add_argument("--count", type=int, default=30)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--field", choices=("all", "f397", "fp2", "fp6"), default="all")
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_vectors)

    p = sub.add_parser("verify", help="verify a vector file via every method")
    p.add_argument("file")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("counts", help="multiplication counts per fp6 method")
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(fn=cmd_counts)

    p = sub.add_parser("bench", help="informational timings")
    p.add_argument("--repeat", type=int, default=9)
    p.set_defaults(fn=cmd_bench)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
