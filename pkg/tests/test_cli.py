"""Command-line interface: verbs, encodings, exit codes, determinism."""

import pytest

from tritfield.cli import main
from tritfield.field397 import F97Element
from tritfield.tower import Fp6Element, fp6_mul_schoolbook


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_mul_identity(capsys):
    one = F97Element.one().text()
    code, out, _ = run_cli(capsys, "mul", "--field", "f397", one, one)
    assert code == 0 and out.strip() == one


def test_mul_methods_agree(capsys):
    a = F97Element.random(51).text()
    b = F97Element.random(52).text()
    outputs = set()
    for method in ("schoolbook", "lfsr:7", "lfsr:14"):
        code, out, _ = run_cli(capsys, "mul", "--method", method, a, b)
        assert code == 0
        outputs.add(out)
    assert len(outputs) == 1


def test_mul_fp6_methods_agree(capsys):
    a = Fp6Element.random(61).text()
    b = Fp6Element.random(62).text()
    outputs = set()
    for method in ("schoolbook", "flat", "karatsuba18", "new15",
                   "appendix", "pipeline"):
        code, out, _ = run_cli(capsys, "mul", "--field", "fp6",
                               "--method", method, a, b)
        assert code == 0
        outputs.add(out)
    assert len(outputs) == 1


def test_mul_bad_operand(capsys):
    one = F97Element.one().text()
    code, _, err = run_cli(capsys, "mul", "xyz", one)
    assert code == 2 and "operand a" in err


def test_mul_unknown_method(capsys):
    one = F97Element.one().text()
    code, _, err = run_cli(capsys, "mul", "--method", "warp", one, one)
    assert code == 2 and "method" in err


def test_table_default(capsys):
    code, out, _ = run_cli(capsys, "table")
    assert code == 0
    lines = out.strip().splitlines()
    rows = [line.split() for line in lines[1:]]
    assert [r[0] for r in rows] == ["1", "2", "4", "7", "14"]
    by_d = {r[0]: r for r in rows}
    assert by_d["7"][1] == "KC4" and by_d["7"][2] == "14"
    assert by_d["1"][2] == "97"
    cycles = [int(r[2]) for r in rows]
    muls = [int(r[3]) for r in rows]
    assert cycles == sorted(cycles, reverse=True)
    assert muls == sorted(muls)


def test_table_bad_digit(capsys):
    code, _, err = run_cli(capsys, "table", "--digit", "0")
    assert code == 2 and "digit size" in err
    code, _, err = run_cli(capsys, "table", "--digit", "98")
    assert code == 2


def test_vectors_roundtrip(tmp_path, capsys):
    path = tmp_path / "vectors.txt"
    code, _, _ = run_cli(capsys, "vectors", "--count", "6", "--seed", "9",
                         "--out", str(path))
    assert code == 0
    code, out, _ = run_cli(capsys, "verify", str(path))
    assert code == 0 and "all records verified" in out


def test_vectors_byte_identical(tmp_path, capsys):
    p1, p2 = tmp_path / "a.txt", tmp_path / "b.txt"
    run_cli(capsys, "vectors", "--count", "5", "--seed", "4", "--out", str(p1))
    run_cli(capsys, "vectors", "--count", "5", "--seed", "4", "--out", str(p2))
    assert p1.read_bytes() == p2.read_bytes()
    run_cli(capsys, "vectors", "--count", "5", "--seed", "5", "--out", str(p2))
    assert p1.read_bytes() != p2.read_bytes()


def test_verify_detects_tampering(tmp_path, capsys):
    path = tmp_path / "vectors.txt"
    run_cli(capsys, "vectors", "--count", "4", "--seed", "2", "--out", str(path))
    lines = path.read_text().splitlines()
    # flip one digit of the first record's expected field
    head, sep, expected = lines[0].rpartition("expected=")
    flipped = ("1" if expected[0] != "1" else "2") + expected[1:]
    lines[0] = head + sep + flipped
    path.write_text("\n".join(lines) + "\n")
    code, _, err = run_cli(capsys, "verify", str(path))
    assert code == 1
    assert "1 record(s) failed" in err
    assert "FAIL line 1" in err


def test_verify_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("op=f397_mul seed=1 a=000\n")
    code, _, err = run_cli(capsys, "verify", str(path))
    assert code == 1 and "line 1" in err


def test_verify_missing_file(capsys):
    code, _, err = run_cli(capsys, "verify", "/nonexistent/vectors.txt")
    assert code == 1


def test_counts(capsys):
    code, out, _ = run_cli(capsys, "counts")
    assert code == 0
    assert " 27 " in out and " 36 " in out and " 18 " in out and " 15 " in out
    assert "0.833" in out and "16.7%" in out


def test_counts_deterministic(capsys):
    _, out1, _ = run_cli(capsys, "counts", "--seed", "3")
    _, out2, _ = run_cli(capsys, "counts", "--seed", "3")
    assert out1 == out2


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["mul", "--field", "bogus", "0", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_bench_runs(capsys):
    code, out, _ = run_cli(capsys, "bench", "--repeat", "1")
    assert code == 0
    assert "poly_mul_planes[python]" in out
    assert "informational" in out
