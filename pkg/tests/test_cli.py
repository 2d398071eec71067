import json
import shutil
import subprocess
from pathlib import Path

import pytest

from hereditary import io as hio
from hereditary.cli import main

FIX = Path(__file__).parent / "fixtures" / "cli"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_orient(capsys):
    code, out, _ = run(capsys, "orient", FIX / "four_in_line.txt", 0, 1, 2)
    assert code == 0 and "sign 0" in out
    code, out, _ = run(capsys, "orient", FIX / "scattered.txt", 0, 1, 2, "--format", "json-lines")
    assert json.loads(out)["sign"] == 1


def test_order_type(capsys, tmp_path):
    dest = tmp_path / "s.ot"
    code, _, _ = run(capsys, "order-type", FIX / "scattered.txt", "--out", dest)
    assert code == 0
    T = hio.parse_orientation_array(dest)
    assert T.n == len(hio.parse_pointset(FIX / "scattered.txt"))


def test_check(capsys):
    code, out, _ = run(capsys, "check", FIX / "four_in_line.txt")
    assert code == 0 and out.startswith("NO") and "pattern FourInLine" in out
    code, out, _ = run(capsys, "check", FIX / "scattered.txt")
    assert out.startswith("YES")
    code, out, _ = run(capsys, "check", FIX / "scattered.ot", "--property", "l3")
    assert out.startswith("YES")
    code, out, _ = run(capsys, "check", FIX / "grid4.txt", "--property", f"file:{FIX / 'fenced_pair_pattern.txt'}")
    assert code == 0 and out.split()[0] in ("YES", "NO")


def test_solve(capsys, tmp_path):
    dest = tmp_path / "r.txt"
    code, out, _ = run(capsys, "solve", FIX / "grid4.txt", "--property", "lq", "--q", "3", "--k", "6", "--out", dest)
    assert code == 0
    rec = hio.parse_result(dest.read_text())
    assert rec["decision"] == "YES" and len(rec["witness"]) == 6
    code, out, _ = run(capsys, "solve", FIX / "grid4.txt", "--property", "convex-4", "--k", "9", "--format", "json-lines")
    assert json.loads(out)["route"] == "case3-line-cover"


def test_kernelize(capsys, tmp_path):
    dest = tmp_path / "k.txt"
    code, out, _ = run(capsys, "kernelize", FIX / "grid4.txt", "--k", "4", "--q", "3", "--out", dest)
    assert code == 0 and "bound 15" in out
    assert len(hio.parse_pointset(dest)) <= 15


def test_reduce(capsys, tmp_path):
    code, out, _ = run(capsys, "reduce", FIX / "triangle_graph.g", "--k", "4", "--out", tmp_path)
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "cubic-host.g", "cubic-pattern.g", "psi-host.g", "psi-pattern.g", "yard.txt"]
    assert hio.parse_yard(tmp_path / "yard.txt").lineup_size == 3 * 10 + 6


def test_yard_pipeline(capsys, tmp_path):
    yard = tmp_path / "y.txt"
    code, _, _ = run(capsys, "build-yard", FIX / "k4_pattern.g", FIX / "k4_host_yes.g", "--out", yard)
    assert code == 0
    code, out, _ = run(capsys, "verify-yard", yard)
    assert out.startswith("VALID")
    code, out, _ = run(capsys, "find-lineup", yard)
    assert out.startswith("YES") and "size 36" in out
    code, out, _ = run(capsys, "find-lineup", FIX / "k4_yes.yard")
    assert out.startswith("YES")


def test_verify_yard_reports_violations(capsys, tmp_path):
    text = (FIX / "k4_yes.yard").read_text().splitlines(keepends=True)
    i = next(i for i, ln in enumerate(text) if ln.endswith("fence\n"))
    x, y, lab = text[i].split()
    text[i] = f"{int(x) + 1} {y} {lab}\n"
    bad = tmp_path / "bad.yard"
    bad.write_text("".join(text))
    code, out, _ = run(capsys, "verify-yard", bad)
    assert out.startswith("INVALID") and "violation fence" in out
    code, out, _ = run(capsys, "verify-yard", bad, "--format", "json-lines")
    assert json.loads(out)["details"]


def test_equiv_check(capsys):
    code, out, _ = run(capsys, "equiv-check", FIX / "k4_pattern.g", FIX / "k4_host_yes.g")
    assert out.strip() == "AGREE yes"
    code, out, _ = run(capsys, "equiv-check", FIX / "k4_pattern.g", FIX / "k4_host_no.g")
    assert out.strip() == "AGREE no"


def test_render(capsys, tmp_path):
    dest = tmp_path / "y.svg"
    code, _, _ = run(capsys, "render", FIX / "k4_yes.yard", "--out", dest)
    assert code == 0 and dest.read_text().count("<circle") == 42
    code, out, _ = run(capsys, "render", FIX / "scattered.txt", "--no-lines", "--size", "200")
    assert "<line" not in out


def test_errors(capsys, tmp_path):
    code, _, err = run(capsys, "check", tmp_path / "missing.txt")
    assert code == 1 and "error" in err
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0\n0 0\n")
    assert run(capsys, "solve", bad, "--k", "1")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["solve", str(FIX / "grid4.txt"), "--k", "-1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["check", str(FIX / "grid4.txt"), "--property", "nonsense"])
    with pytest.raises(SystemExit):
        main(["check", str(FIX / "grid4.txt"), "--property", "lq"])


@pytest.mark.skipif(shutil.which("hereditary") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["hereditary", "check", str(FIX / "four_in_line.txt")], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("NO")
