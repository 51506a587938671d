import json
import subprocess
import sys

import pytest

from chutelat.cli import main
from chutelat.perm import Permutation
from chutelat.pipedream import PipeDream
from chutelat.poset import cached_poset, seed_dream


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def dream_file(tmp_path, name, dream):
    path = tmp_path / name
    path.write_text(json.dumps(dream.to_json()))
    return str(path)


def test_enumerate_count(capsys):
    code, out, _ = run(capsys, "enumerate", "2143")
    assert code == 0
    assert out == "3\n"


def test_enumerate_json_round_trip(capsys):
    code, out, _ = run(capsys, "enumerate", "1432", "--json")
    assert code == 0
    dreams = [PipeDream.from_json(obj) for obj in json.loads(out)]
    assert tuple(dreams) == cached_poset(Permutation.parse("1432")).elements


def test_enumerate_seed_check(capsys):
    code, out, _ = run(capsys, "enumerate", "2143", "--seed-check")
    assert code == 0
    assert json.loads(out) == seed_dream(Permutation.parse("2143")).to_json()
    assert out.count("\n") == 1


def test_enumerate_flag_conflict(capsys):
    code, _, err = run(capsys, "enumerate", "2143", "--count", "--json")
    assert code == 2
    assert "error:" in err


def test_comma_notation(capsys):
    code, out, _ = run(capsys, "enumerate", "2,1,4,3")
    assert code == 0
    assert out == "3\n"


def test_bad_permutation(capsys):
    code, _, err = run(capsys, "enumerate", "99")
    assert code == 2
    assert "error:" in err


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["enumerate"])  # missing the permutation
    assert exc.value.code == 2
    capsys.readouterr()


def test_hasse_writes_dot(capsys, tmp_path):
    target = tmp_path / "out.dot"
    code, out, _ = run(capsys, "hasse", "2143", "--dot", str(target))
    assert code == 0
    text = target.read_text()
    assert text.startswith("digraph chutelat {")
    assert '1 -> 0 [label="(3,4)"]' in text
    assert text.endswith("}\n")


def test_verify_report(capsys):
    code, out, _ = run(capsys, "verify", "1432")
    assert code == 0
    report = json.loads(out)
    assert report["w"] == "1432"
    assert [c["status"] for c in report["checks"]] == ["pass"] * 6


def test_verify_checks_subset(capsys):
    code, out, _ = run(capsys, "verify", "2143", "--checks", "isomorphism,lattice")
    assert code == 0
    assert [c["name"] for c in json.loads(out)["checks"]] == ["isomorphism", "lattice"]


def test_verify_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "2143", "--checks", "bogus")
    assert code == 2
    assert "unknown checks" in err


def test_verify_zero_budget(capsys):
    code, out, _ = run(capsys, "verify", "361542", "--budget-ms", "0")
    assert code == 0
    assert all(c["status"] == "skipped" for c in json.loads(out)["checks"])


def test_schubert(capsys):
    code, out, _ = run(capsys, "schubert", "321")
    assert code == 0
    assert out == "x1^2 x2\n"


def test_schubert_oracle_check(capsys):
    code, out, _ = run(capsys, "schubert", "1432", "--oracle-check")
    assert code == 0
    assert out.splitlines() == [
        "x1^2 x2 + x1^2 x3 + x1 x2^2 + x1 x2 x3 + x2^2 x3",
        "oracle: equal",
    ]


def test_path_steps(capsys, tmp_path):
    p = cached_poset(Permutation.parse("2143"))
    src = dream_file(tmp_path, "lo.json", p.elements[2])
    dst = dream_file(tmp_path, "hi.json", p.elements[0])
    code, out, _ = run(capsys, "path", "2143", "--from", src, "--to", dst)
    assert code == 0
    assert json.loads(out) == [
        {"box": [3, 4], "bset": [[3, 4]]},
        {"box": [3, 4], "bset": [[3, 4]]},
    ]


def test_path_incomparable(capsys, tmp_path):
    p = cached_poset(Permutation.parse("1432"))
    src = dream_file(tmp_path, "a.json", p.elements[1])
    dst = dream_file(tmp_path, "b.json", p.elements[2])
    code, out, _ = run(capsys, "path", "1432", "--from", src, "--to", dst)
    assert code == 0
    assert out == "incomparable\n"


def test_path_wrong_fiber(capsys, tmp_path):
    p = cached_poset(Permutation.parse("2143"))
    src = dream_file(tmp_path, "a.json", p.elements[0])
    code, _, err = run(capsys, "path", "1234", "--from", src, "--to", src)
    assert code == 2
    assert "does not belong" in err


def test_render(capsys, tmp_path):
    path = dream_file(tmp_path, "d.json", PipeDream.from_crosses(3, {(1, 1)}))
    code, out, _ = run(capsys, "render", path)
    assert code == 0
    assert out == "+))\n))\n)\n"


def test_info(capsys):
    code, out, _ = run(capsys, "info", "361542")
    assert code == 0
    obj = json.loads(out)
    assert obj == {
        "w": "361542",
        "n": 6,
        "inversions": 9,
        "code": [2, 4, 0, 2, 1, 0],
        "pd_size": 21,
    }


def test_info_skips_large_enumeration(capsys):
    code, out, _ = run(capsys, "info", "12345678")
    assert code == 0
    assert json.loads(out)["pd_size"] is None


def test_repeat_invocations_identical_bytes():
    cmd = [sys.executable, "-m", "chutelat", "enumerate", "1432", "--json"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    cmd = [sys.executable, "-m", "chutelat", "schubert", "2143"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.stdout == b.stdout != b""
