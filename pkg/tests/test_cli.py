import json
import subprocess
import sys
from fractions import Fraction

import pytest

from cantorval.cli import main
from cantorval.geometry import decode_number, encode_number


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    return code, json.loads(out)


def intervals(payload, p):
    return [[decode_number(lo, p), decode_number(hi, p)] for lo, hi in payload]


def test_classify(capsys):
    code, d = run_json(capsys, "classify", "--l1", "3", "--r1", "2", "--l2", "1", "--r2", "3", "--p", "7")
    assert code == 0 and d["type"] == "LCantorval"
    assert d["digits"] == [-6, -5, -4, -3, -2, -1, 0, 1, 2, 5, 6]
    assert d["conditions"]["s1_star"] is True and d["conditions"]["s2"] is False
    _, d = run_json(capsys, "classify", "--l1", "1", "--r1", "1", "--l2", "1", "--r2", "1", "--p", "3")
    assert d["type"] == "FullInterval"
    _, d = run_json(capsys, "classify", "--l1", "2", "--r1", "2", "--l2", "2", "--r2", "2", "--p", "7")
    assert d["type"] == "MCantorval"


def test_classify_invalid(capsys):
    code, _, err = run(capsys, "classify", "--l1", "3", "--r1", "4", "--l2", "1", "--r2", "1", "--p", "7")
    assert code == 2 and "l + r < p" in err
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--l1", "3"])
    assert exc.value.code == 2


def test_classify_sym_and_kraft(capsys):
    _, d = run_json(capsys, "classify-sym", "--l1", "2", "--l2", "1", "--p", "5")
    assert d["type"] == "FullInterval"
    _, d = run_json(capsys, "kraft", "--l", "2", "--p", "7")
    assert d["type"] == "MCantorval" and d["digits"] == [-6, -5, -4, -1, 0, 1, 4, 5, 6]


def test_digits(capsys):
    _, d = run_json(capsys, "digits", "--digits", "0,2", "--p", "3", "--minus", "0,2")
    assert d["digits"] == [-2, 0, 2] and d["full_interval"] is True and d["ratio"] == "1/3"
    _, d = run_json(capsys, "digits", "--digits", "-1", "--p", "3", "--plus", "1")
    assert d["digits"] == [0] and "delta" not in d


def test_cover_and_gaps(capsys):
    code, d = run_json(capsys, "cover", "--digits", "-4,0,2,3,4", "--p", "5", "--depth", "1")
    assert code == 0
    assert intervals(d, 5) == [[-1, Fraction(-3, 5)], [Fraction(-1, 5), 1]]
    assert d[0][1] == {"num": "-3", "den_pow": 1}
    _, d = run_json(capsys, "gaps", "--digits", "0,2", "--p", "3", "--depth", "1")
    assert intervals(d, 3) == [[Fraction(1, 3), Fraction(2, 3)]]
    _, d = run_json(capsys, "cover", "--digits", "0,1,2", "--p", "3", "--depth", "4")
    assert intervals(d, 3) == [[0, 1]]
    _, d = run_json(capsys, "gaps", "--digits", "0,1,2", "--p", "3", "--depth", "4")
    assert d == []


def test_json_roundtrip(capsys):
    _, out, _ = run(capsys, "--json", "gaps", "--digits", "-4,0,2,3,4", "--p", "5", "--depth", "3")
    payload = json.loads(out)
    again = [[encode_number(lo, 5), encode_number(hi, 5)] for lo, hi in intervals(payload, 5)]
    assert again == payload
    assert json.dumps(again, sort_keys=True) == out.strip()


def test_json_flag_after_subcommand(capsys):
    code, out, _ = run(capsys, "cover", "--digits", "0,2", "--p", "3", "--depth", "1", "--json")
    assert code == 0 and len(json.loads(out)) == 2


def test_text_output(capsys):
    _, out, _ = run(capsys, "cover", "--digits", "-4,0,2,3,4", "--p", "5", "--depth", "1")
    assert out.strip() == "[-1, -3/5] u [-1/5, 1]"


def test_cover_errors(capsys, monkeypatch):
    with pytest.raises(SystemExit) as exc:
        main(["cover", "--digits", "0,x", "--p", "3", "--depth", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["cover", "--digits", "0, 2", "--p", "3", "--depth", "1"])
    code, _, _ = run(capsys, "cover", "--digits", "0,3", "--p", "3", "--depth", "1")
    assert code == 2
    monkeypatch.setenv("CANTORVAL_INTERVAL_BUDGET", "5")
    code, _, err = run(capsys, "cover", "--digits", "0,2", "--p", "3", "--depth", "4")
    assert code == 3 and "intervals" in err


def test_member(capsys):
    _, d = run_json(capsys, "member", "--num", "1", "--den", "4", "--digits", "0,2", "--p", "3")
    assert d["member"] == "In"
    _, d = run_json(capsys, "member", "--num", "1", "--den", "2", "--digits", "0,2", "--p", "3")
    assert d["member"] == "Out" and d["witness"]["exclusion_depth"] == 1
    _, d = run_json(capsys, "member", "--num", "0", "--den", "1", "--digits", "0,2", "--p", "3")
    assert d["member"] == "In"
    code, _, _ = run(capsys, "member", "--num", "1", "--den", "0", "--digits", "0,2", "--p", "3")
    assert code == 2


def test_sweep(capsys, tmp_path):
    out = tmp_path / "rows.jsonl"
    code, _, _ = run(capsys, "sweep", "--p-max", "4", "--verify", "--out", str(out))
    assert code == 0
    lines = [json.loads(x) for x in out.read_text().splitlines()]
    rows, summary = lines[:-1], lines[-1]
    assert len(rows) == 10 and summary["summary"] is True
    types = {(r["l1"], r["r1"], r["l2"], r["r2"], r["p"]): r["type"] for r in rows}
    assert types[(1, 1, 2, 1, 4)] == "FullInterval" and types[(1, 1, 1, 1, 4)] == "CantorSet"
    assert all(r["consistent"] is True for r in rows)
    code, out, _ = run(capsys, "--json", "sweep", "--p-max", "3")
    lines = out.strip().splitlines()
    assert len(lines) == 2 and json.loads(lines[0])["type"] == "FullInterval"


def test_sweep_seven_all_types(capsys):
    code, out, _ = run(capsys, "--json", "sweep", "--p-max", "7", "--verify")
    summary = json.loads(out.strip().splitlines()[-1])
    assert code == 0 and summary["inconsistent"] == 0
    assert all(v > 0 for v in summary["tallies"].values())


def test_render_rows(capsys, tmp_path):
    out = tmp_path / "c.svg"
    code, _, _ = run(capsys, "render", "--digits", "0,2", "--p", "3", "--steps", "3", "--out", str(out))
    text = out.read_text()
    last = text.split('data-step="3"')[1]
    assert code == 0 and last.count('class="bar"') == 8
    run(capsys, "render", "--digits", "0,1,2", "--p", "3", "--steps", "2", "--out", str(out))
    text = out.read_text()
    assert text.count('class="bar"') == 3 and text.count('class="row"') == 3


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "cantorval", "--json", "kraft", "--l", "1", "--p", "3"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(res.stdout)["type"] == "FullInterval"
