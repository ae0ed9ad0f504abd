import csv
import io
import json
import os
import subprocess
import sys

import pytest

from pathlister.cli import CSV_HEADER, main, parse_range
from pathlister.generators import tripartite
from pathlister.graph import serialize_edge_list
from corpus import NAMED


@pytest.fixture
def files(tmp_path):
    out = {}
    for name in ("k4", "path3", "two_edges", "triangle", "bowtie"):
        p = tmp_path / f"{name}.txt"
        p.write_text(serialize_edge_list(NAMED[name]))
        out[name] = str(p)
    p = tmp_path / "trip6.txt"
    p.write_text(serialize_edge_list(tripartite(6)))
    out["trip6"] = str(p)
    p = tmp_path / "big.txt"
    p.write_text("20 1\n0 19\n")
    out["big"] = str(p)
    p = tmp_path / "bad.txt"
    p.write_text("3 1\n0 0\n")
    out["bad"] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_paths_examples(files, capsys):
    assert run(capsys, "paths", files["k4"], "0", "3", "--count-only")[:2] == (0, "5\n")
    assert run(capsys, "paths", files["path3"], "0", "2")[:2] == (0, "0 1 2\n")
    assert run(capsys, "paths", files["two_edges"], "0", "3", "--count-only")[:2] == (0, "0\n")


def test_paths_brute_agrees(files, capsys):
    _, fast, _ = run(capsys, "paths", files["k4"], "0", "3")
    _, slow, _ = run(capsys, "paths", files["k4"], "0", "3", "--algo", "brute")
    assert sorted(fast.splitlines()) == sorted(slow.splitlines())
    assert len(fast.splitlines()) == 5


def test_paths_stats_on_stderr(files, capsys):
    code, out, err = run(capsys, "paths", files["k4"], "0", "3", "--count-only", "--stats")
    assert code == 0 and out == "5\n"
    stats = json.loads(err)
    assert stats["leaves"] == 5 and stats["binary_nodes"] == 4


def test_cycles_examples(files, capsys):
    assert run(capsys, "cycles", files["triangle"])[:2] == (0, "0 1 2\n")
    assert run(capsys, "cycles", files["k4"], "--count-only")[:2] == (0, "7\n")


def test_cycles_trip6_johnson_count(files, capsys):
    code, out, _ = run(capsys, "cycles", files["trip6"], "--count-only", "--algo", "johnson")
    _, brute, _ = run(capsys, "cycles", files["trip6"], "--count-only", "--algo", "brute")
    assert code == 0 and out == brute == "63\n"


def test_engines_agree_on_cycle_sets(files, capsys):
    outs = [sorted(run(capsys, "cycles", files["bowtie"], "--algo", a)[1].splitlines())
            for a in ("optimal", "johnson", "brute")]
    assert outs[0] == outs[1] == outs[2]


def test_exit_codes(files, capsys):
    assert run(capsys, "paths", files["bad"], "0", "1")[0] == 2
    assert run(capsys, "cycles", files["bad"])[0] == 2
    assert run(capsys, "paths", files["k4"] + ".missing", "0", "1")[0] == 2
    assert run(capsys, "paths", files["k4"], "0", "9")[0] == 3
    assert run(capsys, "paths", files["k4"], "2", "2")[0] == 3
    assert run(capsys, "cycles", files["big"], "--algo", "brute")[0] == 4
    assert run(capsys, "bench", "diamond", "5..2")[0] == 2
    assert run(capsys, "bench", "tripartite", "4")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["paths", files["k4"], "0", "x"])
    assert exc.value.code == 2


def test_output_file(files, capsys, tmp_path):
    dest = tmp_path / "out.txt"
    assert run(capsys, "cycles", files["k4"], "-o", str(dest))[:2] == (0, "")
    assert len(dest.read_text().splitlines()) == 7


def test_bcc(files, capsys):
    code, out, _ = run(capsys, "bcc", files["bowtie"])
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "articulation: 2"
    assert len(lines) == 3


def test_generate_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", "--family", "diamond", "--size", "2")
    assert code == 0 and out.splitlines()[0] == "7 9"
    dest = tmp_path / "g.txt"
    run(capsys, "generate", "--family", "random", "--size", "9", "--p", "0.5", "--seed", "3", "-o", str(dest))
    code, a, _ = run(capsys, "cycles", str(dest), "--count-only")
    _, b, _ = run(capsys, "cycles", str(dest), "--count-only", "--algo", "brute")
    assert code == 0 and a == b


def bench(capsys, *argv):
    code, out, _ = run(capsys, "bench", *argv)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    return rows[0], [dict(zip(rows[0], r)) for r in rows[1:]]


def test_bench_header_and_single_size(capsys):
    header, rows = bench(capsys, "tripartite", "3")
    assert header == CSV_HEADER
    assert ",".join(header) == ("family,n,m,eta,total_output,algo,work_units,elapsed_ns,"
                                "ratio,lemma5_violations,lemma6_violations")
    assert len(rows) == 1 and rows[0]["eta"] == "1"


def test_bench_tripartite_range_with_cap(capsys):
    # full runs are out of reach past n=9, so each cell stops after 2000 cycles
    _, rows = bench(capsys, "tripartite", "6..30:3", "--max-solutions", "2000")
    assert [int(r["n"]) for r in rows] == list(range(6, 31, 3))
    assert [int(r["eta"]) for r in rows] == [63] + [2001] * 8
    assert all(r["lemma5_violations"] == "0" and r["lemma6_violations"] == "0" for r in rows)
    assert all(float(r["ratio"]) > 0 for r in rows)


def test_bench_diamond_small_k_ratio_increasing(capsys):
    _, rows = bench(capsys, "diamond", "k=1..6", "--algo", "optimal,johnson")
    work = {}
    for r in rows:
        work.setdefault(int(r["n"]), {})[r["algo"]] = int(r["work_units"])
    ratios = [work[n]["johnson"] / work[n]["optimal"] for n in sorted(work)]
    assert all(a < b for a, b in zip(ratios, ratios[1:])), ratios


def test_bench_rows_stable_apart_from_timing(capsys):
    _, a = bench(capsys, "diamond", "1..4", "--algo", "optimal,johnson")
    _, b = bench(capsys, "diamond", "1..4", "--algo", "optimal,johnson", "--jobs", "2")
    for rows in (a, b):
        for r in rows:
            del r["elapsed_ns"]
    assert a == b


def test_parse_range():
    assert parse_range("6..30:3") == list(range(6, 31, 3))
    assert parse_range("k=1..6") == [1, 2, 3, 4, 5, 6]
    assert parse_range("9") == [9]
    assert parse_range("6..12", step=3) == [6, 9, 12]


def test_streams_identical_across_processes(files):
    outs = set()
    for seed in ("0", "1", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        for argv in (["cycles", files["trip6"]], ["paths", files["k4"], "0", "3"]):
            res = subprocess.run([sys.executable, "-m", "pathlister", *argv],
                                 capture_output=True, env=env, check=True)
            outs.add((tuple(argv), res.stdout))
    assert len(outs) == 2
