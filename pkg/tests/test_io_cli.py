import os
import subprocess
import sys

import pytest

from blz import io
from blz.cli import main
from blz.core import Parsing, Phrase, SymbolTable, compute_hops, encode, symbols
from blz.parsers import greedy_lz76
from blz.reduction import Graph, ReductionParams, build_reduction, witness_parsing

K2 = Graph(2, ((1, 2),))
K3 = Graph(3, ((1, 2), (2, 3), (1, 3)))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    pairs = dict(line.split("=", 1) for line in out.out.splitlines() if "=" in line and " " not in line)
    return code, pairs, out


def chars(tmp_path, text, name="s.txt"):
    table, s = SymbolTable.from_tokens(text)
    path = tmp_path / name
    io.write_tokens(path, table, s)
    return path


# -- formats ---------------------------------------------------------------

def test_instance_roundtrip(tmp_path):
    inst = build_reduction(K2, ReductionParams(2, 2))
    io.write_instance(tmp_path / "k2", inst)
    back = io.read_instance(tmp_path / "k2")
    assert back.text == inst.text
    assert back.table.names == inst.table.names
    assert back.graph == inst.graph and back.params == inst.params
    assert back.segments == inst.segments


def test_empty_string_roundtrip(tmp_path):
    path = tmp_path / "e.txt"
    io.write_tokens(path, SymbolTable(), ())
    table, s = io.read_tokens(path)
    assert s == () and len(table) == 0


def test_parsing_roundtrip(tmp_path):
    phi = Parsing((Phrase(1, 1), Phrase(2, 4, 1)))
    path = tmp_path / "p.txt"
    io.write_parsing(path, phi)
    assert path.read_text() == "phrase 1 1 -\nphrase 2 4 1\n"
    assert io.read_parsing(path) == phi


def test_canonical_files_are_fixed_points(tmp_path):
    inst = build_reduction(K3, ReductionParams(1, 3))
    text = io.format_tokens(inst.table, inst.text)
    assert io.format_tokens(*io.parse_tokens(text)) == text
    tr = encode(inst.text, witness_parsing(inst, {1, 2}))
    tt = io.format_triples(inst.table, tr)
    table, back = io.parse_triples(tt)
    assert back == tr and io.format_triples(table, back) == tt
    gt = io.format_graph(K3)
    assert io.format_graph(io.parse_graph(gt)) == gt


def test_bare_token_file():
    table, s = io.parse_tokens("a b a\nc\n")
    assert table.names == ["a", "b", "c"] and s == (0, 1, 0, 2)


@pytest.mark.parametrize(
    "content,line",
    [
        ("phrase 1 1 -\nphrase 2 x 1\n", 2),
        ("phrase 1 1 -\nfoo\n", 2),
        ("phrase 1 1 -\nphrase 3 3 -\n", 2),
    ],
)
def test_malformed_parsing_reports_line(content, line):
    with pytest.raises(io.FormatError) as exc:
        io.parse_parsing(content)
    assert exc.value.line == line


def test_unknown_token_named():
    with pytest.raises(io.FormatError, match="'zz'") as exc:
        io.parse_tokens("alphabet 1\nsym 0 a\na zz a\n")
    assert exc.value.line == 3


def test_malformed_graph():
    with pytest.raises(io.FormatError) as exc:
        io.parse_graph("2 1\n1 1\n")
    assert exc.value.line == 2


# -- command line ----------------------------------------------------------

def test_cli_vc(tmp_path, capsys):
    g = tmp_path / "k3.graph"
    io.write_graph(g, K3)
    code, kv, _ = run(capsys, "vc", g)
    assert code == 0 and kv["tau"] == "2"


def test_cli_parse_greedy(tmp_path, capsys):
    code, kv, out = run(capsys, "parse", chars(tmp_path, "abcd"), "--mode", "greedy")
    assert code == 0 and kv["size"] == "4"
    assert out.out.count("phrase ") == 4


def test_cli_parse_matches_library(tmp_path, capsys):
    text = "abaababaabaab"
    path = chars(tmp_path, text)
    out = tmp_path / "phi.txt"
    code, kv, _ = run(capsys, "parse", path, "--mode", "exact", "--c", 1, "-o", out)
    assert code == 0 and kv["proven_optimal"] == "true"
    _, s = io.read_tokens(path)
    phi = io.read_parsing(out)
    assert compute_hops(s, phi).hop_max <= 1
    code, kv, _ = run(capsys, "parse", path)
    assert int(kv["size"]) == len(greedy_lz76(s))


def test_cli_reduce_witness_verify(tmp_path, capsys):
    g = tmp_path / "k2.graph"
    io.write_graph(g, K2)
    prefix = tmp_path / "k2"
    code, kv, _ = run(capsys, "reduce", g, "--c", 1, "--ell", 2, "--k", 1, "--out", prefix)
    assert code == 0 and kv["length"] == "21" and kv["target_size"] == "15"
    phi = tmp_path / "w.txt"
    code, kv, _ = run(capsys, "witness", prefix, "--cover", "1", "-o", phi)
    assert code == 0 and kv["size"] == "15"
    tokens = f"{prefix}.tokens"
    code, kv, _ = run(capsys, "verify", tokens, phi, "--c", 1, "--target", 15)
    assert code == 0 and kv["ok"] == "true"
    code, kv, _ = run(capsys, "verify", tokens, phi, "--c", 1, "--target", 14)
    assert code == 1 and kv["size_ok"] == "false"
    code, kv, _ = run(capsys, "extract-cover", prefix, phi)
    assert code == 0 and kv["is_cover"] == "true" and kv["cover_size"] == "1"


def test_cli_encode_access_decode(tmp_path, capsys):
    path = chars(tmp_path, "aaaa")
    phi = tmp_path / "p.txt"
    io.write_parsing(phi, Parsing((Phrase(1, 1), Phrase(2, 4, 1))))
    tr = tmp_path / "t.txt"
    assert run(capsys, "encode", path, phi, "-o", tr)[0] == 0
    code, kv, _ = run(capsys, "access", tr, "--pos", 2)
    assert code == 0 and kv["symbol"] == "a" and kv["accesses"] == "2"
    back = tmp_path / "back.txt"
    assert run(capsys, "decode", tr, "-o", back)[0] == 0
    assert back.read_text() == path.read_text()
    code, kv, _ = run(capsys, "hops", path, phi)
    assert kv["hops"] == "0,1,1,0" and kv["hop_max"] == "1"


def test_cli_thue_and_bound(tmp_path, capsys):
    w = tmp_path / "w.txt"
    assert run(capsys, "thue", "--length", 729, "-o", w)[0] == 0
    code, kv, _ = run(capsys, "check-squarefree", w)
    assert code == 0 and kv["square_free"] == "true"
    code, kv, _ = run(capsys, "audit-bound", w, "--c", 2)
    assert code == 0 and kv["lower_bound"] == "8" and kv["passed"] == "true"
    sq = chars(tmp_path, "abab", "sq.txt")
    assert run(capsys, "check-squarefree", sq)[0] == 1
    assert run(capsys, "audit-bound", sq, "--c", 1)[0] == 2


def test_cli_check_failures(tmp_path, capsys):
    path = chars(tmp_path, "abc")
    bad = tmp_path / "bad.txt"
    io.write_parsing(bad, Parsing((Phrase(1, 1), Phrase(2, 3, 1))))
    code, kv, _ = run(capsys, "verify", path, bad)
    assert code == 1 and kv["valid"] == "false"


def test_cli_usage_errors(tmp_path, capsys):
    path = chars(tmp_path, "abc")
    assert run(capsys, "parse", path, "--mode", "bounded")[0] == 2  # missing --c
    assert run(capsys, "parse", tmp_path / "missing.txt")[0] == 2
    assert run(capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["parse", str(path), "--mode", "nope"])
    assert exc.value.code == 2


def test_no_partial_output_on_failure(tmp_path, capsys):
    prefix = tmp_path / "inst"
    g = tmp_path / "g.txt"
    g.write_text("2 1\n1 1\n")
    assert run(capsys, "reduce", g, "--out", prefix)[0] == 2
    assert not list(tmp_path.glob("inst*"))
    assert not list(tmp_path.glob(".*tmp"))


def test_threads_env_fallback(tmp_path, capsys, monkeypatch):
    path = chars(tmp_path, "abab")
    monkeypatch.setenv("BLZ_THREADS", "3")
    code, kv, _ = run(capsys, "parse", path, "--mode", "exact", "--c", 1)
    assert code == 0 and kv["threads"] == "3"
    monkeypatch.setenv("BLZ_THREADS", "many")
    assert run(capsys, "parse", path, "--mode", "exact", "--c", 1)[0] == 2


def test_console_script(tmp_path):
    g = tmp_path / "k3.graph"
    io.write_graph(g, K3)
    env = dict(os.environ)
    res = subprocess.run([sys.executable, "-m", "blz", "vc", str(g)], capture_output=True, text=True, env=env)
    assert res.returncode == 0
    assert "tau=2" in res.stdout.splitlines()
