import json
import pickle

import pytest

from garsidehyp import cache, cli, graphio, metrics as mt
from garsidehyp.coxeter import parse_group_spec


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out.strip()
    return code, out


def last_json(out):
    return json.loads(out.splitlines()[-1])


def test_nf_command(capsys):
    code, out = run(capsys, "nf", "--group", "A2", "--word", "a a b")
    assert code == 0
    assert last_json(out)["normal_form"] == "D^0 | a | ab"


def test_census_command(capsys):
    code, out = run(capsys, "census", "--group", "I2(5)", "--sup-bound", "12")
    data = last_json(out)
    assert code == 0
    assert data["count"] == data["expected"] == 12


def test_mul_inv_member(capsys):
    code, out = run(capsys, "mul", "--group", "A3", "--left", "s1", "--right", "s3")
    assert code == 0
    code, out = run(capsys, "inv", "--group", "A2", "--word", "a")
    assert last_json(out)["inverse"] == "D^-1 | ab"
    code, out = run(capsys, "member", "--group", "A3", "--word", "s1 s2 s1",
                    "--subset", "s1,s2")
    assert code == 0 and last_json(out)["member"] is True
    code, out = run(capsys, "normalizer", "--group", "A3", "--word", "s1 s2 s1 s2 s1 s3 s2 s1 s2 s1 s2 s3",
                    "--subset", "s2")
    assert code == 0


def test_omega_command(capsys):
    code, out = run(capsys, "omega", "--group", "B2")
    data = last_json(out)
    assert code == 0 and data["is_delta"] is True


def test_fat_triangle_command(capsys):
    code, out = run(capsys, "fat-triangle", "--group", "A3",
                    "--x", "s1^3", "--y", "s3^3",
                    "--check-distances", "--check-symmetry")
    data = last_json(out)
    assert code == 0
    assert data["distance_checks"]["all_pass"] is True
    assert data["symmetry_verified"] is True


def test_arc_identity_and_double(capsys):
    code, out = run(capsys, "arc-identity", "--n", "3", "--i", "2", "--k", "1",
                    "--half")
    assert code == 0 and last_json(out)["equal"] is True
    code, out = run(capsys, "double", "--n", "3", "--word", "b")
    assert code == 0 and last_json(out)["image"] == "D^0 | s3"


def test_wordlen_and_ball(capsys):
    code, out = run(capsys, "wordlen", "--group", "I2(5)", "--kind", "XP",
                    "--word", "a^5", "--universe", "8")
    data = last_json(out)
    assert code == 0 and (data["kind"], data["value"]) == ("exact", 1)
    code, out = run(capsys, "ball", "--group", "I2(3)", "--kind",
                    "FiniteS_plus_Delta2", "--radius", "2", "--universe", "6")
    assert code == 0 and last_json(out)["vertices"] > 1


def test_delta_factor_and_qi(capsys):
    code, out = run(capsys, "delta-factor", "--group", "A3")
    assert code == 0 and last_json(out)["product_is_delta"] is True
    code, out = run(capsys, "qi-constants", "--group", "A3",
                    "--lipschitz-samples", "25")
    data = last_json(out)
    assert code == 0 and data["M1"] == 2 and data["lipschitz"]["failures"] == 0


def test_delta_estimate(capsys, tmp_path):
    out_file = tmp_path / "ball.json"
    code, out = run(capsys, "delta-estimate", "--group", "I2(3)",
                    "--len-bound", "4", "--sample", "400", "--seed", "7",
                    "--out", str(out_file))
    data = last_json(out)
    assert code == 0
    assert data["provenance"]["seed"] == 7
    assert out_file.exists()


def test_usage_and_error_exit_codes(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["nf", "--group", "A2"])  # missing --word
    assert exc.value.code == 2
    code, _out = run(capsys, "nf", "--group", "Z5", "--word", "a")
    assert code == 2
    code, _out = run(capsys, "props", "--group", "E8")
    assert code == 3
    code, _out = run(capsys, "census", "--group", "I2(5)", "--sup-bound", "12")
    assert code == 0


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("subset=s1,s2\n# comment\n")
    code, out = run(capsys, "--config", str(cfg), "member", "--group", "A3",
                    "--word", "s1", "--subset", "s1")
    # explicit flag wins over config
    assert code == 0 and last_json(out)["subset"] == ["s1"]


def test_graph_export_roundtrip(tmp_path):
    graph = mt.quotient_cayley_graph(parse_group_spec("A2"), 3)
    path = tmp_path / "q.json"
    graphio.export_json(graph, path)
    back = graphio.import_json(path)
    assert back.vertices == graph.vertices
    assert back.edges == graph.edges
    assert back.provenance == graph.provenance
    # bit-stable output
    first = path.read_bytes()
    graphio.export_json(graph, path)
    assert path.read_bytes() == first
    dot = tmp_path / "q.dot"
    graphio.export_dot(graph, dot)
    text = dot.read_text()
    assert text.startswith("// provenance:")
    assert "--" in text
    # empty graph stays valid
    empty = mt.MetricGraph((), (), {"construction": "empty"})
    graphio.export_json(empty, tmp_path / "e.json")
    assert graphio.import_json(tmp_path / "e.json").vertices == ()
    graphio.export_dot(empty, tmp_path / "e.dot")


def test_cache_roundtrip(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path))
    group = parse_group_spec("I2(5)")
    tab = group.table()
    tab.mult(3, 5)
    assert cache.save_memos(group)
    fresh_count = len(tab._mult_memo)
    tab._mult_memo.clear()
    assert cache.load_memos(group)
    assert len(tab._mult_memo) == fresh_count
    # stale version files are ignored, never misread
    path = next(tmp_path.glob("memo-*.pkl"))
    payload = pickle.loads(path.read_bytes())
    payload["version"] = 999
    path.write_bytes(pickle.dumps(payload))
    assert not cache.load_memos(group)
    # corrupt files are ignored
    path.write_bytes(b"not a pickle")
    assert not cache.load_memos(group)
    # the CLI exercises the cache hooks end to end
    code = cli.main(["--cache-dir", str(tmp_path), "nf", "--group", "I2(5)",
                     "--word", "a b a"])
    capsys.readouterr()
    assert code == 0
    assert list(tmp_path.glob("memo-*.pkl"))


def test_parabolic_literals(capsys):
    code, out = run(capsys, "cparab", "--group", "A3", "--p0", "std:s1",
                    "--conj-len", "0", "--hops", "1")
    assert code == 0 and last_json(out)["vertices"] == 3
    code, out = run(capsys, "cparab", "--group", "A3", "--p0",
                    "conj:(s2):s1", "--conj-len", "0", "--hops", "1")
    assert code == 0


def test_accept_single_criterion(capsys):
    code, out = run(capsys, "accept", "--criterion", "3")
    assert code == 0
    assert "[PASS] criterion 3" in out
