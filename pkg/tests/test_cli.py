"""Command-line interface: subcommand payloads, exit codes, determinism."""

import json

from kq.cli import run
from kq.linalg import RatMatrix
from kq.moduli import QuiverRep, random_point


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, out


def invoke_json(capsys, *argv):
    code, out = invoke(capsys, *argv, "--json")
    return code, json.loads(out)


def test_lr(capsys):
    code, report = invoke_json(capsys, "lr", "--lam", "1,0", "--gam", "2,1", "--mu", "2,2")
    assert code == 0 and report["results"]["lr"] == 1


def test_ssyt_count(capsys):
    code, report = invoke_json(
        capsys, "ssyt-count", "--inner", "1,0", "--outer", "2,2", "--max-entry", "3"
    )
    assert code == 0 and report["results"]["count"] == 8


def test_gamma(capsys):
    code, report = invoke_json(capsys, "gamma", "--lam", "1,0", "--mu", "3,2")
    assert code == 0 and report["results"]["gamma"] == [[2, 2], [3, 1]]


def test_gl_dim(capsys):
    code, report = invoke_json(capsys, "gl-dim", "--gam", "2,2", "--n", "5")
    assert code == 0 and report["results"]["dim"] == 50


def test_hom_dim_worked_example(capsys):
    code, report = invoke_json(capsys, "hom-dim", "--n", "5", "--lam", "1,0", "--mu", "3,2")
    assert code == 0
    assert report["results"] == {"gamma": [[2, 2], [3, 1]], "dims": [50, 105], "total": 155}


def test_quiver(capsys):
    code, report = invoke_json(capsys, "quiver", "--n", "4")
    assert code == 0
    assert len(report["results"]["vertices"]) == 6
    assert len(report["results"]["arrows"]) == 24
    assert report["results"]["dims"] == [1, 2, 3, 1, 2, 1]


def test_relations_square_pair(capsys):
    code, report = invoke_json(capsys, "relations", "--n", "5", "--lam", "2,0", "--mu", "3,1")
    assert code == 0
    (family,) = report["results"]["families"]
    assert family["family"] == "square"
    assert family["coefficients"] == [2, -3, 1]
    assert family["count"] == 25


def test_relations_full_sweep_n5(capsys):
    code, report = invoke_json(capsys, "relations", "--n", "5")
    assert code == 0
    fams = report["results"]["families"]
    assert len(fams) == 12
    grouped = {}
    for f in fams:
        grouped.setdefault((f["family"], tuple(f["coefficients"])), []).append(tuple(f["lam"]))
    assert sorted(grouped[("ff", (1, -1))]) == [(0, 0), (1, 0), (1, 1)]
    assert sorted(grouped[("gg", (1, -1))]) == [(2, 0), (3, 0), (3, 1)]
    assert sorted(grouped[("diag", (1, 1))]) == [(0, 0), (1, 1), (2, 2)]
    assert sorted(grouped[("square", (1, -2, 1))]) == [(1, 0), (2, 1)]
    assert grouped[("square", (2, -3, 1))] == [(2, 0)]


def test_fg_matrix(capsys):
    code, report = invoke_json(capsys, "fg-matrix", "--k", "2", "--x", "1/2,-3")
    assert code == 0
    assert report["results"]["f"]["entries"] == [["1/2", "0"], ["-3", "1/2"], ["0", "-3"]]
    assert report["results"]["g"]["entries"] == [["3", "1/2"]]
    code, report = invoke_json(capsys, "fg-matrix", "--k", "1", "--x", "1,0")
    assert code == 0 and report["results"]["g"] is None


def test_verify_kernel_single_pair(capsys):
    code, report = invoke_json(capsys, "verify-kernel", "--n", "4", "--lam", "0,0", "--mu", "1,1")
    assert code == 0
    r = report["results"]
    assert (r["paths"], r["ideal_dim"], r["quotient_dim"], r["hom_dim"], r["ok"]) == (
        16,
        10,
        6,
        6,
        True,
    )


def test_verify_kernel_sweep(capsys):
    code, report = invoke_json(capsys, "verify-kernel", "--n", "4", "--max-degree", "3")
    assert code == 0 and report["ok"]
    assert all(r["ok"] for r in report["results"]["pairs"])


def test_verify_surjectivity_single_pair(capsys):
    code, report = invoke_json(
        capsys, "verify-surjectivity", "--n", "4", "--lam", "0,0", "--mu", "1,1",
        "--samples", "8", "--seed", "cli",
    )
    assert code == 0
    assert report["results"]["rank"] == report["results"]["hom_dim"] == 6


def test_roundtrip_command(capsys):
    code, report = invoke_json(capsys, "roundtrip", "--n", "4", "--trials", "3", "--seed", "7")
    assert code == 0
    assert report["results"] == {"trials": 3, "failures": [], "ok": True}
    assert report["inputs"]["seed"] == "7"


def test_embed_check_reconstruct_files(tmp_path, capsys):
    y = random_point(4, "clifile")
    point_file = tmp_path / "point.json"
    point_file.write_text(json.dumps(y.to_json()))
    code, report = invoke_json(capsys, "embed", "--point", str(point_file))
    assert code == 0
    rep_json = report["results"]["rep"]

    rep_file = tmp_path / "rep.json"
    rep_file.write_text(json.dumps(rep_json))
    code, report = invoke_json(capsys, "check", "--rep", str(rep_file))
    assert code == 0 and report["ok"]
    assert report["results"]["stability"]["ok"] and report["results"]["violations"] == []

    code, report = invoke_json(capsys, "reconstruct", "--rep", str(rep_file))
    assert code == 0
    assert report["results"]["point"] == y.to_json()

    # break one entry: check reports the violation and exits 1
    rep = QuiverRep.from_json(rep_json)
    a = rep.quiver.arrow((1, 0), 1, 2)
    m = rep.matrices[a]
    rows = [list(m.row(i)) for i in range(m.rows)]
    rows[0][0] += 1
    mats = dict(rep.matrices)
    mats[a] = RatMatrix(rows)
    bad = QuiverRep(4, mats)
    bad_file = tmp_path / "bad.json"
    bad_file.write_text(json.dumps(bad.to_json()))
    code, report = invoke_json(capsys, "check", "--rep", str(bad_file))
    assert code == 1 and not report["ok"]
    assert report["results"]["violations"]

    code, report = invoke_json(capsys, "reconstruct", "--rep", str(bad_file))
    assert code == 1 and report["results"]["error"] == "RelationsViolated"


def test_malformed_inputs_exit_2(tmp_path, capsys):
    code, _ = invoke(capsys, "lr", "--lam", "x", "--gam", "1", "--mu", "1")
    assert code == 2
    code, _ = invoke(capsys, "quiver", "--n", "3")
    assert code == 2
    code, _ = invoke(capsys, "check", "--rep", str(tmp_path / "missing.json"))
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _ = invoke(capsys, "check", "--rep", str(bad))
    assert code == 2
    code, _ = invoke(capsys, "relations", "--n", "4", "--lam", "0,0", "--mu", "3,3")
    assert code == 2


def test_json_output_is_byte_identical(capsys):
    args = ("roundtrip", "--n", "4", "--trials", "2", "--seed", "99", "--json")
    code1, out1 = invoke(capsys, *args)
    code2, out2 = invoke(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_human_and_json_agree_on_verdict(capsys):
    code_h, out_h = invoke(capsys, "verify-kernel", "--n", "4", "--lam", "0,0", "--mu", "2,1")
    code_j, report = invoke_json(capsys, "verify-kernel", "--n", "4", "--lam", "0,0", "--mu", "2,1")
    assert code_h == code_j == 0
    assert "ok: true" in out_h
    assert report["ok"] is True
    assert "elapsed_ms" in out_h and "elapsed_ms" not in json.dumps(report)


def test_threads_flag_preserves_results(capsys):
    base = ("verify-kernel", "--n", "4", "--max-degree", "2", "--json")
    _, out1 = invoke(capsys, *base)
    _, out2 = invoke(capsys, *base, "--threads", "4")
    r1, r2 = json.loads(out1), json.loads(out2)
    assert r1["results"] == r2["results"]
