import json

import pytest

from chromaloc import graph as gr
from chromaloc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_chrompoly_cycle(capsys):
    code, out, _ = run(capsys, "chrompoly", "--gen", "cycle:5")
    # (z-1)^5 - (z-1), low to high
    assert code == 0 and out.split() == ["0", "4", "-10", "10", "-5", "1"]


def test_chrompoly_triangle(capsys):
    code, out, _ = run(capsys, "chrompoly", "--g6", gr.emit_graph6(gr.complete(3)))
    assert code == 0 and out.strip() == "0 2 -3 1"


def test_chrompoly_methods_agree(capsys):
    _, a, _ = run(capsys, "chrompoly", "--gen", "petersen", "--method", "dc", "--format", "json")
    _, b, _ = run(capsys, "chrompoly", "--gen", "petersen", "--method", "expansion", "--format", "json")
    assert a == b
    json.loads(a)


def test_loop_edge_file(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1\n2 2\n")
    code, _, err = run(capsys, "chrompoly", "--edges", str(bad))
    assert code == 2 and "LoopEdge" in err


def test_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "chrompoly", "--edges", str(tmp_path / "none.txt"))
    assert code == 2


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["moments", "--kmax"])
    assert exc.value.code == 2


def test_moments_newton_and_hom_identical(capsys):
    _, newton, _ = run(capsys, "moments", "--gen", "petersen", "--kmax", "3", "--method", "newton")
    _, hom, _ = run(capsys, "moments", "--gen", "petersen", "--kmax", "3", "--method", "hom")
    assert newton == hom
    assert newton.split() == ["15", "15", "15"]


@pytest.mark.parametrize("gen", ["cycle:7", "tube:2", "random-regular:3,10,4", "box:2,3"])
def test_moments_byte_identical_up_to_five(capsys, gen):
    outs = []
    for method in ("newton", "hom"):
        code, out, _ = run(capsys, "moments", "--gen", gen, "--kmax", "5", "--method", method, "--normalize")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_moments_roots_close(capsys):
    _, exact, _ = run(capsys, "moments", "--gen", "petersen", "--kmax", "4", "--method", "newton")
    _, approx, _ = run(capsys, "moments", "--gen", "petersen", "--kmax", "4", "--method", "roots")
    a = [int(v) for v in exact.split()]
    b = [complex(v.replace("i", "j")).real for v in approx.split()]
    # p_4 = 63 checked against sympy root sums of the colouring-count interpolant
    assert a == [15, 15, 15, 63] and len(b) == 4
    assert all(abs(x - y) <= 1e-6 * max(1, abs(x)) for x, y in zip(a, b))


def test_basis_k1(capsys):
    code, out, _ = run(capsys, "basis", "--k", "1")
    assert code == 0 and "1/2 · hom(K2, ·)" in out


def test_basis_cap(capsys):
    code, _, err = run(capsys, "basis", "--k", "7")
    assert code == 3 and "CapExceeded" in err


def test_basis_appendix_json(capsys):
    code, out, _ = run(capsys, "basis", "--k", "3", "--emit-appendix", "--format", "json")
    data = json.loads(out)
    assert data["p"]["1"] == [{"coefficient": "1/2", "graph6": "A_", "n": 2, "edges": [[0, 1]]}]


def test_budget_exit(capsys):
    code, _, err = run(capsys, "chrompoly", "--gen", "torus:3,3", "--budget", "3")
    assert code == 3


def test_hom(capsys):
    code, out, _ = run(capsys, "hom", "path:3", "cycle:4", "--inj")
    assert code == 0 and out.strip().endswith("8")
    code, out, _ = run(capsys, "hom", "complete:2", "path:9", "--density")
    assert out.strip().endswith("16/9")


def test_girth_bound_out_of_range(capsys):
    code, _, err = run(capsys, "girth-bound", "--gen", "petersen", "--q", "10")
    assert code == 2 and "OutOfRange" in err


def test_girth_bound_csv(capsys):
    code, out, _ = run(capsys, "girth-bound", "--gen", "petersen", "--q", "30", "--q", "61/2")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "C,q,estimate,bound,exact,error,holds" and len(lines) == 5
    assert lines[1].startswith("7.963907,30/1,") and lines[1].endswith(",true")
    # 2 (24/30)^4 / (1 - 24/30)
    assert lines[2].startswith("8,30/1,") and ",4.096," in lines[2]
    assert lines[3].startswith("7.963907,61/2,")


def test_girth_bound_partial_range(capsys):
    code, out, _ = run(capsys, "girth-bound", "--gen", "petersen", "--q", "24")
    lines = out.strip().splitlines()
    assert code == 0 and lines[2] == "8,24/1,,,,,out_of_range"
    code, out, _ = run(capsys, "girth-bound", "--gen", "petersen", "--q", "30", "--sokal-c", "8")
    assert len(out.strip().splitlines()) == 2


def test_converge_deterministic(capsys, tmp_path):
    argv = ["converge", "--family", "random-regular:3,4", "--sizes", "8..12:2", "--kmax", "3", "--seed", "4",
            "--svg-prefix", str(tmp_path / "a")]
    _, first, _ = run(capsys, *argv)
    svg = sorted(tmp_path.glob("a*.svg"))
    assert svg
    blobs = [p.read_bytes() for p in svg]
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert [p.read_bytes() for p in sorted(tmp_path.glob("a*.svg"))] == blobs
    recs = [json.loads(l) for l in first.strip().splitlines()]
    assert [r["size"] for r in recs] == [8, 10, 12]
    assert all(r["paths_agree"] for r in recs)


def test_tube_curve_files(capsys, tmp_path):
    out_dir = tmp_path / "tube"
    argv = ["tube", "--n", "3", "--curve", "--grid", "0.05", "--out-dir", str(out_dir)]
    code, _, _ = run(capsys, *argv)
    assert code == 0
    names = sorted(p.name for p in out_dir.iterdir())
    assert {"curve.csv", "special.csv", "roots.csv", "tube.svg"} <= set(names)
    before = {n: (out_dir / n).read_bytes() for n in names}
    run(capsys, *argv)
    assert {n: (out_dir / n).read_bytes() for n in names} == before


def test_roots_csv_and_svg(capsys, tmp_path):
    svg = tmp_path / "r.svg"
    code, out, _ = run(capsys, "roots", "--gen", "cycle:4", "--svg", str(svg))
    assert code == 0 and out.splitlines()[0] == "re,im,multiplicity" and len(out.splitlines()) == 5
    assert svg.read_text().lstrip().startswith("<?xml")


def test_balls(capsys):
    code, out, _ = run(capsys, "balls", "--gen", "path:10", "--radius", "1")
    lines = out.strip().splitlines()
    assert code == 0 and sorted(l.split(",")[-1] for l in lines[1:]) == ["1/5", "4/5"]


def test_output_file_and_config(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# settings\nseed = 9\nunknown_key = whatever\n")
    dest = tmp_path / "out.txt"
    code, out, _ = run(capsys, "chrompoly", "--gen", "random-regular:3,10,4", "--config", str(cfg), "-o", str(dest))
    assert code == 0 and out == ""
    _, direct, _ = run(capsys, "chrompoly", "--gen", "random-regular:3,10,4", "--seed", "9")
    assert dest.read_text() == direct
