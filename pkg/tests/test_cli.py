import subprocess
import sys

import pytest

from fixtures import DATA
from ffdist.cli import main

TOY = ["-a", str(DATA / "toy_A.gen"), "-b", str(DATA / "toy_B.gen"), "-s", str(DATA / "toy.tsv"), "-x", "0.1"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_distance(capsys):
    code, out, _ = run(capsys, "distance", *TOY)
    assert code == 0
    assert out.splitlines() == ["distance\t5.1", "matching\t4", "pair\t1\t6", "pair\t3\t9", "pair\t4\t8", "pair\t5\t11"]


def test_distance_unweighted(capsys):
    code, out, _ = run(capsys, "distance", *TOY, "--unweighted")
    assert code == 0
    assert out.splitlines()[:2] == ["distance\t2", "matching\t5"]


def test_distance_exhaustive_engine(capsys):
    code, out, _ = run(capsys, "distance", *TOY, "--engine", "exhaustive")
    assert code == 0 and out.startswith("distance\t5.1\n")


def test_distance_external_engine(capsys, monkeypatch):
    pytest.importorskip("scipy")
    monkeypatch.setenv("FFDIST_SOLVER_CMD", f"{sys.executable} -m ffdist.solver_adapter {{input}} {{output}}")
    code, out, _ = run(capsys, "distance", *TOY, "--engine", "external")
    assert code == 0 and out.startswith("distance\t5.1\n")


def test_external_engine_without_command(capsys, monkeypatch):
    monkeypatch.delenv("FFDIST_SOLVER_CMD", raising=False)
    code, _, err = run(capsys, "distance", *TOY, "--engine", "external")
    assert code == 1 and "error:" in err


def test_both_genomes_in_one_file(capsys, tmp_path):
    both = tmp_path / "both.gen"
    both.write_text((DATA / "toy_A.gen").read_text() + (DATA / "toy_B.gen").read_text())
    code, out, _ = run(capsys, "distance", "-a", str(both), "-s", str(DATA / "toy.tsv"), "-x", "0.1")
    assert code == 0 and out.startswith("distance\t5.1\n")


@pytest.mark.parametrize(
    "argv",
    [
        ["distance"],
        ["distance", *TOY[:-1], "1.5"],
        ["distance", *TOY, "--engine", "magic"],
        ["frobnicate"],
        ["simulate", "--seed", "x", "-o", "d"],
    ],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2
    assert "usage:" in capsys.readouterr().err


def test_computation_errors(capsys, tmp_path):
    code, _, err = run(capsys, "distance", "-a", str(tmp_path / "missing.gen"), "-b", "x", "-s", "y")
    assert code == 1 and "cannot read" in err
    bad = tmp_path / "bad.tsv"
    bad.write_text("1 99 0.5\n")
    code, _, err = run(capsys, "distance", *TOY[:4], "-s", str(bad))
    assert code == 1 and "line 1" in err
    code, _, err = run(capsys, "distance", *TOY, "--max-edges", "3")
    assert code == 1 and "limit" in err


def test_emit_lp(capsys, tmp_path):
    out_path = tmp_path / "m.lp"
    assert main(["emit-lp", *TOY, "-o", str(out_path)]) == 0
    text = out_path.read_text()
    assert text.startswith("\\ mode: weighted\n\\ objective constant: 1\n")
    code, out, _ = run(capsys, "emit-lp", *TOY, "--unweighted")
    assert code == 0 and "max1:" in out


def test_diagram_stats(capsys, tmp_path):
    dump = tmp_path / "dump.txt"
    code, out, _ = run(capsys, "diagram-stats", *TOY, "--dump", str(dump))
    assert code == 0
    rows = dict(line.split("\t", 1) for line in out.splitlines())
    assert rows["capped.vertices"] == "26"
    assert rows["ffr.edges.ext"] == "22"
    assert rows["p_star"] == "1"
    assert rows["optimum.distance"] == "5.1"
    assert dump.read_text().startswith("vertex 1 ")


def test_diagram_stats_large_instance(capsys):
    code, out, _ = run(capsys, "diagram-stats", *TOY, "--max-edges", "2")
    assert code == 0 and "optimum\tskipped" in out


def test_simulate_matrix_tree(capsys, tmp_path):
    sim = tmp_path / "sim"
    assert main(["simulate", "--seed", "7", "--markers", "6", "--dcj", "2", "--indels", "1", "-o", str(sim)]) == 0
    genomes = (sim / "genomes.gen").read_text()
    assert genomes.startswith(">A\n") and "\n>B\n" in genomes
    assert (sim / "A__B.tsv").exists()
    capsys.readouterr()

    phy = tmp_path / "m.phy"
    assert main(["matrix", "-g", str(sim / "genomes.gen"), "-s", str(sim), "-x", "0.3", "-o", str(phy)]) == 0
    lines = phy.read_text().splitlines()
    assert lines[0] == "2" and lines[1].startswith("A 0 ")

    nwk = tmp_path / "t.nwk"
    assert main(["tree", "-m", str(phy), "-o", str(nwk)]) == 0
    text = nwk.read_text().strip()
    assert text.startswith("(A:") and text.endswith(");") and text.count(",") == 1
    assert main(["tree", "-m", str(phy), "-outgroup", "A"]) == 0
    assert capsys.readouterr().out.startswith("(A:")


def test_matrix_missing_table(capsys, tmp_path):
    gen = tmp_path / "g.gen"
    gen.write_text(">P\n1 |\n>Q\n2 |\n")
    code, _, err = run(capsys, "matrix", "-g", str(gen), "-s", str(tmp_path))
    assert code == 1 and "P" in err and "Q" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ffdist", "distance", *TOY], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("distance\t5.1\n")
