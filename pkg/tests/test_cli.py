import json
import shutil
import subprocess

import networkx as nx
import pytest

from conftest import FIXTURES
from generators import from_nx
from nsdw import Graph, to_graph6
from nsdw.cli import main


def write_g6(tmp_path, name, *graphs):
    path = tmp_path / name
    path.write_text("".join(to_graph6(g) + "\n" for g in graphs))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    doc = json.loads(out.out) if out.out.startswith("{") else None
    return code, doc, out


FAN = Graph(6, [(0, i) for i in range(1, 6)] + [(i, i + 1) for i in range(1, 5)])


class TestWeight:
    def test_forest_on_tree(self, tmp_path, capsys):
        tree = from_nx(nx.random_labeled_tree(9, seed=4))
        path = write_g6(tmp_path, "t.g6", tree)
        code, doc, _ = run(capsys, "weight", "--input", path, "--format", "graph6", "--alg", "forest",
                           "--k", str(tree.m))
        assert code == 0 and doc["schema"] == 1
        rec = doc["records"][0]
        assert rec["outcome"] == "valid" and rec["id"] == "t.g6:1"
        assert sorted(w for _, _, w in rec["weights"]) == list(range(1, tree.m + 1))

    def test_mad3_refuses_k5(self, tmp_path, capsys):
        path = write_g6(tmp_path, "k5.g6", from_nx(nx.complete_graph(5)))
        code, doc, _ = run(capsys, "weight", "--input", path, "--alg", "mad3", "--k", "16")
        rec = doc["records"][0]
        assert code == 1 and rec["outcome"] == "error" and "mad 4 > 3" in rec["error"]
        assert "weights" not in rec

    def test_auto_routes_two_degenerate(self, tmp_path, capsys):
        path = write_g6(tmp_path, "fan.g6", FAN)
        code, doc, _ = run(capsys, "weight", "--input", path, "--alg", "auto", "--k", str(FAN.m + 4),
                           "--trace")
        rec = doc["records"][0]
        assert code == 0 and rec["route"] == "two-degenerate" and rec["trace"]

    def test_weights_file_and_edgelist(self, tmp_path, capsys):
        (tmp_path / "c5.txt").write_text("5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n")
        (tmp_path / "w.txt").write_text("# odd weights\n1\n3\n5\n7\n9\n")
        code, doc, _ = run(capsys, "weight", "--input", str(tmp_path / "c5.txt"), "--format", "edgelist",
                           "--alg", "delta2", "--weights", str(tmp_path / "w.txt"))
        assert code == 0
        assert sorted(w for _, _, w in doc["records"][0]["weights"]) == [1, 3, 5, 7, 9]

    def test_text_output(self, tmp_path, capsys):
        path = write_g6(tmp_path, "c3.g6", from_nx(nx.cycle_graph(3)))
        code, _, out = run(capsys, "weight", "--input", path, "--alg", "two-m", "--k", "6",
                           "--output", "text")
        assert code == 0 and "c3.g6:1: valid [two-m]" in out.out and "summary:" in out.out

    def test_usage_errors(self, tmp_path, capsys):
        path = write_g6(tmp_path, "c3.g6", from_nx(nx.cycle_graph(3)))
        assert run(capsys, "weight", "--input", path)[0] == 1
        assert run(capsys, "weight", "--input", path, "--k", "3", "--alg", "nope")[0] == 1
        assert run(capsys, "weight", "--input", str(tmp_path / "missing"), "--k", "3")[0] == 1
        (tmp_path / "bad.g6").write_text("B~~~\n")
        code, _, out = run(capsys, "weight", "--input", str(tmp_path / "bad.g6"), "--k", "3")
        assert code == 1 and "nsdw:" in out.err


class TestChi:
    def test_trees_and_c4(self, tmp_path, capsys):
        trees = [from_nx(nx.random_labeled_tree(n, seed=n)) for n in range(3, 9)]
        path = write_g6(tmp_path, "trees.g6", *trees, from_nx(nx.cycle_graph(4)))
        code, doc, _ = run(capsys, "chi", "--input", path)
        assert code == 0
        assert [r["chi"] for r in doc["records"]] == [t.m for t in trees] + [4]
        assert "elapsed" not in doc["records"][0]

    def test_pathological_times_out(self, capsys):
        code, doc, _ = run(capsys, "chi", "--input", str(FIXTURES / "pathological_m14.g6"),
                           "--timeout-ms", "10")
        rec = doc["records"][0]
        assert code == 2 and rec["outcome"] == "inconclusive" and rec["lower_bound"] == 14

    def test_timeout_env_default(self, capsys, monkeypatch):
        monkeypatch.setenv("NSDW_TIMEOUT_MS", "10")
        code, _, _ = run(capsys, "chi", "--input", str(FIXTURES / "pathological_m14.g6"))
        assert code == 2
        monkeypatch.setenv("NSDW_TIMEOUT_MS", "soon")
        assert run(capsys, "chi", "--input", str(FIXTURES / "pathological_m14.g6"))[0] == 1

    def test_timings_flag(self, tmp_path, capsys):
        path = write_g6(tmp_path, "c4.g6", from_nx(nx.cycle_graph(4)))
        _, doc, _ = run(capsys, "chi", "--input", path, "--timings")
        assert "elapsed" in doc["records"][0]


class TestVerify:
    @pytest.fixture
    def files(self, tmp_path):
        def make(graph, text):
            (tmp_path / "w.txt").write_text(text)
            return ["verify", "--graph", write_g6(tmp_path, "g.g6", graph), "--weighting",
                    str(tmp_path / "w.txt")]
        return make

    def test_c3_valid(self, files, capsys):
        argv = files(from_nx(nx.cycle_graph(3)), "0 1 1\n0 2 2\n1 2 3\n")
        code, doc, _ = run(capsys, *argv, "--weights-must-be", "1..m")
        assert code == 0 and doc["records"][0]["sigma"] == [3, 4, 5]

    def test_p3_equal_weights(self, files, capsys):
        code, doc, _ = run(capsys, *files(from_nx(nx.path_graph(3)), "0 1 2\n1 2 2\n"))
        assert code == 1 and "edge-injectivity failure" in doc["records"][0]["error"]

    def test_zero_weight(self, files, capsys):
        code, doc, _ = run(capsys, *files(from_nx(nx.path_graph(4)), "0 1 0\n1 2 5\n2 3 9\n"))
        rec = doc["records"][0]
        assert code == 1 and "range failure" in rec["error"] and rec["report"]["nsd"]

    def test_outside_1_to_m(self, files, capsys):
        argv = files(from_nx(nx.path_graph(3)), "0 1 1\n1 2 7\n")
        assert run(capsys, *argv)[0] == 0
        assert run(capsys, *argv, "--weights-must-be", "1..m")[0] == 1

    def test_missing_edges_are_named(self, files, capsys):
        code, doc, _ = run(capsys, *files(from_nx(nx.cycle_graph(4)), "0 1 1\n1 2 2\n"))
        err = doc["records"][0]["error"]
        assert code == 1 and "missing" in err and "(2, 3)" in err and "(0, 3)" in err


class TestBatch:
    N5 = str(FIXTURES / "connected_n5.g6")

    def test_conjecture_on_n5(self, capsys):
        code, doc, _ = run(capsys, "batch", "--input", self.N5, "--check", "conjecture")
        assert code == 0
        assert doc["summary"]["valid"] == 21 and doc["summary"]["violations"] == []
        for rec in doc["records"]:
            assert sorted(w for _, _, w in rec["weights"]) == list(range(1, rec["m"] + 1))

    def test_two_m_on_n5(self, capsys):
        code, doc, _ = run(capsys, "batch", "--input", self.N5, "--check", "alg:two-m")
        assert code == 0 and doc["summary"]["valid"] == 21
        assert all(w <= 2 * r["m"] for r in doc["records"] for _, _, w in r["weights"])

    def test_skip_non_nice(self, tmp_path, capsys):
        path = write_g6(tmp_path, "mix.g6", Graph(2, [(0, 1)]), from_nx(nx.cycle_graph(3)),
                        from_nx(nx.path_graph(4)))
        code, doc, _ = run(capsys, "batch", "--input", path, "--check", "conjecture", "--skip-non-nice")
        assert code == 0 and doc["summary"]["skipped"] == 1 and doc["summary"]["valid"] == 2
        assert [r["id"] for r in doc["records"]] == ["mix.g6:2", "mix.g6:3"]
        code, doc, _ = run(capsys, "batch", "--input", path, "--check", "conjecture")
        assert code == 1 and doc["records"][0]["outcome"] == "error"

    def test_antimagic_check(self, tmp_path, capsys):
        path = write_g6(tmp_path, "am.g6", from_nx(nx.wheel_graph(5)), from_nx(nx.path_graph(5)))
        code, doc, _ = run(capsys, "batch", "--input", path, "--check", "antimagic")
        assert code == 0 and doc["summary"]["valid"] == 2

    def test_unreadable_lines_are_recorded_and_skipped(self, tmp_path, capsys):
        path = tmp_path / "bad.g6"
        path.write_text("Bw\nnot graph6 at all!\n\nCF\n")
        code, doc, _ = run(capsys, "batch", "--input", str(path), "--check", "conjecture")
        assert code == 0
        assert [r["id"] for r in doc["records"]] == ["bad.g6:1", "bad.g6:2", "bad.g6:4"]
        assert doc["records"][1]["unreadable"]

    def test_inconclusive_exit_code(self, capsys):
        code, doc, _ = run(capsys, "batch", "--input", str(FIXTURES / "pathological_m14.g6"),
                           "--check", "conjecture", "--timeout-ms", "10")
        assert code == 2 and doc["summary"]["inconclusive"] == 1

    def test_jobs_preserve_order_and_content(self, capsys):
        argv = ["batch", "--input", str(FIXTURES / "connected_n6.g6"), "--check", "conjecture"]
        _, one, _ = run(capsys, *argv)
        _, two, _ = run(capsys, *argv, "--jobs", "2")
        for doc in (one, two):
            doc["command"]["args"].pop("jobs")
        assert one == two

    def test_byte_stable(self, capsys):
        argv = ["batch", "--input", self.N5, "--check", "alg:auto"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        assert capsys.readouterr().out == first

    def test_bad_check_name(self, capsys):
        assert run(capsys, "batch", "--input", self.N5, "--check", "alg:nope")[0] == 1


def test_violation_exit_code(monkeypatch, tmp_path, capsys):
    """A graph with no {1..m} weighting gives exit 3 and names the graph6 string."""
    from nsdw import solver

    class Nothing:
        status, weighting, nodes = "none", None, 0

    monkeypatch.setattr(solver, "search", lambda *a, **k: Nothing)
    path = write_g6(tmp_path, "c3.g6", from_nx(nx.cycle_graph(3)))
    code, doc, out = run(capsys, "batch", "--input", path, "--check", "conjecture")
    assert code == 3 and doc["summary"]["violations"] == ["Bw"] and "Bw" in out.err


@pytest.mark.skipif(shutil.which("nsdw") is None, reason="console script not installed")
def test_console_script(tmp_path):
    path = write_g6(tmp_path, "c3.g6", from_nx(nx.cycle_graph(3)))
    proc = subprocess.run(["nsdw", "chi", "--input", path], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["records"][0]["chi"] == 3
