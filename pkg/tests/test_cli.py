"""End-to-end tests of the command-line interface: file formats round-trip
byte-identically, reports are valid JSON with the versioned schema, and exit
codes follow the 0/1/2/3 contract."""

import itertools
import json

import numpy as np
import pytest

from drglines.cli import (
    load_graph,
    load_lines,
    main,
    parse_mem_cap,
    save_graph,
    save_lines,
)
from drglines.graphcore import Graph, build_grassmann_graph
from drglines.plspace import grassmann_line_oracle


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    report = json.loads(out.out) if out.out.strip().startswith("{") else None
    return code, report, out.err


class TestMemCap:
    def test_units(self):
        assert parse_mem_cap("16G") == 16 * 1024**3
        assert parse_mem_cap("512M") == 512 * 1024**2
        assert parse_mem_cap("64k") == 64 * 1024
        assert parse_mem_cap("1000") == 1000

    def test_rejects_junk(self):
        with pytest.raises(ValueError):
            parse_mem_cap("lots")
        with pytest.raises(ValueError):
            parse_mem_cap("-4G")


class TestGraphFiles:
    def test_text_round_trip_labeled(self, tmp_path):
        g = build_grassmann_graph(4, 2, 2)
        p = tmp_path / "g.drg"
        save_graph(g, str(p))
        h = load_graph(str(p))
        assert h.vertex_count == g.vertex_count
        assert h.same_edges(g)
        assert h.labels is not None
        assert (h.labels.keys == g.labels.keys).all()
        assert (h.labels.n, h.labels.D, h.labels.q) == (4, 2, 2)
        p2 = tmp_path / "g2.drg"
        save_graph(h, str(p2))
        assert p.read_bytes() == p2.read_bytes()

    def test_text_round_trip_unlabeled(self, tmp_path):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2)])  # vertex 3 isolated
        p = tmp_path / "g.drg"
        save_graph(g, str(p))
        h = load_graph(str(p))
        assert h.labels is None
        assert h.same_edges(g)
        assert h.degree(3) == 0

    def test_binary_round_trip(self, tmp_path):
        g = build_grassmann_graph(4, 2, 2)
        p = tmp_path / "g.drgb"
        save_graph(g, str(p))
        h = load_graph(str(p))
        assert h.same_edges(g)
        assert h.labels is None  # binary format carries no label block
        p2 = tmp_path / "g2.drgb"
        save_graph(h, str(p2))
        assert p.read_bytes() == p2.read_bytes()

    def test_binary_header_is_text(self, tmp_path):
        g = Graph.from_edges(3, [(0, 1)])
        p = tmp_path / "g.drgb"
        save_graph(g, str(p))
        assert p.read_bytes().startswith(b"drgraphbin 1 3 1\n")

    def test_rejects_garbage(self, tmp_path):
        p = tmp_path / "bad.drg"
        p.write_text("not a graph\n")
        with pytest.raises(ValueError, match="not a graph file"):
            load_graph(str(p))

    def test_rejects_wrong_edge_count(self, tmp_path):
        p = tmp_path / "bad.drg"
        p.write_text("drgraph 1 2 5\n1\n0\n")
        with pytest.raises(ValueError, match="header claims"):
            load_graph(str(p))

    def test_rejects_truncated_binary(self, tmp_path):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        p = tmp_path / "g.drgb"
        save_graph(g, str(p))
        p.write_bytes(p.read_bytes()[:-4])
        with pytest.raises(ValueError, match="wrong length"):
            load_graph(str(p))


class TestLineFiles:
    def test_round_trip(self, tmp_path):
        lines = ((0, 1, 2), (2, 3, 4), (0, 5))
        p = tmp_path / "l.lines"
        save_lines(lines, str(p))
        assert load_lines(str(p)) == lines
        p2 = tmp_path / "l2.lines"
        save_lines(load_lines(str(p)), str(p2))
        assert p.read_bytes() == p2.read_bytes()

    def test_header(self, tmp_path):
        p = tmp_path / "l.lines"
        save_lines(((0, 1),), str(p))
        assert p.read_text().startswith("lines 1 1\n")

    def test_rejects_garbage(self, tmp_path):
        p = tmp_path / "x.lines"
        p.write_text("nope\n")
        with pytest.raises(ValueError, match="not a line-set"):
            load_lines(str(p))


class TestParamsCmd:
    def test_932(self, capsys):
        code, rep, _ = run(capsys, "params", "9", "3", "2")
        assert code == 0
        assert rep["schema"] == 1
        assert rep["tool"] == "drg-lines"
        assert rep["c2"] == 9
        assert rep["metsch_case"] == "N2DPlus3_q2"
        assert rep["tridiagonal_verified"] is True
        assert rep["intersection_array"]["b"] == [882, 744, 480]
        assert rep["intersection_array"]["c"] == [1, 9, 49]
        assert len(rep["spectrum"]) == 4
        assert rep["config"]["seed"] == 42

    def test_632_case(self, capsys):
        code, rep, _ = run(capsys, "params", "6", "3", "2")
        assert code == 0
        assert rep["metsch_case"] == "N2D"
        assert rep["c2"] == 9

    def test_n_too_small(self, capsys):
        code, rep, err = run(capsys, "params", "5", "3", "2")
        assert code == 1
        assert rep is None
        assert "error" in err

    def test_non_prime_field(self, capsys):
        code, _, err = run(capsys, "params", "8", "2", "4")
        assert code == 1


class TestGenCmd:
    def test_small(self, capsys, tmp_path):
        out = tmp_path / "g.drg"
        code, rep, _ = run(capsys, "gen", "4", "2", "2", str(out))
        assert code == 0
        assert rep["vertices"] == 35 and rep["edges"] == 315
        assert load_graph(str(out)).vertex_count == 35

    def test_k3(self, capsys, tmp_path):
        out = tmp_path / "g.drg"
        code, rep, _ = run(capsys, "gen", "2", "1", "2", str(out))
        assert code == 0
        assert rep["vertices"] == 3 and rep["edges"] == 3

    def test_budget_exit(self, capsys, tmp_path):
        out = tmp_path / "g.drg"
        code, rep, err = run(
            capsys, "gen", "7", "3", "2", str(out), "--mem-cap", "1M"
        )
        assert code == 2
        assert "budget" in err.lower()
        assert not out.exists()


class TestAuditCmd:
    def test_drg_passes(self, capsys, tmp_path):
        p = tmp_path / "g.drg"
        save_graph(build_grassmann_graph(4, 2, 2), str(p))
        code, rep, _ = run(capsys, "audit", str(p))
        assert code == 0
        assert rep["is_drg"] is True
        assert rep["intersection_array"] == {"b": [18, 8], "c": [1, 9]}
        assert rep["audit_mode"] == "full"

    def test_non_drg_fails(self, capsys, tmp_path):
        p = tmp_path / "g.drg"
        save_graph(Graph.from_edges(3, [(0, 1), (1, 2)]), str(p))
        code, rep, _ = run(capsys, "audit", str(p))
        assert code == 3
        assert rep["is_drg"] is False
        assert rep["counterexample"] is not None

    def test_sampled_mode(self, capsys, tmp_path):
        p = tmp_path / "g.drgb"
        save_graph(build_grassmann_graph(5, 2, 2), str(p))
        code, rep, _ = run(
            capsys, "audit", str(p), "--mode", "sampled", "--sample", "9", "--seed", "7"
        )
        assert code == 0
        assert rep["audit_mode"] == "sampled"
        assert rep["bases_checked"] == 9


class TestCheckMainCmd:
    def test_canonical(self, capsys):
        code, rep, _ = run(capsys, "check-main", "3", "3")
        assert code == 0
        assert rep["beta"] == 126
        assert rep["margins"] == {"cond3": 6, "cond4": 196, "cond5": 12}
        assert rep["passed"] is True
        assert rep["s"] == 10

    def test_big_d(self, capsys):
        code, rep, _ = run(capsys, "check-main", "10", "3")
        assert code == 0 and rep["passed"] is True

    def test_ell_too_small(self, capsys):
        code, rep, err = run(capsys, "check-main", "3", "2")
        assert code == 1
        assert "error" in err


class TestSearchSCmd:
    def test_window_932(self, capsys):
        code, rep, _ = run(capsys, "search-s", "9", "3", "2")
        assert code == 0
        assert rep["feasible_s"] == [9, 10]
        assert rep["empty"] is False
        assert (rep["m"], rep["n"], rep["e"]) == (6, 41, 8)

    def test_empty_832(self, capsys):
        code, rep, _ = run(capsys, "search-s", "8", "3", "2")
        assert code == 0
        assert rep["feasible_s"] == [] and rep["empty"] is True

    def test_empty_q3(self, capsys):
        code, rep, _ = run(capsys, "search-s", "8", "3", "3")
        assert code == 0
        assert rep["empty"] is True


class TestExtractCmd:
    def test_certified_extraction(self, capsys, tmp_path, g522):
        gp, lp = tmp_path / "g.drg", tmp_path / "g.lines"
        save_graph(g522, str(gp))
        code, rep, _ = run(capsys, "extract", str(gp), str(lp))
        assert code == 0
        assert rep["certified"] is True
        assert rep["line_count"] == 31
        assert rep["line_sizes"] == {"15": 31}
        assert rep["lines_per_vertex"] == [3, 3]
        got = load_lines(str(lp))
        assert len(got) == 31

    def test_uncertified_exit_code_still_writes(self, capsys, tmp_path):
        g = build_grassmann_graph(4, 2, 2)  # n = 2D: the method must fail
        gp, lp = tmp_path / "g.drg", tmp_path / "g.lines"
        save_graph(g, str(gp))
        code, rep, _ = run(capsys, "extract", str(gp), str(lp))
        assert code == 3
        assert rep["certified"] is False
        assert lp.exists()

    def test_explicit_params_on_unlabeled_graph(self, capsys, tmp_path):
        g = Graph.from_edges(10, list(itertools.combinations(range(10), 2)))
        gp, lp = tmp_path / "k10.drg", tmp_path / "k10.lines"
        save_graph(g, str(gp))
        code, rep, _ = run(
            capsys, "extract", str(gp), str(lp), "--pls-params", "2,1,1,9,1,9,10"
        )
        assert code == 0
        assert rep["line_count"] == 1
        assert load_lines(str(lp)) == (tuple(range(10)),)

    def test_unlabeled_without_params_errors(self, capsys, tmp_path):
        g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        gp, lp = tmp_path / "g.drg", tmp_path / "g.lines"
        save_graph(g, str(gp))
        code, rep, err = run(capsys, "extract", str(gp), str(lp))
        assert code == 1
        assert "pls-params" in err


class TestVerifyRcsCmd:
    def test_oracle_lines_pass(self, capsys, tmp_path, g632):
        gp, lp = tmp_path / "g.drg", tmp_path / "g.lines"
        save_graph(g632, str(gp))
        save_lines(grassmann_line_oracle(6, 3, 2, g632.labels.keys), str(lp))
        code, rep, _ = run(capsys, "verify-rcs", str(lp), str(gp), "2")
        assert code == 0
        assert rep["rcs"]["passed"] is True
        assert rep["rcs"]["mode"] == "exhaustive"
        assert rep["point_graph_matches"] is True
        assert rep["oracle"]["available"] is True
        assert rep["oracle"]["equal"] is True

    def test_linearity_violation_exit(self, capsys, tmp_path):
        g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        gp, lp = tmp_path / "g.drg", tmp_path / "l.lines"
        save_graph(g, str(gp))
        save_lines(((0, 1, 2), (1, 2, 3)), str(lp))
        code, rep, err = run(capsys, "verify-rcs", str(lp), str(gp), "1")
        assert code == 3
        assert "partial linear" in err

    def test_failing_conditions_exit(self, capsys, tmp_path, g522):
        # D = 2: only q+1 lines per point, so condition (2) must fail
        gp, lp = tmp_path / "g.drg", tmp_path / "g.lines"
        save_graph(g522, str(gp))
        save_lines(grassmann_line_oracle(5, 2, 2, g522.labels.keys), str(lp))
        code, rep, _ = run(capsys, "verify-rcs", str(lp), str(gp), "2")
        assert code == 3
        assert rep["rcs"]["cond2_ok"] is False
        assert rep["oracle"]["equal"] is True


class TestParserPlumbing:
    def test_no_args_is_usage_error(self, capsys):
        assert main([]) == 1

    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 1

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "drg-lines" in capsys.readouterr().out

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "audit", str(tmp_path / "nope.drg"))
        assert code == 1

    def test_config_echo(self, capsys):
        code, rep, _ = run(capsys, "params", "7", "3", "2", "--seed", "5")
        assert rep["config"]["seed"] == 5
        assert "mem_cap" in rep["config"]
        assert "tol" in rep["config"]
        assert "threads" in rep["config"]
        assert rep["command"] == "params"
        assert isinstance(rep["timing_s"], float)