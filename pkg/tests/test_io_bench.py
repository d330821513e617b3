import csv
import io
import json

import pytest
from hypothesis import given, settings

from conftest import c4, connected_graphs
from lowstretch.bench import CSV_COLUMNS, BenchRecord, records_to_csv, run_instance, run_suite
from lowstretch.cli import main
from lowstretch.edgelist import EdgeListError, format_edge_list, format_tree_edges, parse_edge_list
from lowstretch.generators import generate, gnp_connected, grid, torus
from lowstretch.graph import GraphError


def test_cycle_and_small_grid_are_c4():
    assert generate("cycle", {"n": 4}) == c4()
    g = generate("grid", {"rows": 2, "cols": 2})
    assert g.n == 4 and g.m == 4 and sorted(len(a) for a in g.adj) == [2, 2, 2, 2]


def test_gnp_is_deterministic_and_connected():
    a = format_edge_list(gnp_connected(50, 0.2, seed=1))
    b = format_edge_list(gnp_connected(50, 0.2, seed=1))
    assert a == b and parse_edge_list(a).is_connected()


def test_gnp_gives_up_on_hopeless_p():
    with pytest.raises(GraphError):
        gnp_connected(40, 0.001, seed=0, max_tries=5)


def test_generator_shapes():
    assert grid(3, 5).m == 3 * 4 + 2 * 5
    assert torus(3, 4).m == 24
    assert generate("complete", {"n": 6}).m == 15
    assert generate("path", {"n": 5}).m == 4
    with pytest.raises(GraphError):
        generate("hypercube", {"n": 3})


def test_random_weights_log_uniform_range():
    g = generate("grid", {"rows": 10, "cols": 10, "max_length": 100.0}, seed=3)
    assert all(1.0 <= d <= 100.0 for d in g.lengths)
    assert generate("grid", {"rows": 10, "cols": 10, "max_length": 100.0}, seed=3) == g


@settings(max_examples=50, deadline=None)
@given(connected_graphs(max_n=30))
def test_edge_list_roundtrip_is_exact(g):
    assert parse_edge_list(format_edge_list(g, ["a comment"])) == g


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("3\n", 1),
        ("2 1\n0 1\n", 2),
        ("2 1\n# note\n0 x 1\n", 3),
        ("2 1\n0 2 1\n", 2),
        ("2 1\n0 1 -1\n", 2),
        ("2 2\n0 1 1\n", 2),
        ("2 1\n0 1 1\n1 0 1\n", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(EdgeListError) as exc:
        parse_edge_list(text)
    assert exc.value.lineno == line and str(exc.value).startswith(f"line {line}:")


def test_tree_edge_list_parses_back():
    g = c4()
    text = format_tree_edges(g, [0, 1, 3], 0)
    assert parse_edge_list(text).edges() == [g.edge(0), g.edge(1), g.edge(3)]


def test_cli_pipeline(tmp_path, capsys):
    graph = tmp_path / "c4.txt"
    tree = tmp_path / "tree.json"
    assert main(["gen", "cycle", "n=4", "-o", str(graph)]) == 0
    assert main(["tree", str(graph), "--algo", "improved", "--root", "0", "-o", str(tree)]) == 0
    data = json.loads(tree.read_text())
    assert data["edge_ids"] == [0, 1, 3] and data["root"] == 0
    assert main(["stretch", str(graph), str(tree)]) == 0
    assert json.loads(capsys.readouterr().out)["average"] == 1.5
    assert main(["stretch", str(graph), str(tree), "--akpw", "--format", "csv"]) == 0
    assert capsys.readouterr().out.startswith("edge_id,u,v")
    assert main(["decompose", str(graph), "--epsilon", "0.5", "--t", "2"]) == 0
    sd = json.loads(capsys.readouterr().out)
    assert sd["parts"] == [[0], [1, 2], [3]] and sd["index_mapping"] is not None
    assert main(["tree", str(graph), "--format", "edgelist"]) == 0
    assert parse_edge_list(capsys.readouterr().out).m == 3


def test_cli_reports_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1 1\n0 1 zero\n")
    assert main(["tree", str(bad)]) == 2
    assert "line 3" in capsys.readouterr().err
    split = tmp_path / "split.txt"
    split.write_text("3 1\n0 1 1\n")
    assert main(["tree", str(split)]) == 2
    assert "connected" in capsys.readouterr().err


def test_bench_record_recomputes_checks():
    rec = run_instance("grid", {"rows": 6, "cols": 6}, "improved")
    assert rec.ok
    lying = BenchRecord(**{**rec.__dict__, "tree_radius": rec.graph_radius * 10})
    assert not lying.radius_ok and not lying.ok


def test_bench_quick_suite_csv(capsys):
    records = run_suite("quick")
    assert all(r.ok for r in records)
    text = records_to_csv(records)
    rows = list(csv.DictReader(io.StringIO("\n".join(text.splitlines()[1:]))))
    assert tuple(rows[0]) == CSV_COLUMNS and len(rows) == len(records)
    assert all(r["radius_ok"] == "True" and r["stretch_ok"] == "True" for r in rows)
    assert main(["bench", "--suite", "quick"]) == 0
