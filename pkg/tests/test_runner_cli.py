from __future__ import annotations

import json

import pytest

from linlay.cli import main
from linlay.fileformats import layout_from_json, serialize_graph
from linlay.generators import complete_graph, cycle_graph, twin_gadget
from linlay.graphs import Graph
from linlay.layouts import LayoutKind, validate_layout
from linlay.runner import RequestError, SolveRequest, run

from naive import cycle_of


def write_graph(tmp_path, g, name="g.graph"):
    path = tmp_path / name
    path.write_text(serialize_graph(g))
    return str(path)


def test_request_invariants(c4):
    with pytest.raises(RequestError):
        SolveRequest(c4, "queue1", LayoutKind.STACK, 1)
    with pytest.raises(RequestError):
        SolveRequest(c4, "queue1", LayoutKind.QUEUE, 2)
    with pytest.raises(RequestError):
        SolveRequest(c4, "nope", LayoutKind.QUEUE, 1)


def test_run_oracle_found(c4):
    report = run(SolveRequest(c4, "oracle", LayoutKind.STACK, 1))
    assert report.verdict == "found" and report.exit_code == 0
    assert validate_layout(c4, report.layout).ok
    assert "solve" in report.timings_ms


def test_run_queue1_infeasible(k4):
    report = run(SolveRequest(k4, "queue1", LayoutKind.QUEUE, 1))
    assert report.verdict == "infeasible" and report.exit_code == 1


def test_run_cutset_zero_width(c4):
    report = run(SolveRequest(c4, "cutset", LayoutKind.STACK, 1, width=0))
    assert report.verdict == "infeasible" and report.exit_code == 1


def test_run_refusals():
    big = complete_graph(14)
    report = run(SolveRequest(big, "oracle", LayoutKind.STACK, 3))
    assert report.verdict == "refused" and report.exit_code == 2
    wide = twin_gadget(1, 1, 30)
    report2 = run(SolveRequest(wide, "queue1", LayoutKind.QUEUE, 1))
    assert report2.verdict == "refused"


def test_run_cutset_disconnected_components():
    g = Graph.build(
        ["a", "b", "c", "p", "q", "r"],
        [("a", "b"), ("b", "c"), ("p", "q"), ("q", "r")],
    )
    report = run(SolveRequest(g, "cutset", LayoutKind.QUEUE, 1, width=2))
    assert report.verdict == "found"
    assert validate_layout(g, report.layout).ok


def test_run_kernel_with_threshold():
    g = twin_gadget(1, 1, 8)
    report = run(
        SolveRequest(g, "kernel", LayoutKind.STACK, 1, threshold=5, oracle_guard=16)
    )
    assert report.verdict == "found"
    assert report.counters["vi"] == 2
    assert report.counters["kernel_vertices"] == 6
    assert validate_layout(g, report.layout).ok


def test_run_is_deterministic(c4):
    r1 = run(SolveRequest(c4, "cutset", LayoutKind.STACK, 2, width=2))
    r2 = run(SolveRequest(c4, "cutset", LayoutKind.STACK, 2, width=2, threads=4))
    assert r1.layout == r2.layout


def test_cli_gen_solve_validate_render(tmp_path, capsys):
    graph_path = str(tmp_path / "c6.graph")
    assert main(["gen", "cycle", "--param", "n=6", "--out", graph_path]) == 0
    layout_path = str(tmp_path / "c6.json")
    code = main(
        ["solve", graph_path, "--algo", "queue1", "--kind", "queue", "--pages", "1",
         "--out", layout_path,
         "--dump-branch", str(tmp_path / "branch.json")]
    )
    assert code == 0
    payload = json.loads((tmp_path / "branch.json").read_text())
    assert payload["labeling"]
    layout = layout_from_json((tmp_path / "c6.json").read_text())
    assert layout.kind is LayoutKind.QUEUE
    assert main(["validate", graph_path, layout_path]) == 0
    svg_path = str(tmp_path / "c6.svg")
    assert main(["render", layout_path, "--out", svg_path]) == 0
    assert (tmp_path / "c6.svg").read_text().startswith("<svg")
    capsys.readouterr()


def test_cli_exit_codes(tmp_path, capsys):
    k4_path = write_graph(tmp_path, complete_graph(4), "k4.graph")
    assert main(["solve", k4_path, "--algo", "queue1", "--kind", "queue", "--pages", "1"]) == 1
    assert main(["oracle", k4_path, "--kind", "queue", "--pages", "1"]) == 1
    big = write_graph(tmp_path, complete_graph(14), "k14.graph")
    assert main(["oracle", big, "--kind", "stack", "--pages", "3"]) == 2
    bad = tmp_path / "bad.graph"
    bad.write_text("nope\n")
    assert main(["vi", str(bad)]) == 3
    capsys.readouterr()


def test_cli_vi_and_kernelize(tmp_path, capsys):
    g = twin_gadget(1, 1, 8)
    path = write_graph(tmp_path, g)
    assert main(["vi", path]) == 0
    out = capsys.readouterr().out
    assert "vi = 2" in out
    assert main(["vi", path, "--budget", "1"]) == 1
    capsys.readouterr()
    cert_path = str(tmp_path / "cert.json")
    kernel_path = str(tmp_path / "kernel.graph")
    assert main(
        ["kernelize", path, "--pages", "1", "--threshold", "5",
         "--out-graph", kernel_path, "--out-cert", cert_path]
    ) == 0
    cert = json.loads((tmp_path / "cert.json").read_text())
    assert cert["groups"] == 5 and cert["kernel_vertices"] == 6
    capsys.readouterr()


def test_cli_dump_states(tmp_path, capsys):
    path = write_graph(tmp_path, cycle_graph(4))
    dump = str(tmp_path / "states.txt")
    assert main(
        ["solve", path, "--algo", "cutset", "--kind", "stack", "--pages", "1",
         "--width", "2", "--dump-states", dump]
    ) == 0
    lines = (tmp_path / "states.txt").read_text().strip().splitlines()
    assert lines and all(line.count("|") == 2 for line in lines)
    capsys.readouterr()


def test_cli_bench_csv(tmp_path, capsys):
    p1 = write_graph(tmp_path, cycle_graph(4), "a.graph")
    p2 = write_graph(tmp_path, complete_graph(4), "b.graph")
    out = str(tmp_path / "bench.csv")
    assert main(
        ["bench", p1, p2, "--algo", "cutset", "--kind", "stack", "--pages", "1",
         "--width", "3", "--out", out]
    ) == 0
    rows = (tmp_path / "bench.csv").read_text().strip().splitlines()
    assert rows[0] == "instance,n,m,algo,params,verdict,millis,state_count"
    assert len(rows) == 3
    assert "found" in rows[1] and "infeasible" in rows[2]
    capsys.readouterr()


def test_cli_oracle_count(tmp_path, capsys):
    path = write_graph(tmp_path, cycle_of("a", "b", "c"))
    assert main(["oracle", path, "--kind", "queue", "--pages", "1", "--count"]) == 0
    assert capsys.readouterr().out.strip() == "6"
