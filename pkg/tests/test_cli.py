from __future__ import annotations

import pytest

from conftest import convex_k4
from geothick import formats
from geothick.cli import main
from geothick.drawing import Graph

STAR = Graph.from_edges([(0, i) for i in range(1, 21)])
HAS_Z3 = __import__("shutil").which("z3") is not None


@pytest.fixture
def files(tmp_path):
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def kv(out: str) -> dict[str, str]:
    return dict(line.split("=", 1) for line in out.splitlines() if "=" in line)


def test_validate(capsys, files):
    code, out, _ = run(capsys, "validate", files("ok.txt", formats.serialize_drawing(convex_k4((1, 2)))))
    assert (code, out) == (0, "VALID\n")
    code, out, _ = run(capsys, "validate", files("bad.txt", formats.serialize_drawing(convex_k4((1, 1)))))
    assert code == 1
    assert out.splitlines()[0] == "INVALID"
    assert kv(out) == {"crossings": "1", "crossing": "0-2,1-3,1"}


def test_min_layers(capsys, files, tmp_path):
    d = convex_k4((1, 2))
    g = files("g.txt", formats.serialize_graph(d.graph))
    pos = files("p.txt", formats.serialize_positions(d.gamma))
    code, out, _ = run(capsys, "min-layers", g, pos, "-o", str(tmp_path / "d.txt"))
    assert code == 0 and kv(out)["layers"] == "2"
    assert run(capsys, "validate", str(tmp_path / "d.txt"))[0] == 0


def test_vc_kernel_decide_lift(capsys, files, tmp_path):
    g = files("star.txt", formats.serialize_graph(STAR))
    k, t, d, full = (str(tmp_path / n) for n in ("k.txt", "t.txt", "d.txt", "full.txt"))
    code, out, _ = run(capsys, "kernel-vc", g, "--layers", "1", "-o", k, "--trace", t)
    assert code == 0 and kv(out)["kernel_vertices"] == "7" and kv(out)["threshold"] == "5"
    code, out, _ = run(capsys, "decide", k, "--layers", "1", "-o", d)
    assert code == 0 and out.startswith("SAT")
    code, out, _ = run(capsys, "lift", d, t, "--graph", g, "-o", full)
    assert code == 0 and kv(out)["lifted_vertices"] == "21"
    assert run(capsys, "validate", full)[0] == 0


def test_fen_kernel_and_lift(capsys, files, tmp_path):
    c6 = Graph.from_edges([(i, (i + 1) % 6) for i in range(6)])
    g = files("c6.txt", formats.serialize_graph(c6))
    k, t, full = (str(tmp_path / n) for n in ("k.txt", "t.txt", "full.txt"))
    code, out, _ = run(capsys, "kernel-fen", g, "--layers", "2", "-o", k, "--trace", t)
    assert code == 0 and kv(out)["kernel_vertices"] == "2" and kv(out)["removed_paths"] == "1"
    kernel = formats.parse_graph(open(k).read())
    u, v = kernel.sorted_vertices()
    d = files("d.txt", f"layers 2\n2 1\n{u} 0 0\n{v} 10 0\n{u} {v} 1\n")
    assert run(capsys, "lift", d, t, "--graph", g, "-o", full)[0] == 0
    assert run(capsys, "validate", full)[0] == 0


def toy_instance_text() -> str:
    from geothick.drawing import LayeredDrawing
    from geothick.gte import GteInstance

    d = convex_k4((1, 1))
    h = d.graph.remove_edges([(0, 2)])
    inst = GteInstance(d.graph, LayeredDrawing(h, d.gamma, {e: 1 for e in h.edges}, 1))
    return formats.serialize_instance(inst)


def test_solve_gte_edges(capsys, files):
    code, out, _ = run(capsys, "solve-gte-edges", files("toy.txt", toy_instance_text()))
    assert (code, out) == (1, "UNSAT\n")
    two = toy_instance_text().replace("layers 1", "layers 2")
    code, out, _ = run(capsys, "solve-gte-edges", files("toy2.txt", two))
    assert code == 0 and out.splitlines() == ["SAT", "color=0-2:2"]


def test_emit_and_solve_etr(capsys, files, tmp_path):
    script = str(tmp_path / "toy.smt2")
    code, out, _ = run(capsys, "emit-etr", files("toy.txt", toy_instance_text()), "-o", script)
    assert code == 0 and kv(out)["variables"] == "1"
    tri = files("tri.txt", formats.serialize_graph(Graph.from_edges([(0, 1), (1, 2), (0, 2)])))
    code, out, _ = run(capsys, "emit-etr", tri, "--layers", "1")
    assert code == 0 and out.count("declare-") == 9
    assert run(capsys, "emit-etr", tri)[0] == 64
    if HAS_Z3:
        code, out, _ = run(capsys, "solve-etr", script)
        assert (code, out) == (1, "UNSAT\n")


def test_generators(capsys, files, tmp_path):
    mcc = files("x.mcc", "k 3\npart 0\npart 1\npart 2\nedge 0 1\nedge 1 2\nedge 0 2\n")
    out_file = str(tmp_path / "w1.txt")
    code, out, _ = run(capsys, "gen-w1", mcc, "--verify", "60", "-o", out_file)
    info = kv(out)
    assert code == 0 and info["layers"] == "4" and info["expected"] == "SAT"
    assert info["missing_vertices"] == "3" and info["missing_edges"] == str(3 * 3 + 3)
    assert all(v == "pass" for k, v in info.items() if k.startswith("check_"))
    assert formats.parse_hardness(open(out_file).read()).expected == "SAT"
    cnf = files("f.cnf", "p cnf 3 1\n1 2 3 0\n")
    code, out, _ = run(capsys, "gen-np", cnf)
    assert code == 0 and kv(out)["layers"] == "7" and kv(out)["missing_vertices"] == "2"


def test_render(capsys, files, tmp_path):
    svg = tmp_path / "k4.svg"
    src = files("k4.txt", formats.serialize_drawing(convex_k4((1, 2))))
    assert run(capsys, "render", src, "-o", str(svg))[0] == 0
    assert svg.read_text().count("<line") == 6


def test_exit_codes(capsys, files):
    assert run(capsys)[0] == 64
    assert run(capsys, "frobnicate")[0] == 64
    assert run(capsys, "validate", "/nonexistent/file")[0] == 64
    code, _, err = run(capsys, "validate", files("loop.txt", "layers 1\n2 1\n0 0 0\n1 1 1\n0 0 1\n"))
    assert code == 65 and "line 5" in err
    assert run(capsys, "gen-np", files("bad.cnf", "p cnf 2 1\n1 1 2 0\n"))[0] == 65
    assert run(capsys, "kernel-fen", files("c.txt", "3 3\n0 1\n1 2\n0 2\n"), "--layers", "1")[0] == 64


def test_decide_unknown_without_solver(capsys, files):
    k8 = Graph.from_edges([(u, v) for u in range(8) for v in range(u + 1, 8)])
    g = files("k8.txt", formats.serialize_graph(k8))
    code, out, _ = run(capsys, "decide", g, "--layers", "2", "--budget-placement", "1", "--solver", "")
    assert (code, out) == (2, "UNKNOWN\nmethod=budget\n")
