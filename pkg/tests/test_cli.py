import json

import pytest

from torusmaps.cli import main
from torusmaps.maps import parse_map

from conftest import ONE_VERTEX_TRIANGULATION


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_count(capsys):
    assert run(capsys, "enumerate", "--faces", "all=3", "--vertices", "2",
               "--filter", "essential-girth=3") == (0, "10\n", "")


def test_enumerate_json_and_emit(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", "--faces", "all=4", "--vertices", "3", "--filter", "bipartite",
                       "--filter", "essential-girth=4", "--format", "json")
    assert code == 0 and json.loads(out) == {"count": 8}
    code, _, _ = run(capsys, "enumerate", "--faces", "all=3", "--vertices", "2", "--filter", "F=3",
                     "--rooting", "face", "--emit", str(tmp_path / "maps"))
    files = sorted((tmp_path / "maps").iterdir())
    assert code == 0 and len(files) == 3
    parse_map(files[0].read_text())


def test_enumerate_large_faces_needs_edge_bound(capsys):
    code, _, err = run(capsys, "enumerate", "--faces", "root=3,min=3", "--vertices", "1")
    assert code == 2 and "max-edges" in err
    code, out, _ = run(capsys, "enumerate", "--faces", "root=2,min=2", "--vertices", "1", "--max-edges", "5",
                       "--filter", "L=2", "--rooting", "face")
    assert (code, out) == (0, "6\n")


def test_orient_biject_roundtrip(capsys, tmp_path):
    src = tmp_path / "m.tor"
    src.write_text(ONE_VERTEX_TRIANGULATION)
    oriented = tmp_path / "o.tor"
    code, out, _ = run(capsys, "orient", "--input", str(src), "--d", "3", "--output", str(oriented))
    assert code == 0 and out.startswith("vertex weights: 3")
    m, w = parse_map(oriented.read_text())
    assert sorted(w) == [0, 0, 0, 1, 1, 1]
    mob = tmp_path / "mob.json"
    code, _, _ = run(capsys, "biject", "--forward", "--input", str(oriented), "--output", str(mob),
                     "--family", "U_bal", "--param", "3")
    assert code == 0
    code, out, _ = run(capsys, "biject", "--inverse", "--input", str(mob), "--d", "3")
    m2, w2 = parse_map(out)
    assert code == 0 and m2.canonical_code(lambda x: w2[x]) == m.canonical_code(lambda x: w[x])


def test_orient_to_stdout_is_parseable(capsys, tmp_path):
    src = tmp_path / "m.tor"
    src.write_text(ONE_VERTEX_TRIANGULATION)
    code, out, _ = run(capsys, "orient", "--input", str(src), "--d", "3")
    assert code == 0 and "# vertex weights: 3" in out
    assert parse_map(out)[1] is not None


def test_family_failure_exit_code(capsys, tmp_path):
    src = tmp_path / "o.tor"
    src.write_text(ONE_VERTEX_TRIANGULATION + "weights: 0=1 1=1 2=1 3=0 4=0 5=0\n")
    code, _, err = run(capsys, "biject", "--forward", "--input", str(src), "--family", "U_bal", "--param", "3")
    assert code == 3 and "error" in err


def test_orient_wrong_degree_is_domain_error(capsys, tmp_path):
    src = tmp_path / "m.tor"
    src.write_text(ONE_VERTEX_TRIANGULATION)
    assert run(capsys, "orient", "--input", str(src), "--d", "4")[0] == 3


@pytest.mark.parametrize("family, expected", [
    ("triangulation", "0\n1\n10\n97\n932\n"),
    ("quadrangulation", "0\n0\n1\n8\n59\n"),
    ("bip-quad-all", "0\n0\n1\n20\n307\n"),
    ("loopless-tri-all", "0\n1\n16\n232\n3264\n"),
    ("W3", "1\n3\n15\n91\n612\n"),
])
def test_series(capsys, family, expected):
    assert run(capsys, "series", "--family", family, "--order", "4") == (0, expected, "")


def test_series_mobile_route_and_json(capsys):
    code, out, _ = run(capsys, "series", "--family", "triangulation", "--order", "6", "--route", "mobile",
                       "--format", "json")
    assert code == 0 and json.loads(out)["coefficients"] == [0, 1, 10, 97, 932, 8916, 85090]


def test_series_bipartite_annulus_matches(capsys):
    w = run(capsys, "series", "--family", "W4", "--order", "6")[1]
    v = run(capsys, "series", "--family", "V2", "--order", "6")[1]
    assert w == v


def test_series_component_and_xdelta(capsys):
    code, out, _ = run(capsys, "series", "--family", "W3", "--order", "3", "--component", "0")
    assert code == 0 and out.split() == ["0", "1", "4", "22"]
    code, _, _ = run(capsys, "series", "--family", "W3", "--order", "3", "--component", "9")
    assert code == 2
    code, out, _ = run(capsys, "series", "--family", "V2", "--order", "3", "--xdelta", "6")
    assert code == 0 and len(out.split()) == 4


@pytest.mark.parametrize("argv", [
    ["bogus"], ["series", "--family", "nope", "--order", "3"], ["series", "--family", "W3"],
    ["series", "--family", "W3", "--order", "-1"], ["verify", "nosuch"],
    ["orient", "--input", "/nonexistent/file", "--d", "3"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "epsilon", "--d", "5", "--max-n", "2")
    assert code == 0 and out.strip().endswith("PASS epsilon")
    code, out, _ = run(capsys, "verify", "roundtrip", "--d", "4", "--bipartite", "--max-n", "3")
    assert code == 0
    code, out, _ = run(capsys, "verify", "counting", "--d", "3", "--max-n", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["reports"][0]["cases"]


def test_render(capsys, tmp_path):
    src = tmp_path / "m.tor"
    src.write_text(ONE_VERTEX_TRIANGULATION)
    out1, out2 = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run(capsys, "render", "--input", str(src), "--output", str(out1))[0] == 0
    assert run(capsys, "render", "--input", str(src), "--output", str(out2))[0] == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert out1.read_text().startswith("<svg")
