import json

import pytest

from graphfp import NoncrossingPartition, expr_from_document, load_graph
from graphfp.cli import main
import graphfp.nc as nc_module
from graphfp.verify import run_checks


G1_DOC = {"vertices": ["v"], "edges": [{"id": "l", "src": "v", "rng": "v"}]}
G2_DOC = {"vertices": ["v1", "v2"],
          "edges": [{"id": "e", "src": "v1", "rng": "v2"}]}
SEMICIRC_DOC = {"terms": [
    {"path": "l", "star": False, "re": "1", "im": "0"},
    {"path": "l", "star": True, "re": "1", "im": "0"}]}
EDGE_DOC = {"terms": [
    {"path": "e", "star": False, "re": "1", "im": "0"},
    {"path": "e", "star": True, "re": "1", "im": "0"},
    {"path": "v1", "star": False, "re": "1", "im": "0"}]}


@pytest.fixture()
def files(tmp_path):
    paths = {}
    for name, doc in [("g1", G1_DOC), ("g2", G2_DOC),
                      ("semicirc", SEMICIRC_DOC), ("edge_elt", EDGE_DOC)]:
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(doc))
        paths[name] = str(p)
    return paths


def test_cumulants_golden_tables(files, capsys):
    assert main(["cumulants", "-g", files["g1"], "-a", files["semicirc"],
                 "--model", "toeplitz", "-n", "4"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[1:] == ["n=1  0", "n=2  1 L[v]", "n=3  0",
                                    "n=4  0"]
    assert main(["cumulants", "-g", files["g1"], "-a", files["semicirc"],
                 "--model", "ck", "-n", "4"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[1:] == ["n=1  0", "n=2  2 L[v]", "n=3  0",
                                    "n=4  -2 L[v]"]


def test_moments_json_round_trip(files, capsys):
    assert main(["moments", "-g", files["g1"], "-a", files["semicirc"],
                 "--model", "ck", "-n", "4", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    values = {row["n"]: row["value"] for row in payload[0]["values"]}
    assert values[2] == {"v": {"re": "2", "im": "0"}}
    assert values[4] == {"v": {"re": "6", "im": "0"}}
    assert values[1] == {}


def test_missing_file_exit_code(files, capsys):
    assert main(["moments", "-g", "no-such-file.json",
                 "-a", files["semicirc"]]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_bad_order_exit_code(files, capsys):
    assert main(["moments", "-g", files["g1"], "-a", files["semicirc"],
                 "-n", "40"]) == 2
    assert "error" in capsys.readouterr().err


def test_compress_offdiag_round_trip(files, capsys):
    assert main(["compress", "offdiag", "-g", files["g2"],
                 "-a", files["edge_elt"], "-V", "v1", "-V", "v2",
                 "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    graph = load_graph(G2_DOC)
    expr = expr_from_document(graph, doc)
    assert doc == {"terms": [
        {"path": "e", "star": False, "re": "1", "im": "0"}]}
    # round trip through the parser and printer
    from graphfp import expr_to_document
    assert expr_from_document(graph, expr_to_document(expr)) == expr


def test_compress_proj_split_output(files, capsys):
    assert main(["compress", "proj", "-g", files["g2"],
                 "-a", files["edge_elt"], "-V", "v1", "-V", "v2",
                 "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    graph = load_graph(G2_DOC)
    full = expr_from_document(graph, doc["element"])
    diag = expr_from_document(graph, doc["diag"])
    off = expr_from_document(graph, doc["offdiag"])
    assert full == diag + off
    assert not off.is_zero
    # a singleton set has no off-diagonal part
    assert main(["compress", "proj", "-g", files["g2"],
                 "-a", files["edge_elt"], "-V", "v1",
                 "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["offdiag"] == {"terms": []}


def test_compress_argument_validation(files, capsys):
    assert main(["compress", "offdiag", "-g", files["g2"],
                 "-a", files["edge_elt"], "-V", "v1"]) == 2
    capsys.readouterr()
    assert main(["compress", "diag", "-g", files["g2"],
                 "-a", files["edge_elt"], "-V", "nope"]) == 2
    assert "nope" in capsys.readouterr().err


def test_verify_passes_on_user_graph(files, capsys):
    assert main(["verify", "-g", files["g2"], "--model", "both",
                 "-n", "3", "--depth", "3"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "model divergence" in out


def test_verify_negative_control(monkeypatch, capsys):
    # corrupt the fast Moebius route: the self-check and the inversion
    # round trip must both notice
    real = nc_module.moebius_to_top

    def corrupted(pi: NoncrossingPartition) -> int:
        value = real(pi)
        if pi.n == 2 and pi.block_count == 2:
            return value + 1
        return value

    monkeypatch.setattr(nc_module, "moebius_to_top", corrupted)
    import graphfp.cumulants as cum
    cum.clear_caches()
    try:
        results = run_checks(models=[nc_module and __import__(
            "graphfp.words", fromlist=["Model"]).Model.CK])
        failed = [r.name for r in results if not r.passed and not r.info]
        assert "moebius table" in failed
        assert "moment-cumulant inversion" in failed
    finally:
        cum.clear_caches()


def test_verify_cli_exit_one_on_failure(monkeypatch, capsys, tmp_path):
    real = nc_module.moebius_to_top
    monkeypatch.setattr(nc_module, "moebius_to_top",
                        lambda pi: real(pi) + (pi.n == 3))
    import graphfp.cumulants as cum
    cum.clear_caches()
    try:
        assert main(["verify"]) == 1
        assert "FAIL" in capsys.readouterr().out
    finally:
        cum.clear_caches()
