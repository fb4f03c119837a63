"""Command line interface: verbs, exit codes, JSON output, determinism."""

import json

import pytest

from cohomoring.catalog import dihedral_extension
from cohomoring.cli import main
from cohomoring.extension import extension_to_json
from cohomoring.groups import group_to_json, make_cyclic
from cohomoring.rings import ring_to_json, zn_ring


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_group_cyclic(capsys):
    code, out, err = _run(capsys, "group", "--cyclic", "6")
    assert code == 0 and not err
    assert "order: 6" in out
    assert "abelian: yes" in out


def test_group_dihedral_profile(capsys):
    code, out, _ = _run(capsys, "group", "--dihedral", "6")
    assert code == 0
    assert "order: 12" in out
    assert "abelian: no" in out
    assert "element order histogram: 1:1 2:7 3:2 6:2" in out


def test_group_product(capsys):
    code, out, _ = _run(capsys, "group", "--product", "3,4")
    assert code == 0
    assert "order: 12" in out
    assert "exponent: 12" in out


def test_group_load_and_json(tmp_path, capsys):
    path = tmp_path / "group.json"
    path.write_text(json.dumps(group_to_json(make_cyclic(5))))
    code, out, _ = _run(capsys, "group", "--load", str(path), "--json")
    assert code == 0
    data = json.loads(out)
    assert data["group"]["order"] == 5
    assert data["abelian"] is True


def test_group_bad_product_spec(capsys):
    code, _, err = _run(capsys, "group", "--product", "3,x")
    assert code == 2
    assert "error:" in err


def test_extension_dihedral(capsys):
    code, out, _ = _run(capsys, "extension", "--dihedral", "4")
    assert code == 0
    assert "split: yes" in out
    assert "classifying class coefficients: (0,)" in out


def test_extension_load_nonsplit(tmp_path, capsys):
    from cohomoring.cohomology2 import compute_h2
    from cohomoring.extension import extension_from_cocycle
    from cohomoring.groups import trivial_action

    c2 = make_cyclic(2)
    c4 = make_cyclic(4)
    h2 = compute_h2(c2, c4, trivial_action(c2, c4))
    ext = extension_from_cocycle(dict(h2.classes())[(1,)], name="C8 style")
    path = tmp_path / "ext.json"
    path.write_text(json.dumps(extension_to_json(ext)))
    code, out, _ = _run(capsys, "extension", "--load", str(path))
    assert code == 0
    assert "split: no" in out
    assert "classifying class coefficients: (1,)" in out


def test_z1_quotient_layer(capsys):
    code, out, _ = _run(capsys, "z1", "--dihedral", "4")
    assert code == 0
    assert "count: 4" in out


def test_z1_group_layer_json(capsys):
    code, out, _ = _run(capsys, "z1", "--dihedral", "4", "--layer", "group", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 16
    assert data["layer"] == "group"
    assert len(data["values"]) == 16
    assert data["values_truncated"] is False


def test_h2_pair_mode(capsys):
    code, out, _ = _run(capsys, "h2", "--quotient-cyclic", "2",
                        "--kernel-cyclic", "4", "--action-index", "0")
    assert code == 0
    assert "invariant factors: (2,)" in out
    assert "order: 2" in out


def test_h2_action_index_out_of_range(capsys):
    code, _, err = _run(capsys, "h2", "--quotient-cyclic", "2",
                        "--kernel-cyclic", "4", "--action-index", "9")
    assert code == 2
    assert "out of range" in err


def test_h2_requires_a_source(capsys):
    code, _, err = _run(capsys, "h2", "--quotient-cyclic", "2")
    assert code == 2
    assert "error:" in err


def test_h2_methods_agree_via_cli(capsys):
    code_a, out_a, _ = _run(capsys, "h2", "--dihedral", "6", "--method", "linear", "--json")
    code_b, out_b, _ = _run(capsys, "h2", "--dihedral", "6", "--method", "bruteforce", "--json")
    assert code_a == code_b == 0
    a, b = json.loads(out_a), json.loads(out_b)
    assert a["invariant_factors"] == b["invariant_factors"]
    assert a["method"] == "linear" and b["method"] == "bruteforce"


def test_endo_profile(capsys):
    code, out, _ = _run(capsys, "endo", "--dihedral", "6")
    assert code == 0
    assert "quotient-identity endomorphisms (ring): 36" in out
    assert "square-zero ideal size: 6" in out
    assert "invertible members: 12" in out


def test_ring_zn(capsys):
    code, out, _ = _run(capsys, "ring", "--zn", "12")
    assert code == 0
    assert "quasi-regular members: 4" in out
    assert "units: 4" in out
    assert "quasi-regular indices: 0 4 6 10" in out


def test_ring_432(capsys):
    code, out, _ = _run(capsys, "ring", "--ring432")
    assert code == 0
    assert "order: 432" in out
    assert "unital: no" in out
    assert "quasi-regular members: 288" in out


def test_ring_load_json_tables(tmp_path, capsys):
    path = tmp_path / "ring.json"
    path.write_text(json.dumps(ring_to_json(zn_ring(6))))
    code, out, _ = _run(capsys, "ring", "--load", str(path), "--json")
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 6
    assert data["unital"] is True
    assert "ring" in data


def test_ring_432_json_omits_tables(capsys):
    code, out, _ = _run(capsys, "ring", "--ring432", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["ring_tables_omitted"] is True
    assert "ring" not in data


def test_verify_default_catalog(capsys):
    code, out, _ = _run(capsys, "verify")
    assert code == 0
    assert "failed: 0" in out
    assert "[FAIL]" not in out


def test_verify_skip_h2g_json(capsys):
    code, out, _ = _run(capsys, "verify", "--skip-h2g", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["failed"] == 0
    first = data["entries"][0]["reports"][0]
    assert first["nodes"][-1][1] is None


def test_verify_corrupted_catalog_exits_one(tmp_path, capsys):
    data = extension_to_json(dihedral_extension(3))
    data["group"]["table"][1][2] = 0
    doc = {"entries": [{"name": "broken D3", "kind": "extension", "extension": data}]}
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps(doc))
    code, out, _ = _run(capsys, "verify", "--catalog", str(path))
    assert code == 1
    assert "[FAIL] broken D3" in out
    assert "error:" in out


def test_verify_malformed_catalog_file(tmp_path, capsys):
    path = tmp_path / "catalog.json"
    path.write_text("{ not json")
    code, _, err = _run(capsys, "verify", "--catalog", str(path))
    assert code == 2
    assert "malformed JSON" in err


def test_examples_dihedral(capsys):
    code, out, _ = _run(capsys, "examples", "dihedral", "3")
    assert code == 0
    assert out.strip().endswith("result: PASS")
    assert "sum table, f(k,l) indexed:" in out


def test_examples_dihedral_rejects_out_of_range(capsys):
    code, _, err = _run(capsys, "examples", "dihedral", "2")
    assert code == 2
    assert "needs 3 <= n <= 64" in err


def test_examples_ring432_json(capsys):
    code, out, _ = _run(capsys, "examples", "ring432", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert data["name"] == "432-element even-pair ring"


def test_missing_file_exits_two(capsys):
    code, _, err = _run(capsys, "group", "--load", "/nonexistent/file.json")
    assert code == 2
    assert "error:" in err


def test_output_is_deterministic(capsys):
    for argv in (
        ["group", "--dihedral", "5", "--json"],
        ["extension", "--dihedral", "5", "--json"],
        ["z1", "--dihedral", "5", "--json"],
        ["h2", "--dihedral", "5", "--json"],
        ["endo", "--dihedral", "5", "--json"],
        ["ring", "--zn", "9", "--json"],
        ["examples", "dihedral", "5"],
    ):
        _, first, _ = _run(capsys, *argv)
        _, second, _ = _run(capsys, *argv)
        assert first == second, argv
