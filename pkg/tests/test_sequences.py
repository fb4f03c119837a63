"""Sequence verifiers: every report passes on honest data and fails on broken data."""

import numpy as np
import pytest

from cohomoring import ValidationError
from cohomoring.catalog import (
    CatalogEntry,
    catalog_from_json,
    default_catalog,
    dihedral_extension,
    sweep,
)
from cohomoring.cohomology2 import compute_h2
from cohomoring.extension import (
    build_extension,
    extension_from_cocycle,
    extension_to_json,
)
from cohomoring.groups import (
    GroupHom,
    enumerate_actions,
    make_cyclic,
    make_direct_product,
    trivial_action,
)
from cohomoring.rings import check_ideal, quotient_ring, zn_ring
from cohomoring.verify import (
    verify_all,
    verify_aut_centralizer_sequence,
    verify_aut_five_term,
    verify_centralizer_sequence,
    verify_crossed_hom_sequence,
    verify_five_term,
    verify_qr_sequence,
)


def _c4_over_c2():
    c4 = make_cyclic(4)
    c2 = make_cyclic(2)
    i = GroupHom(c2, c4, [0, 2])
    p = GroupHom(c4, c2, [0, 1, 0, 1])
    return build_extension(i, p, name="C4 over 2C4")


def test_five_term_on_dihedral_node_sizes():
    rep = verify_five_term(dihedral_extension(3))
    assert rep.ok
    assert rep.nodes == [
        ("kernel-and-quotient-fixing endos", 3),
        ("quotient-identity endos", 9),
        ("equivariant kernel endos", 3),
        ("H2(Q,N)", 1),
        ("H2(G,N)", 3),
    ]
    statuses = {c.status for c in rep.checks}
    assert statuses == {"pass"}


def test_five_term_skip_marker():
    rep = verify_five_term(dihedral_extension(4), check_h2g=False)
    assert rep.ok
    assert rep.nodes[-1] == ("H2(G,N)", None)
    assert any(c.status == "skipped" for c in rep.checks)
    assert "not checked" in "\n".join(rep.lines())


def test_five_term_nonsplit_transgression_is_nontrivial():
    ext = _c4_over_c2()
    rep = verify_five_term(ext)
    assert rep.ok
    # H2(C2, C2, trivial) has two classes and the extension hits the nonzero one
    h2 = compute_h2(ext.q_group, ext.n_group, ext.action)
    assert h2.order == 2
    assert h2.reduce(ext.classifying_cocycle()) != h2.zero()
    # the kernel-restriction node keeps its kernel/image data on the report
    node_names = [n for n, _ in rep.nodes]
    assert node_names[1] == "quotient-identity endos"


def test_aut_five_term_on_dihedral():
    rep = verify_aut_five_term(dihedral_extension(6))
    assert rep.ok


def test_aut_five_term_on_nonsplit():
    rep = verify_aut_five_term(_c4_over_c2())
    assert rep.ok


def test_centralizer_sequences():
    for make in (lambda: dihedral_extension(4), _c4_over_c2):
        ext = make()
        assert verify_centralizer_sequence(ext).ok
        assert verify_aut_centralizer_sequence(ext).ok
        assert verify_crossed_hom_sequence(ext).ok


def test_verify_all_shares_instances():
    ext = dihedral_extension(5)
    reports = verify_all(ext)
    assert len(reports) == 5
    assert all(r.ok for r in reports)
    names = [r.sequence_name for r in reports]
    assert len(set(names)) == 5
    for r in reports:
        assert r.instance == "D5 over rotations"


def test_qr_sequence_on_mod12():
    ring = zn_ring(12)
    ideal = check_ideal(ring, [0, 6])
    quo, proj = quotient_ring(ring, ideal)
    rep = verify_qr_sequence(ring, ideal, proj, instance="Z12 mod its 6-torsion")
    assert rep.ok
    assert rep.instance == "Z12 mod its 6-torsion"


def test_qr_sequence_rejects_non_ideal_data():
    ring = zn_ring(12)
    ideal = check_ideal(ring, [0, 6])
    quo, proj = quotient_ring(ring, ideal)
    # feeding the wrong ideal produces a failing report, not a crash
    wrong = check_ideal(ring, [0, 4, 8])
    rep = verify_qr_sequence(ring, wrong, proj)
    assert not rep.ok


def test_report_line_format():
    rep = verify_five_term(dihedral_extension(3))
    lines = rep.lines()
    assert lines[0] == "sequence: five-term endomorphism ring sequence"
    assert lines[1] == "instance: D3 over rotations"
    assert lines[2].startswith("nodes: ")
    assert " -> " in lines[2]
    assert lines[-1] == "result: PASS"
    for line in lines[3:-1]:
        assert line.startswith("  [")


def test_report_json_shape():
    rep = verify_five_term(dihedral_extension(3), check_h2g=False)
    data = rep.to_json()
    assert set(data) == {"sequence", "instance", "nodes", "checks", "ok"}
    assert data["ok"] is True
    assert data["nodes"][-1] == ["H2(G,N)", None]
    for check in data["checks"]:
        assert set(check) == {"position", "kernel_size", "image_size",
                              "status", "detail", "witness"}


def test_default_catalog_composition():
    entries = default_catalog()
    assert len(entries) >= 12
    exts = [e.materialize() for e in entries]
    assert all(e.g_group.order <= 48 for e in exts)
    nonsplit = [e for e in exts if not e.is_split()]
    assert len(nonsplit) >= 2


def test_sweep_default_catalog_green():
    summary = sweep(default_catalog())
    assert summary["failed"] == 0
    assert summary["total"] == len(summary["entries"])
    for row in summary["entries"]:
        assert row["ok"]
        for rep in row["reports"]:
            assert rep["ok"]


def test_sweep_tolerates_broken_entry():
    data = extension_to_json(dihedral_extension(3))
    data["group"]["table"][1][2] = 0
    entries = [
        CatalogEntry("good", "extension", dihedral_extension(3)),
        CatalogEntry("broken", "extension", {"extension": data}),
    ]
    summary = sweep(entries)
    assert summary["total"] == 2
    assert summary["failed"] == 1
    rows = {row["name"]: row for row in summary["entries"]}
    assert rows["good"]["ok"]
    assert not rows["broken"]["ok"]
    assert "error" in rows["broken"]


def test_catalog_from_json_quadruple_form():
    c2 = make_cyclic(2)
    c4 = make_cyclic(4)
    action = enumerate_actions(c2, c4)[0]
    h2 = compute_h2(c2, c4, action)
    rep = dict(h2.classes())[(1,)]
    from cohomoring.groups import group_to_json

    doc = {
        "entries": [
            {
                "name": "C4 by C2 quadruple",
                "kind": "extension",
                "quadruple": {
                    "quotient_group": group_to_json(c2),
                    "kernel_group": group_to_json(c4),
                    "action": action.table.tolist(),
                    "cocycle": rep.values.tolist(),
                },
            }
        ]
    }
    entries = catalog_from_json(doc)
    assert len(entries) == 1
    ext = entries[0].materialize()
    assert ext.g_group.order == 8
    summary = sweep(entries)
    assert summary["failed"] == 0


def test_catalog_ring_entries():
    ring = zn_ring(12)
    from cohomoring.rings import ring_to_json

    doc = {
        "entries": [
            {"name": "mod-12 ring", "kind": "ring", "ring": ring_to_json(ring)},
            {"name": "mod-12 with 6-torsion ideal", "kind": "ring",
             "ring": ring_to_json(ring), "ideal": [0, 6]},
        ]
    }
    summary = sweep(catalog_from_json(doc))
    assert summary["failed"] == 0
    assert summary["total"] == 2


def test_sweep_flags_non_square_zero_ring_ideal():
    ring = zn_ring(12)
    from cohomoring.rings import ring_to_json

    doc = {"entries": [{"name": "bad ideal", "kind": "ring",
                        "ring": ring_to_json(ring), "ideal": [0, 4, 8]}]}
    summary = sweep(catalog_from_json(doc))
    assert summary["failed"] == 1


def test_five_term_exactness_across_action_classes():
    # run the ring five-term sequence over every (C2 or C3) on C6 class
    c6 = make_cyclic(6)
    for q_ord in (2, 3):
        q = make_cyclic(q_ord)
        for action in enumerate_actions(q, c6):
            h2 = compute_h2(q, c6, action)
            for coeffs, rep_coc in h2.classes():
                ext = extension_from_cocycle(rep_coc)
                rep = verify_five_term(ext)
                assert rep.ok, (q_ord, coeffs)
