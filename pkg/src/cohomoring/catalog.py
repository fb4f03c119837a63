"""Instance catalog and the verification sweep.

The default catalog assembles the standing test family: the dihedral
extensions over their rotation subgroups, every extension of a small cyclic
kernel by a small cyclic quotient built from second-cohomology class
representatives across all actions, the rank-two elementary quotient family
over a two-element kernel, and a few direct products (including one with a
nonabelian quotient).  Catalogs can also be loaded from JSON, either as
explicit extensions, as (quotient, kernel, action, cocycle) quadruples, or as
raw rings with an optional square-zero ideal.

The sweep runs every sequence verifier on every entry, treating failures as
data: a broken entry produces a failed summary row with a witness, never an
exception.
"""

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .budgets import Budgets, current_budgets
from .cohomology2 import TwoCocycle, compute_h2
from .errors import BudgetExceeded, ValidationError
from .extension import (
    AbelianExtension,
    build_extension,
    extension_from_cocycle,
    extension_from_json,
)
from .groups import (
    GroupHom,
    enumerate_actions,
    group_from_json,
    make_cyclic,
    make_dihedral,
    make_direct_product,
    trivial_action,
)
from .rings import (
    FiniteRing,
    check_ideal,
    is_square_zero_ideal,
    quasi_regular_group,
    quotient_ring,
    ring_from_json,
)
from .verify import ExactnessReport, _jsonable, verify_all, verify_qr_sequence


@dataclass
class CatalogEntry:
    """One verification instance: a built object or raw data to build lazily."""

    name: str
    kind: str  # "extension" or "ring"
    data: object

    def materialize(self, budget: Optional[Budgets] = None):
        """Build the underlying object; raw JSON payloads are validated here."""
        if self.kind == "extension":
            if isinstance(self.data, AbelianExtension):
                return self.data
            payload = self.data
            if "extension" in payload:
                return extension_from_json(payload["extension"], budget=budget)
            if "quadruple" in payload:
                quad = payload["quadruple"]
                q_group = group_from_json(quad["quotient_group"])
                n_group = group_from_json(quad["kernel_group"])
                actions = enumerate_actions(q_group, n_group, budget=budget)
                table = np.asarray(quad["action"], dtype=np.int64)
                match = None
                for act in actions:
                    if (act.table == table).all():
                        match = act
                        break
                if match is None:
                    raise ValidationError("quadruple action is not an action")
                coc = TwoCocycle(q_group, n_group, match,
                                 np.asarray(quad["cocycle"], dtype=np.int64))
                return extension_from_cocycle(coc, name=self.name, budget=budget)
            raise ValidationError("extension entry needs 'extension' or 'quadruple'")
        if self.kind == "ring":
            if isinstance(self.data, tuple):
                return self.data
            payload = self.data
            ring = ring_from_json(payload["ring"], budget=budget)
            ideal = payload.get("ideal")
            return ring, ideal
        raise ValidationError(f"unknown catalog entry kind {self.kind!r}")


def dihedral_extension(n: int, budget: Optional[Budgets] = None) -> AbelianExtension:
    """The dihedral group of order 2n over its rotation subgroup."""
    d = make_dihedral(n)
    cn = make_cyclic(n, name=f"C{n}")
    c2 = make_cyclic(2, name="C2")
    i = GroupHom(cn, d, [2 * j for j in range(n)])
    p = GroupHom(d, c2, [j % 2 for j in range(2 * n)])
    return build_extension(i, p, name=f"D{n} over rotations", budget=budget)


def default_catalog(budget: Optional[Budgets] = None) -> List[CatalogEntry]:
    """The standing instance family used by the acceptance run."""
    budget = budget or current_budgets()
    entries: List[CatalogEntry] = []

    for n in range(3, 13):
        ext = dihedral_extension(n, budget=budget)
        entries.append(CatalogEntry(ext.name, "extension", ext))

    # Every extension of a small cyclic kernel by a small cyclic quotient,
    # one per cohomology class, across all actions.
    for n_ord in (2, 3, 4):
        for q_ord in (2, 3):
            n_group = make_cyclic(n_ord, name=f"C{n_ord}")
            q_group = make_cyclic(q_ord, name=f"C{q_ord}q")
            for ai, action in enumerate(enumerate_actions(q_group, n_group, budget=budget)):
                h2 = compute_h2(q_group, n_group, action, budget=budget)
                for coeffs, rep in h2.classes():
                    name = (f"C{n_ord} by C{q_ord}, action {ai}, "
                            f"class {tuple(int(c) for c in coeffs)}")
                    ext = extension_from_cocycle(rep, name=name, budget=budget)
                    entries.append(CatalogEntry(name, "extension", ext))

    # Two-element kernel under the rank-two elementary quotient.
    c2 = make_cyclic(2, name="C2")
    v4, _, _ = make_direct_product(make_cyclic(2), make_cyclic(2), name="C2xC2")
    act = trivial_action(v4, c2)
    h2 = compute_h2(v4, c2, act, budget=budget)
    for coeffs, rep in h2.classes():
        name = f"C2 by C2xC2, class {tuple(int(c) for c in coeffs)}"
        ext = extension_from_cocycle(rep, name=name, budget=budget)
        entries.append(CatalogEntry(name, "extension", ext))

    # Direct products, including a nonabelian quotient.
    for a, b, label in (
            (make_cyclic(3, name="C3"), make_cyclic(4, name="C4"), "C3xC4 product"),
            (make_cyclic(6, name="C6"), make_cyclic(2, name="C2"), "C6xC2 product"),
            (make_cyclic(2, name="C2"), make_dihedral(3), "C2xD3 product")):
        g, i_a, p_b = make_direct_product(a, b, name=label)
        ext = build_extension(i_a, p_b, name=label, budget=budget)
        entries.append(CatalogEntry(label, "extension", ext))

    return entries


def catalog_from_json(data, budget: Optional[Budgets] = None) -> List[CatalogEntry]:
    """Load a catalog from a parsed JSON document (or a JSON text string)."""
    if isinstance(data, str):
        data = json.loads(data)
    entries = []
    for row in data.get("entries", []):
        name = row.get("name", f"entry {len(entries)}")
        kind = row.get("kind", "extension")
        entries.append(CatalogEntry(name, kind, row))
    return entries


# ---------------------------------------------------------------------- sweep


def _verify_ring_entry(name: str, ring: FiniteRing, ideal,
                       budget: Budgets) -> List[ExactnessReport]:
    """Checks for a raw ring entry: quasi-regular group, and the quasi-regular
    sequence over the quotient when a square-zero ideal is supplied."""
    quasi_regular_group(ring)
    if ideal is None:
        report = ExactnessReport("quasi-regular group", name)
        report.nodes = [("quasi-regulars of the ring",
                         quasi_regular_group(ring)[0].order)]
        report.add("quasi-regulars form a group", True,
                   detail="closure and inverses verified")
        return [report]
    arr = check_ideal(ring, ideal)
    if not is_square_zero_ideal(ring, arr):
        raise ValidationError("stated ideal is not square-zero")
    quo, proj = quotient_ring(ring, arr)
    return [verify_qr_sequence(ring, arr, proj, instance=name)]


def sweep(entries: List[CatalogEntry], budget: Optional[Budgets] = None,
          check_h2g: Optional[bool] = None) -> Dict:
    """Run every verifier on every entry; failures become summary rows."""
    budget = budget or current_budgets()
    rows = []
    failed = 0
    for entry in entries:
        row: Dict = {"name": entry.name, "kind": entry.kind}
        try:
            obj = entry.materialize(budget=budget)
            if entry.kind == "extension":
                reports = verify_all(obj, budget=budget, check_h2g=check_h2g)
            else:
                ring, ideal = obj
                reports = _verify_ring_entry(entry.name, ring, ideal, budget)
            row["ok"] = all(r.ok for r in reports)
            row["reports"] = [r.to_json() for r in reports]
        except (ValidationError, BudgetExceeded) as exc:
            row["ok"] = False
            row["error"] = str(exc)
            witness = getattr(exc, "witness", None)
            if witness is not None:
                row["witness"] = _jsonable(witness)
        if not row["ok"]:
            failed += 1
        rows.append(row)
    return {"total": len(rows), "failed": failed, "entries": rows}
