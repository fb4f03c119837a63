"""Crossed homomorphisms from a finite group into a group it acts on.

A crossed homomorphism twists the homomorphism law by the action on the
target: the value at a product is the value at the first factor times the
translated value at the second.  The target may be nonabelian (such maps
still form a pointed set, which is all the exactness checks need); the
additive and ring structure is only available over abelian targets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from typing import Dict, List, Optional, Tuple

import numpy as np

from .budgets import Budgets, current_budgets
from .errors import BudgetExceeded, ValidationError
from .groups import ActionTable, FiniteGroup, GroupHom, _bfs_words
from .rings import FiniteRing

__all__ = [
    "CrossedHom",
    "z1_zero",
    "z1_add",
    "z1_neg",
    "z1_diamond",
    "post_compose",
    "restrict_to_module",
    "inflate",
    "enumerate_z1",
    "CocycleRing",
    "cocycle_ring",
]


class CrossedHom:
    """A map phi with phi(xy) = phi(x) * (x . phi(y)) and phi(e) = e."""

    def __init__(self, source: FiniteGroup, module: FiniteGroup, action: ActionTable,
                 values, validate: bool = True):
        self.source = source
        self.module = module
        self.action = action
        self.values = np.asarray(values, dtype=np.int64)
        if validate:
            self._validate()

    def _validate(self) -> None:
        s = self.source.order
        m = self.module.order
        v = self.values
        if self.action.actor is not self.source or self.action.module is not self.module:
            raise ValidationError("action must be of the source group on the module")
        if v.shape != (s,):
            raise ValidationError(f"need {s} values, got shape {v.shape}")
        if v.min() < 0 or v.max() >= m:
            raise ValidationError("crossed homomorphism value out of range")
        if v[0] != 0:
            raise ValidationError("crossed homomorphism must send identity to identity")
        moved = self.action.table[:, v]          # [x, y] = x . phi(y)
        law = self.module.table[v[:, None], moved]
        if not (law == v[self.source.table]).all():
            x, y = map(int, np.argwhere(law != v[self.source.table])[0])
            raise ValidationError(
                f"crossed homomorphism law fails at ({x}, {y})", witness=(x, y))

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    def same_values(self, other: "CrossedHom") -> bool:
        return bool((self.values == other.values).all())

    def key(self) -> bytes:
        return self.values.tobytes()


def z1_zero(source: FiniteGroup, module: FiniteGroup, action: ActionTable) -> CrossedHom:
    return CrossedHom(source, module, action, np.zeros(source.order, dtype=np.int64))


def _require_same_data(a: CrossedHom, b: CrossedHom) -> None:
    if a.source is not b.source or a.module is not b.module:
        raise ValidationError("crossed homomorphisms live over different data")
    if not (a.action.table == b.action.table).all():
        raise ValidationError("crossed homomorphisms use different actions")


def z1_add(a: CrossedHom, b: CrossedHom) -> CrossedHom:
    """Pointwise sum; the target must be abelian for this to stay crossed."""
    _require_same_data(a, b)
    if not a.module.is_abelian():
        raise ValidationError("pointwise sum needs an abelian target")
    return CrossedHom(a.source, a.module, a.action, a.module.table[a.values, b.values])


def z1_neg(a: CrossedHom) -> CrossedHom:
    if not a.module.is_abelian():
        raise ValidationError("pointwise negation needs an abelian target")
    return CrossedHom(a.source, a.module, a.action, a.module.inverse[a.values])


def z1_diamond(a: CrossedHom, b: CrossedHom, embedding: GroupHom) -> CrossedHom:
    """The composition product: x -> a(embed(b(x))).

    embedding realizes the module inside the source group, so values of b can
    be fed back into a.
    """
    _require_same_data(a, b)
    if embedding.source is not a.module or embedding.target is not a.source:
        raise ValidationError("embedding must map the module into the source group")
    return CrossedHom(a.source, a.module, a.action,
                      a.values[embedding.values[b.values]])


def post_compose(a: CrossedHom, hom: GroupHom, target_action: ActionTable) -> CrossedHom:
    """Push values forward along an equivariant homomorphism of modules."""
    if hom.source is not a.module:
        raise ValidationError("homomorphism domain must be the module")
    if target_action.actor is not a.source or target_action.module is not hom.target:
        raise ValidationError("target action must be of the source on the new module")
    lhs = hom.values[a.action.table]
    rhs = target_action.table[:, hom.values]
    if not (lhs == rhs).all():
        raise ValidationError("homomorphism is not equivariant for the two actions")
    return CrossedHom(a.source, hom.target, target_action, hom.values[a.values])


def restrict_to_module(a: CrossedHom, embedding: GroupHom) -> GroupHom:
    """Restrict along the module's embedding; the result is a plain endomorphism."""
    if embedding.source is not a.module or embedding.target is not a.source:
        raise ValidationError("embedding must map the module into the source group")
    return GroupHom(a.module, a.module, a.values[embedding.values])


def inflate(a: CrossedHom, proj: GroupHom, source_action: ActionTable) -> CrossedHom:
    """Pull back along a surjection onto the source group."""
    if proj.target is not a.source:
        raise ValidationError("projection must land in the source group")
    if not proj.is_surjective():
        raise ValidationError("projection must be surjective")
    if source_action.actor is not proj.source or source_action.module is not a.module:
        raise ValidationError("pulled-back action must be of the new source on the module")
    if not (source_action.table == a.action.table[proj.values]).all():
        raise ValidationError("action does not factor through the projection")
    return CrossedHom(proj.source, a.module, source_action, a.values[proj.values])


def enumerate_z1(source: FiniteGroup, module: FiniteGroup, action: ActionTable,
                 budget: Optional[Budgets] = None) -> List[CrossedHom]:
    """All crossed homomorphisms, in a deterministic order.

    Candidates are generated from generator images and propagated by the
    twisted law, then each candidate is verified on every pair.  Falls back
    to scanning all value tables when the group needs too many generators.
    """
    budget = budget or current_budgets()
    if action.actor is not source or action.module is not module:
        raise ValidationError("action must be of the source group on the module")
    s = source.order
    m = module.order
    gens = list(source.generators)
    count = m ** len(gens)
    out: List[CrossedHom] = []
    if count <= budget.z1_generator_candidates:
        bfs = _bfs_words(source, gens)
        tm = module.table
        act = action.table
        for images in iter_product(range(m), repeat=len(gens)):
            vals = np.zeros(s, dtype=np.int64)
            for elem, parent, gi in bfs:
                vals[elem] = tm[vals[parent], act[parent, images[gi]]]
            moved = act[:, vals]
            law = tm[vals[:, None], moved]
            if (law == vals[source.table]).all():
                out.append(CrossedHom(source, module, action, vals, validate=False))
    elif m ** (s - 1) <= budget.z1_full_scan:
        total = m ** (s - 1)
        arr = np.arange(total, dtype=np.int64)
        vals = np.zeros((total, s), dtype=np.int64)
        for x in range(1, s):
            vals[:, x] = arr % m
            arr = arr // m
        mask = np.ones(total, dtype=bool)
        tm = module.table
        act = action.table
        ts = source.table
        for x in range(1, s):
            for y in range(1, s):
                law = tm[vals[:, x], act[x, vals[:, y]]]
                mask &= law == vals[:, ts[x, y]]
        for row in vals[mask]:
            out.append(CrossedHom(source, module, action, row, validate=False))
    else:
        raise BudgetExceeded(
            f"{count} generator candidates and full scan both exceed budgets")
    out.sort(key=lambda c: tuple(int(v) for v in c.values))
    return out


@dataclass
class CocycleRing:
    """The ring of crossed homomorphisms under pointwise sum and composition.

    elements[0] is the zero map; index maps a value table (as bytes) to its
    position; ring is the explicit table ring over these elements.
    """

    ring: FiniteRing
    elements: Tuple[CrossedHom, ...]
    index: Dict[bytes, int]
    embedding: GroupHom

    def locate(self, a: CrossedHom) -> int:
        key = a.key()
        if key not in self.index:
            raise ValidationError("crossed homomorphism is not in the enumerated ring")
        return self.index[key]


def cocycle_ring(source: FiniteGroup, module: FiniteGroup, action: ActionTable,
                 embedding: GroupHom, budget: Optional[Budgets] = None) -> CocycleRing:
    """Build the crossed-homomorphism ring for an embedded abelian module."""
    budget = budget or current_budgets()
    if not module.is_abelian():
        raise ValidationError("the crossed-homomorphism ring needs an abelian module")
    elements = enumerate_z1(source, module, action, budget=budget)
    n = len(elements)
    index = {e.key(): k for k, e in enumerate(elements)}
    if elements[0].values.any():
        raise ValidationError("zero map must sort first")
    add = np.zeros((n, n), dtype=np.int64)
    dia = np.zeros((n, n), dtype=np.int64)
    tm = module.table
    emb = embedding.values
    for a in range(n):
        va = elements[a].values
        for b in range(n):
            vb = elements[b].values
            add_vals = tm[va, vb]
            dia_vals = va[emb[vb]]
            try:
                add[a, b] = index[add_vals.tobytes()]
                dia[a, b] = index[dia_vals.tobytes()]
            except KeyError as exc:
                raise ValidationError(
                    f"crossed homomorphisms not closed under the ring operations at ({a}, {b})"
                ) from exc
    ring = FiniteRing(add, dia, one=None, name="Z1", budget=budget)
    return CocycleRing(ring=ring, elements=tuple(elements), index=index, embedding=embedding)
