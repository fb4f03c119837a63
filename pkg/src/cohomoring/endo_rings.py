"""Endomorphism rings and pointed endomorphism sets of an extension.

The central object is the set of endomorphisms of the middle group that act
as the identity on the quotient.  Each such map alpha is pinned down by its
displacement x -> alpha(x) x^{-1}, a crossed homomorphism into the kernel, so
the whole set inherits the twisted ring structure of the crossed homs: the
twisted sum has the identity map as zero, and the twisted product composes
displacements.  This module builds that ring twice (once through crossed
homs, once directly on endomorphism tables) and insists the answers agree.

Alongside it live the two pointed endomorphism sets of the kernel-centralizer
sequence: endomorphisms of the middle group fixing the kernel pointwise, and
endomorphisms of the quotient preserving the kernel action.  Both are tied to
crossed homomorphisms into the centralizer layers by explicit bijections.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .budgets import Budgets, current_budgets
from .cocycles import CocycleRing, CrossedHom, cocycle_ring
from .errors import ValidationError
from .extension import AbelianExtension, CentralizerData
from .groups import (
    ActionTable,
    FiniteGroup,
    GroupHom,
    _bfs_words,
    _is_hom,
    _propagate,
    conjugation_action,
    enumerate_endos,
)
from .rings import FiniteRing, RingHom, check_ideal, is_square_zero_ideal, quasi_regular_group


def _key(values: np.ndarray) -> bytes:
    return np.ascontiguousarray(values, dtype=np.int64).tobytes()


# ------------------------------------------------------- module endomorphisms


@dataclass
class ModuleEndoRing:
    """All endomorphisms of an abelian group commuting with a fixed action.

    elements[k] is the value table of endomorphism k on the module; the zero
    map sits at index 0.  The ring operations are pointwise sum and
    composition, with mul(a, b) the table of x -> a(b(x)) and the identity
    map as the ring one.
    """

    module: FiniteGroup
    action: ActionTable
    ring: FiniteRing
    elements: Tuple[np.ndarray, ...]
    index: Dict[bytes, int]

    def locate(self, values) -> int:
        key = _key(np.asarray(values, dtype=np.int64))
        if key not in self.index:
            raise ValidationError("map is not an equivariant endomorphism of the module")
        return self.index[key]


def equivariant_endo_ring(module: FiniteGroup, action: ActionTable,
                          budget: Optional[Budgets] = None) -> ModuleEndoRing:
    """Build the ring of action-compatible endomorphisms of an abelian group."""
    budget = budget or current_budgets()
    if action.module is not module:
        raise ValidationError("action is not an action on the given module")
    if not module.is_abelian():
        raise ValidationError("equivariant endomorphism ring needs an abelian module")
    act = action.table
    kept: List[np.ndarray] = []
    for h in enumerate_endos(module, budget=budget):
        v = h.values
        if (v[act] == act[:, v]).all():
            kept.append(v)
    kept.sort(key=lambda v: tuple(v.tolist()))
    if not kept or kept[0].any():
        raise ValidationError("zero endomorphism missing: module enumeration is broken")
    index = {_key(v): k for k, v in enumerate(kept)}
    size = len(kept)
    tm = module.table
    add = np.zeros((size, size), dtype=np.int64)
    mul = np.zeros((size, size), dtype=np.int64)
    for a, va in enumerate(kept):
        for b, vb in enumerate(kept):
            skey = _key(tm[va, vb])
            ckey = _key(va[vb])
            if skey not in index or ckey not in index:
                raise ValidationError(
                    "equivariant endomorphisms are not closed under the ring operations",
                    witness=(a, b),
                )
            add[a, b] = index[skey]
            mul[a, b] = index[ckey]
    one = index.get(_key(np.arange(module.order, dtype=np.int64)))
    if one is None:
        raise ValidationError("identity map missing from the equivariant endomorphisms")
    labels = ["end%d" % k for k in range(size)]
    ring = FiniteRing(add, mul, one=one, labels=labels,
                      name="EquivEnd(%s)" % (module.name or module.order), budget=budget)
    return ModuleEndoRing(module, action, ring, tuple(kept), index)


# ------------------------------------------------- fiber-preserving endo ring


@dataclass
class FiberEndoRing:
    """The twisted ring of endomorphisms inducing the identity on the quotient.

    endos[k] is the value table on the middle group of the endomorphism whose
    displacement is cocycles.elements[k]; index 0 is the identity map, which
    is the zero of the ring.  ideal_indices lists the members fixing the
    kernel pointwise; they form a two-sided ideal whose products all vanish.
    res is the restriction-of-displacement map into the equivariant
    endomorphism ring of the kernel, verified to respect both operations.
    aut_indices lists the invertible members, which coincide with the
    quasi-regular elements of the ring.
    """

    ext: AbelianExtension
    cocycles: CocycleRing
    ring: FiniteRing
    endos: Tuple[np.ndarray, ...]
    index: Dict[bytes, int]
    ideal_indices: np.ndarray
    module_ring: ModuleEndoRing
    res: RingHom
    aut_indices: np.ndarray

    @property
    def size(self) -> int:
        return len(self.endos)

    def displacement(self, k: int) -> CrossedHom:
        return self.cocycles.elements[k]

    def endo_values(self, k: int) -> np.ndarray:
        return self.endos[k]

    def locate(self, values) -> int:
        key = _key(np.asarray(values, dtype=np.int64))
        if key not in self.index:
            raise ValidationError("map does not induce the identity on the quotient")
        return self.index[key]

    def restriction_values(self, k: int) -> np.ndarray:
        """The endomorphism of the kernel induced by member k (kernel positions)."""
        ext = self.ext
        return ext._n_pos[self.endos[k][ext.i.values]]

    def restriction_index(self, k: int) -> int:
        """Position of member k's kernel restriction inside module_ring."""
        return self.module_ring.locate(self.restriction_values(k))


def _scan_fiber_endos(ext: AbelianExtension, budget: Budgets) -> Optional[List[bytes]]:
    """Independent generator-image search for quotient-identity endomorphisms.

    Candidates for each generator are confined to its own fiber.  Returns the
    sorted value-table keys, or None when the search would exceed the budget.
    """
    g = ext.g_group
    gens = g.generators
    cands = [ext.fiber(int(ext.p.values[s])).tolist() for s in gens]
    total = 1
    for c in cands:
        total *= len(c)
    if total > budget.endo_scan_candidates:
        return None
    bfs = _bfs_words(g, gens)
    found: List[bytes] = []
    import itertools

    for images in itertools.product(*cands):
        vals = _propagate(g, g, bfs, images)
        if _is_hom(g, g, vals) and (ext.p.values[vals] == ext.p.values).all():
            found.append(_key(vals))
    found.sort()
    return found


def fiber_endo_ring(ext: AbelianExtension, budget: Optional[Budgets] = None) -> FiberEndoRing:
    """Build the twisted endomorphism ring of an extension, with cross-checks.

    The construction transports the crossed-homomorphism ring of the middle
    group (conjugation action on the kernel) through alpha(x) = i(psi(x)) x,
    then recomputes both ring tables directly on endomorphism values and
    requires exact agreement.
    """
    budget = budget or current_budgets()
    g = ext.g_group
    n = ext.n_group
    arange = np.arange(g.order, dtype=np.int64)
    act_g = conjugation_action(g, ext.i, on="group")
    cring = cocycle_ring(g, n, act_g, ext.i, budget=budget)

    tg = g.table
    ginv = g.inverse
    ivals = ext.i.values
    endos: List[np.ndarray] = []
    for psi in cring.elements:
        vals = tg[ivals[psi.values], arange]
        if not _is_hom(g, g, vals):
            raise ValidationError(
                "displacement does not integrate to an endomorphism", witness=psi.values
            )
        if not (ext.p.values[vals] == ext.p.values).all():
            raise ValidationError(
                "integrated endomorphism moves the quotient", witness=psi.values
            )
        back = ext._n_pos[tg[vals, ginv[arange]]]
        if (back < 0).any() or not (back == psi.values).all():
            raise ValidationError("displacement round trip failed", witness=psi.values)
        endos.append(vals)
    index = {_key(v): k for k, v in enumerate(endos)}
    if len(index) != len(endos):
        raise ValidationError("distinct displacements produced equal endomorphisms")
    if not (endos[0] == arange).all():
        raise ValidationError("zero displacement did not integrate to the identity map")

    scan = _scan_fiber_endos(ext, budget)
    if scan is not None and scan != sorted(index):
        raise ValidationError(
            "direct endomorphism scan disagrees with the crossed-homomorphism count",
            witness=(len(scan), len(endos)),
        )

    # Re-derive both ring tables on raw endomorphism values.
    size = len(endos)
    stacked = np.stack(endos)
    add2 = np.zeros((size, size), dtype=np.int64)
    mul2 = np.zeros((size, size), dtype=np.int64)
    for a in range(size):
        base = tg[endos[a], ginv[arange]]
        rows = tg[base[None, :], stacked]
        for b in range(size):
            add2[a, b] = index[_key(rows[b])]
    for b in range(size):
        moved = ivals[cring.elements[b].values]
        rows = tg[tg[stacked[:, moved], ginv[moved][None, :]], arange[None, :]]
        for a in range(size):
            mul2[a, b] = index[_key(rows[a])]
    if not (add2 == cring.ring.add_table).all():
        raise ValidationError("twisted sum disagrees with displacement sum")
    if not (mul2 == cring.ring.mul_table).all():
        raise ValidationError("twisted product disagrees with displacement composition")

    ideal = np.asarray(
        [k for k, psi in enumerate(cring.elements) if not psi.values[ivals].any()],
        dtype=np.int64,
    )
    check_ideal(cring.ring, ideal)
    if not is_square_zero_ideal(cring.ring, ideal):
        raise ValidationError("kernel-fixing members do not form a square-zero ideal")

    module_ring = equivariant_endo_ring(n, ext.action, budget=budget)
    res_values = np.asarray(
        [module_ring.locate(psi.values[ivals]) for psi in cring.elements],
        dtype=np.int64,
    )
    res = RingHom(cring.ring, module_ring.ring, res_values)

    aut = np.asarray(
        [k for k in range(size) if np.unique(endos[k]).size == g.order],
        dtype=np.int64,
    )
    qr_group, qr_indices = quasi_regular_group(cring.ring)
    if set(qr_indices.tolist()) != set(aut.tolist()):
        raise ValidationError(
            "invertible members differ from the quasi-regular elements",
            witness=(sorted(qr_indices.tolist()), sorted(aut.tolist())),
        )
    # Quasi-regular star must be plain composition of the endomorphisms.
    for pa, ra in enumerate(qr_indices.tolist()):
        for pb, rb in enumerate(qr_indices.tolist()):
            comp = endos[ra][endos[rb]]
            if index[_key(comp)] != int(qr_indices[qr_group.table[pa, pb]]):
                raise ValidationError(
                    "quasi-regular star differs from composition", witness=(ra, rb)
                )

    return FiberEndoRing(ext, cring, cring.ring, tuple(endos), index, ideal,
                         module_ring, res, aut)


# --------------------------------------------------- pointed endomorphism sets


def kernel_fixing_endos(ext: AbelianExtension,
                        budget: Optional[Budgets] = None) -> List[np.ndarray]:
    """All endomorphisms of the middle group fixing the embedded kernel pointwise."""
    budget = budget or current_budgets()
    em = ext.i.values
    out = [h.values for h in enumerate_endos(ext.g_group, budget=budget)
           if (h.values[em] == em).all()]
    return out


def action_preserving_quotient_endos(ext: AbelianExtension,
                                     budget: Optional[Budgets] = None) -> List[np.ndarray]:
    """Endomorphisms of the quotient group that leave the kernel action unchanged."""
    budget = budget or current_budgets()
    act = ext.action.table
    out = [h.values for h in enumerate_endos(ext.q_group, budget=budget)
           if (act[h.values] == act).all()]
    return out


def centralizer_displacement(cd: CentralizerData, alpha_values) -> CrossedHom:
    """Displacement q -> alpha(u(q)) u(q)^{-1} of a kernel-fixing endomorphism.

    The displacement lands in the centralizer of the kernel and obeys the
    crossed law for the quotient action on that centralizer.
    """
    ext = cd.ext
    g = ext.g_group
    alpha = np.asarray(alpha_values, dtype=np.int64)
    u = ext.section
    disp = g.table[alpha[u], g.inverse[u]]
    pos = np.full(g.order, -1, dtype=np.int64)
    pos[cd.c_sub.embedding.values] = np.arange(cd.c_sub.group.order, dtype=np.int64)
    vals = pos[disp]
    if (vals < 0).any():
        q_bad = int(np.nonzero(vals < 0)[0][0])
        raise ValidationError(
            "displacement escapes the kernel centralizer", witness=q_bad
        )
    return CrossedHom(ext.q_group, cd.c_sub.group, cd.q_action_on_c, vals)


def endo_from_centralizer_displacement(cd: CentralizerData, phi: CrossedHom) -> np.ndarray:
    """Integrate a centralizer-valued crossed hom to a kernel-fixing endomorphism."""
    ext = cd.ext
    g = ext.g_group
    if phi.source is not ext.q_group or phi.module is not cd.c_sub.group:
        raise ValidationError("crossed hom does not match the centralizer layer")
    arange = np.arange(g.order, dtype=np.int64)
    pv = ext.p.values
    u_of = ext.section[pv]
    npart = ext._n_pos[g.table[arange, g.inverse[u_of]]]
    cemb = cd.c_sub.embedding.values
    vals = g.table[g.table[ext.i.values[npart], cemb[phi.values[pv]]], u_of]
    if not _is_hom(g, g, vals):
        raise ValidationError("centralizer displacement does not integrate", witness=phi.values)
    em = ext.i.values
    if not (vals[em] == em).all():
        raise ValidationError("integrated endomorphism moves the kernel", witness=phi.values)
    return vals


def induced_quotient_endo(ext: AbelianExtension, alpha_values) -> np.ndarray:
    """Push a kernel-preserving endomorphism of the middle group to the quotient."""
    alpha = np.asarray(alpha_values, dtype=np.int64)
    pv = ext.p.values
    cand = pv[alpha[ext.section]]
    if not (pv[alpha] == cand[pv]).all():
        bad = int(np.nonzero(pv[alpha] != cand[pv])[0][0])
        raise ValidationError("endomorphism does not descend to the quotient", witness=bad)
    if not _is_hom(ext.q_group, ext.q_group, cand):
        raise ValidationError("descended map is not an endomorphism")
    return cand


def quotient_endo_displacement(cd: CentralizerData, phi_values) -> CrossedHom:
    """Displacement x -> phi(x) x^{-1} of an action-preserving quotient endo.

    The displacement lands in the embedded central quotient layer (the kernel
    of the action) and obeys the crossed law for the action on that layer.
    """
    ext = cd.ext
    q = ext.q_group
    phi = np.asarray(phi_values, dtype=np.int64)
    w = q.table[phi, q.inverse[np.arange(q.order, dtype=np.int64)]]
    pos = np.full(q.order, -1, dtype=np.int64)
    pos[cd.qbar_in_q.values] = np.arange(cd.qbar_group.order, dtype=np.int64)
    vals = pos[w]
    if (vals < 0).any():
        bad = int(np.nonzero(vals < 0)[0][0])
        raise ValidationError(
            "quotient displacement escapes the kernel of the action", witness=bad
        )
    return CrossedHom(q, cd.qbar_group, cd.q_action_on_qbar, vals)


def quotient_endo_from_displacement(cd: CentralizerData, tau: CrossedHom) -> np.ndarray:
    """Integrate a crossed hom into the central quotient layer to a quotient endo."""
    ext = cd.ext
    q = ext.q_group
    if tau.source is not q or tau.module is not cd.qbar_group:
        raise ValidationError("crossed hom does not match the central quotient layer")
    arange = np.arange(q.order, dtype=np.int64)
    vals = q.table[cd.qbar_in_q.values[tau.values], arange]
    if not _is_hom(q, q, vals):
        raise ValidationError("quotient displacement does not integrate", witness=tau.values)
    if not (ext.action.table[vals] == ext.action.table).all():
        raise ValidationError("integrated quotient endo changes the kernel action")
    return vals
