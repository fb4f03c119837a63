"""Extensions of finite groups with abelian kernel.

An extension here is a short exact sequence of table groups: an injective map
from an abelian kernel, a surjection onto a quotient, matching image and
kernel in the middle, together with the canonical minimal-index section of
the surjection and the induced conjugation action of the quotient on the
kernel.  Everything is validated exhaustively at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from typing import Optional, Sequence

import numpy as np

from .budgets import Budgets, current_budgets
from .cohomology2 import TwoCocycle
from .errors import BudgetExceeded, ValidationError
from .groups import (
    ActionTable,
    FiniteGroup,
    GroupHom,
    Subgroup,
    _bfs_words,
    _is_hom,
    _propagate,
    centralizer,
    group_from_json,
    group_to_json,
    quotient,
)

__all__ = [
    "AbelianExtension",
    "build_extension",
    "extension_from_cocycle",
    "CentralizerData",
    "centralizer_extension",
    "extension_to_json",
    "extension_from_json",
]


class AbelianExtension:
    """A validated short exact sequence with abelian kernel.

    Construct through `build_extension`; the constructor only stores fields
    that the builder has already checked.
    """

    def __init__(self, n_group: FiniteGroup, g_group: FiniteGroup, q_group: FiniteGroup,
                 i: GroupHom, p: GroupHom, section: np.ndarray, action: ActionTable,
                 name: str = ""):
        self.n_group = n_group
        self.g_group = g_group
        self.q_group = q_group
        self.i = i
        self.p = p
        self.section = section
        self.action = action
        self.name = name or f"{n_group.name or n_group.order}-by-{q_group.name or q_group.order}"
        pos = np.full(g_group.order, -1, dtype=np.int64)
        for m in range(n_group.order):
            pos[i.values[m]] = m
        self._n_pos = pos

    def fiber(self, q: int) -> np.ndarray:
        return np.flatnonzero(self.p.values == q)

    def in_kernel(self, g: int) -> bool:
        return bool(self._n_pos[g] >= 0)

    def kernel_part(self, g: int) -> int:
        """The kernel index n in the canonical factorization g = i(n) u(p(g))."""
        gg = self.g_group
        u = int(self.section[self.p.values[g]])
        n = int(self._n_pos[gg.mul(g, gg.inv(u))])
        if n < 0:
            raise ValidationError(f"element {g} failed canonical factorization")
        return n

    def element_of(self, n: int, q: int) -> int:
        return self.g_group.mul(int(self.i.values[n]), int(self.section[q]))

    def classifying_cocycle(self) -> TwoCocycle:
        """The 2-cocycle measuring the failure of the section to be a map of groups."""
        gg = self.g_group
        u = self.section
        uu = gg.table[u[:, None], u[None, :]]
        uprod = gg.inverse[u[self.q_group.table]]
        vals = self._n_pos[gg.table[uu, uprod]]
        if (vals < 0).any():
            raise ValidationError("section defect escaped the kernel")
        return TwoCocycle(self.q_group, self.n_group, self.action, vals)

    def find_splitting(self, budget: Optional[Budgets] = None) -> Optional[GroupHom]:
        """A homomorphic section of the surjection, or None if there is none."""
        budget = budget or current_budgets()
        qg = self.q_group
        gens = list(qg.generators)
        fibers = [self.fiber(g) for g in gens]
        count = 1
        for f in fibers:
            count *= len(f)
        if count > budget.z1_generator_candidates:
            raise BudgetExceeded(
                f"{count} candidate sections exceeds budget {budget.z1_generator_candidates}")
        words = _bfs_words(qg, qg.generators)
        idx = np.arange(qg.order)
        for choice in iter_product(*[[int(x) for x in f] for f in fibers]):
            values = _propagate(qg, self.g_group, words, list(choice))
            if not _is_hom(qg, self.g_group, values):
                continue
            if (self.p.values[values] == idx).all():
                return GroupHom(qg, self.g_group, values)
        return None

    def is_split(self, budget: Optional[Budgets] = None) -> bool:
        return self.find_splitting(budget) is not None

    def describe(self) -> dict:
        return {
            "name": self.name,
            "kernel_order": self.n_group.order,
            "group_order": self.g_group.order,
            "quotient_order": self.q_group.order,
            "action_trivial": self.action.is_trivial(),
        }


def build_extension(i: GroupHom, p: GroupHom, name: str = "",
                    budget: Optional[Budgets] = None) -> AbelianExtension:
    """Validate a short exact sequence and derive its section and action."""
    n_group = i.source
    g_group = i.target
    q_group = p.target
    if p.source is not g_group:
        raise ValidationError("kernel map and surjection do not share the middle group")
    if not n_group.is_abelian():
        raise ValidationError("kernel group must be abelian")
    if not i.is_injective():
        raise ValidationError("kernel map must be injective")
    if not p.is_surjective():
        raise ValidationError("quotient map must be surjective")
    image = set(int(v) for v in i.values)
    kernel = set(int(g) for g in np.flatnonzero(p.values == 0))
    if image != kernel:
        extra = sorted(image - kernel) + sorted(kernel - image)
        raise ValidationError(
            f"kernel image and surjection kernel differ at {extra[:4]}", witness=extra[:4])
    # canonical section: least group index in each fiber
    section = np.full(q_group.order, -1, dtype=np.int64)
    for g in range(g_group.order - 1, -1, -1):
        section[p.values[g]] = g
    if section[0] != 0:
        raise ValidationError("section fails to pick the identity over the identity")
    pos = np.full(g_group.order, -1, dtype=np.int64)
    for m in range(n_group.order):
        pos[i.values[m]] = m
    # conjugation action of the quotient, checked on every fiber element
    conj = np.zeros((g_group.order, n_group.order), dtype=np.int64)
    tg = g_group.table
    inv = g_group.inverse
    for g in range(g_group.order):
        conj[g] = pos[tg[tg[g, i.values], inv[g]]]
    if (conj < 0).any():
        g = int(np.argwhere((conj < 0).any(axis=1))[0][0])
        raise ValidationError(f"conjugation by {g} leaves the kernel", witness=g)
    act = conj[section]
    mismatch = conj != act[p.values]
    if mismatch.any():
        g, m = map(int, np.argwhere(mismatch)[0])
        raise ValidationError(
            f"conjugation by fiber element {g} disagrees with its coset on kernel element {m}",
            witness=(g, m),
        )
    action = ActionTable(q_group, n_group, act)
    return AbelianExtension(n_group, g_group, q_group, i, p, section, action, name=name)


def extension_from_cocycle(cocycle: TwoCocycle, name: str = "",
                           budget: Optional[Budgets] = None) -> AbelianExtension:
    """The extension built on kernel x quotient pairs twisted by a cocycle."""
    n_group = cocycle.n_group
    q_group = cocycle.q_group
    action = cocycle.action
    nn, qn = n_group.order, q_group.order
    order = nn * qn
    f = cocycle.values
    tn, tq = n_group.table, q_group.table
    n1, q1, n2, q2 = np.meshgrid(
        np.arange(nn), np.arange(qn), np.arange(nn), np.arange(qn), indexing="ij")
    moved = action.table[q1, n2]
    n_out = tn[tn[n1, moved], f[q1, q2]]
    q_out = tq[q1, q2]
    table = (n_out * qn + q_out).reshape(order, order)
    # pair (n, q) sits at index n*qn + q, so the identity pair is index 0
    labels = [
        f"({n_group.labels[a]},{q_group.labels[b]})" for a in range(nn) for b in range(qn)
    ]
    gens = [g * qn for g in n_group.generators] + [int(h) for h in q_group.generators]
    g_group = FiniteGroup(table, gens, labels=labels,
                          name=name or f"twisted-{n_group.name}-{q_group.name}",
                          budget=budget)
    i = GroupHom(n_group, g_group, np.arange(nn) * qn)
    p = GroupHom(g_group, q_group, np.tile(np.arange(qn), nn))
    ext = build_extension(i, p, name=name, budget=budget)
    if not (ext.action.table == action.table).all():
        raise ValidationError("twisted product action disagrees with the given action")
    if not ext.classifying_cocycle().same_values(cocycle):
        raise ValidationError("twisted product does not reproduce its cocycle")
    return ext


# ----------------------------------------------------------- centralizer data


@dataclass
class CentralizerData:
    """The kernel-centralizer layer of an extension.

    c_sub is the centralizer of the embedded kernel inside the middle group;
    the kernel is central in it, and the quotient by the kernel embeds into
    the extension's quotient group as the kernel of its action.  The quotient
    group acts compatibly on every floor.
    """

    ext: AbelianExtension
    c_sub: Subgroup
    n_in_c: GroupHom
    central_ext: AbelianExtension
    qbar_group: FiniteGroup
    pi: GroupHom
    qbar_in_q: GroupHom
    q_action_on_c: ActionTable
    q_action_on_qbar: ActionTable


def centralizer_extension(ext: AbelianExtension,
                          budget: Optional[Budgets] = None) -> CentralizerData:
    """Build and validate the centralizer extension and its quotient actions."""
    g = ext.g_group
    n = ext.n_group
    q = ext.q_group
    kernel_indices = [int(v) for v in ext.i.values]
    c_sub = centralizer(g, kernel_indices)
    c_grp = c_sub.group
    c_emb = c_sub.embedding
    pos_in_c = np.full(g.order, -1, dtype=np.int64)
    for idx in range(c_grp.order):
        pos_in_c[c_emb.values[idx]] = idx
    n_in_c = GroupHom(n, c_grp, pos_in_c[ext.i.values])
    # kernel must be central in its centralizer
    rows = c_grp.table[n_in_c.values]
    if not (rows == c_grp.table[:, n_in_c.values].T).all():
        raise ValidationError("kernel is not central in its centralizer")
    qbar_group, pi = quotient(c_grp, Subgroup(n, n_in_c))
    # embed the centralizer quotient into the extension quotient
    vals = np.full(qbar_group.order, -1, dtype=np.int64)
    for c in range(c_grp.order):
        target = int(ext.p.values[c_emb.values[c]])
        bar = int(pi.values[c])
        if vals[bar] == -1:
            vals[bar] = target
        elif vals[bar] != target:
            raise ValidationError(f"coset {bar} maps ambiguously into the quotient")
    qbar_in_q = GroupHom(qbar_group, q, vals)
    if not qbar_in_q.is_injective():
        raise ValidationError("centralizer quotient fails to embed")
    # image of the embedding = elements of the quotient acting trivially
    idn = np.arange(n.order)
    trivial_rows = set(
        int(qq) for qq in range(q.order) if (ext.action.table[qq] == idn).all()
    )
    embedded = set(int(v) for v in qbar_in_q.values)
    if embedded != trivial_rows:
        diff = sorted(embedded ^ trivial_rows)
        raise ValidationError(
            f"embedded quotient differs from the action kernel at {diff[:4]}",
            witness=diff[:4],
        )
    central_ext = build_extension(n_in_c, pi, name=f"{ext.name}-centralizer", budget=budget)
    if not central_ext.action.is_trivial():
        raise ValidationError("centralizer extension action is not trivial")
    # action of the quotient on the centralizer, one row per quotient element,
    # then checked against conjugation by every fiber element
    tg = g.table
    ginv = g.inverse
    act_c = np.zeros((q.order, c_grp.order), dtype=np.int64)
    for qq in range(q.order):
        u = int(ext.section[qq])
        moved = pos_in_c[tg[tg[u, c_emb.values], ginv[u]]]
        if (moved < 0).any():
            raise ValidationError(f"conjugation by section element {qq} leaves the centralizer")
        act_c[qq] = moved
    for gg in range(g.order):
        moved = pos_in_c[tg[tg[gg, c_emb.values], ginv[gg]]]
        if not (moved == act_c[ext.p.values[gg]]).all():
            raise ValidationError(
                f"conjugation by fiber element {gg} disagrees with its coset on the centralizer",
                witness=gg,
            )
    q_action_on_c = ActionTable(q, c_grp, act_c)
    # induced action on the centralizer quotient, checked rep-independent
    act_qbar = np.zeros((q.order, qbar_group.order), dtype=np.int64)
    for qq in range(q.order):
        row = np.full(qbar_group.order, -1, dtype=np.int64)
        projected = pi.values[act_c[qq]]
        for c in range(c_grp.order):
            bar = int(pi.values[c])
            if row[bar] == -1:
                row[bar] = projected[c]
            elif row[bar] != projected[c]:
                raise ValidationError(
                    f"action of {qq} on the centralizer quotient is not well defined")
        act_qbar[qq] = row
    q_action_on_qbar = ActionTable(q, qbar_group, act_qbar)
    # the quotient action must match conjugation transported along the embedding
    for qq in range(q.order):
        lhs = qbar_in_q.values[act_qbar[qq]]
        rhs = q.table[q.table[qq, qbar_in_q.values], q.inverse[qq]]
        if not (lhs == rhs).all():
            raise ValidationError(
                f"quotient action of {qq} disagrees with conjugation in the quotient group")
    # kernel embedding is equivariant for the two actions
    for qq in range(q.order):
        lhs = act_c[qq, n_in_c.values]
        rhs = n_in_c.values[ext.action.table[qq]]
        if not (lhs == rhs).all():
            raise ValidationError(f"kernel embedding is not equivariant at {qq}")
    return CentralizerData(
        ext=ext,
        c_sub=c_sub,
        n_in_c=n_in_c,
        central_ext=central_ext,
        qbar_group=qbar_group,
        pi=pi,
        qbar_in_q=qbar_in_q,
        q_action_on_c=q_action_on_c,
        q_action_on_qbar=q_action_on_qbar,
    )


# ------------------------------------------------------------------ JSON form


def extension_to_json(ext: AbelianExtension) -> dict:
    return {
        "name": ext.name,
        "kernel": group_to_json(ext.n_group),
        "group": group_to_json(ext.g_group),
        "quotient": group_to_json(ext.q_group),
        "kernel_map": [int(v) for v in ext.i.values],
        "quotient_map": [int(v) for v in ext.p.values],
    }


def extension_from_json(data: dict, budget: Optional[Budgets] = None) -> AbelianExtension:
    n_group = group_from_json(data["kernel"])
    g_group = group_from_json(data["group"])
    q_group = group_from_json(data["quotient"])
    i = GroupHom(n_group, g_group, np.asarray(data["kernel_map"], dtype=np.int64))
    p = GroupHom(g_group, q_group, np.asarray(data["quotient_map"], dtype=np.int64))
    return build_extension(i, p, name=data.get("name", ""), budget=budget)
