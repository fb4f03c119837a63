"""Finite groups as full multiplication tables, with 0-based element indices.

Elements of a group of order n are the indices 0..n-1 and index 0 is always
the identity.  Every structural claim (associativity, homomorphism laws,
action laws) is checked exhaustively at construction time, within the
configured budgets.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .budgets import Budgets, current_budgets
from .errors import BudgetExceeded, ValidationError

__all__ = [
    "FiniteGroup",
    "GroupHom",
    "ActionTable",
    "Subgroup",
    "make_cyclic",
    "make_dihedral",
    "make_semidirect_group",
    "make_direct_product",
    "trivial_action",
    "inversion_action",
    "action_from_hom",
    "aut_group",
    "enumerate_actions",
    "mulclose",
    "subgroup_from_indices",
    "kernel",
    "image",
    "is_normal",
    "quotient",
    "centralizer",
    "center",
    "conjugation_action",
    "hom_make",
    "identity_hom",
    "enumerate_homs",
    "enumerate_endos",
    "enumerate_automorphisms",
    "find_isomorphism",
    "group_to_json",
    "group_from_json",
    "load_group",
    "save_group",
]


def _as_table(table, what: str) -> np.ndarray:
    arr = np.asarray(table, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"{what} must be a square table, got shape {arr.shape}")
    return arr


class FiniteGroup:
    """A finite group given by its full multiplication table.

    table[a, b] is the index of a*b.  Index 0 must be the identity.
    """

    def __init__(
        self,
        table,
        generators: Sequence[int],
        labels: Optional[Sequence[str]] = None,
        name: str = "",
        budget: Optional[Budgets] = None,
    ):
        budget = budget or current_budgets()
        self.table = _as_table(table, "group table")
        self.order = int(self.table.shape[0])
        self.name = name
        n = self.order
        if n == 0:
            raise ValidationError("group must be nonempty")
        if self.table.min() < 0 or self.table.max() >= n:
            raise ValidationError("group table entries must be element indices")
        idx = np.arange(n)
        if not (self.table[0] == idx).all() or not (self.table[:, 0] == idx).all():
            bad = int(np.argmax(self.table[0] != idx)) if (self.table[0] != idx).any() else int(
                np.argmax(self.table[:, 0] != idx)
            )
            raise ValidationError(
                f"element 0 must be the identity (fails at element {bad})", witness=bad
            )
        # each row and column must be a permutation
        if not (np.sort(self.table, axis=1) == idx).all():
            raise ValidationError("some row of the group table is not a permutation")
        if not (np.sort(self.table, axis=0) == idx[:, None]).all():
            raise ValidationError("some column of the group table is not a permutation")
        self.inverse = np.argmin(self.table, axis=1).astype(np.int64)
        for a in range(n):
            b = int(self.inverse[a])
            if self.table[a, b] != 0 or self.table[b, a] != 0:
                raise ValidationError(f"element {a} has no two-sided inverse", witness=a)
        if n <= budget.group_check_max_order:
            self._check_associativity()
        gens = tuple(int(g) for g in generators)
        if not gens:
            raise ValidationError("generator list must be nonempty")
        if any(g < 0 or g >= n for g in gens):
            raise ValidationError(f"generator out of range: {gens}")
        closure = mulclose(self, gens)
        if len(closure) != n:
            raise ValidationError(
                f"generators {gens} generate only {len(closure)} of {n} elements"
            )
        self.generators = gens
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        else:
            labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise ValidationError(f"expected {n} labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise ValidationError("labels must be unique")
        self.labels = labels
        self._orders: Optional[np.ndarray] = None

    def _check_associativity(self) -> None:
        t = self.table
        for a in range(self.order):
            lhs = t[t[a]]  # [b,c] -> (a*b)*c
            rhs = t[a][t]  # [b,c] -> a*(b*c)
            if not (lhs == rhs).all():
                b, c = np.argwhere(lhs != rhs)[0]
                raise ValidationError(
                    f"associativity fails at ({a},{int(b)},{int(c)})",
                    witness=(a, int(b), int(c)),
                )

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, g: int, a: int) -> int:
        """g * a * g^-1."""
        return int(self.table[self.table[g, a], self.inverse[g]])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = 0
        for _ in range(k):
            out = int(self.table[out, a])
        return out

    def elements(self) -> range:
        return range(self.order)

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            orders = np.zeros(self.order, dtype=np.int64)
            for a in range(self.order):
                x, k = a, 1
                while x != 0:
                    x = int(self.table[x, a])
                    k += 1
                orders[a] = k
            self._orders = orders
        return self._orders

    def element_order(self, a: int) -> int:
        return int(self.element_orders()[a])

    def exponent(self) -> int:
        out = 1
        for k in self.element_orders():
            out = out * int(k) // int(np.gcd(out, int(k)))
        return out

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def label(self, a: int) -> str:
        return self.labels[a]

    def __repr__(self) -> str:
        tag = self.name or "group"
        return f"FiniteGroup({tag}, order={self.order})"


class GroupHom:
    """A homomorphism between table groups, stored as a value array."""

    def __init__(
        self,
        source: FiniteGroup,
        target: FiniteGroup,
        values,
        validate: bool = True,
    ):
        self.source = source
        self.target = target
        self.values = np.asarray(values, dtype=np.int64)
        if self.values.shape != (source.order,):
            raise ValidationError(
                f"hom needs {source.order} values, got shape {self.values.shape}"
            )
        if self.values.min() < 0 or self.values.max() >= target.order:
            raise ValidationError("hom values out of range")
        if validate:
            v = self.values
            lhs = v[source.table]
            rhs = target.table[v[:, None], v[None, :]]
            if not (lhs == rhs).all():
                a, b = np.argwhere(lhs != rhs)[0]
                raise ValidationError(
                    f"not a homomorphism at pair ({int(a)},{int(b)})",
                    witness=(int(a), int(b)),
                )
            if int(v[0]) != 0:
                raise ValidationError("homomorphism must send identity to identity")

    def apply(self, a: int) -> int:
        return int(self.values[a])

    def __call__(self, a: int) -> int:
        return int(self.values[a])

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other (self.source must be other.target)."""
        if other.target is not self.source:
            raise ValidationError("hom composition mismatch")
        return GroupHom(other.source, self.target, self.values[other.values], validate=False)

    def kernel_indices(self) -> List[int]:
        return [int(a) for a in np.flatnonzero(self.values == 0)]

    def image_indices(self) -> List[int]:
        return sorted({int(v) for v in self.values})

    def is_injective(self) -> bool:
        return len(set(self.values.tolist())) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.values.tolist())) == self.target.order

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and self.is_injective()

    def inverse_hom(self) -> "GroupHom":
        if not self.is_bijective():
            raise ValidationError("only bijective homs can be inverted")
        inv = np.zeros(self.target.order, dtype=np.int64)
        inv[self.values] = np.arange(self.source.order)
        return GroupHom(self.target, self.source, inv, validate=False)

    def same_values(self, other: "GroupHom") -> bool:
        return bool((self.values == other.values).all())

    def __repr__(self) -> str:
        return f"GroupHom({self.source!r} -> {self.target!r})"


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, np.arange(g.order), validate=False)


class ActionTable:
    """A left action of `actor` on `module` by automorphisms.

    table[a, m] is the index of a acting on m.  The module is not required to
    be abelian here; operations that need abelian coefficients check at their
    own boundary.
    """

    def __init__(self, actor: FiniteGroup, module: FiniteGroup, table, validate: bool = True):
        self.actor = actor
        self.module = module
        self.table = np.asarray(table, dtype=np.int64)
        if self.table.shape != (actor.order, module.order):
            raise ValidationError(
                f"action table must be {actor.order}x{module.order}, got {self.table.shape}"
            )
        if validate:
            self._validate()

    def _validate(self) -> None:
        t = self.table
        m = self.module.order
        if t.min() < 0 or t.max() >= m:
            raise ValidationError("action table entries out of range")
        if not (t[0] == np.arange(m)).all():
            raise ValidationError("identity must act trivially")
        if not (np.sort(t, axis=1) == np.arange(m)).all():
            raise ValidationError("some actor element does not act bijectively")
        # compatibility with the actor's multiplication
        for a in range(self.actor.order):
            lhs = t[self.actor.table[a]]  # [b, m] -> t[a*b, m]
            rhs = t[a][t]  # [b, m] -> t[a, t[b, m]]
            if not (lhs == rhs).all():
                b, x = np.argwhere(lhs != rhs)[0]
                raise ValidationError(
                    f"action law fails at actor pair ({a},{int(b)}) on {int(x)}",
                    witness=(a, int(b), int(x)),
                )
        # each actor element acts by a module automorphism
        mt = self.module.table
        for a in range(self.actor.order):
            row = t[a]
            if not (row[mt] == mt[row[:, None], row[None, :]]).all():
                raise ValidationError(
                    f"actor element {a} does not act by an automorphism", witness=a
                )

    def act(self, a: int, m: int) -> int:
        return int(self.table[a, m])

    def is_trivial(self) -> bool:
        return bool((self.table == np.arange(self.module.order)).all())

    def __repr__(self) -> str:
        return f"ActionTable({self.actor!r} on {self.module!r})"


class Subgroup(NamedTuple):
    group: FiniteGroup
    embedding: GroupHom  # subgroup -> ambient


# ----------------------------------------------------------------- constructors


def make_cyclic(n: int, name: str = "") -> FiniteGroup:
    """Cyclic group of order n; element i is the residue i."""
    if n < 1:
        raise ValidationError(f"cyclic group needs order >= 1, got {n}")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    gen = [1 % n]
    return FiniteGroup(table, gen, labels=[str(i) for i in range(n)], name=name or f"C{n}")


def _pair_index(n_order: int, q_order: int):
    def enc(ni: int, qi: int) -> int:
        return ni * q_order + qi

    def dec(g: int) -> Tuple[int, int]:
        return divmod(g, q_order)

    return enc, dec


def _semidirect_table(n_group: FiniteGroup, q_group: FiniteGroup, action: ActionTable) -> np.ndarray:
    """Multiplication table on pairs (n, q): (n1,q1)(n2,q2) = (n1 + q1.n2, q1 q2)."""
    nn, qq = n_group.order, q_group.order
    enc, _ = _pair_index(nn, qq)
    table = np.zeros((nn * qq, nn * qq), dtype=np.int64)
    for n1 in range(nn):
        for q1 in range(qq):
            a = enc(n1, q1)
            moved = n_group.table[n1, action.table[q1]]  # n1 + q1.n2 for all n2
            table[a] = (moved[:, None] * qq + q_group.table[q1][None, :]).reshape(-1)
    return table


def make_semidirect_group(
    n_group: FiniteGroup, q_group: FiniteGroup, action: ActionTable, name: str = ""
) -> Tuple[FiniteGroup, GroupHom, GroupHom]:
    """Semidirect product N x| Q for a Q-action on N.

    Returns (G, i, p) with i : N -> G the inclusion n -> (n, e) and
    p : G -> Q the projection (n, q) -> q.
    """
    if action.actor is not q_group or action.module is not n_group:
        raise ValidationError("action must be of q_group on n_group")
    nn, qq = n_group.order, q_group.order
    enc, dec = _pair_index(nn, qq)
    table = _semidirect_table(n_group, q_group, action)
    labels = [
        f"({n_group.labels[ni]}|{q_group.labels[qi]})" for ni in range(nn) for qi in range(qq)
    ]
    gens = [enc(g, 0) for g in n_group.generators] + [enc(0, g) for g in q_group.generators]
    if not name:
        join = "x" if action.is_trivial() else "x|"
        name = f"{n_group.name or nn}{join}{q_group.name or qq}"
    g = FiniteGroup(table, gens, labels=labels, name=name)
    i = GroupHom(n_group, g, [enc(ni, 0) for ni in range(nn)])
    p = GroupHom(g, q_group, [dec(x)[1] for x in range(nn * qq)])
    return g, i, p


def make_direct_product(
    a: FiniteGroup, b: FiniteGroup, name: str = ""
) -> Tuple[FiniteGroup, GroupHom, GroupHom]:
    """Direct product A x B, returned as (G, i_A, p_B)."""
    return make_semidirect_group(a, b, trivial_action(b, a), name=name)


def make_dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n, n >= 3.

    Element 2*i + j is y^i x^j where y is the rotation of order n and x is a
    reflection.  Generators are (x, y) in that order.
    """
    if n < 3:
        raise ValidationError(f"dihedral group needs n >= 3, got {n}")
    cn = make_cyclic(n)
    c2 = make_cyclic(2)
    sd, _, _ = make_semidirect_group(cn, c2, inversion_action(c2, cn))
    labels = []
    for i in range(n):
        if i == 0:
            labels += ["e", "x"]
        elif i == 1:
            labels += ["y", "y*x"]
        else:
            labels += [f"y^{i}", f"y^{i}*x"]
    x, y = 1, 2  # (0,1) and (1,0) in the pair encoding
    return FiniteGroup(sd.table, [x, y], labels=labels, name=f"D{n}")


def trivial_action(actor: FiniteGroup, module: FiniteGroup) -> ActionTable:
    table = np.tile(np.arange(module.order), (actor.order, 1))
    return ActionTable(actor, module, table, validate=False)


def inversion_action(c2: FiniteGroup, module: FiniteGroup) -> ActionTable:
    """The order-2 actor acts by negation on an abelian module."""
    if c2.order != 2:
        raise ValidationError("inversion action needs an actor of order 2")
    if not module.is_abelian():
        raise ValidationError("inversion is only an automorphism of abelian modules")
    table = np.stack([np.arange(module.order), module.inverse])
    return ActionTable(c2, module, table)


# ----------------------------------------------------------------- subgroups


def mulclose(g: FiniteGroup, seed: Iterable[int]) -> List[int]:
    """Sorted list of elements of the subgroup generated by `seed`."""
    seen = {0}
    frontier = [0]
    seeds = sorted({int(s) for s in seed})
    while frontier:
        nxt = []
        for a in frontier:
            for s in seeds:
                for b in (int(g.table[a, s]), int(g.table[s, a])):
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
        frontier = nxt
    return sorted(seen)


def _greedy_generators(g: FiniteGroup, members: Sequence[int]) -> List[int]:
    """Small deterministic generating set for the subgroup on `members`."""
    members = sorted(members)
    if members == [0]:
        return [0]
    orders = g.element_orders()
    best = max((int(orders[m]), -m) for m in members if m != 0)
    gens = [-best[1]]
    closure = set(mulclose(g, gens))
    for m in members:
        if m not in closure:
            gens.append(m)
            closure = set(mulclose(g, gens))
    return gens


def subgroup_from_indices(g: FiniteGroup, indices: Iterable[int]) -> Subgroup:
    idx = sorted({int(a) for a in indices})
    if not idx or idx[0] != 0:
        raise ValidationError("a subgroup must contain the identity (element 0)")
    pos = {a: k for k, a in enumerate(idx)}
    arr = np.asarray(idx, dtype=np.int64)
    prod = g.table[np.ix_(arr, arr)]
    for a in range(len(idx)):
        for b in range(len(idx)):
            if int(prod[a, b]) not in pos:
                raise ValidationError(
                    f"subset not closed: {idx[a]} * {idx[b]} = {int(prod[a, b])} escapes",
                    witness=(idx[a], idx[b]),
                )
    table = np.vectorize(pos.__getitem__)(prod)
    gens_ambient = _greedy_generators(g, idx)
    gens = [pos[a] for a in gens_ambient]
    labels = [g.labels[a] for a in idx]
    sub = FiniteGroup(table, gens, labels=labels, name=f"sub{len(idx)}of{g.name or g.order}")
    emb = GroupHom(sub, g, arr)
    return Subgroup(sub, emb)


def kernel(h: GroupHom) -> Subgroup:
    return subgroup_from_indices(h.source, h.kernel_indices())


def image(h: GroupHom) -> Subgroup:
    return subgroup_from_indices(h.target, h.image_indices())


def is_normal(g: FiniteGroup, indices: Iterable[int]) -> bool:
    idx = sorted({int(a) for a in indices})
    members = set(idx)
    arr = np.asarray(idx, dtype=np.int64)
    for a in range(g.order):
        conj = g.table[g.table[a, arr], g.inverse[a]]
        if any(int(c) not in members for c in conj):
            return False
    return True


def _coset_partition(g: FiniteGroup, idx: Sequence[int]) -> Tuple[np.ndarray, List[int]]:
    """coset index per element (numbered by ascending minimal representative)."""
    arr = np.asarray(sorted(idx), dtype=np.int64)
    coset_of = np.full(g.order, -1, dtype=np.int64)
    reps: List[int] = []
    for a in range(g.order):
        if coset_of[a] >= 0:
            continue
        members = np.unique(g.table[a, arr])
        coset_of[members] = len(reps)
        reps.append(int(members.min()))
    return coset_of, reps


def quotient(g: FiniteGroup, sub) -> Tuple[FiniteGroup, GroupHom]:
    """Quotient by a normal subgroup; returns (Q, projection)."""
    idx = _subgroup_indices(g, sub)
    if not is_normal(g, idx):
        raise ValidationError(f"subgroup {idx} is not normal", witness=idx)
    coset_of, reps = _coset_partition(g, idx)
    k = len(reps)
    table = np.zeros((k, k), dtype=np.int64)
    for a in range(k):
        table[a] = coset_of[g.table[reps[a], reps]]
    labels = [f"[{g.labels[r]}]" for r in reps]
    q = FiniteGroup(table, _greedy_generators_from_table(table), labels=labels,
                    name=f"{g.name or g.order}/{len(idx)}")
    proj = GroupHom(g, q, coset_of)
    return q, proj


def _greedy_generators_from_table(table: np.ndarray) -> List[int]:
    tmp = FiniteGroup(table, [int(a) for a in range(table.shape[0])])
    return _greedy_generators(tmp, list(range(tmp.order)))


def _subgroup_indices(g: FiniteGroup, sub) -> List[int]:
    if isinstance(sub, Subgroup):
        return [int(a) for a in sub.embedding.values]
    if isinstance(sub, GroupHom):
        if sub.target is not g:
            raise ValidationError("embedding targets a different group")
        return [int(a) for a in sub.values]
    return sorted({int(a) for a in sub})


def centralizer(g: FiniteGroup, indices: Iterable[int]) -> Subgroup:
    idx = sorted({int(a) for a in indices})
    arr = np.asarray(idx, dtype=np.int64)
    members = [a for a in range(g.order) if (g.table[a, arr] == g.table[arr, a]).all()]
    return subgroup_from_indices(g, members)


def center(g: FiniteGroup) -> Subgroup:
    return centralizer(g, range(g.order))


def conjugation_action(g: FiniteGroup, n_embedding: GroupHom, on: str = "quotient") -> ActionTable:
    """Conjugation action on a normal (abelian or not) subgroup N.

    on="group": the action of G itself; on="quotient": the induced action of
    G/N (checked to be well defined fiber by fiber).
    """
    if n_embedding.target is not g:
        raise ValidationError("embedding targets a different group")
    n_grp = n_embedding.source
    idx = [int(a) for a in n_embedding.values]
    pos = {a: k for k, a in enumerate(idx)}
    arr = np.asarray(idx, dtype=np.int64)

    def conj_row(a: int) -> np.ndarray:
        conj = g.table[g.table[a, arr], g.inverse[a]]
        try:
            return np.asarray([pos[int(c)] for c in conj], dtype=np.int64)
        except KeyError as exc:
            raise ValidationError(
                f"subgroup is not normal: conjugation by {a} escapes", witness=a
            ) from exc

    if on == "group":
        table = np.stack([conj_row(a) for a in range(g.order)])
        return ActionTable(g, n_grp, table)
    if on != "quotient":
        raise ValidationError(f"unknown actor kind {on!r}")
    q, proj = quotient(g, idx)
    rows = np.zeros((q.order, n_grp.order), dtype=np.int64)
    seen = np.zeros(q.order, dtype=bool)
    for a in range(g.order):
        row = conj_row(a)
        c = int(proj.values[a])
        if not seen[c]:
            rows[c] = row
            seen[c] = True
        elif not (rows[c] == row).all():
            raise ValidationError(
                f"conjugation action not well defined on coset {c}", witness=(c, a)
            )
    return ActionTable(q, n_grp, rows)


# ----------------------------------------------------------------- hom search


def _bfs_words(g: FiniteGroup, gens: Sequence[int]) -> List[Tuple[int, int, int]]:
    """Discovery list [(element, parent, generator position)] covering G \\ {e}."""
    seen = np.zeros(g.order, dtype=bool)
    seen[0] = True
    out: List[Tuple[int, int, int]] = []
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for gi, s in enumerate(gens):
                b = int(g.table[a, s])
                if not seen[b]:
                    seen[b] = True
                    out.append((b, a, gi))
                    nxt.append(b)
        frontier = nxt
    return out


def _propagate(
    source: FiniteGroup,
    target: FiniteGroup,
    bfs: Sequence[Tuple[int, int, int]],
    images: Sequence[int],
) -> np.ndarray:
    vals = np.zeros(source.order, dtype=np.int64)
    t = target.table
    for elem, parent, gi in bfs:
        vals[elem] = t[vals[parent], images[gi]]
    return vals


def _is_hom(source: FiniteGroup, target: FiniteGroup, vals: np.ndarray) -> bool:
    return bool((vals[source.table] == target.table[vals[:, None], vals[None, :]]).all())


def hom_make(source: FiniteGroup, target: FiniteGroup, generator_images: Sequence[int]) -> GroupHom:
    """The unique homomorphism sending source.generators to the given images."""
    images = [int(v) for v in generator_images]
    if len(images) != len(source.generators):
        raise ValidationError(
            f"need {len(source.generators)} generator images, got {len(images)}"
        )
    if any(v < 0 or v >= target.order for v in images):
        raise ValidationError("generator image out of range")
    bfs = _bfs_words(source, source.generators)
    vals = _propagate(source, target, bfs, images)
    if not _is_hom(source, target, vals):
        raise ValidationError(
            f"generator images {images} are inconsistent with the relations of the source",
            witness=images,
        )
    return GroupHom(source, target, vals, validate=False)


def enumerate_homs(
    source: FiniteGroup, target: FiniteGroup, budget: Optional[Budgets] = None
) -> List[GroupHom]:
    """All homomorphisms source -> target, by generator-image search."""
    budget = budget or current_budgets()
    gens = source.generators
    src_orders = source.element_orders()
    tgt_orders = target.element_orders()
    cands = [
        [h for h in range(target.order) if int(src_orders[s]) % int(tgt_orders[h]) == 0]
        for s in gens
    ]
    total = 1
    for c in cands:
        total *= len(c)
    if total > budget.endo_scan_candidates:
        raise BudgetExceeded(
            f"hom search needs {total} candidates, budget {budget.endo_scan_candidates}"
        )
    bfs = _bfs_words(source, gens)
    out = []
    for images in itertools.product(*cands):
        vals = _propagate(source, target, bfs, images)
        if _is_hom(source, target, vals):
            out.append(GroupHom(source, target, vals, validate=False))
    out.sort(key=lambda h: tuple(h.values.tolist()))
    return out


def enumerate_endos(g: FiniteGroup, budget: Optional[Budgets] = None) -> List[GroupHom]:
    return enumerate_homs(g, g, budget=budget)


def enumerate_automorphisms(g: FiniteGroup, budget: Optional[Budgets] = None) -> List[GroupHom]:
    return [h for h in enumerate_homs(g, g, budget=budget) if h.is_bijective()]


def aut_group(g: FiniteGroup, budget: Optional[Budgets] = None) -> Tuple[FiniteGroup, List[Tuple[int, ...]]]:
    """The automorphism group as a table group.

    Returns (A, perms) where perms[k] is the value tuple of automorphism k and
    A.table is composition: (a*b)(x) = a(b(x)).  The identity sits at index 0.
    """
    auts = sorted(tuple(h.values.tolist()) for h in enumerate_automorphisms(g, budget=budget))
    pos = {p: k for k, p in enumerate(auts)}
    k = len(auts)
    table = np.zeros((k, k), dtype=np.int64)
    for a, pa in enumerate(auts):
        arr_a = np.asarray(pa)
        for b, pb in enumerate(auts):
            table[a, b] = pos[tuple(arr_a[np.asarray(pb)].tolist())]
    grp = FiniteGroup(table, _greedy_generators_from_table(table),
                      labels=[f"a{i}" for i in range(k)], name=f"Aut({g.name or g.order})")
    return grp, auts


def action_from_hom(actor: FiniteGroup, module: FiniteGroup, hom_to_aut: GroupHom,
                    perms: Sequence[Tuple[int, ...]]) -> ActionTable:
    table = np.stack([np.asarray(perms[int(hom_to_aut.values[a])]) for a in range(actor.order)])
    return ActionTable(actor, module, table)


def enumerate_actions(
    actor: FiniteGroup, module: FiniteGroup, budget: Optional[Budgets] = None
) -> List[ActionTable]:
    """All actions of `actor` on `module`, i.e. all homs actor -> Aut(module)."""
    aut, perms = aut_group(module, budget=budget)
    homs = enumerate_homs(actor, aut, budget=budget)
    return [action_from_hom(actor, module, h, perms) for h in homs]


def find_isomorphism(
    a: FiniteGroup, b: FiniteGroup, budget: Optional[Budgets] = None
) -> Optional[GroupHom]:
    """Brute-force isomorphism search by generator images; None if not isomorphic."""
    budget = budget or current_budgets()
    if max(a.order, b.order) > budget.iso_search_max_order:
        raise BudgetExceeded(
            f"isomorphism search capped at order {budget.iso_search_max_order}"
        )
    if a.order != b.order or a.is_abelian() != b.is_abelian():
        return None
    if sorted(a.element_orders().tolist()) != sorted(b.element_orders().tolist()):
        return None
    orders_a = a.element_orders()
    orders_b = b.element_orders()
    cands = [
        [h for h in range(b.order) if int(orders_b[h]) == int(orders_a[s])]
        for s in a.generators
    ]
    bfs = _bfs_words(a, a.generators)
    for images in itertools.product(*cands):
        vals = _propagate(a, b, bfs, images)
        if len(set(vals.tolist())) == a.order and _is_hom(a, b, vals):
            return GroupHom(a, b, vals, validate=False)
    return None


# ----------------------------------------------------------------- JSON format


def group_to_json(g: FiniteGroup) -> dict:
    return {
        "order": g.order,
        "table": g.table.tolist(),
        "generators": list(g.generators),
        "labels": list(g.labels),
    }


def group_from_json(data: dict, name: str = "") -> FiniteGroup:
    try:
        table = data["table"]
        generators = data["generators"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"group JSON needs 'table' and 'generators': {exc}") from exc
    labels = data.get("labels")
    g = FiniteGroup(table, generators, labels=labels, name=name or str(data.get("name", "")))
    if "order" in data and int(data["order"]) != g.order:
        raise ValidationError(f"declared order {data['order']} != table order {g.order}")
    return g


def load_group(path: str) -> FiniteGroup:
    with open(path, "r", encoding="utf-8") as fh:
        return group_from_json(json.load(fh))


def save_group(g: FiniteGroup, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(group_to_json(g), fh, indent=2, sort_keys=True)
        fh.write("\n")
