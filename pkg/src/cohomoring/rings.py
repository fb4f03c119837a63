"""Finite rings as explicit operation tables, not assumed unital.

The additive zero must sit at index 0, mirroring the group convention.  All
axioms are checked exhaustively at construction, with the associativity and
distributivity sweeps vectorized one slice at a time so rings of a few
hundred elements validate in well under a second.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .budgets import Budgets, current_budgets
from .errors import BudgetExceeded, ValidationError
from .groups import FiniteGroup, _greedy_generators_from_table, subgroup_from_indices

__all__ = [
    "FiniteRing",
    "RingHom",
    "zn_ring",
    "subring_from_indices",
    "quotient_ring",
    "star_table",
    "quasi_regular_indices",
    "quasi_regular_group",
    "unit_group",
    "is_square_zero_ideal",
    "check_ideal",
    "BimoduleAction",
    "semidirect_ring",
    "SemidirectRing",
    "ring_to_json",
    "ring_from_json",
]


class FiniteRing:
    """A finite ring given by full addition and multiplication tables."""

    def __init__(self, add_table, mul_table, one: Optional[int] = None,
                 labels: Optional[Sequence[str]] = None, name: str = "",
                 budget: Optional[Budgets] = None, validate: bool = True):
        budget = budget or current_budgets()
        self.add_table = np.asarray(add_table, dtype=np.int64)
        self.mul_table = np.asarray(mul_table, dtype=np.int64)
        self.order = self.add_table.shape[0]
        self.one = None if one is None else int(one)
        self.name = name
        if self.order > budget.ring_check_max_order:
            raise BudgetExceeded(
                f"ring order {self.order} exceeds check budget {budget.ring_check_max_order}")
        group_budget = replace(budget, group_check_max_order=budget.ring_check_max_order)
        gens = _greedy_generators_from_table(self.add_table)
        self.add_group = FiniteGroup(self.add_table, gens, labels=labels,
                                     name=f"{name}+" if name else "", budget=group_budget)
        self.labels = self.add_group.labels
        if validate:
            self._validate()

    def _validate(self) -> None:
        n = self.order
        add, mul = self.add_table, self.mul_table
        if mul.shape != (n, n):
            raise ValidationError(f"multiplication table must be {n}x{n}")
        if mul.min() < 0 or mul.max() >= n:
            raise ValidationError("multiplication table entries out of range")
        if not self.add_group.is_abelian():
            raise ValidationError("ring addition must be commutative")
        if (mul[0] != 0).any() or (mul[:, 0] != 0).any():
            raise ValidationError("zero must annihilate the ring on both sides")
        for a in range(n):
            if not (mul[mul[a]] == mul[a][mul]).all():
                b, c = map(int, np.argwhere(mul[mul[a]] != mul[a][mul])[0])
                raise ValidationError(
                    f"multiplication not associative at ({a}, {b}, {c})", witness=(a, b, c))
            if not (mul[a][add] == add[np.ix_(mul[a], mul[a])]).all():
                b, c = map(int, np.argwhere(mul[a][add] != add[np.ix_(mul[a], mul[a])])[0])
                raise ValidationError(
                    f"left distributivity fails at ({a}, {b}, {c})", witness=(a, b, c))
            lhs = mul[add[a]]
            rhs = add[mul[a][None, :], mul]
            if not (lhs == rhs).all():
                b, c = map(int, np.argwhere(lhs != rhs)[0])
                raise ValidationError(
                    f"right distributivity fails at ({a}, {b}, {c})", witness=(a, b, c))
        if self.one is not None:
            e = self.one
            if not (mul[e] == np.arange(n)).all() or not (mul[:, e] == np.arange(n)).all():
                raise ValidationError(f"declared identity {e} is not two-sided")

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.add_group.inverse[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def star(self, a: int, b: int) -> int:
        """The circle operation a + b + ab, a monoid with neutral element 0."""
        return self.add(self.add(a, b), self.mul(a, b))

    def label(self, a: int) -> str:
        return self.labels[a]


class RingHom:
    """A map of rings preserving both operations (not required to send 1 to 1)."""

    def __init__(self, source: FiniteRing, target: FiniteRing, values, validate: bool = True):
        self.source = source
        self.target = target
        self.values = np.asarray(values, dtype=np.int64)
        if validate:
            v = self.values
            if v.shape != (source.order,):
                raise ValidationError("ring map needs one value per source element")
            if v.min() < 0 or v.max() >= target.order:
                raise ValidationError("ring map value out of range")
            if not (v[source.add_table] == target.add_table[v[:, None], v[None, :]]).all():
                raise ValidationError("ring map is not additive")
            if not (v[source.mul_table] == target.mul_table[v[:, None], v[None, :]]).all():
                raise ValidationError("ring map is not multiplicative")

    def __call__(self, a: int) -> int:
        return int(self.values[a])

    def is_injective(self) -> bool:
        return len(set(self.values.tolist())) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.values.tolist())) == self.target.order


def zn_ring(n: int, name: str = "") -> FiniteRing:
    """The ring of integers mod n."""
    idx = np.arange(n, dtype=np.int64)
    add = (idx[:, None] + idx[None, :]) % n
    mul = (idx[:, None] * idx[None, :]) % n
    return FiniteRing(add, mul, one=1 % n, labels=[str(k) for k in range(n)],
                      name=name or f"Z{n}")


def subring_from_indices(ring: FiniteRing, indices, name: str = "") -> Tuple[FiniteRing, np.ndarray]:
    """The subring on a subset (which must contain 0 and be closed), plus its index map."""
    idx = sorted({int(a) for a in indices})
    if not idx or idx[0] != 0:
        raise ValidationError("a subring must contain 0")
    pos = {a: k for k, a in enumerate(idx)}
    arr = np.asarray(idx, dtype=np.int64)
    sub_add = ring.add_table[np.ix_(arr, arr)]
    sub_mul = ring.mul_table[np.ix_(arr, arr)]
    for t, what in ((sub_add, "addition"), (sub_mul, "multiplication")):
        bad = ~np.isin(t, arr)
        if bad.any():
            a, b = map(int, np.argwhere(bad)[0])
            raise ValidationError(
                f"subset not closed under {what}: {idx[a]}, {idx[b]}", witness=(idx[a], idx[b]))
    remap = np.vectorize(pos.__getitem__)
    one = pos.get(ring.one) if ring.one is not None and ring.one in pos else None
    sub = FiniteRing(remap(sub_add), remap(sub_mul), one=one,
                     labels=[ring.labels[a] for a in idx], name=name)
    return sub, arr


def check_ideal(ring: FiniteRing, indices) -> np.ndarray:
    """Validate a two-sided ideal given by element indices; returns the sorted array."""
    idx = sorted({int(a) for a in indices})
    if not idx or idx[0] != 0:
        raise ValidationError("an ideal must contain 0")
    arr = np.asarray(idx, dtype=np.int64)
    member = np.zeros(ring.order, dtype=bool)
    member[arr] = True
    if not member[ring.add_table[np.ix_(arr, arr)]].all():
        raise ValidationError("subset not closed under addition")
    if not member[ring.mul_table[:, arr]].all():
        raise ValidationError("subset does not absorb left multiplication")
    if not member[ring.mul_table[arr, :]].all():
        raise ValidationError("subset does not absorb right multiplication")
    return arr


def is_square_zero_ideal(ring: FiniteRing, indices) -> bool:
    """True when the indices form a two-sided ideal whose products all vanish."""
    try:
        arr = check_ideal(ring, indices)
    except ValidationError:
        return False
    return bool((ring.mul_table[np.ix_(arr, arr)] == 0).all())


def quotient_ring(ring: FiniteRing, ideal_indices) -> Tuple[FiniteRing, RingHom]:
    """The quotient by a two-sided ideal, with the projection map."""
    arr = check_ideal(ring, ideal_indices)
    sub = subgroup_from_indices(ring.add_group, arr.tolist())
    from .groups import quotient as group_quotient

    q_add_group, proj = group_quotient(ring.add_group, sub)
    h = q_add_group.order
    pv = proj.values
    lifted = pv[ring.mul_table]
    mul_q = np.zeros((h, h), dtype=np.int64)
    mul_q[pv[:, None], pv[None, :]] = lifted
    bad = mul_q[pv[:, None], pv[None, :]] != lifted
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        raise ValidationError(
            f"multiplication does not descend to cosets at ({a}, {b})", witness=(a, b))
    one_q = None if ring.one is None else int(pv[ring.one])
    qring = FiniteRing(q_add_group.table, mul_q, one=one_q,
                       labels=list(q_add_group.labels), name=f"{ring.name}-quot")
    return qring, RingHom(ring, qring, pv)


# ---------------------------------------------------------- quasi-regularity


def star_table(ring: FiniteRing) -> np.ndarray:
    """Full table of the circle operation a + b + ab."""
    return ring.add_table[ring.add_table, ring.mul_table]


def quasi_regular_indices(ring: FiniteRing) -> List[int]:
    """Elements with a two-sided inverse under the circle operation."""
    t = star_table(ring)
    left_zero = t == 0
    out = []
    for r in range(ring.order):
        partners = np.flatnonzero(left_zero[r] & left_zero[:, r])
        if partners.size:
            out.append(r)
    return out


def quasi_regular_group(ring: FiniteRing, budget: Optional[Budgets] = None
                        ) -> Tuple[FiniteGroup, np.ndarray]:
    """The group of quasi-regular elements under the circle operation."""
    budget = budget or current_budgets()
    qr = quasi_regular_indices(ring)
    arr = np.asarray(qr, dtype=np.int64)
    t = star_table(ring)[np.ix_(arr, arr)]
    pos = {int(a): k for k, a in enumerate(arr)}
    if not np.isin(t, arr).all():
        a, b = map(int, np.argwhere(~np.isin(t, arr))[0])
        raise ValidationError(
            f"circle product of quasi-regular elements {int(arr[a])}, {int(arr[b])} "
            "is not quasi-regular")
    table = np.vectorize(pos.__getitem__)(t)
    gens = _greedy_generators_from_table(table)
    group_budget = replace(budget, group_check_max_order=budget.ring_check_max_order)
    grp = FiniteGroup(table, gens, labels=[ring.labels[int(a)] for a in arr],
                      name=f"QR({ring.name})" if ring.name else "QR",
                      budget=group_budget)
    return grp, arr


def unit_group(ring: FiniteRing, budget: Optional[Budgets] = None
               ) -> Tuple[FiniteGroup, np.ndarray]:
    """The group of two-sided units of a unital ring, identity listed first."""
    budget = budget or current_budgets()
    if ring.one is None:
        raise ValidationError("unit group needs a unital ring")
    m = ring.mul_table
    e = ring.one
    is_unit = np.zeros(ring.order, dtype=bool)
    for r in range(ring.order):
        partners = np.flatnonzero((m[r] == e) & (m[:, r] == e))
        if partners.size:
            is_unit[r] = True
    others = [int(r) for r in np.flatnonzero(is_unit) if int(r) != e]
    order_list = [e] + others
    arr = np.asarray(order_list, dtype=np.int64)
    pos = {int(a): k for k, a in enumerate(arr)}
    t = m[np.ix_(arr, arr)]
    if not np.isin(t, arr).all():
        raise ValidationError("units are not closed under multiplication")
    table = np.vectorize(pos.__getitem__)(t)
    gens = _greedy_generators_from_table(table)
    group_budget = replace(budget, group_check_max_order=budget.ring_check_max_order)
    grp = FiniteGroup(table, gens, labels=[ring.labels[int(a)] for a in arr],
                      name=f"U({ring.name})" if ring.name else "U", budget=group_budget)
    return grp, arr


# ------------------------------------------------------------- constructions


@dataclass
class BimoduleAction:
    """Left and right actions of a ring on an additive group, fully validated.

    left[r, s] and right[s, r] are biadditive, the left action composes with
    ring multiplication, the right action composes contravariantly on the
    other side, and the two actions balance: (r1 . s) . r2 = r1 . (s . r2).
    """

    r_ring: FiniteRing
    s_group: FiniteGroup
    left: np.ndarray
    right: np.ndarray

    def __post_init__(self) -> None:
        nr = self.r_ring.order
        ns = self.s_group.order
        self.left = np.asarray(self.left, dtype=np.int64)
        self.right = np.asarray(self.right, dtype=np.int64)
        if self.left.shape != (nr, ns) or self.right.shape != (ns, nr):
            raise ValidationError("bimodule action tables have wrong shape")
        if not self.s_group.is_abelian():
            raise ValidationError("bimodule carrier must be abelian")
        add_s = self.s_group.table
        add_r = self.r_ring.add_table
        mul_r = self.r_ring.mul_table
        lt, rt = self.left, self.right
        for r in range(nr):
            if not (lt[r][add_s] == add_s[np.ix_(lt[r], lt[r])]).all():
                raise ValidationError(f"left action of {r} is not additive")
            if not (rt[:, r][add_s] == add_s[np.ix_(rt[:, r], rt[:, r])]).all():
                raise ValidationError(f"right action of {r} is not additive")
        if not (lt[add_r] == add_s[lt[:, None, :], lt[None, :, :]]).all():
            raise ValidationError("left action is not additive in the ring argument")
        if not (rt[:, add_r] == add_s[rt[:, :, None], rt[:, None, :]]).all():
            raise ValidationError("right action is not additive in the ring argument")
        # composition with ring multiplication and the balance law
        for r1 in range(nr):
            for r2 in range(nr):
                if not (lt[mul_r[r1, r2]] == lt[r1, lt[r2]]).all():
                    raise ValidationError(f"left action not multiplicative at ({r1}, {r2})")
                if not (rt[:, mul_r[r1, r2]] == rt[rt[:, r1], r2]).all():
                    raise ValidationError(f"right action not multiplicative at ({r1}, {r2})")
                if not (rt[lt[r1], r2] == lt[r1, rt[:, r2]]).all():
                    raise ValidationError(f"actions do not balance at ({r1}, {r2})")


@dataclass
class SemidirectRing:
    """A ring on carrier-pairs (s, r), with the carrier as a square-zero ideal."""

    ring: FiniteRing
    action: BimoduleAction
    s_indices: np.ndarray  # index of (s, 0) for each s
    r_indices: np.ndarray  # index of (0, r) for each r

    def pair_index(self, s: int, r: int) -> int:
        return int(s * self.action.r_ring.order + r)


def semidirect_ring(action: BimoduleAction, name: str = "",
                    budget: Optional[Budgets] = None) -> SemidirectRing:
    """Ring on pairs (s, r): products multiply in the ring and act on the carrier.

    (s1, r1)(s2, r2) = (r1.s2 + s1.r2, r1 r2); the carrier embeds as the
    square-zero ideal of pairs with vanishing ring part.
    """
    rr = action.r_ring
    sg = action.s_group
    nr, ns = rr.order, sg.order
    order = ns * nr
    s1, r1, s2, r2 = np.meshgrid(np.arange(ns), np.arange(nr), np.arange(ns), np.arange(nr),
                                 indexing="ij")
    add_s, add_r = sg.table, rr.add_table
    s_out = add_s[s1, s2]
    r_out = add_r[r1, r2]
    add_table = (s_out * nr + r_out).reshape(order, order)
    sm_out = add_s[action.left[r1, s2], action.right[s1, r2]]
    rm_out = rr.mul_table[r1, r2]
    mul_table = (sm_out * nr + rm_out).reshape(order, order)
    labels = [f"({sg.labels[s]};{rr.labels[r]})" for s in range(ns) for r in range(nr)]
    ring = FiniteRing(add_table, mul_table, one=None, labels=labels,
                      name=name or "semidirect", budget=budget)
    s_idx = np.arange(ns, dtype=np.int64) * nr
    r_idx = np.arange(nr, dtype=np.int64)
    return SemidirectRing(ring=ring, action=action, s_indices=s_idx, r_indices=r_idx)


# ------------------------------------------------------------------ JSON form


def ring_to_json(ring: FiniteRing) -> dict:
    data = {
        "order": ring.order,
        "add_table": ring.add_table.tolist(),
        "mul_table": ring.mul_table.tolist(),
    }
    if ring.one is not None:
        data["one"] = ring.one
    if ring.name:
        data["name"] = ring.name
    return data


def ring_from_json(data: dict, budget: Optional[Budgets] = None) -> FiniteRing:
    try:
        add = data["add_table"]
        mul = data["mul_table"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"ring JSON needs 'add_table' and 'mul_table': {exc}") from exc
    ring = FiniteRing(add, mul, one=data.get("one"), name=str(data.get("name", "")),
                      budget=budget)
    if "order" in data and int(data["order"]) != ring.order:
        raise ValidationError(f"declared order {data['order']} != table order {ring.order}")
    return ring
