"""Second cohomology: cocycle laws, both computation routes, transport maps."""

from math import gcd

import numpy as np
import pytest

from cohomoring import BudgetExceeded, ValidationError
from cohomoring.catalog import dihedral_extension
from cohomoring.cohomology2 import (
    TwoCocycle,
    coboundary_cocycle,
    compute_h2,
    connecting_cocycle,
    inflation,
    pushforward,
)
from cohomoring.extension import centralizer_extension, extension_from_cocycle
from cohomoring.groups import (
    conjugation_action,
    enumerate_actions,
    inversion_action,
    make_cyclic,
    make_direct_product,
    trivial_action,
)


def test_two_cocycle_validation():
    c2 = make_cyclic(2)
    c4 = make_cyclic(4)
    act = trivial_action(c2, c4)
    TwoCocycle(c2, c4, act, [[0, 0], [0, 1]])
    with pytest.raises(ValidationError):
        TwoCocycle(c2, c4, act, [[0, 1], [0, 1]])  # not normalized
    with pytest.raises(ValidationError):
        TwoCocycle(c2, c4, act, [[0, 0], [0, 4]])  # out of range
    c9 = make_cyclic(9)
    act9 = trivial_action(make_cyclic(3), c9)
    with pytest.raises(ValidationError):
        # fails the cocycle identity
        TwoCocycle(make_cyclic(3), c9, act9, [[0, 0, 0], [0, 1, 0], [0, 0, 0]])


def test_cocycle_abelian_operations():
    ext = dihedral_extension(3)
    f = ext.classifying_cocycle()
    assert f.add(f.neg()).is_zero()
    assert f.scaled(2).same_values(f.add(f))
    assert f.scaled(0).is_zero()
    assert f.scaled(-1).same_values(f.neg())


def test_coboundary_is_cocycle_and_reduces_to_zero():
    c4 = make_cyclic(4)
    c6 = make_cyclic(6)
    act = trivial_action(c4, c6)
    h2 = compute_h2(c4, c6, act)
    for chain in ([0, 1, 2, 3], [0, 5, 1, 4], [0, 0, 3, 0]):
        f = coboundary_cocycle(c4, c6, act, np.array(chain))
        assert h2.is_coboundary(f)
        w = h2.coboundary_witness(f)
        assert w is not None
        assert coboundary_cocycle(c4, c6, act, w).same_values(f)


def test_trivial_action_cyclic_pairs_give_gcd():
    for m in (2, 3, 4, 6):
        for n in (2, 3, 4, 8, 12):
            qg = make_cyclic(m)
            ng = make_cyclic(n)
            h2 = compute_h2(qg, ng, trivial_action(qg, ng))
            assert h2.order == gcd(m, n), (m, n)


def test_klein_quotient_over_c2_has_eight_classes():
    v4, _, _ = make_direct_product(make_cyclic(2), make_cyclic(2), name="V4")
    c2 = make_cyclic(2)
    h2 = compute_h2(v4, c2, trivial_action(v4, c2))
    assert h2.order == 8
    assert sorted(h2.invariant_factors) == [2, 2, 2]
    seen = set()
    for coeffs, rep in h2.classes():
        assert h2.reduce(rep) == coeffs
        seen.add(coeffs)
    assert len(seen) == 8


def test_inverted_kernel_class_group():
    c2 = make_cyclic(2)
    c4 = make_cyclic(4)
    h2 = compute_h2(c2, c4, inversion_action(c2, c4))
    assert h2.invariant_factors == (2,)
    c3 = make_cyclic(3)
    h2b = compute_h2(c2, c3, inversion_action(c2, c3))
    assert h2b.order == 1


def test_linear_and_bruteforce_routes_agree():
    from cohomoring import current_budgets

    cap = current_budgets().h2_brute_candidates
    for q_ord in (2, 3, 4):
        qg = make_cyclic(q_ord)
        for n_ord in (2, 3, 4, 6):
            if n_ord ** ((q_ord - 1) ** 2) > cap:
                continue
            ng = make_cyclic(n_ord)
            for action in enumerate_actions(qg, ng):
                lin = compute_h2(qg, ng, action, method="linear")
                bru = compute_h2(qg, ng, action, method="bruteforce")
                assert lin.invariant_factors == bru.invariant_factors
                # each route may pick different generators; the reductions
                # must still be related by a group isomorphism
                factors = lin.invariant_factors
                mapping = {}
                reps = {}
                for coeffs, rep in lin.classes():
                    mapping[coeffs] = bru.reduce(rep)
                    reps[coeffs] = rep
                assert len(set(mapping.values())) == lin.order
                assert mapping[lin.zero()] == bru.zero()
                for a in mapping:
                    for b in mapping:
                        ab = tuple((x + y) % f for x, y, f in zip(a, b, factors))
                        want = tuple((x + y) % f for x, y, f
                                     in zip(mapping[a], mapping[b], factors))
                        assert mapping[ab] == want
                        assert bru.reduce(reps[a].add(reps[b])) == want


def test_reduce_is_additive():
    c2 = make_cyclic(2)
    c4 = make_cyclic(4)
    act = inversion_action(c2, c4)
    h2 = compute_h2(c2, c4, act)
    reps = dict(h2.classes())
    f = reps[(1,)]
    assert h2.reduce(f.add(f)) == (0,)
    g = f.add(coboundary_cocycle(c2, c4, act, np.array([0, 3])))
    assert h2.reduce(g) == (1,)


def test_reduce_rejects_foreign_cocycle():
    c2 = make_cyclic(2)
    c4 = make_cyclic(4)
    h2 = compute_h2(c2, c4, trivial_action(c2, c4))
    other = dihedral_extension(3).classifying_cocycle()
    with pytest.raises(ValidationError):
        h2.reduce(other)


def test_pushforward_by_equivariant_endo():
    ext = dihedral_extension(4)
    f = ext.classifying_cocycle()
    doubled = pushforward(f, [(2 * k) % 4 for k in range(4)])
    assert doubled.same_values(f.scaled(2))
    with pytest.raises(ValidationError):
        pushforward(f, [0, 1, 1, 0])  # not additive


def test_inflation_of_classifying_cocycle():
    ext = dihedral_extension(3)
    g_action = conjugation_action(ext.g_group, ext.i, on="group")
    f = ext.classifying_cocycle()
    up = inflation(f, ext.p, g_action)
    assert up.q_group is ext.g_group
    assert (up.values == f.values[np.ix_(ext.p.values, ext.p.values)]).all()
    h2g = compute_h2(ext.g_group, ext.n_group, g_action)
    # a split extension inflates to the zero class
    assert h2g.is_coboundary(up)


def test_nonsplit_inflation_dies_on_c4():
    # the middle group always splits over its own kernel copy
    c2 = make_cyclic(2)
    c4 = make_cyclic(4)
    action = trivial_action(c2, c4)
    h2 = compute_h2(c2, c4, action)
    rep = dict(h2.classes())[(1,)]
    ext = extension_from_cocycle(rep)
    g_action = conjugation_action(ext.g_group, ext.i, on="group")
    up = inflation(ext.classifying_cocycle(), ext.p, g_action)
    h2g = compute_h2(ext.g_group, ext.n_group, g_action)
    assert h2g.is_coboundary(up)


def test_connecting_cocycle_lift_independence():
    # the abelian product has a centralizer quotient of order 4, so the
    # obstruction admits many lifts
    prod, i, p = make_direct_product(make_cyclic(3), make_cyclic(4), name="C3xC4")
    from cohomoring.extension import build_extension

    ext = build_extension(i, p)
    cd = centralizer_extension(ext)
    q = ext.q_group
    pi = cd.pi
    c_grp = cd.c_sub.group
    # enumerate sections of pi and compare the obstruction class across lifts
    fibers = [np.flatnonzero(pi.values == t) for t in range(cd.qbar_group.order)]
    tau = np.zeros(q.order, dtype=np.int64)  # the zero crossed hom always maps in
    h2 = compute_h2(q, ext.n_group, ext.action)
    base = None
    count = 0
    for pick in range(min(int(np.prod([len(f) for f in fibers])), 16)):
        lift = []
        rem = pick
        ok = True
        for f in fibers:
            lift.append(int(f[rem % len(f)]))
            rem //= len(f)
        if lift[0] != 0:
            continue
        f = connecting_cocycle(q, tau, c_grp, pi, cd.n_in_c,
                               cd.q_action_on_c, ext.action, lift=lift)
        cls = h2.reduce(f)
        if base is None:
            base = cls
        assert cls == base
        count += 1
    assert count >= 2


def test_connecting_cocycle_rejects_bad_lift():
    ext = dihedral_extension(3)
    cd = centralizer_extension(ext)
    tau = np.zeros(ext.q_group.order, dtype=np.int64)
    with pytest.raises(ValidationError):
        connecting_cocycle(ext.q_group, tau, cd.c_sub.group, cd.pi, cd.n_in_c,
                           cd.q_action_on_c, ext.action,
                           lift=[1] * cd.qbar_group.order)


def test_classes_budget_gate():
    v4, _, _ = make_direct_product(make_cyclic(2), make_cyclic(2))
    c2 = make_cyclic(2)
    h2 = compute_h2(v4, c2, trivial_action(v4, c2))
    with pytest.raises(BudgetExceeded):
        list(h2.classes(max_count=3))


def test_methods_report_themselves():
    c2 = make_cyclic(2)
    c4 = make_cyclic(4)
    act = trivial_action(c2, c4)
    assert compute_h2(c2, c4, act, method="linear").method == "linear"
    assert compute_h2(c2, c4, act, method="bruteforce").method == "bruteforce"
    assert compute_h2(c2, c4, act, method="auto").method in ("linear", "bruteforce")
