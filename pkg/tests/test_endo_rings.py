"""Endomorphism rings of extensions: twisted operations, ideals, restrictions."""

from math import gcd

import numpy as np
import pytest

from cohomoring import ValidationError
from cohomoring.catalog import dihedral_extension
from cohomoring.endo_rings import (
    action_preserving_quotient_endos,
    centralizer_displacement,
    endo_from_centralizer_displacement,
    equivariant_endo_ring,
    fiber_endo_ring,
    induced_quotient_endo,
    kernel_fixing_endos,
    quotient_endo_displacement,
    quotient_endo_from_displacement,
)
from cohomoring.extension import build_extension, centralizer_extension
from cohomoring.groups import (
    GroupHom,
    inversion_action,
    make_cyclic,
    make_direct_product,
    trivial_action,
)
from cohomoring.rings import quasi_regular_indices


def _product_extension():
    prod, i, p = make_direct_product(make_cyclic(3), make_cyclic(4), name="C3xC4")
    return build_extension(i, p)


def test_equivariant_endo_ring_of_cyclic():
    c6 = make_cyclic(6)
    c1 = make_cyclic(1)
    mr = equivariant_endo_ring(c6, trivial_action(c1, c6))
    # endomorphisms of C6 are the six multiplication maps
    assert mr.ring.order == 6
    assert not mr.elements[0].any()
    assert mr.ring.one is not None
    one = mr.elements[mr.ring.one]
    assert (one == np.arange(6)).all()
    # locate round-trips and rejects non-endomorphisms
    for k, vals in enumerate(mr.elements):
        assert mr.locate(vals) == k
    with pytest.raises(ValidationError):
        mr.locate([0, 1, 1, 0, 0, 0])


def test_equivariant_constraint_filters_endos():
    c2 = make_cyclic(2)
    c8 = make_cyclic(8)
    full = equivariant_endo_ring(c8, trivial_action(c2, c8))
    inv = equivariant_endo_ring(c8, inversion_action(c2, c8))
    # inversion commutes with every multiplication map, so the two agree
    assert full.ring.order == inv.ring.order == 8
    v4, _, _ = make_direct_product(make_cyclic(2), make_cyclic(2), name="V4")
    c1 = make_cyclic(1)
    vr = equivariant_endo_ring(v4, trivial_action(c1, v4))
    # End(C2 x C2) is the ring of 2x2 matrices over the field with 2 elements
    assert vr.ring.order == 16


def test_fiber_endo_ring_sizes_on_dihedral():
    for n in (3, 4, 5):
        ext = dihedral_extension(n)
        fe = fiber_endo_ring(ext)
        assert fe.ring.order == n * n
        assert len(fe.ideal_indices) == n
        assert len(fe.aut_indices) == n * len([k for k in range(n) if gcd(k, n) == 1])
        assert fe.module_ring.ring.order == n


def test_identity_endo_is_ring_zero():
    ext = dihedral_extension(4)
    fe = fiber_endo_ring(ext)
    assert (fe.endos[0] == np.arange(ext.g_group.order)).all()
    assert not fe.displacement(0).values.any()
    # ring zero of a finite ring always sits at index 0
    assert (fe.ring.add_table[0] == np.arange(fe.ring.order)).all()


def test_members_are_exactly_quotient_identity_endos():
    ext = dihedral_extension(3)
    fe = fiber_endo_ring(ext)
    g = ext.g_group
    for vals in fe.endos:
        GroupHom(g, g, vals)  # is an endomorphism
        assert (ext.p.values[vals] == ext.p.values).all()
    # count against an independent generator-image enumeration
    from cohomoring.groups import enumerate_endos

    direct = [h for h in enumerate_endos(g)
              if (ext.p.values[h.values] == ext.p.values).all()]
    assert len(direct) == fe.ring.order


def test_twisted_sum_and_product_against_definitions():
    ext = dihedral_extension(4)
    fe = fiber_endo_ring(ext)
    g = ext.g_group
    arange = np.arange(g.order)
    inv = g.inverse
    for a in range(fe.size):
        va = fe.endos[a]
        da = g.table[va, inv[arange]]  # displacement of a on the whole group
        for b in range(fe.size):
            vb = fe.endos[b]
            # twisted sum: apply both displacements, then the element
            s = g.table[g.table[da, g.table[vb, inv[arange]]], arange]
            assert fe.ring.add_table[a, b] == fe.locate(s)
            # twisted product: displacement of a evaluated on displacement of b
            p = g.table[da[g.table[vb, inv[arange]]], arange]
            assert fe.ring.mul_table[a, b] == fe.locate(p)


def test_ideal_members_fix_kernel_and_square_to_zero():
    ext = dihedral_extension(6)
    fe = fiber_endo_ring(ext)
    em = ext.i.values
    for k in fe.ideal_indices:
        assert (fe.endos[k][em] == em).all()
    ideal = set(int(k) for k in fe.ideal_indices)
    non_ideal = [k for k in range(fe.size) if k not in ideal]
    for k in non_ideal:
        assert not (fe.endos[k][em] == em).all()
    for a in fe.ideal_indices:
        for b in fe.ideal_indices:
            assert fe.ring.mul_table[a, b] == 0


def test_invertibles_are_quasi_regulars_and_automorphisms():
    ext = dihedral_extension(6)
    fe = fiber_endo_ring(ext)
    assert sorted(int(k) for k in fe.aut_indices) == quasi_regular_indices(fe.ring)
    g = ext.g_group
    for k in fe.aut_indices:
        assert len(set(fe.endos[k].tolist())) == g.order
    others = set(range(fe.size)) - set(int(k) for k in fe.aut_indices)
    for k in others:
        assert len(set(fe.endos[k].tolist())) < g.order


def test_restriction_is_ring_hom_into_module_ring():
    ext = dihedral_extension(5)
    fe = fiber_endo_ring(ext)
    res = fe.res
    assert res.source is fe.ring and res.target is fe.module_ring.ring
    n = ext.n_group
    arange = np.arange(n.order)
    for k in range(fe.size):
        # res carries the displacement; the plain restriction is shifted by
        # the identity: alpha(m) = psi(m) + m on the kernel
        psi_on_n = fe.module_ring.elements[int(res.values[k])]
        disp = fe.displacement(k).values[ext.i.values]
        assert (psi_on_n == disp).all()
        plain = fe.restriction_values(k)
        assert (plain == n.table[psi_on_n, arange]).all()
        assert fe.restriction_index(k) == fe.module_ring.locate(plain)


def test_restriction_kernel_is_the_ideal():
    ext = dihedral_extension(4)
    fe = fiber_endo_ring(ext)
    # the identity restriction sits at the module ring zero under the shift
    zero_hits = [k for k in range(fe.size) if int(fe.res.values[k]) == 0]
    assert sorted(zero_hits) == sorted(int(k) for k in fe.ideal_indices)


def test_kernel_fixing_endos_monoid():
    ext = dihedral_extension(3)
    kf = kernel_fixing_endos(ext)
    em = ext.i.values
    keys = set()
    for vals in kf:
        assert (vals[em] == em).all()
        keys.add(vals.tobytes())
    # closed under composition
    for a in kf:
        for b in kf:
            assert a[b].tobytes() in keys


def test_action_preserving_quotient_endos_monoid():
    ext = _product_extension()
    ap = action_preserving_quotient_endos(ext)
    act = ext.action.table
    keys = {vals.tobytes() for vals in ap}
    assert np.arange(ext.q_group.order).tobytes() in keys
    for vals in ap:
        assert (act[vals] == act).all()
        for other in ap:
            assert vals[other].tobytes() in keys


def test_centralizer_displacement_round_trip():
    ext = _product_extension()
    cd = centralizer_extension(ext)
    for vals in kernel_fixing_endos(ext):
        phi = centralizer_displacement(cd, vals)
        back = endo_from_centralizer_displacement(cd, phi)
        assert (back == vals).all()


def test_induced_quotient_endo_and_displacement_round_trip():
    ext = _product_extension()
    cd = centralizer_extension(ext)
    for vals in kernel_fixing_endos(ext):
        down = induced_quotient_endo(ext, vals)
        GroupHom(ext.q_group, ext.q_group, down)
        tau = quotient_endo_displacement(cd, down)
        back = quotient_endo_from_displacement(cd, tau)
        assert (back == down).all()


def test_induced_quotient_endo_rejects_non_descending_map():
    ext = _product_extension()
    g = ext.g_group
    # a cyclic shift of the element indices does not respect the projection
    with pytest.raises(ValidationError):
        induced_quotient_endo(ext, np.roll(np.arange(g.order), 1))


def test_displacement_escape_is_detected():
    ext = dihedral_extension(3)
    cd = centralizer_extension(ext)
    # sending the section reflection to a rotation gives a displacement that
    # is itself a reflection, outside the rotation centralizer
    alpha = np.arange(ext.g_group.order, dtype=np.int64)
    alpha[ext.section[1]] = 2
    with pytest.raises(ValidationError):
        centralizer_displacement(cd, alpha)
