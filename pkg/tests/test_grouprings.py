"""Group rings, central elements, idempotents, maximal-order membership."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from skv.characters import irreducibles_monomial
from skv.cyclotomic import Cyclo
from skv.errors import CentralityError, GroupError
from skv.groups import detect_direct_product, named_group
from skv.grouprings import (CentralElement, GroupRingElement, idempotent_eps,
                            max_order_membership, minus_idempotent,
                            product_coefficients)


def test_group_ring_basic_algebra():
    s3 = named_group("S3")
    a = GroupRingElement.basis(s3, 1)
    b = GroupRingElement.basis(s3, 2)
    assert a * b == GroupRingElement.basis(s3, s3.mul(1, 2))
    assert (a + b) - b == a
    assert (a - a).is_zero()
    two = GroupRingElement.scalar(s3, Fraction(2))
    assert two * a == a + a
    assert a * 2 == a + a


def test_norm_element_is_idempotent_up_to_order():
    s3 = named_group("S3")
    a3 = s3.commutator_subgroup()
    n = GroupRingElement.norm_element(s3, a3)
    assert n * n == n * 3


def test_sharp_is_an_anti_involution():
    d4 = named_group("D4")
    x = GroupRingElement(d4, {1: Cyclo.zeta(4), 3: Cyclo.rational(2)})
    y = GroupRingElement(d4, {2: Cyclo.one(), 5: Cyclo.rational(Fraction(1, 3))})
    assert x.sharp().sharp() == x
    assert (x * y).sharp() == y.sharp() * x.sharp()


def test_group_ring_hash_consistent_with_eq():
    c2 = named_group("C2")
    a = GroupRingElement(c2, {0: Cyclo.one(), 1: Cyclo.rational(0)})
    b = GroupRingElement.basis(c2, 0)
    assert a == b and hash(a) == hash(b)


def test_integrality_predicates():
    c2 = named_group("C2")
    x = GroupRingElement(c2, {0: Cyclo.rational(Fraction(1, 2))})
    assert not x.is_integral()
    assert x.is_p_integral(3) and not x.is_p_integral(2)
    assert GroupRingElement(c2, {1: Cyclo.zeta(4)}).is_integral()


def test_central_element_roundtrip():
    s3 = named_group("S3")
    table = irreducibles_monomial(s3)
    # class sums are central
    cls = s3.conjugacy_classes()[1]
    x = GroupRingElement.norm_element(s3, cls)
    cent = CentralElement.from_group_ring(table, x)
    assert cent.to_group_ring() == x


def test_non_central_element_rejected():
    s3 = named_group("S3")
    table = irreducibles_monomial(s3)
    refl = next(g for g in range(1, 6) if s3.element_order(g) == 2)
    with pytest.raises(CentralityError):
        CentralElement.from_group_ring(table, GroupRingElement.basis(s3, refl))


def test_central_multiplication_is_componentwise():
    s3 = named_group("S3")
    table = irreducibles_monomial(s3)
    classes = s3.conjugacy_classes()
    x = CentralElement.from_group_ring(
        table, GroupRingElement.norm_element(s3, classes[1]))
    y = CentralElement.from_group_ring(
        table, GroupRingElement.norm_element(s3, classes[2]))
    prod = x * y
    for a, b, c in zip(x.components, y.components, prod.components):
        assert a * b == c
    # and it matches the group-ring product
    assert prod.to_group_ring() == x.to_group_ring() * y.to_group_ring()


def test_central_sharp_matches_group_ring_sharp():
    c6 = named_group("C6")
    table = irreducibles_monomial(c6)
    x = GroupRingElement(c6, {1: Cyclo.rational(3), 4: Cyclo.zeta(3)})
    cent = CentralElement.from_group_ring(table, x)
    assert cent.sharp().to_group_ring() == x.sharp()


def test_idempotent_eps():
    s3 = named_group("S3")
    table = irreducibles_monomial(s3)
    a3 = s3.commutator_subgroup()
    eps = idempotent_eps(table, a3)
    assert eps * eps == eps
    assert eps.to_group_ring() == \
        GroupRingElement.norm_element(s3, a3) * Fraction(1, 3)
    with pytest.raises(GroupError):
        refl = next(g for g in range(1, 6) if s3.element_order(g) == 2)
        idempotent_eps(table, [0, refl])  # not normal


def test_minus_idempotent():
    c2 = named_group("C2")
    table = irreducibles_monomial(c2)
    em = minus_idempotent(table, 1)
    assert em * em == em
    assert em.to_group_ring() == \
        (GroupRingElement.basis(c2, 0) - GroupRingElement.basis(c2, 1)) \
        * Fraction(1, 2)
    with pytest.raises(GroupError):
        minus_idempotent(irreducibles_monomial(named_group("C3")), 1)


def test_membership_full_and_p_local():
    c2 = named_group("C2")
    table = irreducibles_monomial(c2)
    good = CentralElement(table, [Cyclo.rational(3), Cyclo.rational(-1)])
    assert max_order_membership(good, "full")
    bad = CentralElement(table, [Cyclo.rational(Fraction(1, 2)), Cyclo.one()])
    verdict = max_order_membership(bad, "full")
    assert not verdict and verdict.witness["chiIndex"] == 0
    assert max_order_membership(bad, "p-local", p=3)
    assert not max_order_membership(bad, "p-local", p=2)


def test_membership_product_mode():
    g = named_group("S3xC2")
    table = irreducibles_monomial(g)
    h, c = detect_direct_product(g)
    # an honest group-ring integer passes product mode
    x = CentralElement.from_group_ring(
        table, GroupRingElement.norm_element(g, list(c)))
    assert max_order_membership(x, "product", product=(h, c))
    # components can be integral while the product coefficients are not:
    # split an odd value across the two characters of C
    comps = []
    ids = g.class_index()
    j = [e for e in c if e != 0][0]
    tab_pairs = []
    for chi in table:
        val = chi.values[ids[j]] * Fraction(1, chi.degree)
        tab_pairs.append(val.to_fraction())
    comps = [Cyclo.rational(1 if s == 1 else 2) for s in tab_pairs]
    y = CentralElement(table, comps)
    coeffs = product_coefficients(y, h, c)
    assert any(not v.is_algebraic_integer() for v in coeffs.values())
    verdict = max_order_membership(y, "product", product=(h, c))
    assert not verdict and "cElement" in verdict.witness


def test_product_coefficients_reconstruct_components():
    g = named_group("S3xC2")
    table = irreducibles_monomial(g)
    h, c = detect_direct_product(g)
    x = CentralElement(table, [Cyclo.rational(k + 1) for k in range(len(table))])
    coeffs = product_coefficients(x, h, c)
    # alpha_chi(0) + alpha_chi(j) recovers the component at chi x trivial
    total = {i: Cyclo.zero() for i in range(3)}
    for (i, _), v in coeffs.items():
        total[i] = total[i] + v
    for i in range(3):
        assert total[i] in [Cyclo.rational(k + 1) for k in range(len(table))]


def test_membership_unknown_mode():
    table = irreducibles_monomial(named_group("C2"))
    x = CentralElement(table, [Cyclo.one(), Cyclo.one()])
    with pytest.raises(GroupError):
        max_order_membership(x, "nonsense")


small_fracs = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@settings(max_examples=30, deadline=None)
@given(st.lists(small_fracs, min_size=6, max_size=6),
       st.lists(small_fracs, min_size=6, max_size=6))
def test_from_group_ring_is_a_ring_map_on_central_elements(xs, ys):
    c6 = named_group("C6")
    table = irreducibles_monomial(c6)
    x = GroupRingElement(c6, {g: Cyclo.rational(q) for g, q in enumerate(xs)})
    y = GroupRingElement(c6, {g: Cyclo.rational(q) for g, q in enumerate(ys)})
    cx = CentralElement.from_group_ring(table, x)
    cy = CentralElement.from_group_ring(table, y)
    assert CentralElement.from_group_ring(table, x * y) == cx * cy
    assert CentralElement.from_group_ring(table, x + y) == cx + cy
