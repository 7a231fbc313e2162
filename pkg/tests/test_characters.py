"""Irreducible characters via induction from linear characters."""

from fractions import Fraction

import pytest

from skv.characters import (induce_from_linear, irreducibles_monomial,
                            linear_characters)
from skv.cyclotomic import Cyclo
from skv.errors import GroupError
from skv.groups import named_group


def test_c6_linear_characters():
    c6 = named_group("C6")
    exps = linear_characters(c6)
    assert len(exps) == 6
    # all distinct and all order dividing 6
    assert len({tuple(e) for e in exps}) == 6
    for e in exps:
        assert all(x.denominator in (1, 2, 3, 6) for x in e)


def test_s3_table_shape():
    table = irreducibles_monomial(named_group("S3"))
    assert sorted(chi.degree for chi in table) == [1, 1, 2]
    assert table.trivial_index() == 0
    assert sum(chi.degree ** 2 for chi in table) == 6


def test_q8_table_shape():
    table = irreducibles_monomial(named_group("Q8"))
    assert sorted(chi.degree for chi in table) == [1, 1, 1, 1, 2]


def test_d4_table_shape():
    table = irreducibles_monomial(named_group("D4"))
    assert sorted(chi.degree for chi in table) == [1, 1, 1, 1, 2]


def test_s3xc2_table_shape():
    table = irreducibles_monomial(named_group("S3xC2"))
    assert sorted(chi.degree for chi in table) == [1, 1, 1, 1, 2, 2]


def test_orthogonality_relations():
    for name in ("S3", "D4", "Q8", "C6"):
        table = irreducibles_monomial(named_group(name))
        for i, a in enumerate(table):
            for j, b in enumerate(table):
                assert a.inner(b) == (1 if i == j else 0)


def test_certificates_induce_back():
    group = named_group("Q8")
    table = irreducibles_monomial(group)
    for chi, cert in zip(table, table.certificates):
        induced = induce_from_linear(group, cert.u_elems, cert.exps)
        assert induced.values == chi.values


def test_certificate_subgroup_is_largest_for_linear():
    table = irreducibles_monomial(named_group("S3"))
    for chi, cert in zip(table, table.certificates):
        if chi.degree == 1:
            assert len(cert.u_elems) == 6
        else:
            assert len(cert.u_elems) == 3


def test_contragredient_and_galois_indices():
    table = irreducibles_monomial(named_group("C6"))
    for i in range(len(table)):
        j = table.contragredient_index(i)
        assert table[j].values == table[i].contragredient_values()
        k = table.galois_index(i, 5)
        assert table[k].values == table[i].galois_values(5)


def test_index_of_values_rejects_unknown():
    table = irreducibles_monomial(named_group("C2"))
    with pytest.raises(GroupError):
        table.index_of_values((Cyclo.rational(3), Cyclo.rational(3)))


def test_induction_from_wrong_data_fails():
    s3 = named_group("S3")
    with pytest.raises(GroupError):
        # exponents that are not multiplicative on the subgroup
        a3 = sorted(s3.commutator_subgroup())
        bad = {a3[0]: Fraction(0), a3[1]: Fraction(1, 3), a3[2]: Fraction(1, 3)}
        induce_from_linear(s3, a3, bad)


def test_character_values_class_constant():
    group = named_group("D4")
    table = irreducibles_monomial(group)
    ids = group.class_index()
    for chi in table:
        for g in range(group.order):
            assert chi.value_at(g) == chi.values[ids[g]]


def test_degree_one_characters_are_homomorphisms():
    group = named_group("S3xC2")
    table = irreducibles_monomial(group)
    for chi in table:
        if chi.degree != 1:
            continue
        for a in range(group.order):
            for b in range(group.order):
                assert chi.value_at(group.mul(a, b)) == \
                    chi.value_at(a) * chi.value_at(b)
