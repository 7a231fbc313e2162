"""Group rings and their centers, with exact cyclotomic coefficients.

A central element is stored through its character components: the value of
each irreducible character (normalized by degree) on the element.  This is
the form in which integrality in a maximal order is checked, and it makes
multiplication componentwise.
"""

from __future__ import annotations

from fractions import Fraction

from .characters import CharacterTable, irreducibles_monomial
from .cyclotomic import Cyclo
from .errors import CentralityError, GroupError
from .groups import FiniteGroup


class GroupRingElement:
    """Sparse element of Q(zeta)[G]: dict element index -> Cyclo coefficient."""

    def __init__(self, group: FiniteGroup, coeffs=None):
        self.group = group
        self.coeffs = {}
        for g, c in (coeffs or {}).items():
            c = c if isinstance(c, Cyclo) else Cyclo.rational(c)
            if not c.is_zero():
                self.coeffs[int(g)] = c

    @staticmethod
    def basis(group: FiniteGroup, g: int) -> "GroupRingElement":
        return GroupRingElement(group, {g: Cyclo.one()})

    @staticmethod
    def scalar(group: FiniteGroup, c) -> "GroupRingElement":
        return GroupRingElement(group, {0: c})

    @staticmethod
    def norm_element(group: FiniteGroup, elems) -> "GroupRingElement":
        """Sum of the listed group elements (N_H for a subgroup H)."""
        return GroupRingElement(group, {g: Cyclo.one() for g in elems})

    def coeff(self, g: int) -> Cyclo:
        return self.coeffs.get(g, Cyclo.zero())

    def __add__(self, other):
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, Cyclo.zero()) + c
        return GroupRingElement(self.group, out)

    def __neg__(self):
        return GroupRingElement(self.group, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return GroupRingElement(self.group, {g: c * other for g, c in self.coeffs.items()})
        if other.group is not self.group and other.group.order != self.group.order:
            raise GroupError("elements live over different groups")
        out: dict[int, Cyclo] = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                g = self.group.mul(a, b)
                prod = ca * cb
                out[g] = out.get(g, Cyclo.zero()) + prod
        return GroupRingElement(self.group, out)

    __rmul__ = __mul__

    def sharp(self) -> "GroupRingElement":
        """The anti-involution g -> g^(-1), extended linearly."""
        return GroupRingElement(
            self.group, {self.group.inverse(g): c for g, c in self.coeffs.items()}
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(c.is_algebraic_integer() for c in self.coeffs.values())

    def is_p_integral(self, p: int) -> bool:
        return all(c.is_p_integral(p) for c in self.coeffs.values())

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        parts = [f"({c!r})*{self.group.labels[g]}" for g, c in sorted(self.coeffs.items())]
        return " + ".join(parts) if parts else "0"


class CentralElement:
    """Element of the center of Q(zeta)[G], stored by character components.

    components[i] = chi_i(x) / chi_i(1) for the i-th irreducible of the
    table; multiplication is componentwise in this coordinate system.
    """

    def __init__(self, table: CharacterTable, components):
        self.table = table
        self.group = table.group
        comps = [c if isinstance(c, Cyclo) else Cyclo.rational(c) for c in components]
        if len(comps) != len(table):
            raise GroupError("one component per irreducible expected")
        self.components = tuple(comps)

    @staticmethod
    def from_group_ring(table: CharacterTable, x: GroupRingElement) -> "CentralElement":
        group = table.group
        ids = group.class_index()
        for cls in group.conjugacy_classes():
            ref = x.coeff(cls[0])
            for g in cls[1:]:
                if x.coeff(g) != ref:
                    raise CentralityError(
                        f"coefficients at conjugate elements {cls[0]} and {g} differ"
                    )
        comps = []
        for chi in table:
            acc = Cyclo.zero()
            for g, c in x.coeffs.items():
                acc = acc + c * chi.values[ids[g]]
            comps.append(acc * Fraction(1, chi.degree))
        return CentralElement(table, comps)

    def to_group_ring(self) -> GroupRingElement:
        group = self.group
        ids = group.class_index()
        coeffs = {}
        for g in range(group.order):
            acc = Cyclo.zero()
            gi = ids[group.inverse(g)]
            for chi, comp in zip(self.table, self.components):
                acc = acc + comp * chi.values[gi] * Fraction(chi.degree, group.order)
            if not acc.is_zero():
                coeffs[g] = acc
        return GroupRingElement(group, coeffs)

    def __add__(self, other):
        self._compat(other)
        return CentralElement(self.table, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        self._compat(other)
        return CentralElement(self.table, [a - b for a, b in zip(self.components, other.components)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return CentralElement(self.table, [a * other for a in self.components])
        self._compat(other)
        return CentralElement(self.table, [a * b for a, b in zip(self.components, other.components)])

    __rmul__ = __mul__

    def _compat(self, other):
        if other.table is not self.table and len(other.table) != len(self.table):
            raise GroupError("central elements use different character tables")

    def sharp(self) -> "CentralElement":
        """Image under g -> g^(-1): permutes components by contragredience."""
        out = [None] * len(self.components)
        for i, comp in enumerate(self.components):
            out[self.table.contragredient_index(i)] = comp
        return CentralElement(self.table, out)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        if not isinstance(other, CentralElement):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        return f"CentralElement({list(self.components)!r})"


def idempotent_eps(table: CharacterTable, h_elems) -> CentralElement:
    """Central idempotent |H|^(-1) N_H for a normal subgroup H: component 1
    exactly at characters trivial on H."""
    group = table.group
    h = sorted(set(h_elems))
    if not group.is_subgroup(h) or not group.is_normal(h):
        raise GroupError("epsilon idempotent needs a normal subgroup")
    ids = group.class_index()
    comps = []
    for chi in table:
        deg = Cyclo.rational(chi.degree)
        trivial_on_h = all(chi.values[ids[g]] == deg for g in h)
        comps.append(Cyclo.one() if trivial_on_h else Cyclo.zero())
    return CentralElement(table, comps)


def minus_idempotent(table: CharacterTable, j: int) -> CentralElement:
    """(1 - j)/2 for a central involution j; component 1 at odd characters."""
    group = table.group
    if j == 0 or group.mul(j, j) != 0 or j not in group.center():
        raise GroupError("minus projection needs a central involution")
    ids = group.class_index()
    comps = []
    for chi in table:
        val = chi.values[ids[j]] * Fraction(1, chi.degree)
        q = val.to_fraction()
        if q not in (1, -1):
            raise GroupError("character value at a central involution must be +-1")
        comps.append(Cyclo.one() if q == -1 else Cyclo.zero())
    return CentralElement(table, comps)


class MembershipVerdict:
    """Result of a maximal-order membership test, with a failure witness."""

    def __init__(self, ok: bool, mode: str, witness=None):
        self.ok = ok
        self.mode = mode
        self.witness = witness

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok, "mode": self.mode, "witness": self.witness}

    def __repr__(self):
        return f"MembershipVerdict(ok={self.ok}, mode={self.mode!r}, witness={self.witness!r})"


def _product_pairing(table: CharacterTable, h_elems, c_elems):
    """Match Irr(G) with Irr(H) x Irr(C) for an internal direct product."""
    group = table.group
    h = sorted(set(h_elems))
    c = sorted(set(c_elems))
    sub_h, back_h = group.subgroup_as_group(h)
    sub_c, back_c = group.subgroup_as_group(c)
    pos_h = {v: k for k, v in back_h.items()}
    pos_c = {v: k for k, v in back_c.items()}
    # unique factorization g = h*c
    factor = {}
    for hh in h:
        for cc in c:
            g = group.mul(hh, cc)
            if g in factor:
                raise GroupError("not a direct product: non-unique factorization")
            factor[g] = (hh, cc)
    if len(factor) != group.order:
        raise GroupError("not a direct product: factorization does not cover the group")
    tab_h = irreducibles_monomial(sub_h)
    tab_c = irreducibles_monomial(sub_c)
    ids = group.class_index()
    ids_h = sub_h.class_index()
    ids_c = sub_c.class_index()
    pairing = {}
    for i, chi in enumerate(tab_h):
        for j, lam in enumerate(tab_c):
            vals = []
            for cls in group.conjugacy_classes():
                hh, cc = factor[cls[0]]
                vals.append(chi.values[ids_h[pos_h[hh]]] * lam.values[ids_c[pos_c[cc]]])
            idx = None
            for gidx, gchi in enumerate(table):
                if all(gchi.values[t] == vals[t] for t in range(len(vals))):
                    idx = gidx
                    break
            if idx is None:
                raise GroupError("product character not found in the table")
            pairing[(i, j)] = idx
    return tab_h, tab_c, pairing, back_c, pos_c, ids


def product_coefficients(x: CentralElement, h_elems, c_elems):
    """Coefficients over the abelian factor: for each chi in Irr(H) and c in C,
    alpha_chi(c) = |C|^(-1) sum_lambda comp[chi*lambda] lambda(c)^(-1)."""
    tab_h, tab_c, pairing, back_c, pos_c, _ = _product_pairing(x.table, h_elems, c_elems)
    sub_c = tab_c.group
    ids_c = sub_c.class_index()
    out = {}
    for i in range(len(tab_h)):
        for ci in range(sub_c.order):
            acc = Cyclo.zero()
            inv_class = ids_c[sub_c.inverse(ci)]
            for j, lam in enumerate(tab_c):
                acc = acc + x.components[pairing[(i, j)]] * lam.values[inv_class]
            out[(i, back_c[ci])] = acc * Fraction(1, sub_c.order)
    return out


def max_order_membership(x: CentralElement, mode: str = "full",
                         product=None, p: int | None = None) -> MembershipVerdict:
    """Integrality of a central element in the maximal order.

    mode "full": every character component must be an algebraic integer.
    mode "p-local": components only need to be p-integral.
    mode "product": for a direct product G = H x C, the coefficients over C
    (per irreducible of H) must be algebraic integers.
    """
    if mode == "full" or mode == "p-local":
        for i, comp in enumerate(x.components):
            ok = comp.is_p_integral(p) if mode == "p-local" else comp.is_algebraic_integer()
            if not ok:
                return MembershipVerdict(False, mode, {"chiIndex": i, "value": comp.to_json()})
        return MembershipVerdict(True, mode)
    if mode == "product":
        if product is None:
            raise GroupError("product mode needs the (H, C) decomposition")
        coeffs = product_coefficients(x, product[0], product[1])
        for (i, c), val in sorted(coeffs.items()):
            ok = val.is_p_integral(p) if p is not None else val.is_algebraic_integer()
            if not ok:
                return MembershipVerdict(
                    False, mode, {"chiIndex": i, "cElement": c, "value": val.to_json()}
                )
        return MembershipVerdict(True, mode)
    raise GroupError(f"unknown membership mode {mode!r}")
