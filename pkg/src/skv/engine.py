"""Assembly of equivariant Stickelberger elements and Sinnott-Kurihara
generator sets.

The sharp convention used throughout: the component of theta_S^T(r) at an
irreducible chi is L_S^T(r, contragredient chi), equivalently the sharp of
theta has chi-component L_S^T(r, chi).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .arithdata import (ExtensionFixture, GeneratorSet, PlaceSets,
                        generate_A_S, local_factor)
from .characters import Character, linear_characters
from .cyclotomic import Cyclo
from .errors import FixtureError, InternalCheckError
from .grouprings import CentralElement, GroupRingElement, _product_pairing
from .groups import detect_direct_product
from .lvalues import DirichletCharacter, L_at_nonpositive, L_ST
from .rednorm import apply_representation, monomial_representation
from .linalg import mat_det


class ThetaElement:
    """A Stickelberger element with its defining metadata."""

    SHARP_NOTE = "component at chi is L_S^T(r, contragredient chi)"

    def __init__(self, central: CentralElement, S, T, r: int, provenance: str):
        self.central = central
        self.S = sorted(set(str(x) for x in S))
        self.T = sorted(set(str(x) for x in T))
        self.r = int(r)
        self.provenance = provenance

    def sharp(self) -> CentralElement:
        return self.central.sharp()

    def to_json(self) -> dict:
        out = {
            "schema": "skvtheta/1",
            "S": self.S,
            "T": self.T,
            "r": self.r,
            "sharpConvention": self.SHARP_NOTE,
            "provenance": self.provenance,
            "components": [c.to_json() for c in self.central.components],
        }
        elem = self.central.to_group_ring()
        if elem.is_rational():
            from .cyclotomic import fraction_to_str
            out["coefficients"] = {
                self.central.group.labels[g]: fraction_to_str(c.to_fraction())
                for g, c in sorted(elem.coeffs.items())
            }
        return out


def _dirichlet_for_table(fix: ExtensionFixture):
    """Match each irreducible of an abelian fixture with the Dirichlet
    character it pulls back to under the fixture's restriction map."""
    group = fix.group
    if not group.is_abelian():
        raise FixtureError("the computed theta path needs an abelian group")
    if fix.cyclotomic is None:
        raise FixtureError("the computed theta path needs the cyclotomic field data")
    f = fix.cyclotomic["conductor"]
    mp = fix.cyclotomic["map"]
    table = fix.table
    out = [None] * len(table)
    for exps in linear_characters(group):
        idx = table.index_of_values(Character.from_linear(group, exps).values)
        key = (lambda a: a % f) if f > 1 else (lambda a: 1)
        dir_exps = {key(a): exps[mp[key(a)]]
                    for a in range(1, f + 1) if gcd(a, f) == 1 or f == 1}
        out[idx] = DirichletCharacter(f, dir_exps)
    return out


def _validate_parity(fix: ExtensionFixture, comps, r: int, context: str,
                     trivial_index: int):
    """Functional-equation parity: components that must vanish, do."""
    if fix.j is None:
        return
    table = fix.table
    ids = fix.group.class_index()
    n = 1 - r
    for i, chi in enumerate(table):
        val = chi.values[ids[fix.j]] * Fraction(1, chi.degree)
        even = val == Cyclo.one()
        forced = (even and n % 2 == 1 and i != trivial_index) or \
                 (not even and n % 2 == 0)
        if forced and not comps[i].is_zero():
            raise InternalCheckError(
                f"{context}: parity forces component {i} to vanish but it does not"
            )


def _check_galois(table, comps, context: str):
    exp = table.exponent
    for k in range(2, exp):
        if gcd(k, exp) != 1:
            continue
        for i in range(len(table)):
            if comps[table.galois_index(i, k)] != comps[i].galois(k):
                raise InternalCheckError(
                    f"{context}: components not Galois-equivariant at ({i}, sigma_{k})"
                )


def theta_abelian(fix: ExtensionFixture, sets: PlaceSets, r: int | None = None) -> ThetaElement:
    """theta_S^T(r) for an abelian fixture over the rationals, computed twice:
    once purely from Dirichlet L-values and once from the fixture's local
    determinant factors.  The two assemblies must agree exactly."""
    r = sets.r if r is None else r
    table = fix.table
    dirs = _dirichlet_for_table(fix)
    s_fin = [lab for lab in sets.S if not fix.place(lab).infinite]
    s_primes = sorted(int(lab) for lab in s_fin)
    t_primes = sorted(int(lab) for lab in sets.T)
    comps = []
    for i in range(len(table)):
        check = dirs[i].conjugate()
        # Dirichlet-side assembly
        a = L_ST(r, check, s_primes, t_primes)
        # fixture-side assembly: primitive value times local determinants
        b = L_at_nonpositive(r, check.primitive_core())
        for lab in s_fin:
            b = b * local_factor(fix, fix.place(lab), i, r, "euler_S")
        for lab in sets.T:
            b = b * local_factor(fix, fix.place(lab), i, r, "delta_T")
        if a != b:
            raise InternalCheckError(
                f"theta assembly mismatch at character {i}: "
                "Dirichlet path and local-factor path disagree"
            )
        comps.append(a)
    _check_galois(table, comps, "theta_abelian")
    _validate_parity(fix, comps, r, "theta_abelian", table.trivial_index())
    central = CentralElement(table, comps)
    elem = central.to_group_ring()
    if not elem.is_rational():
        raise InternalCheckError("theta has non-rational group-ring coefficients")
    return ThetaElement(central, sets.S, sets.T, r, "computed:dirichlet")


# -- monomial assembly ------------------------------------------------------


def translated_place_labels(fix: ExtensionFixture, m_elems, labels) -> list[str]:
    """Places of the fixed field of a subgroup above the given base places:
    one per double coset, labelled label/i."""
    out = []
    for lab in labels:
        d = fix.place(lab).decomposition
        n = len(fix.group.double_cosets(m_elems, d))
        out.extend(f"{lab}/{i}" for i in range(n))
    return sorted(out)


def _product_split(fix: ExtensionFixture):
    dp = detect_direct_product(fix.group)
    if dp is None:
        return tuple(range(fix.group.order)), (0,)
    return dp


def theta_monomial(fix: ExtensionFixture, sets: PlaceSets,
                   sources: list[dict] | None = None,
                   r: int | None = None) -> ThetaElement:
    """theta_S^T(r) for G = H x C from per-certificate abelian theta sources.

    Each source supplies, for one irreducible chi of H with certificate
    (U, psi), the values L_{S'}^{T'}(r, psi^ab * lambda) over lambda in
    Irr(C), tagged with the translated place sets.  Degenerate case
    (abelian G with field data) delegates to the computed path.
    """
    r = sets.r if r is None else r
    if fix.group.is_abelian() and fix.cyclotomic is not None:
        return theta_abelian(fix, sets, r)
    sources = sources if sources is not None else fix.subextension_thetas
    h_elems, c_elems = _product_split(fix)
    table = fix.table
    tab_h, tab_c, pairing, back_c, pos_c, _ = _product_pairing(table, h_elems, c_elems)
    sub_h, back_h = fix.group.subgroup_as_group(sorted(h_elems))
    by_chi: dict[int, list] = {}
    for src in sources:
        allowed = {"schema", "chiIndex", "uElems", "sPrimeLabels", "tPrimeLabels",
                   "r", "provenance", "values"}
        missing = {"schema", "chiIndex", "values", "sPrimeLabels", "tPrimeLabels",
                   "r", "provenance"} - set(src)
        unknown = set(src) - allowed
        if unknown or missing:
            raise FixtureError(
                f"theta source malformed: unknown {sorted(unknown)}, missing {sorted(missing)}"
            )
        if src["schema"] != "skvtheta/1":
            raise FixtureError(f"unsupported theta source schema {src['schema']!r}")
        by_chi.setdefault(int(src["chiIndex"]), []).append(src)
    comps_sharp = [None] * len(table)
    for i in range(len(tab_h)):
        cert = tab_h.certificates[i]
        # U x C inside G
        m_elems = sorted({fix.group.mul(back_h[u], c)
                          for u in cert.u_elems for c in c_elems})
        want_s = translated_place_labels(fix, m_elems, sets.S)
        want_t = translated_place_labels(fix, m_elems, sets.T)
        src = None
        for cand in by_chi.get(i, []):
            if int(cand["r"]) != r:
                continue
            if sorted(cand["sPrimeLabels"]) != want_s or sorted(cand["tPrimeLabels"]) != want_t:
                continue
            src = cand
            break
        if src is None:
            raise FixtureError(
                f"no theta source for H-character {i} with r={r}, "
                f"S'={want_s}, T'={want_t}"
            )
        if "uElems" in src and sorted(src["uElems"]) != sorted(cert.u_elems):
            raise FixtureError(
                f"source for H-character {i} declares subgroup {sorted(src['uElems'])}, "
                f"certificate has {sorted(cert.u_elems)}"
            )
        vals = {int(j): Cyclo.from_json(v) for j, v in src["values"].items()}
        if set(vals) != set(range(len(tab_c))):
            raise FixtureError(
                f"source for H-character {i} must cover all {len(tab_c)} C-characters"
            )
        for j in range(len(tab_c)):
            comps_sharp[pairing[(i, j)]] = vals[j]
    _check_galois(table, comps_sharp, "theta_monomial")
    sharp = CentralElement(table, comps_sharp)
    central = sharp.sharp()
    _validate_parity(fix, central.components, r, "theta_monomial",
                     table.trivial_index())
    return ThetaElement(central, sets.S, sets.T, r, "fixture:sources")


# -- Sinnott-Kurihara generators --------------------------------------------


def _nr_of_element(fix: ExtensionFixture, x: GroupRingElement) -> CentralElement:
    table = fix.table
    comps = []
    for i in range(len(table)):
        mats = monomial_representation(table, i)
        comps.append(mat_det(apply_representation(mats, [[x]])))
    return CentralElement(table, comps)


def u_prime_place_generators(fix: ExtensionFixture, label: str):
    """The two generators of the local norm module at a finite place:
    nr(N_I) and nr(1 - eps phi^-1)."""
    place = fix.place(label)
    group = fix.group
    n_i = GroupRingElement.norm_element(group, place.inertia)
    eps_phi = GroupRingElement(
        group,
        {group.mul(i, group.inverse(place.frobenius)): Fraction(1, len(place.inertia))
         for i in place.inertia},
    )
    one = GroupRingElement.basis(group, 0)
    return [
        (f"{label}:nr(N_I)", _nr_of_element(fix, n_i)),
        (f"{label}:nr(1-eps*phi^-1)", _nr_of_element(fix, one - eps_phi)),
    ]


def u_prime_generators(fix: ExtensionFixture, S) -> GeneratorSet:
    """Products of the local generators over the finite places of S,
    one choice per place (2^|S_fin| elements)."""
    s_fin = sorted(lab for lab in set(str(x) for x in S)
                   if not fix.place(lab).infinite)
    need = set(fix.ramified_labels())
    if not need <= set(str(x) for x in S):
        raise FixtureError("U' requires S to contain all ramified places")
    table = fix.table
    combos = [("1", CentralElement(table, [Cyclo.one()] * len(table)))]
    for lab in s_fin:
        local = u_prime_place_generators(fix, lab)
        combos = [(f"{tag}*{ltag}" if tag != "1" else ltag, elem * lelem)
                  for tag, elem in combos for ltag, lelem in local]
    return GeneratorSet(combos, truncated=False,
                        notes=[f"{len(combos)} products over {len(s_fin)} finite places"])


def l_zero_sharp(fix: ExtensionFixture, sources: list[dict] | None = None) -> CentralElement:
    """L(0)^sharp, which is exactly the untruncated theta at r = 0 (S =
    infinite places only, T empty): the sharp is already built into theta.
    L(0) is defined without any Hyp conditions."""
    sets = PlaceSets(fix.infinite_labels(), [], 0)
    if fix.group.is_abelian() and fix.cyclotomic is not None:
        return theta_abelian(fix, sets).central
    return theta_monomial(fix, sets, sources).central


def sku_prime_generators(fix: ExtensionFixture, S, bound: int = 2,
                         sources: list[dict] | None = None) -> GeneratorSet:
    """Truncated generating set of the modified Sinnott-Kurihara module:
    all products delta_T(0) * u' * L(0)^sharp."""
    a_s = generate_A_S(fix, S, bound)
    u_p = u_prime_generators(fix, S)
    l0 = l_zero_sharp(fix, sources)
    prov = "computed" if fix.group.is_abelian() and fix.cyclotomic is not None \
        else "fixture-sources"
    gens = []
    for atag, a in a_s.generators:
        for utag, u in u_p.generators:
            gens.append((f"{atag}|{utag}|L(0)#", a * u * l0))
    notes = list(a_s.notes) + list(u_p.notes) + [f"L(0)# provenance: {prov}"]
    if not gens:
        notes.append("warning: empty generator set (no admissible T)")
    return GeneratorSet(gens, truncated=True, notes=notes)


def inertia_norm_product(fix: ExtensionFixture, J) -> CentralElement:
    """prod_{p in J} nr(N_I) as a central element."""
    table = fix.table
    out = CentralElement(table, [Cyclo.one()] * len(table))
    for lab in sorted(set(str(x) for x in J)):
        place = fix.place(lab)
        out = out * _nr_of_element(
            fix, GroupRingElement.norm_element(fix.group, place.inertia))
    return out


def theta_with_inertia_norms(fix: ExtensionFixture, J, sets: PlaceSets,
                             r: int | None = None,
                             sources: list[dict] | None = None) -> CentralElement:
    """prod_{p in J} nr(N_I) * theta_{S_J}^T(r), with the vanishing pattern
    of the norm product verified against the subgroup generated by the
    inertia groups of J."""
    r = sets.r if r is None else r
    j_labels = sorted(set(str(x) for x in J))
    ram = set(fix.ramified_labels())
    if not set(j_labels) <= ram:
        raise FixtureError("J must consist of ramified places")
    s_j = sorted((set(sets.S) - set(j_labels)) | set(fix.infinite_labels()))
    factor = inertia_norm_product(fix, j_labels)
    # H_J: normal closure of the inertia subgroups of the places in J
    gens = []
    for lab in j_labels:
        gens.extend(fix.place(lab).inertia)
    h_j = fix.group.normal_closure(gens) if gens else (0,)
    ids = fix.group.class_index()
    table = fix.table
    for i, chi in enumerate(table):
        deg = Cyclo.rational(chi.degree)
        in_kernel = all(chi.values[ids[g]] == deg for g in h_j)
        if not in_kernel and not factor.components[i].is_zero():
            raise InternalCheckError(
                f"inertia norm product must vanish at character {i} "
                "(kernel does not contain H_J)"
            )
    new_sets = PlaceSets(s_j, sets.T, r)
    if fix.group.is_abelian() and fix.cyclotomic is not None:
        th = theta_abelian(fix, new_sets, r)
    else:
        th = theta_monomial(fix, new_sets, sources, r)
    return factor * th.central


def omega_L(fix: ExtensionFixture) -> CentralElement:
    """The scalar |mu_L| as a central element."""
    table = fix.table
    return CentralElement(table, [Cyclo.rational(fix.mu_order)] * len(table))
