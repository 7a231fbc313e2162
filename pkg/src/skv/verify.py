"""Machine-checked verdicts for the integrality and annihilation theorems.

Each check returns a Verdict with status "verified", "falsified" or
"inconclusive".  Inconclusive always carries a reason (failed hypotheses or
a fixture gap); falsified carries an explicit witness.  Truncation of any
searched set is recorded in the notes.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .arithdata import (ExtensionFixture, PlaceSets, check_admissible,
                        generate_A_S, mu_tate_annihilators)
from .cyclotomic import Cyclo
from .engine import (ThetaElement, _nr_of_element, _product_split,
                     sku_prime_generators, theta_abelian, theta_monomial,
                     theta_with_inertia_norms)
from .errors import FixtureError, SkvError
from .grouprings import CentralElement, GroupRingElement, max_order_membership
from .lvalues import characters_mod, generalized_bernoulli
from .rednorm import (FittingInvariant, annihilation_check,
                      certified_h_elements)


class Verdict:
    """Outcome of one check, with witnesses and truncation notes."""

    def __init__(self, check_id: str, status: str, witnesses=None,
                 notes=None, provenance=None):
        if status not in ("verified", "falsified", "inconclusive"):
            raise SkvError(f"unknown verdict status {status!r}")
        self.check_id = check_id
        self.status = status
        self.witnesses = witnesses or []
        self.notes = notes or []
        self.provenance = provenance or []

    def __bool__(self):
        return self.status == "verified"

    def to_json(self) -> dict:
        return {
            "checkId": self.check_id,
            "status": self.status,
            "witnesses": self.witnesses,
            "notes": self.notes,
            "provenance": self.provenance,
        }

    def __repr__(self):
        return f"Verdict({self.check_id!r}, {self.status!r})"


def _theta(fix: ExtensionFixture, sets: PlaceSets,
           sources=None) -> ThetaElement:
    if fix.group.is_abelian() and fix.cyclotomic is not None:
        return theta_abelian(fix, sets)
    return theta_monomial(fix, sets, sources)


def _is_exact_integral(x: CentralElement) -> bool:
    """Exact group-ring integrality: rational integer coefficients."""
    elem = x.to_group_ring()
    return all(c.is_rational() and c.to_fraction().denominator == 1
               for c in elem.coeffs.values())


def check_theorem_stickelberger_int(fix: ExtensionFixture, sets: PlaceSets,
                                    sources=None) -> Verdict:
    """Integrality of theta_S^T(r) in Z_p(zeta)-span of the product order:
    for an admissible (S, T) the element lies in zeta(M_p(H))[C] for the
    direct-product splitting G = H x C (full integrality when p is None)."""
    check_id = "theorem-stickelberger-int"
    adm = check_admissible(fix, sets, sets.p, sets.r)
    if not adm.ok:
        return Verdict(check_id, "inconclusive",
                       notes=["(p,r)-admissibility failed"] + adm.reasons)
    try:
        th = _theta(fix, sets, sources)
    except FixtureError as exc:
        return Verdict(check_id, "inconclusive",
                       notes=[f"fixture gap: {exc}"],
                       provenance=[f"admissibility: {adm.reasons}"])
    h_elems, c_elems = _product_split(fix)
    mv = max_order_membership(th.central, "product",
                              product=(h_elems, c_elems), p=sets.p)
    prov = [f"theta: {th.provenance}",
            f"product splitting |H|={len(h_elems)}, |C|={len(c_elems)}",
            "membership mode: product" + (f", p={sets.p}" if sets.p else "")]
    if not mv.ok:
        return Verdict(check_id, "falsified",
                       witnesses=[{"membership": mv.to_json()}],
                       provenance=prov)
    witnesses = [{"membership": mv.to_json()},
                 {"theta": th.to_json()}]
    return Verdict(check_id, "verified", witnesses=witnesses, provenance=prov)


def check_theorem_sku_maxord(fix: ExtensionFixture, S, bound: int = 2,
                             sources=None, r: int = 0) -> Verdict:
    """The modified Sinnott-Kurihara generators lie in the maximal order,
    and the inertia-norm twisted theta elements do as well, over every
    subset J of the ramified places and every admissible T in the pool."""
    check_id = "theorem-sku-maxord"
    notes = []
    try:
        sku = sku_prime_generators(fix, S, bound, sources)
    except (FixtureError, SkvError) as exc:
        return Verdict(check_id, "inconclusive", notes=[f"fixture gap: {exc}"])
    notes.extend(sku.notes)
    if not sku.generators:
        return Verdict(check_id, "inconclusive",
                       notes=notes + ["no admissible T in the fixture pool"])
    abelian = fix.group.is_abelian()
    for tag, gen in sku.generators:
        mv = max_order_membership(gen, "full")
        if not mv.ok:
            return Verdict(check_id, "falsified",
                           witnesses=[{"generator": tag,
                                       "membership": mv.to_json()}],
                           notes=notes)
        if abelian and not _is_exact_integral(gen):
            return Verdict(check_id, "falsified",
                           witnesses=[{"generator": tag,
                                       "failure": "abelian exact integrality"}],
                           notes=notes)
    # sweep: prod_{p in J} nr(N_I) * theta_{S_J}^T(r) for every J and T
    a_s = generate_A_S(fix, S, bound)
    ram = sorted(fix.ramified_labels())
    swept = 0
    for atag, _ in a_s.generators:
        t_labels = atag[len("T="):].split(",")
        for size in range(len(ram) + 1):
            for j_combo in itertools.combinations(ram, size):
                sets = PlaceSets(S, t_labels, r)
                try:
                    elem = theta_with_inertia_norms(fix, list(j_combo), sets,
                                                    sources=sources)
                except FixtureError as exc:
                    notes.append(f"sweep gap at J={list(j_combo)}, "
                                 f"T={t_labels}: {exc}")
                    continue
                swept += 1
                mv = max_order_membership(elem, "full")
                if not mv.ok:
                    return Verdict(check_id, "falsified",
                                   witnesses=[{"J": list(j_combo),
                                               "T": t_labels,
                                               "membership": mv.to_json()}],
                                   notes=notes)
                if abelian and not _is_exact_integral(elem):
                    return Verdict(check_id, "falsified",
                                   witnesses=[{"J": list(j_combo),
                                               "T": t_labels,
                                               "failure":
                                               "abelian exact integrality"}],
                                   notes=notes)
    notes.append(f"swept {swept} (J, T) combinations over "
                 f"{len(ram)} ramified places")
    if swept == 0:
        return Verdict(check_id, "inconclusive",
                       notes=notes + ["no (J, T) combination was checkable"])
    witnesses = [{"generators": [tag for tag, _ in sku.generators]},
                 {"sweep": swept}]
    return Verdict(check_id, "verified", witnesses=witnesses, notes=notes)


def _bounded_nr_search(fix: ExtensionFixture, target: CentralElement,
                       height: int = 1, support: int = 2):
    """Try to realize the target as a reduced norm of a single group-ring
    element with small support and coefficient height.  Returns the witness
    coefficients or None; the search is truncated, so failure proves nothing."""
    group = fix.group
    n = group.order
    values = list(range(-height, height + 1))
    singles = []
    for g in range(n):
        for c in values:
            if c != 0:
                singles.append({g: Fraction(c)})
    candidates = list(singles)
    if support >= 2:
        for a, b in itertools.combinations(range(n), 2):
            for ca in values:
                for cb in values:
                    if ca and cb:
                        candidates.append({a: Fraction(ca), b: Fraction(cb)})
    for coeffs in candidates:
        if _nr_of_element(fix, GroupRingElement(group, coeffs)) == target:
            return {str(g): str(c) for g, c in coeffs.items()}
    return None


def _integrality_tier(fix: ExtensionFixture, x: CentralElement):
    """Three-tier membership report for the integral-trace ideal:
    certified, necessary-condition-pass, or falsified."""
    if fix.group.is_abelian():
        if _is_exact_integral(x):
            return "certified", {"reason": "abelian: exact ZG coefficients"}
        return "falsified", {"reason": "abelian: non-integral ZG coefficient"}
    mv = max_order_membership(x, "full")
    if not mv.ok:
        return "falsified", {"membership": mv.to_json()}
    witness = _bounded_nr_search(fix, x)
    if witness is not None:
        return "certified", {"nrWitness": witness}
    return "necessary-condition-pass", {
        "note": "maximal-order integrality holds; bounded nr-search "
                "(support <= 2, height <= 1) found no certificate"}


def check_brumer(fix: ExtensionFixture, S, bound: int = 2,
                 sources=None) -> Verdict:
    """Annihilation of the fixture class groups by |G| * theta_S^T(0), plus
    the necessary integrality condition on theta_S^T(0) itself."""
    check_id = "conjecture-brumer"
    if not fix.class_groups:
        return Verdict(check_id, "inconclusive",
                       notes=["fixture gap: no class-group data"])
    notes = []
    witnesses = []
    try:
        th0 = _theta(fix, PlaceSets(S, [], 0), sources)
        a_s = generate_A_S(fix, S, bound)
    except FixtureError as exc:
        return Verdict(check_id, "inconclusive", notes=[f"fixture gap: {exc}"])
    notes.extend(a_s.notes)
    if not a_s.generators:
        return Verdict(check_id, "inconclusive",
                       notes=notes + ["no admissible T in the fixture pool"])
    h_elems = certified_h_elements(fix.table)
    for k, entry in enumerate(fix.class_groups):
        if entry["module"].is_trivial_module():
            witnesses.append({"classGroup": k, "vacuous": True})
            continue
        for atag, a in a_s.generators:
            x = a * th0.central
            tier, detail = _integrality_tier(fix, x)
            if tier == "falsified":
                return Verdict(check_id, "falsified",
                               witnesses=[{"classGroup": k, "aGenerator": atag,
                                           "integrality": detail}],
                               notes=notes)
            ann = annihilation_check(
                FittingInvariant([x], quadratic=False, zero=False),
                entry["module"], h_elems)
            if not ann.ok:
                return Verdict(check_id, "falsified",
                               witnesses=[{"classGroup": k, "aGenerator": atag,
                                           "annihilation": ann.to_json()}],
                               notes=notes)
            witnesses.append({"classGroup": k, "aGenerator": atag,
                              "integrality": tier,
                              "hTimesAThetaAnnihilates": True})
    return Verdict(check_id, "verified", witnesses=witnesses, notes=notes)


def check_brumer_stark_necessary(fix: ExtensionFixture, S,
                                 sources=None) -> Verdict:
    """Necessary conditions only: |mu_L| * theta_S(0) is integral and kills
    the fixture class groups.  The anti-unit and abelian-extension
    conditions on the conjecture are out of scope and noted as such."""
    check_id = "brumer-stark-necessary"
    notes = ["anti-unit condition and the abelianness of L(alpha^(1/w))/K "
             "are out of scope; only integrality and annihilation are checked"]
    sets = PlaceSets(S, [], 0)
    try:
        th = _theta(fix, sets, sources)
    except FixtureError as exc:
        return Verdict(check_id, "inconclusive",
                       notes=notes + [f"fixture gap: {exc}"])
    x = th.central * Fraction(fix.mu_order)
    tier, detail = _integrality_tier(fix, x)
    if tier == "falsified":
        return Verdict(check_id, "falsified",
                       witnesses=[{"integrality": detail}], notes=notes)
    notes.append(f"w*theta integrality tier: {tier}")
    witnesses = [{"w": fix.mu_order, "integrality": {"tier": tier, **detail}}]
    if not fix.class_groups:
        notes.append("no class-group data; annihilation part skipped")
        return Verdict(check_id, "verified", witnesses=witnesses, notes=notes)
    one = [("certified:1",
            CentralElement(fix.table, [Cyclo.one()] * len(fix.table)))]
    for k, entry in enumerate(fix.class_groups):
        ann = annihilation_check(FittingInvariant([x], False, False),
                                 entry["module"], one)
        if not ann.ok:
            return Verdict(check_id, "falsified",
                           witnesses=[{"classGroup": k,
                                       "annihilation": ann.to_json()}],
                           notes=notes)
        witnesses.append({"classGroup": k, "annihilates": True})
    return Verdict(check_id, "verified", witnesses=witnesses, notes=notes)


def check_negative_r(fix: ExtensionFixture, S, r: int,
                     sources=None) -> Verdict:
    """At r < 0: nr(x) * theta_S(r) is integral for every generator x of the
    annihilator of the (1-r)-fold Tate twist of the roots of unity."""
    check_id = "negative-r-int"
    if r >= 0:
        return Verdict(check_id, "inconclusive",
                       notes=["check is defined for r < 0 only"])
    sets = PlaceSets(S, [], r)
    hyp_need = set(fix.ramified_labels()) | set(fix.infinite_labels())
    if not hyp_need <= set(sets.S):
        return Verdict(check_id, "inconclusive",
                       notes=["S must contain all ramified and infinite "
                              "places"])
    try:
        data = mu_tate_annihilators(fix, r)
        th = _theta(fix, sets, sources)
    except FixtureError as exc:
        return Verdict(check_id, "inconclusive", notes=[f"fixture gap: {exc}"])
    abelian = fix.group.is_abelian()
    witnesses = [{"w": data["w"]}]
    labels = fix.group.labels
    for x in data["generators"]:
        y = _nr_of_element(fix, x) * th.central
        tag = " + ".join(f"{c}*{labels[g]}"
                         for g, c in sorted(x.coeffs.items()))
        mv = max_order_membership(y, "full")
        if not mv.ok:
            return Verdict(check_id, "falsified",
                           witnesses=[{"annihilator": tag,
                                       "membership": mv.to_json()}])
        if abelian and not _is_exact_integral(y):
            return Verdict(check_id, "falsified",
                           witnesses=[{"annihilator": tag,
                                       "failure": "abelian exact integrality"}])
        witnesses.append({"annihilator": tag, "integral": True})
    notes = ["abelian: exact ZG integrality checked"] if abelian \
        else ["non-abelian: maximal-order integrality checked"]
    return Verdict(check_id, "verified", witnesses=witnesses, notes=notes)


def exceptional_prime_screening(fix: ExtensionFixture,
                                p: int | None = None) -> dict:
    """Screen for the hypotheses that make p exceptional: p = 2, a wildly
    ramified p-adic place that is not almost tame (complex conjugation
    outside the decomposition group), or a declared nontrivial p-part of
    the class group of the p-th cyclotomic field."""
    primes = {p} if p is not None else \
        {2} | {pl.residue_char for pl in fix.places
               if not pl.infinite and pl.ramified}
    out = []
    for q in sorted(primes):
        flags = []
        if q == 2:
            flags.append("p=2 is always exceptional")
        for pl in fix.places:
            if pl.infinite or pl.residue_char != q or not pl.wild:
                continue
            if fix.j is None:
                flags.append(f"wild place {pl.label}: no complex conjugation "
                             "data, almost-tameness unknown")
            elif fix.j not in pl.decomposition:
                flags.append(f"wild place {pl.label}: not almost tame "
                             "(conjugation outside the decomposition group)")
        declared = fix.cl_zeta_p_flag or []
        if not isinstance(declared, list):
            declared = [declared]
        if q in [int(k) for k in declared]:
            flags.append(f"declared: p divides the class number of the "
                         f"{q}-th cyclotomic field")
        out.append({"p": q, "exceptional": bool(flags), "flags": flags})
    return {"screened": out}


def relative_class_number_qzeta(p: int) -> Fraction:
    """Minus-part class number of the p-th cyclotomic field (p an odd
    prime): 2p times the product of -B_{1,chi}/2 over the odd characters
    mod p."""
    val = Cyclo.rational(2 * p)
    for chi in characters_mod(p):
        if chi.is_odd():
            val = val * (generalized_bernoulli(1, chi) * Fraction(-1, 2))
    return val.to_fraction()


def default_sets(fix: ExtensionFixture, bound: int = 2) -> PlaceSets | None:
    """Smallest admissible (S, T) with S the ramified and infinite places
    and T from the fixture pool, or None."""
    S = sorted(set(fix.ramified_labels()) | set(fix.infinite_labels()))
    pool = [lab for lab in fix.finite_labels() if lab not in S]
    for size in range(1, bound + 1):
        for combo in itertools.combinations(pool, size):
            sets = PlaceSets(S, list(combo), 0)
            if check_admissible(fix, sets, None, 0).ok:
                return sets
    return None


def run_all(fix: ExtensionFixture, bound: int = 2, r_neg: int = -1,
            sources=None) -> list[Verdict]:
    """All checks with default set choices, in a fixed order."""
    S = sorted(set(fix.ramified_labels()) | set(fix.infinite_labels()))
    verdicts = []
    sets = default_sets(fix, bound)
    if sets is None:
        verdicts.append(Verdict("theorem-stickelberger-int", "inconclusive",
                                notes=["no admissible T in the fixture pool "
                                       f"(bound {bound})"]))
    else:
        verdicts.append(check_theorem_stickelberger_int(fix, sets, sources))
    verdicts.append(check_theorem_sku_maxord(fix, S, bound, sources))
    verdicts.append(check_brumer(fix, S, bound, sources))
    verdicts.append(check_brumer_stark_necessary(fix, S, sources))
    if fix.cyclotomic is not None:
        verdicts.append(check_negative_r(fix, S, r_neg, sources))
    else:
        verdicts.append(Verdict("negative-r-int", "inconclusive",
                                notes=["fixture gap: no cyclotomic data"]))
    return verdicts
