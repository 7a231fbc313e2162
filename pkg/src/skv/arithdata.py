"""Arithmetic fixtures: extensions with explicit local data.

Fixtures carry decomposition/inertia groups, Frobenius lifts and residue
norms per place, roots-of-unity data, class-group modules, and optional
imported theta sources.  Everything is validated on load; all downstream
checks assume a validated fixture.  Schema: "skvfix/1" (strict, unknown
fields rejected).
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from math import gcd

from .characters import CharacterTable, irreducibles_monomial
from .cyclotomic import Cyclo
from .errors import FixtureError
from .grouprings import CentralElement, GroupRingElement
from .groups import FiniteGroup
from .linalg import mat_det, mat_identity, mat_mul, mat_scale, mat_sub
from .rednorm import FiniteGModule, monomial_representation


def _require_keys(obj: dict, allowed: set, required: set, where: str):
    unknown = set(obj) - allowed
    if unknown:
        raise FixtureError(f"unknown fields {sorted(unknown)} in {where}")
    missing = required - set(obj)
    if missing:
        raise FixtureError(f"missing fields {sorted(missing)} in {where}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PlaceData:
    """One place of the base field with its local Galois data."""

    FIELDS = {"label", "residueChar", "residueNorm", "decompositionGens",
              "inertiaGens", "frobenius", "ramified", "wild", "infinite",
              "complexAtL"}

    def __init__(self, group: FiniteGroup, obj: dict):
        _require_keys(obj, self.FIELDS, {"label", "decompositionGens"}, "place")
        self.label = str(obj["label"])
        self.infinite = bool(obj.get("infinite", False))
        self.complex_at_l = bool(obj.get("complexAtL", False))
        self.decomposition = group.subgroup_closure(obj["decompositionGens"])
        self.inertia = group.subgroup_closure(obj.get("inertiaGens", []))
        self.frobenius = int(obj.get("frobenius", 0))
        self.ramified = bool(obj.get("ramified", len(self.inertia) > 1))
        self.wild = bool(obj.get("wild", False))
        if self.infinite:
            self.residue_char = 0
            self.residue_norm = 0
            return
        self.residue_char = int(obj["residueChar"])
        self.residue_norm = int(obj["residueNorm"])
        q, n = self.residue_char, self.residue_norm
        if not _is_prime(q):
            raise FixtureError(f"place {self.label}: residue characteristic not prime")
        m = n
        while m % q == 0:
            m //= q
        if m != 1 or n < q:
            raise FixtureError(f"place {self.label}: residue norm not a power of {q}")
        dec, ine = set(self.decomposition), set(self.inertia)
        if not ine <= dec:
            raise FixtureError(f"place {self.label}: inertia not inside decomposition")
        sub, back = group.subgroup_as_group(sorted(dec))
        pos = {v: k for k, v in back.items()}
        if not sub.is_normal([pos[g] for g in self.inertia]):
            raise FixtureError(f"place {self.label}: inertia not normal in decomposition")
        if self.frobenius not in dec:
            raise FixtureError(f"place {self.label}: Frobenius outside decomposition")
        # order of Frobenius in G_P/I_P must equal [G_P : I_P]
        quot, proj = sub.quotient([pos[g] for g in self.inertia])
        if quot.element_order(proj[pos[self.frobenius]]) != len(dec) // len(ine):
            raise FixtureError(
                f"place {self.label}: Frobenius order inconsistent with |G_P/I_P|"
            )
        if self.ramified != (len(ine) > 1):
            raise FixtureError(f"place {self.label}: ramified flag inconsistent")
        if self.wild != (len(ine) % q == 0):
            raise FixtureError(f"place {self.label}: wild flag inconsistent")


class PlaceSets:
    """S/T selection with the evaluation point and optional local prime."""

    def __init__(self, S, T, r: int = 0, p: int | None = None):
        self.S = sorted(set(str(x) for x in S))
        self.T = sorted(set(str(x) for x in T))
        self.r = int(r)
        self.p = int(p) if p is not None else None
        if self.r > 0:
            raise FixtureError("r must be a non-positive integer")
        if set(self.S) & set(self.T):
            raise FixtureError("S and T must be disjoint")


class ExtensionFixture:
    """A Galois extension presented through explicit local and module data."""

    FIELDS = {"schema", "name", "group", "complexConjugation", "places", "muL",
              "classGroups", "cyclotomic", "subextensionThetas",
              "torsionFreeOverride", "clZetaPFlag"}

    def __init__(self, obj: dict):
        _require_keys(obj, self.FIELDS, {"schema", "name", "group", "places", "muL"},
                      "fixture")
        if obj["schema"] != "skvfix/1":
            raise FixtureError(f"unsupported schema {obj['schema']!r}")
        self.name = str(obj["name"])
        gobj = obj["group"]
        _require_keys(gobj, {"table", "labels"}, {"table"}, "group")
        self.group = FiniteGroup(gobj["table"], labels=gobj.get("labels"))
        self.j = obj.get("complexConjugation")
        if self.j is not None:
            self.j = int(self.j)
            if self.j == 0 or self.group.mul(self.j, self.j) != 0 \
                    or self.j not in self.group.center():
                raise FixtureError("complex conjugation must be a central involution")
        self.places = [PlaceData(self.group, p) for p in obj["places"]]
        labels = [p.label for p in self.places]
        if len(set(labels)) != len(labels):
            raise FixtureError("duplicate place labels")
        mu = obj["muL"]
        _require_keys(mu, {"order", "action"}, {"order", "action"}, "muL")
        self.mu_order = int(mu["order"])
        if self.mu_order < 1:
            raise FixtureError("muL order must be positive")
        self.mu_action = {}
        for g in range(self.group.order):
            if str(g) not in mu["action"]:
                raise FixtureError(f"muL action missing element {g}")
            a = int(mu["action"][str(g)]) % self.mu_order
            if gcd(a, self.mu_order) != 1:
                raise FixtureError(f"muL action value {a} not a unit mod {self.mu_order}")
            self.mu_action[g] = a
        for g in range(self.group.order):
            for h in range(self.group.order):
                if (self.mu_action[g] * self.mu_action[h]
                        - self.mu_action[self.group.mul(g, h)]) % self.mu_order != 0:
                    raise FixtureError("muL action is not a homomorphism")
        self.class_groups = []
        for cg in obj.get("classGroups", []):
            _require_keys(cg, {"setT", "p", "factors", "action"},
                          {"setT", "factors", "action"}, "classGroup")
            action = {int(g): m for g, m in cg["action"].items()}
            self.class_groups.append({
                "setT": [str(x) for x in cg["setT"]],
                "p": int(cg["p"]) if cg.get("p") is not None else None,
                "module": FiniteGModule(self.group, cg["factors"], action),
            })
        self.cyclotomic = None
        cyc = obj.get("cyclotomic")
        if cyc is not None:
            _require_keys(cyc, {"conductor", "map"}, {"conductor", "map"}, "cyclotomic")
            f = int(cyc["conductor"])
            mp = {int(a): int(g) for a, g in cyc["map"].items()}
            units = [a for a in range(1, f + 1) if gcd(a, f) == 1] or [1]
            for a in units:
                key = a % f if f > 1 else 1
                if key not in mp:
                    raise FixtureError(f"cyclotomic map missing residue {a}")
            key = (lambda a: a % f) if f > 1 else (lambda a: 1)
            if set(mp[key(a)] for a in units) != set(range(self.group.order)):
                raise FixtureError("cyclotomic map must be surjective")
            for a in units:
                for b in units:
                    if self.group.mul(mp[key(a)], mp[key(b)]) != mp[key(a * b)]:
                        raise FixtureError("cyclotomic map is not a homomorphism")
            self.cyclotomic = {"conductor": f, "map": mp}
        self.subextension_thetas = obj.get("subextensionThetas", [])
        self.torsion_free_override = obj.get("torsionFreeOverride")
        self.cl_zeta_p_flag = obj.get("clZetaPFlag")
        self._table = None

    @staticmethod
    def load(path: str) -> "ExtensionFixture":
        with open(path) as fh:
            return ExtensionFixture(json.load(fh))

    @property
    def table(self) -> CharacterTable:
        if self._table is None:
            self._table = irreducibles_monomial(self.group)
        return self._table

    def place(self, label: str) -> PlaceData:
        for p in self.places:
            if p.label == str(label):
                return p
        raise FixtureError(f"unknown place label {label!r}")

    def infinite_labels(self) -> list[str]:
        return [p.label for p in self.places if p.infinite]

    def ramified_labels(self) -> list[str]:
        return [p.label for p in self.places if not p.infinite and p.ramified]

    def finite_labels(self) -> list[str]:
        return [p.label for p in self.places if not p.infinite]


class SetVerdict:
    def __init__(self, ok: bool, reasons: list[str]):
        self.ok = ok
        self.reasons = reasons

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok, "reasons": self.reasons}


def _torsion_criterion(fix: ExtensionFixture, t_labels) -> tuple[bool, str]:
    """Sufficient criterion for E_S^T torsionfree: T contains a place whose
    residue characteristic does not divide |mu_L|."""
    w = fix.mu_order
    if w == 1:
        return True, "mu_L trivial"
    for lab in t_labels:
        p = fix.place(lab)
        if not p.infinite and w % p.residue_char != 0:
            return True, f"place {lab} has residue characteristic prime to w={w}"
    if fix.torsion_free_override:
        return True, f"fixture override: {fix.torsion_free_override}"
    return False, f"no place in T with residue characteristic prime to w={w}"


def check_hyp_ST(fix: ExtensionFixture, sets: PlaceSets) -> SetVerdict:
    """The standing hypotheses on (S, T): S covers ramified and infinite
    places, S and T are disjoint, and the S-units congruent to 1 at T are
    torsionfree (sufficient criterion)."""
    reasons = []
    for lab in sets.S + sets.T:
        fix.place(lab)
    need = set(fix.ramified_labels()) | set(fix.infinite_labels())
    missing = need - set(sets.S)
    if missing:
        reasons.append(f"S misses ramified/infinite places {sorted(missing)}")
    if set(sets.S) & set(sets.T):
        reasons.append("S and T intersect")
    ok3, why = _torsion_criterion(fix, sets.T)
    if not ok3:
        reasons.append(f"torsion criterion failed: {why}")
    return SetVerdict(not reasons, reasons or [f"torsion: {why}"])


def check_admissible(fix: ExtensionFixture, sets: PlaceSets,
                     p: int | None = None, r: int = 0) -> SetVerdict:
    """(p,r)-admissibility: for r < 0 this is exactly the standing
    hypotheses; for r = 0 the four local conditions."""
    if r < 0:
        return check_hyp_ST(fix, sets)
    if p is None:
        p = sets.p
    reasons = []
    for lab in sets.S + sets.T:
        fix.place(lab)
    st = set(sets.S) | set(sets.T)
    for lab in fix.ramified_labels():
        pl = fix.place(lab)
        p_adic = p is not None and pl.residue_char == p
        if not p_adic and lab not in st:
            reasons.append(f"(i) non-p-adic ramified place {lab} outside S and T")
        if pl.wild and p_adic and lab not in sets.S:
            reasons.append(f"(ii) wildly ramified p-adic place {lab} outside S")
    if set(sets.S) & set(sets.T):
        reasons.append("(iii) S and T intersect")
    t_nr = [lab for lab in sets.T if not fix.place(lab).ramified]
    ok4, why = _torsion_criterion(fix, t_nr)
    if not ok4:
        reasons.append(f"(iv) torsion criterion on T_nr failed: {why}")
    return SetVerdict(not reasons, reasons or ["admissible"])


def local_factor(fix: ExtensionFixture, place: PlaceData, chi_index: int,
                 r: int, kind: str) -> Cyclo:
    """Local determinant factor at a finite place on inertia invariants:
    det(1 - N^(1-r) rho(phi^-1)) for delta_T, det(1 - N^(-r) rho(phi^-1))
    for euler_S, both restricted to the image of the inertia projector."""
    if place.infinite:
        raise FixtureError("local factors are defined at finite places only")
    if kind not in ("delta_T", "euler_S"):
        raise FixtureError(f"unknown local factor kind {kind!r}")
    group = fix.group
    mats = monomial_representation(fix.table, chi_index)
    d = len(mats[0])
    proj = [[Cyclo.zero() for _ in range(d)] for _ in range(d)]
    for i in place.inertia:
        proj = [[proj[a][b] + mats[i][a][b] for b in range(d)] for a in range(d)]
    proj = mat_scale(proj, Fraction(1, len(place.inertia)))
    phi_inv = mats[group.inverse(place.frobenius)]
    scale = Fraction(place.residue_norm) ** ((1 - r) if kind == "delta_T" else (-r))
    m = mat_scale(mat_mul(phi_inv, proj), scale)
    # det restricted to im(proj) equals det(I - M P) since M commutes with P
    return mat_det(mat_sub(mat_identity(d), m))


def delta_element(fix: ExtensionFixture, t_labels, r: int = 0) -> CentralElement:
    """delta_T(r) as a central element: product of local delta factors."""
    table = fix.table
    comps = [Cyclo.one() for _ in range(len(table))]
    for lab in sorted(set(str(x) for x in t_labels)):
        place = fix.place(lab)
        for i in range(len(table)):
            comps[i] = comps[i] * local_factor(fix, place, i, r, "delta_T")
    return CentralElement(table, comps)


def euler_element(fix: ExtensionFixture, s_labels, r: int = 0) -> CentralElement:
    """Product over places of the S-truncation factors at r."""
    table = fix.table
    comps = [Cyclo.one() for _ in range(len(table))]
    for lab in sorted(set(str(x) for x in s_labels)):
        place = fix.place(lab)
        for i in range(len(table)):
            comps[i] = comps[i] * local_factor(fix, place, i, r, "euler_S")
    return CentralElement(table, comps)


class GeneratorSet:
    """A list of tagged central elements plus truncation bookkeeping."""

    def __init__(self, generators, truncated: bool, notes):
        self.generators = generators  # list of (tag, CentralElement)
        self.truncated = truncated
        self.notes = notes


def generate_A_S(fix: ExtensionFixture, S, bound: int = 2) -> GeneratorSet:
    """Truncated generating set of the annihilator module: delta_T(0) over
    all T from the fixture's place pool with |T| <= bound and Hyp(S,T)."""
    s_labels = sorted(set(str(x) for x in S))
    need = set(fix.ramified_labels()) | set(fix.infinite_labels())
    if not need <= set(s_labels):
        raise FixtureError("A_S requires S to contain all ramified and infinite places")
    pool = [lab for lab in fix.finite_labels() if lab not in s_labels]
    notes = [f"truncated at |T| <= {bound} over a pool of {len(pool)} places"]
    gens = []
    for size in range(1, bound + 1):
        for combo in itertools.combinations(pool, size):
            sets = PlaceSets(s_labels, list(combo), 0)
            if check_hyp_ST(fix, sets).ok:
                gens.append(("T=" + ",".join(combo), delta_element(fix, combo, 0)))
    if not gens:
        notes.append("warning: no admissible T found in the pool")
    return GeneratorSet(gens, truncated=True, notes=notes)


def _twist_trivial_mod(f: int, mp: dict, n: int, N: int) -> bool:
    """Is b^n = 1 mod N for every residue b that fixes the field?"""
    m = N * f
    for b in range(1, m + 1):
        if gcd(b, m) != 1:
            continue
        key = b % f if f > 1 else 1
        if mp[key] != 0:
            continue  # does not fix the field
        if pow(b, n, N) != 1 % N:
            return False
    return True


def mu_tate_order(fix: ExtensionFixture, r: int) -> int:
    """Order w_(1-r) of the Tate-twisted roots of unity.

    Computed prime by prime: p can only contribute when p divides the
    conductor or p-1 divides 1-r, and the p-power exponent is found by
    raising the modulus until the twisted action stops being trivial."""
    if fix.cyclotomic is None:
        raise FixtureError("negative-r checks need the fixture's cyclotomic data")
    f = fix.cyclotomic["conductor"]
    mp = fix.cyclotomic["map"]
    n = 1 - r
    candidates = set(p for p in range(2, n + 2) if _is_prime(p) and n % (p - 1) == 0)
    p = 2
    ff = f
    while ff > 1:
        if _is_prime(p) and ff % p == 0:
            candidates.add(p)
            while ff % p == 0:
                ff //= p
        p += 1
    w = 1
    for p in sorted(candidates):
        pk = p
        while _twist_trivial_mod(f, mp, n, pk):
            w *= p
            pk *= p
    return w


def mu_tate_annihilators(fix: ExtensionFixture, r: int):
    """Annihilator of the Tate twist: order w and generators of the kernel
    of the evaluation map ZG -> Z/w, g -> kappa(g)^(1-r)."""
    if r >= 0:
        raise FixtureError("Tate-twist annihilators are for negative r only")
    w = mu_tate_order(fix, r)
    f = fix.cyclotomic["conductor"]
    mp = fix.cyclotomic["map"]
    n = 1 - r
    group = fix.group
    # kappa(g)^(1-r) mod w: any residue mapping to g works once it is
    # lifted to be coprime to w*f (well defined by the choice of w)
    kappa_pow = {}
    for b, g in mp.items():
        if g in kappa_pow:
            continue
        bb = b
        while gcd(bb, w * f) != 1:
            bb += f
        kappa_pow[g] = pow(bb, n, w) if w > 1 else 0
    gens = [GroupRingElement.scalar(group, Fraction(w))]
    for g in range(1, group.order):
        gens.append(GroupRingElement.basis(group, g)
                    - GroupRingElement.scalar(group, Fraction(kappa_pow[g])))
    return {"w": w, "generators": gens, "action": kappa_pow}


def mu_tate_annihilates(fix: ExtensionFixture, r: int, x: GroupRingElement) -> bool:
    """Membership test: does x kill the Tate-twist module?"""
    data = mu_tate_annihilators(fix, r)
    w, act = data["w"], data["action"]
    total = 0
    for g, c in x.coeffs.items():
        if not c.is_rational():
            return False
        q = c.to_fraction()
        if q.denominator != 1:
            return False
        total = (total + q.numerator * act[g]) % w
    return total % w == 0
