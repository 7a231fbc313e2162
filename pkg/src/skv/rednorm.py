"""Matrices over group rings: representations, reduced norms, star adjoints,
Fitting invariants of finite presentations, and annihilation checks.

Reduced norms are computed through explicit monomial representations, one
per irreducible character; every star adjoint is verified against its
defining identity before being returned.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd

from .characters import CharacterTable
from .cyclotomic import Cyclo
from .errors import FixtureError, GroupError, InternalCheckError
from .grouprings import CentralElement, GroupRingElement
from .linalg import char_poly, mat_det, mat_identity, mat_mul

# -- monomial representations -------------------------------------------


def monomial_representation(table: CharacterTable, chi_index: int):
    """Explicit matrices of the chi_index-th irreducible, one per group
    element, realized from the stored monomial certificate."""
    cache = getattr(table, "_rep_cache", None)
    if cache is None:
        cache = {}
        table._rep_cache = cache
    if chi_index in cache:
        return cache[chi_index]
    group = table.group
    cert = table.certificates[chi_index]
    chi = table.chars[chi_index]
    u = sorted(cert.u_elems)
    u_set = set(u)
    reps = group.coset_reps(u)
    d = len(reps)
    mats = []
    for g in range(group.order):
        m = [[Cyclo.zero() for _ in range(d)] for _ in range(d)]
        for j, xj in enumerate(reps):
            gx = group.mul(g, xj)
            for i, xi in enumerate(reps):
                y = group.mul(group.inverse(xi), gx)
                if y in u_set:
                    m[i][j] = Cyclo.from_root_of_unity(cert.exps[y])
                    break
        mats.append(m)
    # the trace must reproduce the character exactly
    ids = group.class_index()
    for cls in group.conjugacy_classes():
        g = cls[0]
        tr = Cyclo.zero()
        for i in range(d):
            tr = tr + mats[g][i][i]
        if tr != chi.values[ids[g]]:
            raise InternalCheckError(
                f"monomial representation trace mismatch at element {g}"
            )
    cache[chi_index] = mats
    return mats


# -- group-ring matrices --------------------------------------------------


def grm_identity(group, n: int):
    one = GroupRingElement.basis(group, 0)
    zero = GroupRingElement(group)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def grm_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def grm_scale(a, c):
    """Scale a group-ring matrix by a Cyclo (or rational) scalar."""
    return [[entry * c for entry in row] for row in a]


def grm_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def grm_is_integral(a) -> bool:
    return all(entry.is_integral() for row in a for entry in row)


def grm_equal(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def apply_representation(mats, a):
    """Apply a representation entrywise to a group-ring matrix, producing
    the blown-up cyclotomic block matrix."""
    b = len(a)
    d = len(mats[0])
    n = b * d
    out = [[Cyclo.zero() for _ in range(n)] for _ in range(n)]
    for s in range(b):
        for t in range(len(a[0])):
            for g, c in a[s][t].coeffs.items():
                rho = mats[g]
                for i in range(d):
                    for j in range(d):
                        if not rho[i][j].is_zero():
                            out[s * d + i][t * d + j] = (
                                out[s * d + i][t * d + j] + c * rho[i][j]
                            )
    return out


# -- reduced norm and star adjoint ---------------------------------------


def _check_galois_consistency(table: CharacterTable, comps):
    exp = table.exponent
    for k in range(2, exp):
        if gcd(k, exp) != 1:
            continue
        for i in range(len(table)):
            j = table.galois_index(i, k)
            if comps[j] != comps[i].galois(k):
                raise InternalCheckError(
                    f"reduced norm not Galois-equivariant at character {i}, sigma_{k}"
                )


def reduced_norm(a, table: CharacterTable) -> CentralElement:
    """Reduced norm of a square matrix over the group ring, as a central
    element (one determinant per irreducible)."""
    if any(len(row) != len(a) for row in a):
        raise GroupError("reduced norm requires a square matrix")
    comps = []
    for i in range(len(table)):
        mats = monomial_representation(table, i)
        comps.append(mat_det(apply_representation(mats, a)))
    rational = all(entry.is_rational() for row in a for entry in row)
    if rational:
        _check_galois_consistency(table, comps)
    return CentralElement(table, comps)


class StarAdjointResult:
    """Adjoint matrix and reduced norm, satisfying H* H = H H* = nr(H) I."""

    def __init__(self, adjoint, norm: CentralElement):
        self.adjoint = adjoint
        self.norm = norm


def _epsilon_element(table: CharacterTable, i: int) -> GroupRingElement:
    group = table.group
    chi = table.chars[i]
    ids = group.class_index()
    coeffs = {}
    for g in range(group.order):
        v = chi.values[ids[group.inverse(g)]] * Fraction(chi.degree, group.order)
        if not v.is_zero():
            coeffs[g] = v
    return GroupRingElement(group, coeffs)


def star_adjoint(a, table: CharacterTable) -> StarAdjointResult:
    """Star adjoint of a square integral matrix over ZG.

    Built per simple component from the reduced characteristic polynomial
    (the characteristic polynomial of the represented matrix), then glued
    with the central primitive idempotents.  The defining identity and the
    integrality of the represented adjoint blocks are verified exactly.
    """
    b = len(a)
    if any(len(row) != b for row in a):
        raise GroupError("star adjoint requires a square matrix")
    if not grm_is_integral(a):
        raise GroupError("star adjoint requires integral entries")
    group = table.group
    # powers of A over the group ring, grown on demand
    powers = [grm_identity(group, b)]

    def power(j):
        while len(powers) <= j:
            powers.append(grm_mul(powers[-1], a))
        return powers[j]

    adjoint = [[GroupRingElement(group) for _ in range(b)] for _ in range(b)]
    norm_comps = []
    exp = table.exponent
    for i in range(len(table)):
        mats = monomial_representation(table, i)
        block = apply_representation(mats, a)
        m = len(block)
        f = char_poly(block)  # f[0..m], monic
        # coefficients must be invariant under the stabilizer of chi
        for k in range(2, exp):
            if gcd(k, exp) == 1 and table.galois_index(i, k) == i:
                for c in f:
                    if c.galois(k) != c:
                        raise InternalCheckError(
                            f"reduced characteristic polynomial leaves Q(chi) at character {i}"
                        )
        sign = Fraction(1 if m % 2 == 1 else -1)
        part = None
        for j in range(1, m + 1):
            term = grm_scale(power(j - 1), f[j] * sign)
            part = term if part is None else grm_add(part, term)
        det = f[0] * Fraction((-1) ** m)
        norm_comps.append(det)
        # represented adjoint block: verify integrality and the identity
        rep_part = apply_representation(mats, part)
        for row in rep_part:
            for entry in row:
                if not entry.is_algebraic_integer():
                    raise InternalCheckError(
                        f"star adjoint block not integral at character {i}"
                    )
        prod = mat_mul(rep_part, block)
        for r in range(m):
            for c in range(m):
                want = det if r == c else Cyclo.zero()
                if prod[r][c] != want:
                    raise InternalCheckError("star adjoint identity failed")
        eps = _epsilon_element(table, i)
        for r in range(b):
            for c in range(b):
                adjoint[r][c] = adjoint[r][c] + eps * part[r][c]
    norm = CentralElement(table, norm_comps)
    # global identity over the group ring
    nr_elem = norm.to_group_ring()
    target = grm_scale(grm_identity(group, b), Cyclo.one())
    target = [[nr_elem * entry for entry in row] for row in target]
    if not (grm_equal(grm_mul(adjoint, a), target) and grm_equal(grm_mul(a, adjoint), target)):
        raise InternalCheckError("star adjoint identity failed over the group ring")
    return StarAdjointResult(adjoint, norm)


# -- sigma isomorphism ----------------------------------------------------


def sigma_isomorphism(elem: dict, c_group, n: int):
    """Reindex an element of M_n(F)[C] as an n x n matrix over F[C].

    elem maps a C-element to an n x n Cyclo matrix; the result has
    GroupRingElement entries over C."""
    if not c_group.is_abelian():
        raise GroupError("sigma isomorphism requires an abelian group")
    out = [[GroupRingElement(c_group) for _ in range(n)] for _ in range(n)]
    for c, mat in elem.items():
        for i in range(n):
            for j in range(n):
                if not mat[i][j].is_zero():
                    out[i][j] = out[i][j] + GroupRingElement(c_group, {c: mat[i][j]})
    return out


def sigma_inverse(mat, c_group, n: int) -> dict:
    """Inverse of sigma_isomorphism."""
    if not c_group.is_abelian():
        raise GroupError("sigma isomorphism requires an abelian group")
    out = {}
    for i in range(n):
        for j in range(n):
            for c, v in mat[i][j].coeffs.items():
                if c not in out:
                    out[c] = [[Cyclo.zero() for _ in range(n)] for _ in range(n)]
                out[c][i][j] = v
    return out


# -- Fitting invariants ---------------------------------------------------


class FittingInvariant:
    """Generators of a Fitting invariant; the object stands for a class
    under nr-equivalence, tested against this stored representative."""

    def __init__(self, generators, quadratic: bool, zero: bool):
        self.generators = generators
        self.quadratic = quadratic
        self.zero = zero
        self.equivalence_tag = "class-under-nr-equivalence; stored representative"


def fitting_of_presentation(h, table: CharacterTable) -> FittingInvariant:
    """Fitting invariant of the presentation matrix h (a rows, b columns,
    rows are relations): reduced norms of all b x b row selections."""
    a = len(h)
    b = len(h[0]) if a else 0
    if not grm_is_integral(h):
        raise GroupError("presentation matrices must be integral")
    if a < b:
        zero = CentralElement(table, [Cyclo.zero()] * len(table))
        return FittingInvariant([zero], quadratic=False, zero=True)
    gens = []
    for rows in itertools.combinations(range(a), b):
        sub = [h[r] for r in rows]
        gens.append(reduced_norm(sub, table))
    return FittingInvariant(gens, quadratic=(a == b), zero=False)


# -- finite modules with G-action ------------------------------------------


class FiniteGModule:
    """Finite abelian group (product of cyclic factors) with a G-action."""

    def __init__(self, group, factors, action):
        self.group = group
        self.factors = [int(d) for d in factors]
        if any(d <= 0 for d in self.factors):
            raise FixtureError("cyclic factor orders must be positive")
        k = len(self.factors)
        self.action = {}
        for g in range(group.order):
            if g not in action:
                raise FixtureError(f"no action matrix for group element {g}")
            m = [[int(x) % self.factors[i] for x in row] for i, row in enumerate(action[g])]
            if len(m) != k or any(len(r) != k for r in m):
                raise FixtureError("action matrix has wrong shape")
            self.action[g] = m
        ident = self.action[0]
        for i in range(k):
            for j in range(k):
                if (ident[i][j] - (1 if i == j else 0)) % self.factors[i] != 0:
                    raise FixtureError("identity must act trivially")
        for g in range(group.order):
            for h in range(group.order):
                prod = self._mat_mul(self.action[g], self.action[h])
                target = self.action[group.mul(g, h)]
                for i in range(k):
                    for j in range(k):
                        if (prod[i][j] - target[i][j]) % self.factors[i] != 0:
                            raise FixtureError(
                                f"action is not a homomorphism at ({g}, {h})"
                            )

    def _mat_mul(self, a, b):
        k = len(self.factors)
        return [
            [sum(a[i][t] * b[t][j] for t in range(k)) % self.factors[i] for j in range(k)]
            for i in range(k)
        ]

    def is_trivial_module(self) -> bool:
        return all(d == 1 for d in self.factors)

    def generators(self):
        return [
            [1 if i == j else 0 for j in range(len(self.factors))]
            for i in range(len(self.factors))
        ]

    def act_group_ring(self, x: GroupRingElement, vec):
        """Apply a group-ring element with rational coefficients to a vector."""
        k = len(self.factors)
        out = [0] * k
        for g, c in x.coeffs.items():
            if not c.is_rational():
                raise FixtureError("module action needs rational coefficients")
            q = c.to_fraction()
            m = self.action[g]
            for i in range(k):
                d = self.factors[i]
                if gcd(q.denominator, d) != 1:
                    raise FixtureError(
                        f"coefficient denominator {q.denominator} not invertible mod {d}"
                    )
                scal = (q.numerator * pow(q.denominator, -1, d)) % d if d > 1 else 0
                out[i] = (out[i] + scal * sum(m[i][t] * vec[t] for t in range(k))) % d
        return out


class AnnihilationVerdict:
    def __init__(self, ok: bool, violations, notes):
        self.ok = ok
        self.violations = violations
        self.notes = notes

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok, "violations": self.violations, "notes": self.notes}


def certified_h_elements(table: CharacterTable):
    """Members of the annihilator-friendly central set that we can certify:
    just the scalar |G|."""
    n = table.group.order
    return [("certified:|G|", CentralElement(table, [Cyclo.rational(n)] * len(table)))]


def falsify_h_candidate(table: CharacterTable, x: CentralElement,
                        k: int = 500, seed: int = 0, max_size: int = 3) -> bool:
    """Randomized falsification: try to find an integral matrix H with
    x * H_adjoint not integral.  Returns True if the candidate survives
    (tag it "assumed", never "certified")."""
    rng = random.Random(seed)
    group = table.group
    x_elem = x.to_group_ring()
    for _ in range(k):
        b = rng.randint(1, max_size)
        h = [
            [
                GroupRingElement(
                    group,
                    {g: rng.randint(-2, 2) for g in rng.sample(range(group.order),
                                                               min(3, group.order))},
                )
                for _ in range(b)
            ]
            for _ in range(b)
        ]
        res = star_adjoint(h, table)
        for row in res.adjoint:
            for entry in row:
                prod = x_elem * entry
                for c in prod.coeffs.values():
                    if not (c.is_rational() and c.to_fraction().denominator == 1):
                        return False
    return True


def annihilation_check(fitt: FittingInvariant, module: FiniteGModule,
                       h_elements) -> AnnihilationVerdict:
    """Check that h * f kills the module for every certified h and every
    Fitting generator f, acting through the group ring."""
    violations = []
    notes = []
    if module.is_trivial_module():
        notes.append("module is trivial; annihilation holds vacuously")
    gens = module.generators()
    for tag, h in h_elements:
        if not tag.startswith("certified"):
            notes.append(f"skipping uncertified element {tag}")
            continue
        for fi, f in enumerate(fitt.generators):
            y = (h * f).to_group_ring()
            for gi, vec in enumerate(gens):
                out = module.act_group_ring(y, vec)
                if any(v % d != 0 for v, d in zip(out, module.factors)):
                    violations.append(
                        {"hElement": tag, "generator": fi, "moduleGenerator": gi,
                         "image": out}
                    )
    return AnnihilationVerdict(not violations, violations, notes)
