"""Exact Dirichlet L-values at non-positive integers.

L(1-n, chi) = -B_{n,chi}/n with generalized Bernoulli numbers evaluated
through Bernoulli polynomials.  Only primitive characters are evaluated
directly; S-truncation and T-modification happen through explicit Euler
factors on top of the primitive value.  Values at r <= 0 only; leading
terms at zeros are out of scope.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

from .cyclotomic import Cyclo, root_of_unity_sum
from .errors import ArithmeticDomainError, FixtureError


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2."""
    if n == 0:
        return Fraction(1)
    # sum_{j=0}^{n} C(n+1, j) B_j = 0
    acc = Fraction(0)
    for j in range(n):
        acc += comb(n + 1, j) * bernoulli_number(j)
    return -acc / (n + 1)


class BernoulliData:
    """Index n and the coefficients of B_n(x), constant term first."""

    def __init__(self, n: int, coeffs):
        self.n = n
        self.coeffs = tuple(coeffs)

    def eval(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@lru_cache(maxsize=None)
def bernoulli_polynomial(n: int) -> BernoulliData:
    """B_n(x) = sum_k C(n,k) B_k x^(n-k), exact and cached."""
    if n < 0:
        raise ArithmeticDomainError("Bernoulli index must be non-negative")
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = comb(n, k) * bernoulli_number(k)
    return BernoulliData(n, coeffs)


class DirichletCharacter:
    """Character of (Z/f)^x with exact root-of-unity values.

    Values are stored as Fraction exponents mod 1; non-coprime residues
    take the value 0 implicitly.
    """

    def __init__(self, modulus: int, exps: dict[int, Fraction]):
        if modulus < 1:
            raise FixtureError("modulus must be positive")
        self.modulus = modulus
        units = [a for a in range(1, modulus + 1) if gcd(a, modulus) == 1]
        if modulus == 1:
            units = [1]
        self.exps = {}
        for a in units:
            key = a % modulus if modulus > 1 else 1
            if key not in exps and a not in exps:
                raise FixtureError(f"missing character value at residue {a}")
            self.exps[key] = Fraction(exps.get(key, exps.get(a))) % 1
        # multiplicativity over a common order, in integer arithmetic
        from math import lcm
        order = lcm(*(e.denominator for e in self.exps.values()))
        ints = {a: e.numerator * (order // e.denominator) % order
                for a, e in self.exps.items()}
        for a in units:
            ka = ints[a]
            for b in units:
                ab = (a * b) % modulus if modulus > 1 else 1
                if (ka + ints[b] - ints[ab]) % order != 0:
                    raise FixtureError("character values are not multiplicative")
        self._conductor = None

    @classmethod
    def _unchecked(cls, modulus: int, exps: dict[int, Fraction]) -> "DirichletCharacter":
        """Fast path for internally generated (already multiplicative) data."""
        obj = cls.__new__(cls)
        obj.modulus = modulus
        obj.exps = exps
        obj._conductor = None
        return obj

    @staticmethod
    def trivial(modulus: int = 1) -> "DirichletCharacter":
        units = [a for a in range(1, modulus + 1) if gcd(a, modulus) == 1] or [1]
        return DirichletCharacter(modulus, {a % modulus if modulus > 1 else 1: Fraction(0)
                                            for a in units})

    @staticmethod
    def from_json(obj: dict) -> "DirichletCharacter":
        f = int(obj["modulus"])
        order = int(obj["order"])
        exps = {int(a): Fraction(int(k), order) for a, k in obj["values"].items()}
        return DirichletCharacter(f, exps)

    def exponent_at(self, a: int) -> Fraction | None:
        key = a % self.modulus if self.modulus > 1 else 1
        return self.exps.get(key)

    def __call__(self, a: int) -> Cyclo:
        e = self.exponent_at(a)
        return Cyclo.zero() if e is None else Cyclo.from_root_of_unity(e)

    @property
    def order(self) -> int:
        from math import lcm
        return lcm(*(e.denominator for e in self.exps.values()))

    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exps.values())

    def is_odd(self) -> bool:
        if self.modulus <= 2:
            return False
        return self.exps[self.modulus - 1] == Fraction(1, 2)

    @property
    def conductor(self) -> int:
        if self._conductor is None:
            for d in sorted(_divisors(self.modulus)):
                if all(e == 0 for a, e in self.exps.items() if a % d == 1 % max(d, 1)):
                    self._conductor = d
                    break
        return self._conductor

    def primitive_core(self) -> "DirichletCharacter":
        d = self.conductor
        if d == self.modulus:
            return self
        exps = {}
        for b in range(1, d + 1):
            if gcd(b, d) != 1 and d > 1:
                continue
            key = b % d if d > 1 else 1
            # lift to a residue mod f coprime to f in the class of b mod d
            a = _coprime_lift(b, d, self.modulus)
            exps[key] = self.exps[a % self.modulus if self.modulus > 1 else 1]
        return DirichletCharacter(d, exps)

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, {a: (-e) % 1 for a, e in self.exps.items()})

    def is_primitive(self) -> bool:
        return self.conductor == self.modulus


def characters_mod(f: int) -> list["DirichletCharacter"]:
    """All Dirichlet characters mod f, by chain extension over the unit group."""
    units = [a for a in range(1, f + 1) if gcd(a, f) == 1] or [1]
    key = (lambda a: a % f) if f > 1 else (lambda a: 1)
    chars: list[dict[int, Fraction]] = [{key(1): Fraction(0)}]
    covered = {key(1)}
    for a in units:
        a = key(a)
        if a in covered:
            continue
        m, p = 1, a
        while key(p) not in covered:
            p = key(p * a)
            m += 1
        extended = []
        for chi in chars:
            base = chi[key(p)]
            for i in range(m):
                t = (base + i) / m
                new = dict(chi)
                ak, shift = 1, Fraction(0)
                for _ in range(m - 1):
                    ak = key(ak * a)
                    shift += t
                    for b, v in chi.items():
                        new[key(b * ak)] = (v + shift) % 1
                extended.append(new)
        chars = extended
        covered = set(chars[0])
    chars.sort(key=lambda c: tuple(c[key(a)] for a in units))
    return [DirichletCharacter._unchecked(f, c) for c in chars]


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _coprime_lift(b: int, d: int, f: int) -> int:
    """Residue mod f, coprime to f, congruent to b mod d (d | f)."""
    for t in range(f // d):
        a = b + t * d
        if gcd(a, f) == 1:
            return a
    raise ArithmeticDomainError(f"no coprime lift of {b} mod {d} to modulus {f}")


def generalized_bernoulli(n: int, chi: DirichletCharacter) -> Cyclo:
    """B_{n,chi} = f^(n-1) sum_{a=1}^{f} chi(a) B_n(a/f), chi primitive."""
    if n < 1:
        raise ArithmeticDomainError("generalized Bernoulli index must be >= 1")
    if not chi.is_primitive():
        raise ArithmeticDomainError(
            "imprimitive character: evaluate the primitive core and add Euler factors"
        )
    f = chi.modulus
    bn = bernoulli_polynomial(n)
    order = chi.order
    weights = [Fraction(0)] * order
    for a in range(1, f + 1):
        e = chi.exponent_at(a)
        if e is None:
            continue
        k = (e.numerator * (order // e.denominator)) % order
        weights[k] += bn.eval(Fraction(a, f))
    return root_of_unity_sum(order, weights) * Fraction(f) ** (n - 1)


def L_at_nonpositive(r: int, chi: DirichletCharacter) -> Cyclo:
    """L(r, chi) for r <= 0 and primitive chi: -B_{1-r,chi}/(1-r)."""
    if r > 0:
        raise ArithmeticDomainError("only non-positive arguments are supported")
    n = 1 - r
    return generalized_bernoulli(n, chi) * Fraction(-1, n)


def L_ST(r: int, chi: DirichletCharacter, S, T) -> Cyclo:
    """(S,T)-modified value: delta_T(r, conjugate chi) * L_S(r, chi).

    S and T are disjoint sets of rational primes; factors at primes
    dividing the conductor are 1 (the primitive value already omits them).
    """
    S = sorted(set(S))
    T = sorted(set(T))
    if set(S) & set(T):
        raise ArithmeticDomainError("S and T must be disjoint")
    prim = chi.primitive_core()
    val = L_at_nonpositive(r, prim)
    for q in S:
        # Euler factor 1 - chi(q) q^(-r)
        val = val * (Cyclo.one() - prim(q) * Fraction(q) ** (-r))
    for q in T:
        # delta factor 1 - chi(q) q^(1-r): the contragredient in
        # delta_T(r, conjugate chi) lands back on chi's own value
        val = val * (Cyclo.one() - prim(q) * Fraction(q) ** (1 - r))
    return val
