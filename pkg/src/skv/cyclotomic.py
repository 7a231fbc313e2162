"""Exact arithmetic in cyclotomic fields Q(zeta_n) over the power basis.

Elements are stored as coefficient vectors of length phi(n) over the basis
1, zeta_n, ..., zeta_n^(phi(n)-1), reduced modulo the n-th cyclotomic
polynomial.  Coefficients are `fractions.Fraction`.  Values are immutable;
the per-order reduction caches are guarded by a lock so concurrent fills
stay idempotent.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import gcd, lcm

from .errors import ArithmeticDomainError, DivisionByZero, OrderCapExceeded

#: Largest cyclotomic order allowed when lifting to a common field.
ORDER_CAP = 10**6

_ZERO = Fraction(0)
_ONE = Fraction(1)


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_int(num: list[int], den: list[int]) -> list[int]:
    """Exact quotient of integer polynomials (remainder known to vanish)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        assert c % den[-1] == 0
        c //= den[-1]
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    assert all(c == 0 for c in num)
    return q


class _OrderData:
    """Cached data for one cyclotomic order: Phi_n and power rows."""

    def __init__(self, n: int):
        self.n = n
        self.phi = euler_phi(n)
        self.poly = _cyclotomic_poly(n)  # integer coeffs, monic, len phi+1
        # rows[k] = coefficients of x^(phi+k) mod Phi_n, filled lazily
        self._rows: list[tuple[int, ...]] = []
        self._lock = threading.Lock()

    def power_row(self, k: int) -> tuple[int, ...]:
        """Coefficients of x^k mod Phi_n for k >= phi (as integers)."""
        idx = k - self.phi
        if idx < len(self._rows):
            return self._rows[idx]
        with self._lock:
            while len(self._rows) <= idx:
                if not self._rows:
                    prev = [-c for c in self.poly[:-1]]
                else:
                    last = self._rows[-1]
                    prev = [0] + list(last[:-1])
                    top = last[-1]
                    if top:
                        for j in range(self.phi):
                            prev[j] -= top * self.poly[j]
                self._rows.append(tuple(prev))
        return self._rows[idx]


_cyclo_cache: dict[int, _OrderData] = {}
# RLock: building _OrderData(n) recursively builds the divisor orders.
_cyclo_cache_lock = threading.RLock()


def _cyclotomic_poly(n: int) -> list[int]:
    """Phi_n as integer coefficient list, via iterated division of x^n - 1."""
    if n == 1:
        return [-1, 1]
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divmod_int(num, _cyclotomic_poly_cached(d))
    return num


def _cyclotomic_poly_cached(n: int) -> list[int]:
    return order_data(n).poly


def order_data(n: int) -> _OrderData:
    if n < 1:
        raise ArithmeticDomainError(f"invalid cyclotomic order {n}")
    if n > ORDER_CAP:
        raise OrderCapExceeded(f"cyclotomic order {n} exceeds cap {ORDER_CAP}")
    data = _cyclo_cache.get(n)
    if data is None:
        with _cyclo_cache_lock:
            data = _cyclo_cache.get(n)
            if data is None:
                data = _OrderData(n)
                _cyclo_cache[n] = data
    return data


def _reduce_poly(coeffs: list[Fraction], data: _OrderData) -> tuple[Fraction, ...]:
    """Reduce a coefficient list of any length modulo Phi_n."""
    phi = data.phi
    out = list(coeffs[:phi]) + [_ZERO] * max(0, phi - len(coeffs))
    for k in range(phi, len(coeffs)):
        c = coeffs[k]
        if c:
            for j, r in enumerate(data.power_row(k)):
                if r:
                    out[j] += c * r
    return tuple(out)


class Cyclo:
    """Immutable element of Q(zeta_n) in the power basis."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        data = order_data(order)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != data.phi:
            raise ArithmeticDomainError(
                f"order {order} needs {data.phi} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Cyclo values are immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def rational(q) -> "Cyclo":
        return Cyclo(1, (Fraction(q),))

    @staticmethod
    def zero(order: int = 1) -> "Cyclo":
        return Cyclo(order, (_ZERO,) * order_data(order).phi)

    @staticmethod
    def one(order: int = 1) -> "Cyclo":
        c = [_ZERO] * order_data(order).phi
        c[0] = _ONE
        return Cyclo(order, c)

    @staticmethod
    def zeta(n: int, k: int = 1) -> "Cyclo":
        """zeta_n^k."""
        data = order_data(n)
        k %= n
        if k < data.phi:
            c = [_ZERO] * data.phi
            c[k] = _ONE
            return Cyclo(n, c)
        return Cyclo(n, [Fraction(r) for r in data.power_row(k)])

    @staticmethod
    def from_root_of_unity(exponent: Fraction) -> "Cyclo":
        """e^(2*pi*i*exponent) for a rational exponent."""
        e = Fraction(exponent)
        num = e.numerator % e.denominator
        return Cyclo.zeta(e.denominator, num)

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ArithmeticDomainError(f"{self!r} is not rational")
        return self.coeffs[0]

    def is_algebraic_integer(self) -> bool:
        """True iff the element lies in Z[zeta_n] (the full ring of integers)."""
        return all(c.denominator == 1 for c in self.coeffs)

    def is_p_integral(self, p: int) -> bool:
        """True iff no power-basis denominator is divisible by p."""
        return all(c.denominator % p != 0 for c in self.coeffs)

    def lift(self, n: int) -> "Cyclo":
        """Embed into Q(zeta_n); requires order | n."""
        if n == self.order:
            return self
        if n % self.order != 0:
            raise ArithmeticDomainError(f"cannot lift order {self.order} into {n}")
        data = order_data(n)
        step = n // self.order
        out = [_ZERO] * data.phi
        for i, c in enumerate(self.coeffs):
            if c:
                e = (i * step) % n
                if e < data.phi:
                    out[e] += c
                else:
                    for j, r in enumerate(data.power_row(e)):
                        if r:
                            out[j] += c * r
        return Cyclo(n, out)

    def _common(self, other: "Cyclo") -> tuple["Cyclo", "Cyclo"]:
        if self.order == other.order:
            return self, other
        n = lcm(self.order, other.order)
        return self.lift(n), other.lift(n)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return Cyclo(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        if b.is_rational():
            q = b.coeffs[0]
            return Cyclo(a.order, tuple(c * q for c in a.coeffs))
        if a.is_rational():
            q = a.coeffs[0]
            return Cyclo(b.order, tuple(c * q for c in b.coeffs))
        phi = len(a.coeffs)
        conv = [_ZERO] * (2 * phi - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        return Cyclo(a.order, _reduce_poly(conv, order_data(a.order)))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise DivisionByZero("inverse of zero cyclotomic number")
        if self.is_rational():
            return Cyclo.rational(1 / self.coeffs[0]).lift(self.order)
        data = order_data(self.order)
        # extended Euclid in Q[x]: s*self + t*Phi = gcd = nonzero rational
        r0 = [Fraction(c) for c in data.poly]
        r1 = list(self.coeffs)
        while r1 and r1[-1] == 0:
            r1.pop()
        s0, s1 = [], [_ONE]
        while True:
            deg1 = len(r1) - 1
            if deg1 == 0:
                break
            q, rem = _poly_divmod_frac(r0, r1)
            s_new = _poly_sub(s0, _poly_mul(q, s1))
            r0, r1 = r1, rem
            s0, s1 = s1, s_new
            while r1 and r1[-1] == 0:
                r1.pop()
            if not r1:
                raise ArithmeticDomainError("element shares a factor with Phi_n")
        c = r1[0]
        inv_coeffs = [s / c for s in s1]
        return Cyclo(self.order, _reduce_poly(inv_coeffs, data))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclo.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, k: int) -> "Cyclo":
        """Apply zeta_n -> zeta_n^k; requires gcd(k, n) = 1."""
        n = self.order
        k %= n
        if gcd(k, n) != 1:
            raise ArithmeticDomainError(f"galois index {k} not coprime to {n}")
        data = order_data(n)
        out = [_ZERO] * data.phi
        for i, c in enumerate(self.coeffs):
            if c:
                e = (i * k) % n
                if e < data.phi:
                    out[e] += c
                else:
                    for j, r in enumerate(data.power_row(e)):
                        if r:
                            out[j] += c * r
        return Cyclo(n, out)

    def conjugate(self) -> "Cyclo":
        return self.galois(self.order - 1) if self.order > 1 else self

    # -- comparison / hashing ------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.is_rational():
            return f"Cyclo({self.coeffs[0]})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z{self.order}^{i}" if i else f"{c}")
        return "Cyclo(" + " + ".join(terms) + ")"

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": {
                str(i): fraction_to_str(c) for i, c in enumerate(self.coeffs) if c
            },
        }

    @staticmethod
    def from_json(obj: dict) -> "Cyclo":
        n = obj["order"]
        phi = order_data(n).phi
        coeffs = [_ZERO] * phi
        for key, val in obj["coeffs"].items():
            i = int(key)
            if not 0 <= i < phi:
                raise ArithmeticDomainError(f"coefficient index {i} out of range")
            coeffs[i] = fraction_from_str(val)
        return Cyclo(n, coeffs)


def _coerce(value):
    if isinstance(value, Cyclo):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyclo.rational(value)
    return NotImplemented


def _poly_divmod_frac(num, den):
    num = list(num)
    dd = len(den) - 1
    q = [_ZERO] * max(0, len(num) - dd)
    inv_lead = 1 / den[-1]
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dd] * inv_lead
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    return q, num[:dd]


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    out = list(a) + [_ZERO] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        out[i] -= y
    return out


def root_of_unity_sum(order: int, weights) -> Cyclo:
    """Sum of weights[k] * zeta_order^k, accumulated before a single reduction."""
    data = order_data(order)
    coeffs = [Fraction(w) for w in weights]
    if len(coeffs) > order:
        raise ArithmeticDomainError("weight vector longer than the order")
    coeffs += [_ZERO] * (order - len(coeffs))
    return Cyclo(order, _reduce_poly(coeffs, data))


# -- Rational serialization ("+-num/den", den omitted when 1) -----------


def fraction_to_str(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def fraction_from_str(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        den_i = int(den)
        if den_i <= 0:
            raise ArithmeticDomainError(f"denominator must be positive in {s!r}")
        return Fraction(int(num), den_i)
    return Fraction(int(s))
