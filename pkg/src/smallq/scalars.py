"""Exact arithmetic in a field containing a primitive l-th root of unity.

Two kinds of field are supported:

* ``cyclotomic``: Q[x]/Phi_l(x) with eps the class of x.  Elements are stored
  as an integer coefficient vector plus a positive common denominator.
* ``prime``: F_p with p = 1 mod l and eps = g^((p-1)/l), g the smallest
  primitive root of p.

Quantum integers and Gaussian binomials evaluated at eps live here too.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Union


class EvenOrSmallL(ValueError):
    pass


class BadPrime(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


CYCLOTOMIC = "cyclotomic"
PRIME = "prime"


# -- small integer helpers ---------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def smallest_primitive_root(p: int) -> int:
    qs = _prime_factors(p - 1)
    g = 2
    while True:
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
        g += 1


def default_prime(l: int) -> int:
    """Smallest p = 1 mod l with p > 10**6."""
    p = 10**6 + 1
    p += (1 - p) % l
    while not _is_prime(p):
        p += l
    return p


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    # a, b low-to-high integer coefficients, b monic
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            q[k - db] = c
            for i, bi in enumerate(b):
                a[k - db + i] -= c * bi
    assert not any(a), "inexact division"
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


# -- the field ----------------------------------------------------------------

@dataclass(frozen=True)
class FieldConfig:
    l: int
    mode: str = CYCLOTOMIC
    p: int | None = None
    # derived data, filled in by make_field
    phi: tuple = field(default=(), compare=False, repr=False)
    eps_int: int = field(default=0, compare=False, repr=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def degree(self) -> int:
        return len(self.phi) - 1 if self.mode == CYCLOTOMIC else 1

    @property
    def is_cyclotomic(self) -> bool:
        return self.mode == CYCLOTOMIC

    def __call__(self, x) -> "Scalar":
        """Coerce an int, Fraction or Scalar of this field."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise ValueError("scalar from a different field")
            return x
        if self.mode == CYCLOTOMIC:
            x = Fraction(x)
            return Cyc._make(self, (x.numerator,) + (0,) * (self.degree - 1), x.denominator)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero("denominator divisible by p")
            return Mod(self, x.numerator * pow(x.denominator, -1, self.p))
        return Mod(self, int(x))

    @property
    def zero(self) -> "Scalar":
        z = self._cache.get("zero")
        if z is None:
            z = self._cache["zero"] = self(0)
        return z

    @property
    def one(self) -> "Scalar":
        o = self._cache.get("one")
        if o is None:
            o = self._cache["one"] = self(1)
        return o

    @property
    def eps(self) -> "Scalar":
        return self.eps_pow(1)

    def eps_pow(self, k: int) -> "Scalar":
        """eps**k for any integer k (cached)."""
        k %= self.l
        key = ("eps", k)
        v = self._cache.get(key)
        if v is None:
            if self.mode == CYCLOTOMIC:
                v = Cyc._from_poly(self, [0] * k + [1], 1)
            else:
                v = Mod(self, pow(self.eps_int, k, self.p))
            self._cache[key] = v
        return v

    def q_int(self, m: int) -> "Scalar":
        return q_int(self, m)

    def q_binom(self, a: int, b: int) -> "Scalar":
        return q_binom(self, a, b)

    def describe(self) -> str:
        return f"Q(eps_{self.l})" if self.mode == CYCLOTOMIC else f"F_{self.p} (l={self.l})"


def make_field(l: int, mode: str = CYCLOTOMIC, p: int | None = None) -> FieldConfig:
    if not isinstance(l, int) or l < 3 or l % 2 == 0:
        raise EvenOrSmallL(f"l must be odd and >= 3, got {l}")
    if mode in ("cyclotomic", "cyclotomic-exact"):
        return FieldConfig(l, CYCLOTOMIC, None, cyclotomic_poly(l), 0)
    if mode not in ("prime", "prime-field", "fp"):
        raise ValueError(f"unknown field mode {mode!r}")
    if p is None:
        p = default_prime(l)
    if not _is_prime(p) or p % l != 1:
        raise BadPrime(f"p={p} is not a prime congruent to 1 mod {l}")
    g = smallest_primitive_root(p)
    return FieldConfig(l, PRIME, p, (), pow(g, (p - 1) // l, p))


# -- scalars --------------------------------------------------------------------

class Scalar:
    """Common base; concrete classes are Cyc and Mod."""
    __slots__ = ()

    def inv(self) -> "Scalar":
        raise NotImplementedError

    def __truediv__(self, other):
        other = self.field(other) if not isinstance(other, Scalar) else other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.field(other) * self.inv()

    def __sub__(self, other):
        return self + (-self.field(other))

    def __rsub__(self, other):
        return self.field(other) + (-self)

    def __radd__(self, other):
        return self + other

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out, base = self.field.one, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"Scalar({self})"


class Cyc(Scalar):
    __slots__ = ("field", "num", "den")

    def __init__(self, fld, num, den):
        self.field = fld
        self.num = num
        self.den = den

    @classmethod
    def _make(cls, fld, num, den):
        g = gcd(den, *num)
        if g != 1:
            num = tuple(c // g for c in num)
            den //= g
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        return cls(fld, num, den)

    @classmethod
    def _from_poly(cls, fld, coeffs, den):
        # reduce an arbitrary-length integer polynomial mod Phi_l
        phi = fld.phi
        d = len(phi) - 1
        c = list(coeffs)
        for k in range(len(c) - 1, d - 1, -1):
            t = c[k]
            if t:
                for i in range(d):
                    c[k - d + i] -= t * phi[i]
        c = c[:d] + [0] * (d - len(c))
        return cls._make(fld, tuple(c), den)

    def _coerce(self, other):
        if isinstance(other, Cyc):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __bool__(self):
        return any(self.num)

    def __eq__(self, other):
        if isinstance(other, Cyc):
            return self.den == other.den and self.num == other.num and self.field == other.field
        if isinstance(other, (int, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            if self.den == 1:
                return Cyc(self.field, tuple(a + b for a, b in zip(self.num, o.num)), 1)
            return Cyc._make(self.field, tuple(a + b for a, b in zip(self.num, o.num)), self.den)
        da, db = self.den, o.den
        return Cyc._make(self.field, tuple(a * db + b * da for a, b in zip(self.num, o.num)), da * db)

    def __neg__(self):
        return Cyc(self.field, tuple(-a for a in self.num), self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.num, o.num
        prod = [0] * (2 * len(a) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        den = self.den * o.den
        if den == 1:
            r = Cyc._from_poly(self.field, prod, 1)
            return r
        return Cyc._from_poly(self.field, prod, den)

    def _galois(self, k):
        # image under eps -> eps^k
        l = self.field.l
        c = [0] * l
        for i, a in enumerate(self.num):
            if a:
                c[(i * k) % l] += a
        return Cyc._from_poly(self.field, c, self.den)

    def inv(self):
        if not self:
            raise DivisionByZero("inverse of zero")
        l = self.field.l
        # product of the nontrivial conjugates, divided by the norm
        conj = self.field.one
        for k in range(2, l):
            if gcd(k, l) == 1:
                conj = conj * self._galois(k)
        norm = self * conj
        assert not any(norm.num[1:]), "norm is not rational"
        n = Fraction(norm.num[0], norm.den)
        return conj * self.field(1 / n)

    def to_fraction_list(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def __str__(self):
        terms = []
        for i, c in enumerate(self.num):
            if not c:
                continue
            q = Fraction(c, self.den)
            mon = "" if i == 0 else ("eps" if i == 1 else f"eps^{i}")
            if not mon:
                terms.append(str(q))
            elif q == 1:
                terms.append(mon)
            elif q == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"{q}*{mon}")
        if not terms:
            return "0"
        s = terms[0]
        for t in terms[1:]:
            s += " - " + t[1:] if t.startswith("-") else " + " + t
        return s


class Mod(Scalar):
    __slots__ = ("field", "v")

    def __init__(self, fld, v):
        self.field = fld
        self.v = v % fld.p

    def _val(self, other):
        if isinstance(other, Mod):
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return self.field(other).v
        return None

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.v == other.v and self.field == other.field
        v = self._val(other)
        if v is None:
            return NotImplemented
        return (self.v - v) % self.field.p == 0

    def __hash__(self):
        return hash(self.v)

    def __add__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        return Mod(self.field, self.v + v)

    def __neg__(self):
        return Mod(self.field, -self.v)

    def __mul__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        return Mod(self.field, self.v * v)

    def inv(self):
        if not self.v:
            raise DivisionByZero("inverse of zero")
        return Mod(self.field, pow(self.v, -1, self.field.p))

    def __str__(self):
        return str(self.v)


Number = Union[int, Fraction, Scalar]


def arith(a: Scalar, b: Scalar | None, op: str):
    """Spec-style dispatcher for the basic field operations."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if op == "eq":
        return a == b
    raise ValueError(f"unknown op {op!r}")


def to_prime_field(x: Scalar, target: FieldConfig) -> Scalar:
    """Ring map Q(eps) -> F_p sending eps to target.eps."""
    assert isinstance(x, Cyc) and target.mode == PRIME
    acc = target.zero
    for i, c in enumerate(x.num):
        if c:
            acc = acc + target.eps_pow(i) * c
    return acc * target(Fraction(1, x.den))


# -- quantum numbers ----------------------------------------------------------------

def q_int(fld: FieldConfig, m: int) -> Scalar:
    """[m] = (eps^m - eps^-m)/(eps - eps^-1), computed without division."""
    key = ("qint", m % fld.l)
    v = fld._cache.get(key)
    if v is None:
        n = m % fld.l
        v = fld.zero
        for i in range(n):
            v = v + fld.eps_pow(n - 1 - 2 * i)
        fld._cache[key] = v
    return v


def q_binom(fld: FieldConfig, a: int, b: int) -> Scalar:
    """Gaussian binomial [a over b] at eps via the q-Pascal recurrence

        [a over b] = eps^{-b} [a-1 over b] + eps^{a-b} [a-1 over b-1].
    """
    if b < 0 or a < 0 or b > a:
        return fld.zero
    table = fld._cache.setdefault("binom", {})
    if (a, b) in table:
        return table[(a, b)]
    # fill rows bottom-up so deep recursion is never needed
    for n in range(a + 1):
        for k in range(min(n, b) + 1):
            if (n, k) in table:
                continue
            if k == 0 or k == n:
                table[(n, k)] = fld.one
            else:
                table[(n, k)] = fld.eps_pow(-k) * table[(n - 1, k)] + fld.eps_pow(n - k) * table[(n - 1, k - 1)]
    return table[(a, b)]


def q_binom_lucas(fld: FieldConfig, a: int, b: int) -> Scalar:
    """q-Lucas evaluation: C(a1, b1) * [a0 over b0] with a = a1*l + a0."""
    if b < 0 or b > a:
        return fld.zero
    a1, a0 = divmod(a, fld.l)
    b1, b0 = divmod(b, fld.l)
    return q_binom(fld, a0, b0) * comb(a1, b1) if b0 <= a0 and b1 <= a1 else fld.zero
