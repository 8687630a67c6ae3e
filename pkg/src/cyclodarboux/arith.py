"""Exact rational arithmetic and cyclotomic fields Q(zeta_N).

Rationals are :class:`fractions.Fraction`.  A cyclotomic number is stored
as its remainder modulo the N-th cyclotomic polynomial, as a tuple of
``phi(N)`` rationals (coefficients of ``1, zeta, ..., zeta^(phi(N)-1)``).

Univariate polynomials in this module are plain lists of coefficients,
lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from numbers import Rational as _RationalABC

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


# -- dense univariate helpers (low degree first) ---------------------------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def upoly_sub(p: list, q: list) -> list:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def upoly_mul(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def upoly_divmod(p: list, q: list) -> tuple[list, list]:
    """Division with remainder of univariate polynomials over Q (or Z when exact)."""
    q = _trim(list(q))
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = _trim(list(p))
    lead = q[-1]
    if len(r) < len(q):
        return [], r
    quot = [0] * (len(r) - len(q) + 1)
    while len(r) >= len(q):
        shift = len(r) - len(q)
        c = r[-1] / lead if lead != 1 else r[-1]
        if isinstance(c, float):
            raise TypeError("inexact coefficient in polynomial division")
        quot[shift] = c
        for i, b in enumerate(q):
            r[shift + i] -= c * b
        r.pop()
        _trim(r)
    return _trim(quot), r


def upoly_eval(p: list, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    num = [-1] + [0] * (n - 1) + [1]  # t^n - 1
    for d in range(1, n):
        if n % d == 0:
            num, rem = upoly_divmod(num, list(_cyclotomic(d)))
            assert not rem, "cyclotomic division left a remainder"
    return tuple(int(c) for c in num)


def cyclotomic_polynomial(n: int) -> list[int]:
    """Return Phi_n as an integer coefficient list, lowest degree first.

    Computed by exact division of ``t^n - 1`` by ``Phi_d`` for each proper
    divisor ``d`` of ``n``.
    """
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    return list(_cyclotomic(n))


# -- the field ---------------------------------------------------------------

@dataclass(frozen=True)
class CyclotomicField:
    order: int
    modulus: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def __repr__(self) -> str:
        return f"CyclotomicField({self.order})"

    def zero(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self, (Fraction(0),) * self.degree)

    def one(self) -> "CyclotomicNumber":
        return self.embed(1)

    def embed(self, c) -> "CyclotomicNumber":
        c = as_rational(c)
        return CyclotomicNumber(self, (c,) + (Fraction(0),) * (self.degree - 1))

    def element(self, coeffs) -> "CyclotomicNumber":
        """Build the residue of ``sum coeffs[i] zeta^i`` (any length)."""
        return CyclotomicNumber(self, self._reduce([as_rational(c) for c in coeffs]))

    def zeta(self) -> "CyclotomicNumber":
        return zeta_pow(self, 1)

    def _reduce(self, coeffs: list) -> tuple:
        deg = self.degree
        r = list(coeffs)
        mod = self.modulus  # monic
        for top in range(len(r) - 1, deg - 1, -1):
            c = r[top]
            if c == 0:
                continue
            shift = top - deg
            for i, b in enumerate(mod):
                if b:
                    r[shift + i] -= c * b
        r = r[:deg] + [Fraction(0)] * (deg - len(r))
        return tuple(Fraction(c) for c in r)

    def _reduce_int(self, r: list) -> list:
        """Remainder of an integer coefficient list modulo the monic Phi_N."""
        deg = self.degree
        mod = self.modulus
        for top in range(len(r) - 1, deg - 1, -1):
            c = r[top]
            if c:
                shift = top - deg
                for i, b in enumerate(mod):
                    if b:
                        r[shift + i] -= c * b
        return r[:deg] + [0] * (deg - len(r))


_ZERO = Fraction(0)


def _integer_form(coeffs) -> tuple[int, list[int]]:
    """(D, ints) with coeffs[i] == ints[i] / D."""
    den = 1
    for c in coeffs:
        if c.denominator != 1:
            den = lcm(den, c.denominator)
    return den, [c.numerator * (den // c.denominator) for c in coeffs]


@lru_cache(maxsize=None)
def cyclotomic_field(n: int) -> CyclotomicField:
    return CyclotomicField(n, _cyclotomic(n))


class CyclotomicNumber:
    """Immutable element of Q(zeta_N) in canonical remainder form."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs: tuple):
        if len(coeffs) != field.degree:
            raise ValueError("coefficient vector has the wrong length")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicNumber is immutable")

    def _coerce(self, other) -> "CyclotomicNumber | None":
        if isinstance(other, CyclotomicNumber):
            if other.field.order != self.field.order:
                raise ValueError(
                    f"mixing Q(zeta_{self.field.order}) and Q(zeta_{other.field.order})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.embed(other)
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.field, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # integer convolution and reduction, one normalization at the end
        da, ia = _integer_form(self.coeffs)
        db, ib = _integer_form(o.coeffs)
        prod = [0] * (2 * self.field.degree - 1)
        for i, a in enumerate(ia):
            if a:
                for j, b in enumerate(ib):
                    if b:
                        prod[i + j] += a * b
        den = da * db
        return CyclotomicNumber(self.field, tuple(
            Fraction(x, den) if x else _ZERO for x in self.field._reduce_int(prod)))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        a = _trim([Fraction(c) for c in self.coeffs])
        b = [Fraction(c) for c in self.field.modulus]
        # invariant: s0*a == r0 (mod Phi)
        r0, r1 = a, b
        s0, s1 = [Fraction(1)], []
        while r1:
            q, r = upoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, upoly_sub(s0, upoly_mul(q, s1))
        # r0 is a nonzero constant (gcd with an irreducible modulus)
        assert len(r0) == 1, "Phi_N shares a factor with a nonzero element"
        inv_const = 1 / r0[0]
        return self.field.element([c * inv_const for c in s0])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CyclotomicNumber(self.field, tuple(a / other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ValueError:
            return False
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.order, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CyclotomicNumber({self.field.order}, {self})"

    def __str__(self):
        return format_cyclotomic(self)


def format_cyclotomic(a: CyclotomicNumber, name: str = "zeta") -> str:
    parts = []
    for i, c in enumerate(a.coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
        if not mono:
            term = str(c)
        elif c == 1:
            term = mono
        elif c == -1:
            term = "-" + mono
        else:
            term = f"{c}*{mono}"
        parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


@lru_cache(maxsize=4096)
def _zeta_pow_cached(n: int, e: int) -> CyclotomicNumber:
    field = cyclotomic_field(n)
    return field.element([0] * e + [1])


def zeta_pow(field: CyclotomicField, e: int) -> CyclotomicNumber:
    """Canonical representative of zeta^e; negative exponents reduce mod N."""
    return _zeta_pow_cached(field.order, e % field.order)


def geometric_sum(field: CyclotomicField, e: int) -> CyclotomicNumber:
    """Sum of zeta^(m e) for m = 0..N-1.

    Both the closed form (N when N divides e, else 0) and the literal sum
    are computed; they must agree.
    """
    n = field.order
    literal = field.zero()
    for m in range(n):
        literal = literal + zeta_pow(field, m * e)
    closed = field.embed(n if e % n == 0 else 0)
    if literal != closed:
        raise ArithmeticError(
            f"geometric sum mismatch in Q(zeta_{n}) for e={e}: {literal} != {closed}"
        )
    return literal
