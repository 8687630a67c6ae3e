"""Sparse multivariate polynomials over Q or Q(zeta_N).

A polynomial maps exponent tuples to nonzero coefficients.  Coefficients are
``Fraction`` or :class:`~cyclodarboux.arith.CyclotomicNumber`; the two mix
freely because rationals embed as constants.  Every listing of terms uses
graded-lex order, descending, in the declared variable order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping

from .arith import CyclotomicNumber, as_rational, format_cyclotomic

Exponent = tuple  # tuple[int, ...]

MAX_EXPONENT = 2**62


class ContextMismatch(ValueError):
    pass


@dataclass(frozen=True)
class VariableContext:
    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("a variable context needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def unit(self, i: int) -> Exponent:
        return tuple(int(j == i) for j in range(len(self.names)))

    def zero_exponent(self) -> Exponent:
        return (0,) * len(self.names)

    def __str__(self):
        return ", ".join(self.names)


def grlex_key(e: Exponent):
    return (sum(e), e)


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    out = tuple(x + y for x, y in zip(a, b))
    if out and max(out) > MAX_EXPONENT:
        raise OverflowError("exponent overflow")
    return out


def _is_rational_coeff(c) -> bool:
    return not isinstance(c, CyclotomicNumber) or c.is_rational()


class Polynomial:
    """Immutable sparse polynomial; do not mutate ``terms``."""

    __slots__ = ("context", "terms")

    def __init__(self, context: VariableContext, terms: Mapping | None = None):
        self.context = context
        clean = {}
        if terms:
            n = context.arity
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {n} variables")
                if c:
                    if isinstance(c, int):
                        c = Fraction(c)
                    elif isinstance(c, float):
                        raise TypeError("floating-point coefficients are not allowed")
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, context: VariableContext) -> "Polynomial":
        return cls(context)

    @classmethod
    def constant(cls, context: VariableContext, c) -> "Polynomial":
        if not isinstance(c, CyclotomicNumber):
            c = as_rational(c)
        return cls(context, {context.zero_exponent(): c})

    @classmethod
    def monomial(cls, context: VariableContext, exponent: Exponent, coeff=1) -> "Polynomial":
        if not isinstance(coeff, CyclotomicNumber):
            coeff = as_rational(coeff)
        return cls(context, {tuple(exponent): coeff})

    @classmethod
    def variable(cls, context: VariableContext, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else context.index(name_or_index)
        return cls.monomial(context, context.unit(i))

    @classmethod
    def from_vector(cls, context: VariableContext, basis, vector) -> "Polynomial":
        return cls(context, {e: c for e, c in zip(basis, vector) if c})

    @classmethod
    def _raw(cls, context, terms):
        p = cls.__new__(cls)
        p.context = context
        p.terms = terms
        return p

    # -- inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        return max(sum(e) for e in self.terms)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        return max(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def coefficient(self, exponent: Exponent):
        return self.terms.get(tuple(exponent), Fraction(0))

    def coefficient_vector(self, basis) -> list:
        return [self.terms.get(e, Fraction(0)) for e in basis]

    def support(self) -> list:
        return [e for e, _ in self.sorted_terms()]

    def variables_used(self) -> list[int]:
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return sorted(used)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=0)

    def is_rational(self) -> bool:
        return all(_is_rational_coeff(c) for c in self.terms.values())

    def to_rational(self) -> "Polynomial":
        """Convert Q(zeta_N) coefficients that happen to be rational back to Fraction."""
        out = {}
        for e, c in self.terms.items():
            if isinstance(c, CyclotomicNumber):
                c = c.to_rational()
            out[e] = c
        return Polynomial._raw(self.context, out)

    def lift(self, field) -> "Polynomial":
        """Embed coefficients into ``field``."""
        return Polynomial._raw(self.context, {
            e: (c if isinstance(c, CyclotomicNumber) else field.embed(c))
            for e, c in self.terms.items()
        })

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.context != other.context:
            raise ContextMismatch(f"contexts differ: ({self.context}) vs ({other.context})")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return Polynomial.constant(self.context, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.context, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.context, {e: -c for e, c in self.terms.items()})

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

    def scale(self, c) -> "Polynomial":
        if not c:
            return Polynomial.zero(self.context)
        return Polynomial(self.context, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.context, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(self.context, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            other = Polynomial.constant(self.context, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.context != other.context or self.terms.keys() != other.terms.keys():
            return False
        return all(c == other.terms[e] for e, c in self.terms.items())

    def __hash__(self):
        return hash((self.context, frozenset((e, hash(c)) for e, c in self.terms.items())))

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


# -- homogeneity -----------------------------------------------------------------

def is_homogeneous(p: Polynomial) -> int | None:
    """Common total degree of all terms, or None when mixed."""
    if p.is_zero():
        raise ValueError("is_homogeneous is undefined for the zero polynomial")
    degs = {sum(e) for e in p.terms}
    return degs.pop() if len(degs) == 1 else None


def homogeneous_components(p: Polynomial) -> dict[int, Polynomial]:
    comps: dict[int, dict] = {}
    for e, c in p.terms.items():
        comps.setdefault(sum(e), {})[e] = c
    return {m: Polynomial._raw(p.context, t) for m, t in sorted(comps.items())}


def monomial_basis(context: VariableContext, m: int) -> list[Exponent]:
    """All exponent vectors of total degree m, descending lex order."""
    if m < 0:
        raise ValueError("negative degree")
    n = context.arity
    out = []
    for combo in combinations_with_replacement(range(n), m):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    assert len(out) == comb(m + n - 1, n - 1)
    return out


# -- division ----------------------------------------------------------------------

def divide_exact(p: Polynomial, q: Polynomial) -> Polynomial | None:
    """Quotient ``h`` with ``p == h*q``, or None when q does not divide p.

    Multivariate division with remainder by the single divisor ``q`` in
    graded-lex order.
    """
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("divide_exact by the zero polynomial")
    lt_e, lt_c = q.leading_term()
    rem = dict(p.terms)
    quot: dict = {}
    qterms = list(q.terms.items())
    while rem:
        e = max(rem, key=grlex_key)
        if any(a < b for a, b in zip(e, lt_e)):
            return None
        c = rem[e] / lt_c
        shift = tuple(a - b for a, b in zip(e, lt_e))
        quot[shift] = c
        for qe, qc in qterms:
            te = _add_exp(shift, qe)
            v = rem.get(te, 0) - c * qc
            if v:
                rem[te] = v
            else:
                rem.pop(te, None)
    return Polynomial(p.context, quot)


# -- calculus and substitution ----------------------------------------------------

def diff(p: Polynomial, i: int) -> Polynomial:
    """Partial derivative with respect to variable index i."""
    out = {}
    for e, c in p.terms.items():
        k = e[i]
        if k:
            ne = e[:i] + (k - 1,) + e[i + 1:]
            out[ne] = c * k
    return Polynomial(p.context, out)


def coefficients_in(p: Polynomial, i: int) -> dict[int, Polynomial]:
    """Write p as sum_k coeff_k * x_i^k; returns {k: coeff_k} (x_i-free coefficients)."""
    parts: dict[int, dict] = {}
    for e, c in p.terms.items():
        parts.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
    return {k: Polynomial._raw(p.context, t) for k, t in parts.items()}


def substitute(p: Polynomial, i: int, value: Polynomial) -> Polynomial:
    """Replace variable i by ``value`` (a polynomial in the same context)."""
    if not isinstance(value, Polynomial):
        value = Polynomial.constant(p.context, value)
    p._check(value)
    parts = coefficients_in(p, i)
    if set(parts) <= {0}:
        return p
    result = Polynomial.zero(p.context)
    # Horner in the substituted variable
    for k in range(max(parts), -1, -1):
        result = result * value
        if k in parts:
            result = result + parts[k]
    return result


def evaluate(p: Polynomial, point: Mapping[int, object]) -> Polynomial:
    """Substitute constants for several variables at once."""
    out: dict = {}
    for e, c in p.terms.items():
        v = c
        ne = list(e)
        for i, x in point.items():
            if e[i]:
                v = v * x ** e[i]
                ne[i] = 0
        if v:
            ne = tuple(ne)
            s = out.get(ne)
            out[ne] = v if s is None else s + v
    return Polynomial(p.context, out)


# -- diagonal automorphisms ----------------------------------------------------------

@dataclass(frozen=True)
class DiagonalAutomorphism:
    """x_i -> scale[i] * x_i."""

    context: VariableContext
    scale: tuple

    def __post_init__(self):
        if len(self.scale) != self.context.arity:
            raise ValueError("one scale per variable is required")
        if any(not s for s in self.scale):
            raise ValueError("automorphism scales must be nonzero")

    def factor(self, exponent: Exponent):
        f = 1
        for s, k in zip(self.scale, exponent):
            if k:
                f = s ** k * f
        return f

    def inverse(self) -> "DiagonalAutomorphism":
        return DiagonalAutomorphism(self.context, tuple(1 / s if isinstance(s, CyclotomicNumber)
                                                        else Fraction(1) / s for s in self.scale))

    def power(self, m: int) -> "DiagonalAutomorphism":
        if m < 0:
            return self.inverse().power(-m)
        return DiagonalAutomorphism(self.context, tuple(s ** m if isinstance(s, CyclotomicNumber)
                                                        else Fraction(s) ** m for s in self.scale))

    def is_identity(self) -> bool:
        return all(s == 1 for s in self.scale)

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply_automorphism(self, p)


def apply_automorphism(sigma: DiagonalAutomorphism, p: Polynomial) -> Polynomial:
    if sigma.context != p.context:
        raise ContextMismatch("automorphism and polynomial live in different contexts")
    return Polynomial(p.context, {e: sigma.factor(e) * c for e, c in p.terms.items()})


# -- printing -------------------------------------------------------------------------

def format_monomial(context: VariableContext, e: Exponent) -> str:
    parts = []
    for name, k in zip(context.names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _format_coeff(c) -> tuple[str, bool]:
    """Return (text without sign, negative?)."""
    if isinstance(c, CyclotomicNumber):
        if c.is_rational():
            c = c.to_rational()
        else:
            text = format_cyclotomic(c)
            if " " in text:
                return f"({text})", False
            if text.startswith("-"):
                return text[1:], True
            return text, False
    c = as_rational(c)
    return str(abs(c)), c < 0


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for e, c in p.sorted_terms():
        mono = format_monomial(p.context, e)
        text, neg = _format_coeff(c)
        if not mono:
            body = text
        elif text == "1":
            body = mono
        else:
            body = f"{text}*{mono}"
        pieces.append((neg, body))
    neg, body = pieces[0]
    out = ("-" if neg else "") + body
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def polynomial_from_terms(context: VariableContext, terms: Iterable) -> Polynomial:
    """Build from (exponent, coeff) pairs, summing repeats."""
    acc: dict = {}
    for e, c in terms:
        e = tuple(e)
        acc[e] = acc.get(e, 0) + c
    return Polynomial(context, acc)
