"""Text form of monomial derivations and polynomials.

Spec grammar (whitespace and newlines are free, ``#`` starts a comment)::

    spec   := "vars" id ("," id)* ";" image*
    image  := "d" "(" id ")" "=" ["-"] [coeff ["*"]] monomial ";"
    coeff  := int ["/" int]
    monomial := "1" | factor ("*" factor)*
    factor := id ["^" int]

A bare coefficient (``d(x) = 3;``) is the constant monomial times 3.
Polynomial expressions (for ``orbit --f``) accept ``+ - * ^``, parentheses
and rational literals over the declared variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .deriv import MonomialDerivation
from .poly import Polynomial, VariableContext, format_monomial, format_polynomial


class SpecError(ValueError):
    """Lexical or syntax error, with 1-based line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # "id", "int", or the punctuation character itself; "eof" at the end
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"\s+|#[^\n]*|(?P<id>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)|(?P<op>[,;()=*^/+\-])")


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SpecError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        col = pos - line_start + 1
        if m.lastgroup == "id":
            out.append(Token("id", m.group(), line, col))
        elif m.lastgroup == "int":
            out.append(Token("int", m.group(), line, col))
        elif m.lastgroup == "op":
            out.append(Token(m.group(), m.group(), line, col))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise SpecError(message, tok.line, tok.col)

    def accept(self, kind: str) -> Token | None:
        if self.tok.kind == kind:
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, kind: str, what: str | None = None) -> Token:
        t = self.accept(kind)
        if t is None:
            found = self.tok.text or "end of input"
            self.error(f"expected {what or repr(kind)}, found {found!r}")
        return t


# -- derivation specs --------------------------------------------------------------

def parse_spec(text: str) -> MonomialDerivation:
    p = _Parser(text)
    kw = p.expect("id", "'vars'")
    if kw.text != "vars":
        p.error("spec must start with 'vars'", kw)
    names: list[str] = []
    while True:
        t = p.expect("id", "variable name")
        if t.text in names:
            p.error(f"duplicate variable {t.text!r}", t)
        names.append(t.text)
        if p.accept(";"):
            break
        p.expect(",", "',' or ';'")
    index = {v: i for i, v in enumerate(names)}
    images: dict[str, tuple] = {}
    while p.tok.kind != "eof":
        start = p.expect("id", "'d'")
        if start.text != "d":
            p.error(f"expected 'd', found {start.text!r}", start)
        p.expect("(")
        var = p.expect("id", "variable name")
        if var.text not in index:
            p.error(f"undeclared variable {var.text!r}", var)
        if var.text in images:
            p.error(f"second image for {var.text!r}", var)
        p.expect(")")
        p.expect("=")
        images[var.text] = _parse_image(p, index)
        if p.tok.kind in ("+", "-"):
            p.error("image must be a single monomial")
        p.expect(";", "';'")
    missing = [v for v in names if v not in images]
    if missing:
        t = p.tok
        raise SpecError(f"no image given for {', '.join(missing)}", t.line, t.col)
    ctx = VariableContext(tuple(names))
    return MonomialDerivation(ctx, tuple(images[v] for v in names))


def _parse_image(p: _Parser, index: dict) -> tuple:
    sign = -1 if p.accept("-") else 1
    coeff = Fraction(1)
    exp = [0] * len(index)
    if p.tok.kind == "int":
        t = p.accept("int")
        coeff = Fraction(int(t.text))
        if p.accept("/"):
            den = p.expect("int", "denominator")
            if int(den.text) == 0:
                p.error("zero denominator", den)
            coeff /= int(den.text)
        if coeff == 0:
            p.error("image coefficient must be nonzero", t)
        if not p.accept("*"):
            if p.tok.kind == "id":
                pass  # "2 y" is read as "2*y"
            else:
                return sign * coeff, tuple(exp)
        elif p.tok.kind == "int" and p.tok.text == "1":
            p.accept("int")
            return sign * coeff, tuple(exp)
    _parse_monomial(p, index, exp)
    return sign * coeff, tuple(exp)


def _parse_monomial(p: _Parser, index: dict, exp: list) -> None:
    while True:
        t = p.tok
        if t.kind != "id":
            p.error("expected a variable")
        p.i += 1
        if t.text not in index:
            p.error(f"undeclared variable {t.text!r}", t)
        k = 1
        if p.accept("^"):
            k = int(p.expect("int", "exponent").text)
        exp[index[t.text]] += k
        if not p.accept("*"):
            return


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def print_spec(d: MonomialDerivation) -> str:
    """Canonical text: one declaration line and one image per line."""
    lines = ["vars " + ", ".join(d.names) + ";"]
    for name, (c, e) in zip(d.names, d.images):
        mono = format_monomial(d.context, e)
        if not mono:
            rhs = _format_coeff(c)
        elif c == 1:
            rhs = mono
        elif c == -1:
            rhs = "-" + mono
        else:
            rhs = f"{_format_coeff(c)}*{mono}"
        lines.append(f"d({name}) = {rhs};")
    return "\n".join(lines) + "\n"


# -- polynomial expressions --------------------------------------------------------

def parse_polynomial(text: str, context: VariableContext) -> Polynomial:
    """Parse a rational polynomial expression over ``context``."""
    p = _Parser(text)
    out = _expr(p, context)
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.text!r}")
    return out


def _expr(p: _Parser, ctx) -> Polynomial:
    if p.accept("-"):
        out = -_term(p, ctx)
    else:
        p.accept("+")
        out = _term(p, ctx)
    while p.tok.kind in ("+", "-"):
        op = p.accept(p.tok.kind).kind
        t = _term(p, ctx)
        out = out + t if op == "+" else out - t
    return out


def _term(p: _Parser, ctx) -> Polynomial:
    out = _power(p, ctx)
    while True:
        if p.accept("*"):
            out = out * _power(p, ctx)
        elif p.tok.kind == "/":
            t = p.accept("/")
            den = _power(p, ctx)
            if not den.is_constant() or den.is_zero():
                p.error("division only by nonzero constants", t)
            out = out.scale(1 / den.to_rational().coefficient(ctx.zero_exponent()))
        elif p.tok.kind in ("id", "int", "("):
            out = out * _power(p, ctx)  # implicit product
        else:
            return out


def _power(p: _Parser, ctx) -> Polynomial:
    base = _atom(p, ctx)
    if p.accept("^"):
        k = int(p.expect("int", "exponent").text)
        return base ** k
    return base


def _atom(p: _Parser, ctx) -> Polynomial:
    t = p.tok
    if p.accept("("):
        out = _expr(p, ctx)
        p.expect(")", "')'")
        return out
    if p.accept("int"):
        return Polynomial.constant(ctx, Fraction(int(t.text)))
    if p.accept("id"):
        if t.text not in ctx.names:
            p.error(f"unknown variable {t.text!r}", t)
        return Polynomial.variable(ctx, ctx.index(t.text))
    if p.tok.kind == "-":
        p.accept("-")
        return -_atom(p, ctx)
    p.error(f"expected a term, found {t.text or 'end of input'!r}")


def print_polynomial(f: Polynomial) -> str:
    """Rational polynomials in a form :func:`parse_polynomial` reads back."""
    return format_polynomial(f)
