"""Degree-bounded search for Darboux polynomials d(f) = lambda*f over Q.

For a homogeneous derivation it suffices to look at homogeneous ``f`` of
each degree ``m`` and homogeneous cofactors of degree ``s - 1``.  Two
searches are provided:

* :func:`monomial_cofactor_search` handles cofactors ``c * mu`` for a
  single monomial ``mu`` by an eigenvalue problem;
* :func:`general_cofactor_search` solves the full bilinear system in the
  coefficients of ``f`` and ``lambda`` by elimination and case splitting.

A degree reported ``NONE`` is a proof: either every branch of the solver
closed, or a modular obstruction applies.  The latter rests on Gauss's
lemma: after scaling ``f`` to a primitive integer polynomial the cofactor
of an integral derivation is integral, so any rational pair reduces to a
nonzero pair over F_p.  If no cofactor in F_p^L admits a nonzero ``f``,
none exists over Q.  Hitting the branch cap or a residual nothing can
close gives ``UNDECIDED``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

from .deriv import MonomialDerivation, apply, homogeneity_degree
from .arith import upoly_divmod
from .linalg import RationalMatrix, canonical_span, char_poly, nullspace, rank_mod_p, rational_roots
from .poly import (
    Polynomial,
    VariableContext,
    coefficients_in,
    divide_exact,
    evaluate,
    format_polynomial,
    grlex_key,
    monomial_basis,
    substitute,
)

DEFAULT_BRANCH_CAP = 4096
# equations larger than this are left as residuals instead of eliminated further
MAX_EQUATION_TERMS = 300
RESULTANT_WORK_LIMIT = 50_000
MODULAR_PRIMES = (2, 3, 5, 7, 11, 13)
MODULAR_BUDGET = 20000  # largest p^L cofactor sweep attempted

SCOPE_NOTE = "search over Q only; Darboux polynomials with coefficients in extensions are not sought"


class UnsupportedDerivation(ValueError):
    """Raised for derivations the search does not handle (non-homogeneous)."""


class NotAConstant(ValueError):
    pass


class Status(str, enum.Enum):
    NONE = "NONE"
    FOUND = "FOUND"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class DarbouxPair:
    f: Polynomial
    cofactor: Polynomial

    def __str__(self):
        return f"({format_polynomial(self.f)}, {format_polynomial(self.cofactor)})"


@dataclass
class DegreeResult:
    degree: int
    status: Status
    # cofactor -> reduced echelon basis of the space of f with that cofactor
    found: dict = field(default_factory=dict)
    residuals: list = field(default_factory=list)
    branches: int = 0
    note: str = ""

    def pairs(self) -> list[DarbouxPair]:
        return [DarbouxPair(f, lam) for lam, basis in self.found.items() for f in basis]


@dataclass
class SearchReport:
    derivation: MonomialDerivation
    max_degree: int
    degrees: list = field(default_factory=list)
    scope: str = SCOPE_NOTE

    def status(self, m: int) -> Status:
        return self.degrees[m - 1].status

    def pairs(self) -> list[DarbouxPair]:
        return [p for r in self.degrees for p in r.pairs()]

    def undecided_degrees(self) -> list[int]:
        return [r.degree for r in self.degrees if r.status is Status.UNDECIDED]

    def summary(self) -> str:
        lines = [f"derivation: {self.derivation}", f"scope: {self.scope}"]
        for r in self.degrees:
            lines.append(f"degree {r.degree}: {r.status.value}"
                         + (f" ({r.note})" if r.note else ""))
            for lam, basis in r.found.items():
                for f in basis:
                    lines.append(f"  f = {f}    cofactor = {lam}")
            for res in r.residuals:
                lines.append(f"  residual: {res}")
        return "\n".join(lines)


def _cofactor_degree(d: MonomialDerivation) -> int:
    sd = homogeneity_degree(d)
    if sd is None:
        raise UnsupportedDerivation("Darboux search requires a homogeneous derivation")
    return sd


def _span_key(p: Polynomial):
    return tuple((grlex_key(e), c) for e, c in p.sorted_terms())


def derivation_matrix(d: MonomialDerivation, m: int) -> RationalMatrix:
    """Matrix of d from degree-m forms to degree-(m+s-1) forms in monomial coordinates."""
    sd = _cofactor_degree(d)
    if m < 1:
        raise ValueError("degree must be at least 1")
    cols = monomial_basis(d.context, m)
    rows = monomial_basis(d.context, m + sd) if m + sd >= 0 else []
    row_index = {e: i for i, e in enumerate(rows)}
    entries = [[Fraction(0)] * len(cols) for _ in rows]
    for j, e in enumerate(cols):
        for re, c in apply(d, Polynomial.monomial(d.context, e)).terms.items():
            entries[row_index[re]][j] = c
    return RationalMatrix.from_rows(entries, cols=len(cols)) if rows else RationalMatrix.zeros(0, len(cols))


def multiplication_matrix(context: VariableContext, lam: Polynomial, m: int, sd: int) -> RationalMatrix:
    """Matrix of f -> lam*f from degree m to degree m+sd."""
    cols = monomial_basis(context, m)
    rows = monomial_basis(context, m + sd)
    row_index = {e: i for i, e in enumerate(rows)}
    entries = [[Fraction(0)] * len(cols) for _ in rows]
    for j, e in enumerate(cols):
        for le, c in lam.terms.items():
            entries[row_index[tuple(a + b for a, b in zip(e, le))]][j] += c
    return RationalMatrix.from_rows(entries, cols=len(cols))


def _solution_basis(d: MonomialDerivation, lam: Polynomial, m: int, Md: RationalMatrix) -> list[Polynomial]:
    sd = _cofactor_degree(d)
    K = Md - multiplication_matrix(d.context, lam, m, sd) if not lam.is_zero() else Md
    vecs = canonical_span(nullspace(K))
    cols = monomial_basis(d.context, m)
    basis = [Polynomial.from_vector(d.context, cols, v) for v in vecs]
    for f in basis:
        if not verify_darboux(d, f, lam):
            raise AssertionError(f"solution {f} failed re-verification with cofactor {lam}")
    return basis


def verify_darboux(d: MonomialDerivation, f: Polynomial, lam: Polynomial) -> bool:
    """True iff d(f) == lam*f exactly (checked by exact division)."""
    if f.is_constant():
        raise ValueError("a Darboux polynomial must be non-constant")
    df = apply(d, f)
    q = divide_exact(df, f)
    return q is not None and q == lam


def monomial_cofactor_search(d: MonomialDerivation, m: int) -> list[DarbouxPair]:
    """All degree-m Darboux polynomials whose cofactor is 0 or c*mu for one monomial mu."""
    return DegreeResult(m, Status.FOUND, _monomial_cofactor_spaces(d, m)).pairs()


def _monomial_cofactor_spaces(d: MonomialDerivation, m: int) -> dict:
    sd = _cofactor_degree(d)
    ctx = d.context
    Md = derivation_matrix(d, m)
    cols = monomial_basis(ctx, m)
    rows = monomial_basis(ctx, m + sd)
    row_index = {e: i for i, e in enumerate(rows)}
    found: dict = {}
    zero = Polynomial.zero(ctx)
    kern = canonical_span(nullspace(Md))
    if kern:
        found[zero] = [Polynomial.from_vector(ctx, cols, v) for v in kern]
    if sd < 0:
        return found
    Mrows = Md.to_rows()
    for mu in monomial_basis(ctx, sd):
        shifted = [row_index[tuple(a + b for a, b in zip(nu, mu))] for nu in cols]
        shift_set = set(shifted)
        E = RationalMatrix.from_rows([Mrows[r] for r in shifted], cols=len(cols))
        others = [Mrows[r] for r in range(len(rows)) if r not in shift_set]
        C = RationalMatrix.from_rows(others, cols=len(cols)) if others else None
        for c in sorted(set(rational_roots(char_poly(E)))):
            if c == 0:
                continue
            K = E.scale_identity(c)
            if C is not None:
                K = K.stack(C)
            vecs = canonical_span(nullspace(K))
            if not vecs:
                continue
            lam = Polynomial.monomial(ctx, mu, c)
            basis = [Polynomial.from_vector(ctx, cols, v) for v in vecs]
            for f in basis:
                if not verify_darboux(d, f, lam):
                    raise AssertionError(f"monomial-cofactor solution {f} failed re-verification")
            found[lam] = basis
    return _sorted_found(found)


def _sorted_found(found: dict) -> dict:
    return dict(sorted(found.items(), key=lambda kv: _span_key(kv[0]), reverse=True))


# -- the bilinear solver ---------------------------------------------------------------

class _BranchCap(Exception):
    pass


def _monic(p: Polynomial) -> Polynomial:
    _, c = p.leading_term()
    return p if c == 1 else p.scale(1 / c)


def _linear_solvable(eq: Polynomial, i: int):
    """If eq = a*u_i + r with a a nonzero constant and r free of u_i, return (a, r)."""
    a = None
    rest = {}
    for e, c in eq.terms.items():
        k = e[i]
        if k == 0:
            rest[e] = c
        elif k == 1 and not any(x for j, x in enumerate(e) if j != i):
            a = c
        else:
            return None
    if a is None:
        return None
    return a, Polynomial(eq.context, rest)


def _univariate_coeffs(eq: Polynomial, i: int) -> list:
    coeffs = [Fraction(0)] * (eq.degree_in(i) + 1)
    for e, c in eq.terms.items():
        coeffs[e[i]] = c
    return coeffs


def _upoly_gcd(p: list, q: list) -> list:
    while q:
        _, r = upoly_divmod(p, q)
        p, q = q, r
    return p


class ResultantTooLarge(ArithmeticError):
    pass


def resultant(p: Polynomial, q: Polynomial, i: int, work_limit: int | None = None) -> Polynomial:
    """Res_{x_i}(p, q) as the determinant of the Sylvester matrix.

    The determinant is taken by Bareiss elimination over the polynomial ring
    in the remaining variables, so every division is exact.
    """
    P = coefficients_in(p, i)
    Q = coefficients_in(q, i)
    m, n = max(P), max(Q)
    zero = Polynomial.zero(p.context)
    size = m + n
    if size == 0:
        return Polynomial.constant(p.context, 1)
    rows = []
    for r in range(n):
        rows.append([P.get(m - (c - r), zero) if 0 <= c - r <= m else zero for c in range(size)])
    for r in range(m):
        rows.append([Q.get(n - (c - r), zero) if 0 <= c - r <= n else zero for c in range(size)])
    sign = 1
    prev = Polynomial.constant(p.context, 1)
    work = 0
    for k in range(size - 1):
        if rows[k][k].is_zero():
            swap = next((r for r in range(k + 1, size) if not rows[r][k].is_zero()), None)
            if swap is None:
                return zero
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        piv = rows[k][k]
        for r in range(k + 1, size):
            for c in range(k + 1, size):
                if work_limit is not None:
                    work += (len(piv.terms) * len(rows[r][c].terms)
                             + len(rows[r][k].terms) * len(rows[k][c].terms))
                    if work > work_limit:
                        raise ResultantTooLarge(f"resultant exceeded {work_limit} term products")
                num = piv * rows[r][c] - rows[r][k] * rows[k][c]
                if num.is_zero():
                    rows[r][c] = zero
                    continue
                quo = divide_exact(num, prev)
                if quo is None:
                    raise ArithmeticError("inexact Bareiss step in resultant")
                rows[r][c] = quo
            rows[r][k] = zero
        prev = piv
    det = rows[size - 1][size - 1]
    return det if sign > 0 else -det


class _Undecided(Exception):
    pass


class _Solver:
    """Case-splitting elimination for small polynomial systems over Q.

    Rules, in order: drop zero equations and close on a nonzero constant;
    substitute an unknown that occurs linearly with a constant coefficient;
    branch on the rational roots of the gcd of the univariate equations in
    one unknown; split on a monomial factor; otherwise eliminate one unknown
    by resultants, solve the projected system and substitute back.
    """

    def __init__(self, ctx: VariableContext, cap: int, max_terms: int = MAX_EQUATION_TERMS):
        self.ctx = ctx
        self.cap = cap
        self.max_terms = max_terms
        self.branches = 0

    def tick(self):
        self.branches += 1
        if self.branches > self.cap:
            raise _BranchCap()

    def solve(self, eqs: list[Polynomial], assigned: dict, solutions: list, residuals: list):
        self.tick()
        while True:
            eqs = self._normalize(eqs)
            if eqs is None:
                return
            if not eqs:
                solutions.append(assigned)
                return
            if max(len(e.terms) for e in eqs) > self.max_terms:
                residuals.append(self._render(eqs, assigned))
                return
            move = self._find_linear(eqs)
            if move is not None:
                i, value = move
                eqs, assigned = self._assign(eqs, assigned, i, value)
                continue
            split = self._find_univariate(eqs)
            if split is not None:
                i, roots = split
                for r in roots:
                    self.solve(*self._assign(eqs, assigned, i, Polynomial.constant(self.ctx, r)),
                               solutions, residuals)
                return
            split = self._find_monomial_factor(eqs)
            if split is not None:
                for child in split:
                    self.solve(*child(assigned), solutions, residuals)
                return
            self._project(eqs, assigned, solutions, residuals)
            return

    def _normalize(self, eqs):
        seen = {}
        for e in eqs:
            if e.is_zero():
                continue
            if e.is_constant():
                return None
            seen.setdefault(_monic(e), None)
        return sorted(seen, key=lambda p: (len(p.terms), p.total_degree(), _span_key(p)))

    def _assign(self, eqs, assigned, i, value):
        eqs = [substitute(e, i, value) for e in eqs]
        assigned = {v: substitute(x, i, value) for v, x in assigned.items()}
        assigned[i] = value
        return eqs, assigned

    def _find_linear(self, eqs):
        for eq in eqs:
            for i in eq.variables_used():
                hit = _linear_solvable(eq, i)
                if hit is not None:
                    a, r = hit
                    return i, r.scale(-1 / a)
        return None

    def _find_univariate(self, eqs):
        by_var: dict[int, list] = {}
        for eq in eqs:
            used = eq.variables_used()
            if len(used) == 1:
                by_var.setdefault(used[0], []).append(_univariate_coeffs(eq, used[0]))
        if not by_var:
            return None
        i = min(by_var)
        g = by_var[i][0]
        for h in by_var[i][1:]:
            g = _upoly_gcd(g, h)
        return i, sorted(set(rational_roots(g)))

    def _find_monomial_factor(self, eqs):
        for idx, eq in enumerate(eqs):
            n = eq.context.arity
            low = tuple(min(e[i] for e in eq.terms) for i in range(n))
            if not any(low):
                continue
            rest = Polynomial(self.ctx, {tuple(a - b for a, b in zip(e, low)): c
                                         for e, c in eq.terms.items()})
            others = eqs[:idx] + eqs[idx + 1:]
            children = []
            for i, k in enumerate(low):
                if k:
                    children.append(lambda asg, i=i: self._assign(eqs, asg, i, Polynomial.zero(self.ctx)))
            if not rest.is_constant():
                children.append(lambda asg: (others + [rest], asg))
            return children
        return None

    def _project(self, eqs, assigned, solutions, residuals):
        used = sorted({i for e in eqs for i in e.variables_used()})
        best = None
        for u in used:
            holders = [e for e in eqs if e.degree_in(u) > 0]
            if len(holders) < 2:
                continue
            key = (max(e.degree_in(u) for e in holders), -len(holders), u)
            if best is None or key < best[0]:
                best = (key, u, holders)
        if best is None:
            residuals.append(self._render(eqs, assigned))
            return
        _, u, holders = best
        pivot = min(holders, key=lambda e: (e.degree_in(u), len(e.terms)))
        projected = [e for e in eqs if e.degree_in(u) == 0]
        try:
            for e in holders:
                if e is pivot:
                    continue
                r = resultant(pivot, e, u, RESULTANT_WORK_LIMIT)
                if not r.is_zero():
                    projected.append(r)
        except ResultantTooLarge:
            residuals.append(self._render(eqs, assigned))
            return
        before = set(used) - {u}
        sub_solutions: list = []
        sub_residuals: list = []
        self.solve(projected, {}, sub_solutions, sub_residuals)
        if sub_residuals:
            residuals.append(self._render(eqs, assigned))
            return
        for sub in sub_solutions:
            fixed = {i: v for i, v in sub.items() if i in before}
            if not fixed:
                residuals.append(self._render(eqs, assigned))
                continue
            cur_eqs, cur_asg = eqs, assigned
            for i, v in sorted(fixed.items()):
                cur_eqs, cur_asg = self._assign(cur_eqs, cur_asg, i, v)
            self.solve(cur_eqs, cur_asg, solutions, residuals)

    def _render(self, eqs, assigned) -> str:
        fixed = ", ".join(f"{self.ctx.names[i]} = {format_polynomial(v)}"
                          for i, v in sorted(assigned.items()))
        system = "; ".join(f"{format_polynomial(e)} = 0" for e in eqs)
        return f"[{fixed}] {system}"


def _unknown_context(n_a: int, n_c: int) -> VariableContext:
    return VariableContext(tuple(f"a{i}" for i in range(n_a)) + tuple(f"c{j}" for j in range(n_c)))


def bilinear_system(d: MonomialDerivation, m: int):
    """Equations of d(f) = lambda*f in the unknown coefficients of f (a*) and lambda (c*)."""
    sd = _cofactor_degree(d)
    ctx = d.context
    cols = monomial_basis(ctx, m)
    cof = monomial_basis(ctx, sd) if sd >= 0 else []
    rows = monomial_basis(ctx, m + sd) if m + sd >= 0 else []
    uctx = _unknown_context(len(cols), len(cof))
    n_a = len(cols)
    Md = derivation_matrix(d, m)
    row_index = {e: i for i, e in enumerate(rows)}
    eq_terms: list[dict] = [dict() for _ in rows]
    for r in range(len(rows)):
        for j in range(n_a):
            c = Md[r, j]
            if c:
                eq_terms[r][uctx.unit(j)] = c
    for j, nu in enumerate(cols):
        for l, mu in enumerate(cof):
            r = row_index[tuple(a + b for a, b in zip(nu, mu))]
            e = tuple(int(i == j or i == n_a + l) for i in range(uctx.arity))
            eq_terms[r][e] = eq_terms[r].get(e, 0) - 1
    eqs = [Polynomial(uctx, t) for t in eq_terms]
    return uctx, cols, cof, eqs, Md


def modular_obstruction(d: MonomialDerivation, m: int, p: int) -> bool:
    """True when no cofactor in F_p^L admits a nonzero degree-m solution mod p.

    A True result proves that d has no Darboux polynomial of degree m over Q.
    """
    sd = _cofactor_degree(d)
    ctx = d.context
    den = 1
    for c, _ in d.images:
        den = den * c.denominator // gcd(den, c.denominator)
    Md = derivation_matrix(d, m)
    cols = monomial_basis(ctx, m)
    cof = monomial_basis(ctx, sd) if sd >= 0 else []
    rows = monomial_basis(ctx, m + sd) if m + sd >= 0 else []
    base = [[int(x * den) % p for x in r] for r in Md.to_rows()]
    row_index = {e: i for i, e in enumerate(rows)}
    # (row, column) positions touched by each cofactor monomial
    touch = [[(row_index[tuple(a + b for a, b in zip(nu, mu))], j) for j, nu in enumerate(cols)]
             for mu in cof]
    full = len(cols)
    for cvals in product(range(p), repeat=len(cof)):
        T = [r[:] for r in base]
        for cv, cells in zip(cvals, touch):
            if cv:
                for r, j in cells:
                    T[r][j] = (T[r][j] - cv) % p
        if rank_mod_p(T, p) < full:
            return False
    return True


def _modular_close(d: MonomialDerivation, m: int, budget: int) -> int | None:
    sd = _cofactor_degree(d)
    L = len(monomial_basis(d.context, sd)) if sd >= 0 else 0
    for p in MODULAR_PRIMES:
        if p ** L > budget:
            break
        if modular_obstruction(d, m, p):
            return p
    return None


def general_cofactor_search(d: MonomialDerivation, m: int,
                            branch_cap: int = DEFAULT_BRANCH_CAP, *,
                            method: str = "auto",
                            modular_budget: int = MODULAR_BUDGET) -> DegreeResult:
    """Decide (over Q) all degree-m Darboux polynomials, for arbitrary cofactors.

    ``method="elimination"`` uses the case-splitting solver alone; ``"auto"``
    additionally tries a modular obstruction when elimination leaves
    residuals and has found nothing.
    """
    if method not in ("auto", "elimination"):
        raise ValueError(f"unknown method {method!r}")
    uctx, cols, cof, eqs, Md = bilinear_system(d, m)
    n_a = len(cols)
    solver = _Solver(uctx, branch_cap)
    result = DegreeResult(m, Status.NONE)
    solutions: list = []
    residuals: list = []
    try:
        for p in range(n_a):
            point = {i: Fraction(0) for i in range(p)}
            point[p] = Fraction(1)
            branch_eqs = [evaluate(e, point) for e in eqs]
            assigned = {i: Polynomial.constant(uctx, v) for i, v in point.items()}
            solver.solve(branch_eqs, assigned, solutions, residuals)
    except _BranchCap:
        result.status = Status.UNDECIDED
        result.note = f"branch cap {branch_cap} reached"
    result.branches = solver.branches
    result.residuals = list(residuals)
    found: dict = {}
    families = []
    for sol in solutions:
        values = []
        for l in range(len(cof)):
            v = sol.get(n_a + l)
            if v is None or not v.is_constant():
                values = None
                break
            values.append(v.coefficient(uctx.zero_exponent()))
        if values is None:
            families.append(sol)
            continue
        lam = Polynomial(d.context, {mu: c for mu, c in zip(cof, values)})
        if lam not in found:
            found[lam] = _solution_basis(d, lam, m, Md)
    for sol in families:
        free = ", ".join(f"{uctx.names[i]} = {format_polynomial(v)}" for i, v in sorted(sol.items()))
        result.residuals.append(f"cofactor not isolated: [{free}]")
    result.found = _sorted_found(found)
    undecided = result.status is Status.UNDECIDED or bool(result.residuals)
    if undecided and not result.found and method == "auto":
        p = _modular_close(d, m, modular_budget)
        if p is not None:
            result.status = Status.NONE
            result.note = f"closed by modular obstruction mod {p}"
            result.residuals = []
            return result
    if undecided:
        result.status = Status.UNDECIDED
        if not result.note:
            result.note = "residual system not solved by elimination"
    elif result.found:
        result.status = Status.FOUND
    return result


def _merge(into: dict, extra: dict) -> dict:
    out = dict(into)
    for lam, basis in extra.items():
        if lam in out:
            ctx = lam.context
            monos = sorted({e for f in out[lam] + basis for e in f.terms}, key=grlex_key, reverse=True)
            span = canonical_span([f.coefficient_vector(monos) for f in out[lam] + basis])
            out[lam] = [Polynomial.from_vector(ctx, monos, v) for v in span]
        else:
            out[lam] = basis
    return _sorted_found(out)


def search_up_to(d: MonomialDerivation, max_degree: int, *,
                 branch_cap: int = DEFAULT_BRANCH_CAP,
                 monomial_cofactors_only: bool = False) -> SearchReport:
    """Search degrees 1..max_degree; the monomial-cofactor pass runs first and is merged."""
    _cofactor_degree(d)
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    report = SearchReport(d, max_degree)
    for m in range(1, max_degree + 1):
        fast = _monomial_cofactor_spaces(d, m)
        if monomial_cofactors_only:
            r = DegreeResult(m, Status.FOUND if fast else Status.UNDECIDED, fast,
                             note="" if fast else "only monomial cofactors were searched")
        else:
            r = general_cofactor_search(d, m, branch_cap)
            r.found = _merge(r.found, fast)
            if r.status is Status.NONE and r.found:
                raise AssertionError(
                    f"degree {m}: monomial-cofactor search found pairs the general search excluded")
        report.degrees.append(r)
    return report


def rational_constant_to_darboux(d: MonomialDerivation, p: Polynomial, q: Polynomial):
    """Darboux pairs for numerator and denominator of a rational constant p/q.

    ``p/q`` is assumed reduced; a common factor may give spurious cofactors.
    Returns ``(pair_p, pair_q)`` with ``None`` in place of a constant part.
    """
    if p.is_constant() and q.is_constant():
        raise ValueError("p/q is a constant of K; nothing to extract")
    if q.is_zero():
        raise ZeroDivisionError("denominator is zero")
    if not (apply(d, p) * q - p * apply(d, q)).is_zero():
        raise NotAConstant("d(p/q) != 0")
    pairs = []
    for g in (p, q):
        if g.is_constant():
            pairs.append(None)
            continue
        lam = divide_exact(apply(d, g), g)
        if lam is None:
            raise ValueError(f"{g} does not divide its image; is p/q reduced?")
        pairs.append(DarbouxPair(g, lam))
    if pairs[0] is not None and pairs[1] is not None and pairs[0].cofactor != pairs[1].cofactor:
        raise AssertionError("numerator and denominator cofactors differ")
    return pairs[0], pairs[1]
