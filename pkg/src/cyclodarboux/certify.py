"""Cyclotomic symmetry of generalized cyclotomic derivations, made checkable.

Given a splitting S_1, ..., S_k of the variables with d(S_i) in K[S_{i+1}]
and all images of total degree s, put N = 1 + s + ... + s^(k-1),
q_i = 1 + s + ... + s^i and let sigma scale the variables of class k-i by
zeta^(q_i), zeta a primitive N-th root of unity.  Then

* sigma^-1 d sigma = zeta d,
* for every cofactor monomial the sum over m of zeta^m sigma^m(mu) vanishes,
* so for a Darboux pair (f, lambda) the orbit product F = prod sigma^m(f)
  satisfies d(F) = 0.

Each statement is computed and checked exactly in Q(zeta_N)[S].
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import CyclotomicField, cyclotomic_field, geometric_sum, zeta_pow
from .darboux import DarbouxPair, SearchReport, search_up_to, verify_darboux
from .deriv import (
    CyclotomicPartition,
    MonomialDerivation,
    apply,
    detect_cyclotomic_partition,
    feasible_partitions,
    homogeneity_degree,
    partition_violations,
)
from .poly import (
    DiagonalAutomorphism,
    Polynomial,
    apply_automorphism,
    homogeneous_components,
    is_homogeneous,
    monomial_basis,
)


class CertificationError(ValueError):
    pass


@dataclass(frozen=True)
class CyclotomicStructure:
    partition: CyclotomicPartition
    s: int
    N: int
    q: tuple
    field: CyclotomicField
    sigma: DiagonalAutomorphism
    # exponent of zeta in sigma's scale for each variable
    sigma_exponents: tuple

    @property
    def k(self) -> int:
        return self.partition.k


def make_structure(d: MonomialDerivation, partition: CyclotomicPartition, s: int) -> CyclotomicStructure:
    """Assemble N, q, zeta and sigma from a partition and an image degree s, unchecked.

    :func:`build_structure` is the validating entry point; this one exists
    so that deliberately wrong structures can be built and shown to fail.
    """
    k = partition.k
    q = tuple(sum(s ** j for j in range(i + 1)) for i in range(k))
    N = q[k - 1]
    field_ = cyclotomic_field(N)
    # class k - i gets zeta^(q_i)
    exps = tuple(q[k - c] % N for c in partition.classes)
    sigma = DiagonalAutomorphism(d.context, tuple(zeta_pow(field_, e) for e in exps))
    return CyclotomicStructure(partition, s, N, q, field_, sigma, exps)


def build_structure(d: MonomialDerivation, partition: CyclotomicPartition | None = None,
                    k: int | None = None) -> CyclotomicStructure:
    """Validated cyclotomic structure of d for a partition (detected if not given)."""
    if not d.has_unit_coefficients():
        raise CertificationError("certification requires unit image coefficients")
    sd = homogeneity_degree(d)
    if sd is None:
        raise CertificationError("derivation is not homogeneous")
    s = sd + 1
    if s < 1:
        raise CertificationError("image degree s must be positive")
    if partition is None:
        if k is None:
            partition = detect_cyclotomic_partition(d)
        else:
            partition = feasible_partitions(d).get(k)
        if partition is None:
            raise CertificationError(
                "no generalized cyclotomic partition" + (f" with k={k}" if k else ""))
    problems = partition_violations(d, partition)
    if problems:
        raise CertificationError("invalid partition: " + "; ".join(problems))
    st = make_structure(d, partition, s)
    assert st.q[-1] == st.N and st.N >= 2
    assert st.sigma.power(st.N).is_identity()
    return st


# -- conjugation ----------------------------------------------------------------------

@dataclass
class ConjugationCheck:
    holds: bool
    # per variable: (name, sigma^-1 d sigma (x), zeta d(x))
    table: list = field(default_factory=list)
    first_failure: str | None = None


def check_conjugation(d: MonomialDerivation, st: CyclotomicStructure) -> ConjugationCheck:
    """sigma^-1 d sigma == zeta d, checked on every variable.

    Both sides are derivations composed with automorphisms, so agreement on
    the variables implies agreement on all of K[S].
    """
    zeta = zeta_pow(st.field, 1)
    inv = st.sigma.inverse()
    out = ConjugationCheck(True)
    for i, name in enumerate(d.names):
        x = Polynomial.variable(d.context, i).lift(st.field)
        lhs = apply_automorphism(inv, apply(d, apply_automorphism(st.sigma, x)))
        rhs = apply(d, x).scale(zeta)
        out.table.append((name, lhs, rhs))
        if lhs != rhs and out.holds:
            out.holds = False
            out.first_failure = name
    return out


# -- delta and the Lambda sums -------------------------------------------------------

def delta_of(beta, st: CyclotomicStructure) -> tuple[int, tuple]:
    """delta = sum_{l=2..k} p_l q_{k-l} with p_l the degree of beta in block l.

    Returns (delta, (p_1, ..., p_k)).
    """
    beta = tuple(beta)
    if sum(beta) != st.s - 1:
        raise ValueError(f"cofactor monomial must have degree {st.s - 1}, got {sum(beta)}")
    k = st.k
    p = [0] * k
    for v, e in enumerate(beta):
        p[st.partition.classes[v] - 1] += e
    delta = sum(p[l - 1] * st.q[k - l] for l in range(2, k + 1))
    return delta, tuple(p)


@dataclass
class LambdaRow:
    beta: tuple
    p: tuple
    delta: int
    bound_ok: bool
    geometric: object  # CyclotomicNumber
    direct: object  # CyclotomicNumber

    @property
    def holds(self) -> bool:
        return self.bound_ok and self.geometric == 0 and self.direct == 0


@dataclass
class LambdaCertificate:
    rows: list
    holds: bool
    first_failure: tuple | None = None


def lambda_vanishing_certificate(st: CyclotomicStructure) -> LambdaCertificate:
    """For every cofactor monomial beta: 0 < delta+1 <= s^(k-1) < N and the sum vanishes.

    The sum is computed twice: as the geometric sum of zeta^(delta+1) and
    directly as sum_m zeta^m times sigma^m's scaling factor of X^beta (which
    includes the block-1 factor zeta^(m p_1 N) = 1).
    """
    rows = []
    holds = True
    first = None
    bound = st.s ** (st.k - 1)
    for beta in monomial_basis(st.sigma.context, st.s - 1):
        delta, p = delta_of(beta, st)
        ok = 0 < delta + 1 <= bound < st.N
        geo = geometric_sum(st.field, delta + 1)
        direct = st.field.zero()
        step = zeta_pow(st.field, 1) * st.sigma.factor(beta)
        term = st.field.one()
        for _ in range(st.N):
            direct = direct + term
            term = term * step
        # the scaling factor of X^beta under sigma is zeta^delta
        if st.sigma.factor(beta) != zeta_pow(st.field, delta):
            ok = False
        row = LambdaRow(tuple(beta), p, delta, ok, geo, direct)
        rows.append(row)
        if not row.holds and holds:
            holds = False
            first = tuple(beta)
    return LambdaCertificate(rows, holds, first)


def lambda_sum(st: CyclotomicStructure, lam: Polynomial) -> Polynomial:
    """sum_{m=0}^{N-1} zeta^m sigma^m(lam), computed literally."""
    lam = lam.lift(st.field)
    total = Polynomial.zero(lam.context)
    cur = lam
    for m in range(st.N):
        total = total + cur.scale(zeta_pow(st.field, m))
        cur = apply_automorphism(st.sigma, cur)
    return total


# -- orbit product ----------------------------------------------------------------------

def orbit_product(d: MonomialDerivation, st: CyclotomicStructure, pair: DarbouxPair) -> Polynomial:
    """F = prod_{m=0}^{N-1} sigma^m(f); a non-constant polynomial with d(F) = 0.

    Returned over Q when every coefficient is rational.
    """
    f, lam = pair.f, pair.cofactor
    if f.is_constant():
        raise ValueError("orbit product needs a non-constant f")
    if not verify_darboux(d, f, lam):
        raise ValueError("pair is not a Darboux pair of d")
    if not check_conjugation(d, st).holds:
        raise CertificationError("conjugation identity fails for this structure")
    cur = f.lift(st.field)
    F = cur
    for _ in range(1, st.N):
        cur = apply_automorphism(st.sigma, cur)
        F = F * cur
    if not apply(d, F).is_zero():
        raise AssertionError("orbit product is not a constant of d")
    if F.is_constant() or F.total_degree() != st.N * f.total_degree():
        raise AssertionError("orbit product has the wrong degree")
    return F.to_rational() if F.is_rational() else F


# -- homogeneous components ----------------------------------------------------------

@dataclass
class ComponentCheck:
    holds: bool
    cofactor_homogeneous: bool
    # per degree: (component, d(component) == lambda*component)
    table: list = field(default_factory=list)
    first_failure: int | None = None


def check_lemma_components(d: MonomialDerivation, f: Polynomial, lam: Polynomial) -> ComponentCheck:
    """The cofactor is zero or homogeneous of degree s-1, and each homogeneous
    component of f is Darboux with the same cofactor."""
    sd = homogeneity_degree(d)
    if sd is None:
        raise ValueError("derivation is not homogeneous")
    if not verify_darboux(d, f, lam):
        raise ValueError("precondition: (f, lambda) must be a Darboux pair")
    cof_ok = lam.is_zero() or is_homogeneous(lam) == sd
    out = ComponentCheck(cof_ok, cof_ok)
    for m, comp in homogeneous_components(f).items():
        ok = apply(d, comp) == lam * comp
        out.table.append((m, comp, ok))
        if not ok and out.holds:
            out.holds = False
            out.first_failure = m
    if not cof_ok:
        out.holds = False
    return out


# -- pipeline -------------------------------------------------------------------------

@dataclass
class Certificate:
    derivation: MonomialDerivation
    structure: CyclotomicStructure
    feasible_k: list
    conjugation: ConjugationCheck
    lambda_cert: LambdaCertificate
    search: SearchReport
    witness: tuple | None = None  # (DarbouxPair, F)
    conclusion: str = ""

    @property
    def verified(self) -> bool:
        return self.conjugation.holds and self.lambda_cert.holds


def theorem_pipeline(d: MonomialDerivation, max_degree: int, *, k: int | None = None,
                     branch_cap: int | None = None) -> Certificate:
    """Detect, build, check conjugation and Lambda vanishing, search, and attach a witness."""
    feasible = sorted(feasible_partitions(d))
    st = build_structure(d, k=k)
    conj = check_conjugation(d, st)
    lam_cert = lambda_vanishing_certificate(st)
    kwargs = {} if branch_cap is None else {"branch_cap": branch_cap}
    report = search_up_to(d, max_degree, **kwargs)
    cert = Certificate(d, st, feasible, conj, lam_cert, report)
    pairs = report.pairs()
    if pairs and conj.holds:
        pair = min(pairs, key=lambda p: (p.f.total_degree(), len(p.f.terms)))
        cert.witness = (pair, orbit_product(d, st, pair))
        cert.conclusion = ("Darboux polynomial found; its orbit product is a non-constant "
                           "rational constant, so the field of constants is nontrivial")
    elif report.undecided_degrees():
        cert.conclusion = (f"undecided at degrees {report.undecided_degrees()}; "
                           "no Darboux polynomial found at the decided degrees")
    else:
        cert.conclusion = f"no Darboux polynomial of degree <= {max_degree} over Q"
    return cert
