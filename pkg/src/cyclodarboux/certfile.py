"""Certificate and search-report files (JSON, schema ``cyclo-darboux/1``).

Rationals are written as ``"p/q"`` strings and elements of Q(zeta_N) as
``{"N": N, "coeffs": [...]}`` with coefficients on 1, zeta, ... below phi(N).
Polynomials are lists of ``[exponent, coefficient]`` in graded-lex
descending order.  No floats appear anywhere.

:func:`recheck` re-verifies a file from its own contents using only exact
field and polynomial arithmetic.  It does not search, so NONE and
UNDECIDED statuses are carried as solver claims; everything else stored in
the file (structure constants, both sides of every conjugation identity,
the delta table, found bases, the witness) is recomputed and compared.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .arith import CyclotomicNumber, cyclotomic_field, zeta_pow
from .dsl import parse_spec, print_spec
from .poly import (
    DiagonalAutomorphism,
    Polynomial,
    VariableContext,
    apply_automorphism,
    diff,
    monomial_basis,
)

SCHEMA = "cyclo-darboux/1"


class CertificateFormatError(ValueError):
    pass


# -- encoding ---------------------------------------------------------------------------

def encode_rational(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def decode_rational(s) -> Fraction:
    if not isinstance(s, str):
        raise CertificateFormatError(f"rational must be a string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise CertificateFormatError(f"bad rational {s!r}") from exc


def encode_coeff(c):
    if isinstance(c, CyclotomicNumber):
        if c.is_rational():
            return encode_rational(c.to_rational())
        return {"N": c.field.order, "coeffs": [encode_rational(x) for x in c.coeffs]}
    return encode_rational(c)


def decode_coeff(obj):
    if isinstance(obj, dict):
        try:
            N = int(obj["N"])
            raw = obj["coeffs"]
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateFormatError(f"bad cyclotomic number {obj!r}") from exc
        field = cyclotomic_field(N)
        if len(raw) != field.degree:
            raise CertificateFormatError(f"Q(zeta_{N}) element needs {field.degree} coefficients")
        return field.element([decode_rational(x) for x in raw])
    return decode_rational(obj)


def encode_cyclotomic(a: CyclotomicNumber) -> dict:
    return {"N": a.field.order, "coeffs": [encode_rational(x) for x in a.coeffs]}


def encode_polynomial(p: Polynomial) -> list:
    return [[list(e), encode_coeff(c)] for e, c in p.sorted_terms()]


def decode_polynomial(obj, ctx: VariableContext) -> Polynomial:
    terms = {}
    for item in obj:
        e, c = item
        e = tuple(int(x) for x in e)
        if len(e) != ctx.arity or any(x < 0 for x in e):
            raise CertificateFormatError(f"bad exponent {e}")
        if e in terms:
            raise CertificateFormatError(f"repeated exponent {e}")
        terms[e] = decode_coeff(c)
    return Polynomial(ctx, terms)


def encode_derivation(d) -> dict:
    return {
        "vars": list(d.names),
        "images": [{"coeff": encode_rational(c), "exp": list(e)} for c, e in d.images],
        "spec": print_spec(d),
    }


def encode_report(report) -> dict:
    degrees = []
    for r in report.degrees:
        degrees.append({
            "degree": r.degree,
            "status": r.status.value,
            "found": [{"cofactor": encode_polynomial(lam),
                       "basis": [encode_polynomial(f) for f in basis]}
                      for lam, basis in r.found.items()],
            "residuals": list(r.residuals),
            "branches": r.branches,
            "note": r.note,
        })
    return {"max_degree": report.max_degree, "scope": report.scope, "degrees": degrees}


def search_report_document(report) -> dict:
    return {"schema": SCHEMA, "kind": "search-report",
            "derivation": encode_derivation(report.derivation),
            "search": encode_report(report)}


def certificate_document(cert) -> dict:
    st = cert.structure
    doc = {
        "schema": SCHEMA,
        "kind": "certificate",
        "derivation": encode_derivation(cert.derivation),
        "feasible_k": list(cert.feasible_k),
        "partition": {"k": st.k, "classes": list(st.partition.classes)},
        "structure": {"k": st.k, "s": st.s, "N": st.N, "q": list(st.q),
                      "sigma_exponents": list(st.sigma_exponents)},
        "conjugation": {
            "holds": cert.conjugation.holds,
            "justification": "both sides are derivations twisted by automorphisms, "
                             "so equality on the variables gives equality everywhere",
            "table": [{"var": name, "lhs": encode_polynomial(lhs), "rhs": encode_polynomial(rhs)}
                      for name, lhs, rhs in cert.conjugation.table],
        },
        "lambda_vanishing": {
            "holds": cert.lambda_cert.holds,
            "table": [{"beta": list(r.beta), "p": list(r.p), "delta": r.delta,
                       "geometric_sum": encode_cyclotomic(r.geometric),
                       "direct_sum": encode_cyclotomic(r.direct)}
                      for r in cert.lambda_cert.rows],
        },
        "search": encode_report(cert.search),
        "witness": None,
        "conclusion": cert.conclusion,
    }
    if cert.witness is not None:
        pair, F = cert.witness
        doc["witness"] = {"f": encode_polynomial(pair.f),
                          "cofactor": encode_polynomial(pair.cofactor),
                          "F": encode_polynomial(F)}
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1) + "\n"


# -- independent re-checking ------------------------------------------------------------

class _Checker:
    def __init__(self, doc: dict):
        self.doc = doc
        self.errors: list[str] = []

    def fail(self, msg: str):
        self.errors.append(msg)

    # d applied through partial derivatives, not through the deriv module
    def apply_d(self, p: Polynomial) -> Polynomial:
        out = Polynomial.zero(p.context)
        for i, img in enumerate(self.images):
            dp = diff(p, i)
            if not dp.is_zero():
                out = out + dp * img
        return out

    def load_derivation(self):
        der = self.doc["derivation"]
        names = tuple(der["vars"])
        if len(set(names)) != len(names):
            raise CertificateFormatError("duplicate variable names")
        self.ctx = VariableContext(names)
        self.raw_images = []
        self.images = []
        for im in der["images"]:
            c = decode_rational(im["coeff"])
            e = tuple(int(x) for x in im["exp"])
            if len(e) != len(names) or c == 0:
                raise CertificateFormatError("malformed image")
            self.raw_images.append((c, e))
            self.images.append(Polynomial.monomial(self.ctx, e, c))
        if len(self.images) != len(names):
            raise CertificateFormatError("one image per variable is required")
        if "spec" in der:
            d = parse_spec(der["spec"])
            if tuple(d.names) != names or tuple(d.images) != tuple(self.raw_images):
                self.fail("spec text disagrees with the image list")
        degs = {sum(e) for _, e in self.raw_images}
        self.s = degs.pop() if len(degs) == 1 else None

    def check_search(self, search: dict):
        if self.s is None:
            self.fail("search report for a non-homogeneous derivation")
            return
        for entry in search["degrees"]:
            m = int(entry["degree"])
            status = entry["status"]
            if status not in ("NONE", "FOUND", "UNDECIDED"):
                self.fail(f"degree {m}: unknown status {status!r}")
            found = entry["found"]
            if status == "FOUND" and not found:
                self.fail(f"degree {m}: FOUND with no pairs")
            if status == "NONE" and (found or entry["residuals"]):
                self.fail(f"degree {m}: NONE with pairs or residuals")
            if status == "UNDECIDED" and not entry["residuals"]:
                self.fail(f"degree {m}: UNDECIDED without residuals")
            basis_m = monomial_basis(self.ctx, m)
            for item in found:
                lam = decode_polynomial(item["cofactor"], self.ctx)
                if not lam.is_zero() and {sum(e) for e in lam.terms} != {self.s - 1}:
                    self.fail(f"degree {m}: cofactor {lam} is not homogeneous of degree s-1")
                vecs = []
                for fobj in item["basis"]:
                    f = decode_polynomial(fobj, self.ctx)
                    if f.is_zero() or {sum(e) for e in f.terms} != {m}:
                        self.fail(f"degree {m}: basis element is not homogeneous of degree {m}")
                        continue
                    if self.apply_d(f) != lam * f:
                        self.fail(f"degree {m}: d(f) != cofactor*f for f = {f}")
                    vecs.append(f.coefficient_vector(basis_m))
                if not self._is_rref(vecs):
                    self.fail(f"degree {m}: basis for cofactor {lam} is not in reduced echelon form")

    @staticmethod
    def _is_rref(vecs) -> bool:
        if not vecs:
            return False
        pivots = []
        for v in vecs:
            p = next((j for j, x in enumerate(v) if x != 0), None)
            if p is None or v[p] != 1 or (pivots and p <= pivots[-1]):
                return False
            pivots.append(p)
        for i, v in enumerate(vecs):
            for j, p in enumerate(pivots):
                if j != i and v[p] != 0:
                    return False
        return True

    def check_certificate(self):
        doc = self.doc
        if any(c != 1 for c, _ in self.raw_images):
            self.fail("certificate requires unit image coefficients")
        s = self.s
        if s is None or s < 1:
            self.fail("derivation is not homogeneous of positive degree")
            return
        part = doc["partition"]
        k = int(part["k"])
        classes = [int(c) for c in part["classes"]]
        st = doc["structure"]
        if int(st["k"]) != k or int(st["s"]) != s:
            self.fail("structure k or s disagrees with partition or derivation")
        if k < 2 or len(classes) != self.ctx.arity or any(not 1 <= c <= k for c in classes):
            self.fail("malformed partition")
            return
        for i in range(1, k + 1):
            if i not in classes:
                self.fail(f"class {i} is empty")
        for u, (_, e) in enumerate(self.raw_images):
            want = classes[u] % k + 1
            for v, a in enumerate(e):
                if a and classes[v] != want:
                    self.fail(f"image of {self.ctx.names[u]} leaves class {want}")
        q = [sum(s ** j for j in range(i + 1)) for i in range(k)]
        N = q[-1]
        if [int(x) for x in st["q"]] != q or int(st["N"]) != N:
            self.fail("q or N disagrees with k and s")
        exps = [q[k - c] % N for c in classes]
        if [int(x) for x in st["sigma_exponents"]] != exps:
            self.fail("sigma exponents disagree with the partition")
        field = cyclotomic_field(N)
        zeta = zeta_pow(field, 1)
        sigma = DiagonalAutomorphism(self.ctx, tuple(zeta_pow(field, e) for e in exps))
        sigma_inv = DiagonalAutomorphism(self.ctx, tuple(zeta_pow(field, -e) for e in exps))

        # conjugation
        table = doc["conjugation"]["table"]
        if [row["var"] for row in table] != list(self.ctx.names):
            self.fail("conjugation table must list every variable in order")
        holds = True
        for i, row in enumerate(table[: self.ctx.arity]):
            x = Polynomial.variable(self.ctx, i).lift(field)
            lhs = apply_automorphism(sigma_inv, self.apply_d(apply_automorphism(sigma, x)))
            rhs = self.apply_d(x).scale(zeta)
            if decode_polynomial(row["lhs"], self.ctx) != lhs:
                self.fail(f"conjugation lhs for {row['var']} does not match recomputation")
            if decode_polynomial(row["rhs"], self.ctx) != rhs:
                self.fail(f"conjugation rhs for {row['var']} does not match recomputation")
            holds = holds and lhs == rhs
        if bool(doc["conjugation"]["holds"]) != holds:
            self.fail("conjugation verdict does not match recomputation")

        # delta table and the vanishing sums
        rows = doc["lambda_vanishing"]["table"]
        betas = monomial_basis(self.ctx, s - 1)
        if [tuple(int(x) for x in r["beta"]) for r in rows] != [tuple(b) for b in betas]:
            self.fail("delta table must list every degree s-1 monomial in order")
        lam_holds = True
        for beta, r in zip(betas, rows):
            p = [0] * k
            for v, e in enumerate(beta):
                p[classes[v] - 1] += e
            delta = sum(p[l - 1] * q[k - l] for l in range(2, k + 1))
            if [int(x) for x in r["p"]] != p or int(r["delta"]) != delta:
                self.fail(f"delta row {beta} does not match recomputation")
            step = zeta * sigma.factor(beta)
            direct, term = field.zero(), field.one()
            for _ in range(N):
                direct, term = direct + term, term * step
            geo, term = field.zero(), field.one()
            w = zeta_pow(field, delta + 1)
            for _ in range(N):
                geo, term = geo + term, term * w
            if decode_coeff(r["geometric_sum"]) != geo or decode_coeff(r["direct_sum"]) != direct:
                self.fail(f"stored sums for {beta} do not match recomputation")
            ok = 0 < delta + 1 <= s ** (k - 1) < N and geo == 0 and direct == 0
            lam_holds = lam_holds and ok
        if bool(doc["lambda_vanishing"]["holds"]) != lam_holds:
            self.fail("vanishing verdict does not match recomputation")

        # witness
        wit = doc.get("witness")
        if wit is not None:
            f = decode_polynomial(wit["f"], self.ctx)
            lam = decode_polynomial(wit["cofactor"], self.ctx)
            F = decode_polynomial(wit["F"], self.ctx)
            if f.is_constant() or self.apply_d(f) != lam * f:
                self.fail("witness pair is not a Darboux pair")
            cur = f.lift(field)
            prod = cur
            for _ in range(1, N):
                cur = apply_automorphism(sigma, cur)
                prod = prod * cur
            if prod != F:
                self.fail("stored orbit product does not match recomputation")
            if F.is_constant() or not self.apply_d(F).is_zero():
                self.fail("orbit product is not a non-constant constant of d")

    def run(self) -> list[str]:
        doc = self.doc
        if doc.get("schema") != SCHEMA:
            return [f"unknown schema {doc.get('schema')!r}"]
        try:
            self.load_derivation()
            if doc.get("kind") == "certificate":
                self.check_certificate()
            elif doc.get("kind") != "search-report":
                self.fail(f"unknown kind {doc.get('kind')!r}")
            self.check_search(doc["search"])
        except (KeyError, TypeError, ValueError) as exc:
            self.fail(f"malformed document: {exc}")
        return self.errors


def recheck(doc: dict) -> list[str]:
    """Re-verify a certificate or search-report document; returns the problems found."""
    return _Checker(doc).run()
