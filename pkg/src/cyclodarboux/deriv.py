"""Monomial derivations of a polynomial ring.

A monomial derivation is fixed by one image monomial ``c * X^alpha`` per
variable and acts on polynomials through the Leibniz rule.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import as_rational
from .linalg import RationalMatrix, determinant
from .poly import Polynomial, VariableContext, format_monomial


@dataclass(frozen=True)
class MonomialDerivation:
    context: VariableContext
    images: tuple  # per variable: (Fraction coeff, exponent tuple)

    def __post_init__(self):
        imgs = tuple((as_rational(c), tuple(int(x) for x in e)) for c, e in self.images)
        object.__setattr__(self, "images", imgs)
        if len(imgs) != self.context.arity:
            raise ValueError(f"{len(imgs)} images for {self.context.arity} variables")
        for c, e in imgs:
            if c == 0:
                raise ValueError("image coefficients must be nonzero")
            if len(e) != self.context.arity or any(x < 0 for x in e):
                raise ValueError(f"bad image exponent {e}")

    @property
    def n(self) -> int:
        return self.context.arity

    @property
    def names(self) -> tuple:
        return self.context.names

    def image(self, i: int) -> Polynomial:
        c, e = self.images[i]
        return Polynomial.monomial(self.context, e, c)

    def has_unit_coefficients(self) -> bool:
        return all(c == 1 for c, _ in self.images)

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply(self, p)

    def __str__(self):
        lines = []
        for name, (c, e) in zip(self.names, self.images):
            mono = format_monomial(self.context, e)
            if not mono:
                rhs = str(c)
            elif c == 1:
                rhs = mono
            elif c == -1:
                rhs = "-" + mono
            else:
                rhs = f"{c}*{mono}"
            lines.append(f"d({name}) = {rhs}")
        return "; ".join(lines)


def from_images(names, images) -> MonomialDerivation:
    """Convenience constructor: ``images`` is a list of exponent tuples or (coeff, exponent)."""
    ctx = VariableContext(tuple(names))
    imgs = []
    for im in images:
        if len(im) == 2 and isinstance(im[1], (tuple, list)):
            imgs.append((im[0], tuple(im[1])))
        else:
            imgs.append((1, tuple(im)))
    return MonomialDerivation(ctx, tuple(imgs))


def apply(d: MonomialDerivation, p: Polynomial) -> Polynomial:
    """d(X^b) = sum_i b_i X^(b - e_i) d(x_i), extended linearly."""
    if p.context != d.context:
        raise ValueError(f"derivation on ({d.context}) applied to a polynomial on ({p.context})")
    out: dict = {}
    images = d.images
    for e, c in p.terms.items():
        for i, k in enumerate(e):
            if not k:
                continue
            ic, ie = images[i]
            ne = tuple(a + b - (1 if j == i else 0) for j, (a, b) in enumerate(zip(e, ie)))
            v = c * (k * ic)
            s = out.get(ne)
            out[ne] = v if s is None else s + v
    return Polynomial(d.context, out)


def homogeneity_degree(d: MonomialDerivation) -> int | None:
    """s - 1 when every image has the same total degree s, else None."""
    degs = {sum(e) for _, e in d.images}
    if len(degs) != 1:
        return None
    return degs.pop() - 1


def exponent_matrix_and_wd(d: MonomialDerivation) -> tuple[RationalMatrix, Fraction]:
    """A = [alpha_ij] - I and its determinant w_d."""
    if not d.has_unit_coefficients():
        warnings.warn("derivation has non-unit image coefficients; A uses exponents only",
                      stacklevel=2)
    n = d.n
    rows = [[e[j] - (1 if i == j else 0) for j in range(n)] for i, (_, e) in enumerate(d.images)]
    A = RationalMatrix.from_rows(rows)
    return A, determinant(A)


# -- generalized cyclotomic partitions --------------------------------------------

@dataclass(frozen=True)
class CyclotomicPartition:
    k: int
    classes: tuple  # 1-based class per variable

    @property
    def sizes(self) -> tuple:
        return tuple(sum(1 for c in self.classes if c == i) for i in range(1, self.k + 1))

    def block(self, i: int) -> list[int]:
        """Variable indices in class i (1-based)."""
        return [v for v, c in enumerate(self.classes) if c == i]

    def blocks(self) -> list[list[int]]:
        return [self.block(i) for i in range(1, self.k + 1)]

    def next_class(self, i: int) -> int:
        return i % self.k + 1


def partition_violations(d: MonomialDerivation, partition: CyclotomicPartition) -> list[str]:
    """Every way ``partition`` fails to be a generalized cyclotomic splitting of d."""
    problems = []
    if partition.k < 2:
        problems.append(f"k={partition.k} < 2")
    if len(partition.classes) != d.n:
        problems.append("class vector length differs from variable count")
        return problems
    if any(not 1 <= c <= partition.k for c in partition.classes):
        problems.append("class index out of range")
        return problems
    for i, t in enumerate(partition.sizes, start=1):
        if t == 0:
            problems.append(f"class {i} is empty")
    for u, (_, e) in enumerate(d.images):
        want = partition.next_class(partition.classes[u])
        for v, a in enumerate(e):
            if a and partition.classes[v] != want:
                problems.append(
                    f"d({d.names[u]}) involves {d.names[v]} in class {partition.classes[v]}, "
                    f"expected class {want}")
    return problems


def is_valid_partition(d: MonomialDerivation, partition: CyclotomicPartition) -> bool:
    return not partition_violations(d, partition)


def _potentials(d: MonomialDerivation):
    """Integer potentials with pot(v) = pot(u) + 1 along every edge u -> v.

    Returns (components, potentials, discrepancies); isolated variables form
    no component.
    """
    n = d.n
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for u, (_, e) in enumerate(d.images):
        for v, a in enumerate(e):
            if a:
                adj[u].append((v, 1))
                adj[v].append((u, -1))
    pot: list[int | None] = [None] * n
    comps = []
    discrepancies = []
    for root in range(n):
        if pot[root] is not None or not adj[root]:
            continue
        pot[root] = 0
        comp = [root]
        stack = [root]
        while stack:
            u = stack.pop()
            for v, w in adj[u]:
                want = pot[u] + w
                if pot[v] is None:
                    pot[v] = want
                    comp.append(v)
                    stack.append(v)
                elif pot[v] != want:
                    discrepancies.append(abs(pot[v] - want))
        comps.append(sorted(comp))
    return comps, pot, discrepancies


def _divisors_at_least_two(g: int) -> list[int]:
    return [k for k in range(2, g + 1) if g % k == 0]


def _align(comps, pot, n: int, k: int) -> tuple | None:
    classes = [1] * n  # isolated variables default to class 1
    in_comp = {v for comp in comps for v in comp}
    covered: set[int] = {1} if len(in_comp) < n else set()
    for ci, comp in enumerate(comps):
        first = comp[0]
        best = None
        # the first component is pinned so its first variable sits in class 1
        for shift in ([0] if ci == 0 else range(k)):
            cls = {v: (pot[v] - pot[first] + shift) % k + 1 for v in comp}
            gain = len(set(cls.values()) - covered)
            if best is None or gain > best[0]:
                best = (gain, cls)
        for v, c in best[1].items():
            classes[v] = c
        covered.update(best[1].values())
    if covered != set(range(1, k + 1)):
        return None
    return tuple(classes)


def feasible_partitions(d: MonomialDerivation) -> dict[int, CyclotomicPartition]:
    """All k >= 2 admitting a generalized cyclotomic splitting, with one partition each."""
    comps, pot, disc = _potentials(d)
    g = 0
    for x in disc:
        g = gcd(g, x)
    candidates = _divisors_at_least_two(g) if g else list(range(2, d.n + 1))
    out = {}
    for k in candidates:
        if k > d.n:
            continue
        classes = _align(comps, pot, d.n, k)
        if classes is None:
            continue
        part = CyclotomicPartition(k, classes)
        if is_valid_partition(d, part):
            out[k] = part
    return out


def detect_cyclotomic_partition(d: MonomialDerivation) -> CyclotomicPartition | None:
    """The generalized cyclotomic splitting with the largest feasible k, if any."""
    parts = feasible_partitions(d)
    if not parts:
        return None
    return parts[max(parts)]


# -- constructions ---------------------------------------------------------------

def direct_sum(d1: MonomialDerivation, d2: MonomialDerivation) -> MonomialDerivation:
    """d1 + d2 acting on the concatenated variable set."""
    clash = set(d1.names) & set(d2.names)
    if clash:
        raise ValueError(f"direct sum needs disjoint variables; shared: {sorted(clash)}")
    ctx = VariableContext(d1.names + d2.names)
    pad1 = (0,) * d2.n
    pad2 = (0,) * d1.n
    images = [(c, e + pad1) for c, e in d1.images] + [(c, pad2 + e) for c, e in d2.images]
    return MonomialDerivation(ctx, tuple(images))


def gen_jouanolou(n: int, s: int, names=None) -> MonomialDerivation:
    """d(x_i) = x_{i+1}^s cyclically."""
    if n < 2 or s < 1:
        raise ValueError(f"Jouanolou derivation needs n >= 2 and s >= 1 (got n={n}, s={s})")
    names = tuple(names) if names else tuple(f"x{i}" for i in range(1, n + 1))
    if len(names) != n:
        raise ValueError("wrong number of variable names")
    images = []
    for i in range(n):
        e = [0] * n
        e[(i + 1) % n] = s
        images.append((1, tuple(e)))
    return MonomialDerivation(VariableContext(names), tuple(images))


def gen_generalized_cyclotomic(sizes, tables, names=None) -> MonomialDerivation:
    """Variables block by block; ``tables[i][j]`` is the exponent row of the j-th
    variable of block i over the variables of block i+1 (cyclically)."""
    sizes = [int(t) for t in sizes]
    k = len(sizes)
    if k < 2 or any(t < 1 for t in sizes):
        raise ValueError("need k >= 2 nonempty blocks")
    if len(tables) != k:
        raise ValueError(f"{len(tables)} tables for {k} blocks")
    n = sum(sizes)
    if names is None:
        names = [f"x{i + 1}_{j + 1}" for i, t in enumerate(sizes) for j in range(t)]
    names = tuple(names)
    if len(names) != n:
        raise ValueError("wrong number of variable names")
    offsets = [sum(sizes[:i]) for i in range(k)]
    images = []
    for i in range(k):
        nxt = (i + 1) % k
        if len(tables[i]) != sizes[i]:
            raise ValueError(f"table {i + 1} has {len(tables[i])} rows, expected {sizes[i]}")
        for row in tables[i]:
            if len(row) != sizes[nxt]:
                raise ValueError(
                    f"table {i + 1} rows must have length {sizes[nxt]}, got {len(row)}")
            if any(int(a) < 0 for a in row):
                raise ValueError("negative exponent in table")
            e = [0] * n
            for j, a in enumerate(row):
                e[offsets[nxt] + j] = int(a)
            images.append((1, tuple(e)))
    return MonomialDerivation(VariableContext(names), tuple(images))


def gen_four_variable_example() -> MonomialDerivation:
    """d(x)=w^2, d(y)=zw, d(z)=y^2, d(w)=xy on K[x,y,z,w]: generalized cyclotomic, w_d = 0."""
    return gen_generalized_cyclotomic(
        (2, 2), [[(0, 2), (1, 1)], [(0, 2), (1, 1)]], names=("x", "y", "z", "w"))
