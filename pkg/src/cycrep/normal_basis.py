"""The normal-basis isomorphism from the regular module onto the transfer
quotient of the representation ring.

At the prime power p^k the quotient is the p^k-th cyclotomic field, and the
scaled orbit sum (-1/p^{k-1}) (X + X^p + ... + X^{p^{k-1}}) is a normal
basis generator whose scaling makes the levelwise identifications commute
with the restriction maps; the sign handles the k = 0 case.  Composite
levels are assembled multiplicatively over the coprime factorization, and
the assembled family classifies a levelwise isomorphism from the regular
module.

The unscaled orbit sum generates the field just as well but fails the
restriction compatibility by a factor of p on every covering pair of
p-power levels; ``classifier_report`` exhibits the failing squares rather
than papering over them.

All verification here runs on the factorwise monomial presentation of the
quotient (sparse, exact), which is what makes supports as large as the
divisors of 2520 tractable.  Where the quotient dimension is small the
levelwise rank is checked by direct elimination; at larger composite levels
invertibility is certified by checking, column by column, that the level
matrix is the tensor product of its prime-power pieces and that those
pieces have full rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclic_site import (
    SupportSet,
    factorization,
    is_prime,
    reduce_unit,
    totient,
    unit_reduction,
    units,
)
from .linalg import QMatrix, rank
from .modules import ModuleMorphism, OutCycModule
from .rep_ring import MonomialReducer

_F0 = Fraction(0)
_F1 = Fraction(1)

_DENSE_RANK_BOUND = 128

Sparse = dict[int, Fraction]


@lru_cache(maxsize=None)
def _reducer(n: int) -> MonomialReducer:
    return MonomialReducer(n)


def _sparse_eq(a: Sparse, b: Sparse) -> bool:
    return a == b


def classifying_element(p: int, k: int) -> QMatrix:
    """Quotient coordinates of the scaled normal-basis generator at p^k.

    For k = 0 this is the unit of the one-dimensional level-1 quotient.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > 0 and not is_prime(p):
        raise ValueError(f"{p} is not prime")
    sp = _classifier_sparse(p, k, scaled=True)
    red = _reducer(p ** k if k else 1)
    col = QMatrix.zeros(red.dim, 1)
    for e, c in sp.items():
        col._e[red.basis_index[e]] = c
    return col


def _classifier_sparse(p: int, k: int, scaled: bool) -> Sparse:
    if k == 0:
        return dict(_reducer(1).reduce_sparse({0: _F1}))
    n = p ** k
    coeff = Fraction(-1, p ** (k - 1)) if scaled else _F1
    vec = {pow(p, i, n): coeff for i in range(k)}
    # the exponents p^0 .. p^{k-1} are distinct below p^k, so no merging
    assert len(vec) == k
    return _reducer(n).reduce_sparse(vec)


@dataclass
class ClassifierFamily:
    """One quotient element per level, multiplicative over coprime factors.

    Elements are sparse vectors keyed by basis exponent in the factorwise
    monomial presentation of the quotient.
    """
    support: SupportSet
    elements: dict[int, Sparse]
    scaled: bool = True

    def column(self, n: int) -> QMatrix:
        red = _reducer(n)
        col = QMatrix.zeros(red.dim, 1)
        for e, c in self.elements[n].items():
            col._e[red.basis_index[e]] = c
        return col


def assemble(support: SupportSet, scaled: bool = True) -> ClassifierFamily:
    """Classifier elements for every level of the support.

    Prime powers get the (optionally scaled) normal-basis generator; a
    composite level is the product of its prime-power generators inflated up,
    taken in increasing prime order.  The product does not depend on that
    order, which the tests assert separately.
    """
    elements: dict[int, Sparse] = {}
    for n in support:
        red = _reducer(n)
        if n == 1:
            elements[1] = red.reduce_sparse({0: _F1})
            continue
        cur: Sparse | None = None
        for p, k in factorization(n):
            local = _classifier_sparse(p, k, scaled)
            lifted = red.inflate_from(_reducer(p ** k), local)
            cur = lifted if cur is None else red.mul_sparse(cur, lifted)
        elements[n] = cur if cur is not None else red.reduce_sparse({0: _F1})
    return ClassifierFamily(support, elements, scaled)


# ---------------------------------------------------------------------------
# the induced morphism and its verification
# ---------------------------------------------------------------------------

def lazy_regular_module(support: SupportSet) -> OutCycModule:
    """The regular module with matrices built on demand; levels in the
    thousands would not fit materialized."""
    dims = {n: totient(n) for n in support}

    def action_fn(n: int, l: int) -> QMatrix:
        un = units(n)
        d = len(un)
        a = QMatrix.zeros(d, d)
        for j in un:
            a._e[un.index(un.mul(l, j)) * d + un.index(j)] = 1
        return a

    def restriction_fn(n: int, m: int) -> QMatrix:
        un, um = units(n), units(m)
        r = QMatrix.zeros(len(um), len(un))
        for jt in um:
            r._e[um.index(jt) * len(un) + un.index(reduce_unit(m, n, jt))] = 1
        return r

    return OutCycModule(support, dims, action_fn=action_fn,
                        restriction_fn=restriction_fn, name="regular")


def monomial_tau_module(support: SupportSet) -> OutCycModule:
    """The transfer quotient in the factorwise monomial presentation, lazy.

    Conjugate to the eliminated presentation of ``tau_ru_module`` by the
    basis change between the two quotient bases; the package uses this one
    wherever levels are too large to eliminate.
    """
    dims = {n: _reducer(n).dim for n in support}

    def action_fn(n: int, l: int) -> QMatrix:
        red = _reducer(n)
        d = red.dim
        a = QMatrix.zeros(d, d)
        for j, e in enumerate(red.basis):
            for e2, c in red.act_unit(l, {e: _F1}).items():
                a._e[red.basis_index[e2] * d + j] = c
        return a

    def restriction_fn(n: int, m: int) -> QMatrix:
        red_n, red_m = _reducer(n), _reducer(m)
        r = QMatrix.zeros(red_m.dim, red_n.dim)
        for j, e in enumerate(red_n.basis):
            for e2, c in red_m.inflate_from(red_n, {e: _F1}).items():
                r._e[red_m.basis_index[e2] * red_n.dim + j] = c
        return r

    return OutCycModule(support, dims, action_fn=action_fn,
                        restriction_fn=restriction_fn, name="tauRU[monomial]")


def _phi_columns(family: ClassifierFamily, n: int) -> dict[int, Sparse]:
    """Columns of the level-n matrix: the unit orbit of the classifier."""
    red = _reducer(n)
    x = family.elements[n]
    return {g: red.act_unit(g, x) for g in units(n)}


def _columns_to_matrix(n: int, cols: dict[int, Sparse]) -> QMatrix:
    red = _reducer(n)
    un = units(n)
    mat = QMatrix.zeros(red.dim, len(un))
    w = len(un)
    for g, col in cols.items():
        j = un.index(g)
        for e, c in col.items():
            mat._e[red.basis_index[e] * w + j] = c
    return mat


@dataclass
class LevelCheck:
    level: int
    dim: int
    invertible: bool
    rank_method: str
    equivariant: bool


@dataclass
class SquareCheck:
    source: int
    target: int
    natural: bool
    failing_unit: int | None = None


@dataclass
class NormalBasisReport:
    support: SupportSet
    morphism: ModuleMorphism
    levels: list[LevelCheck]
    squares: list[SquareCheck]
    scaled: bool

    @property
    def ok(self) -> bool:
        return (all(l.invertible and l.equivariant for l in self.levels)
                and all(s.natural for s in self.squares))


def _check_equivariance(n: int, cols: dict[int, Sparse]) -> bool:
    """Full quantification: the action of every unit sends the column of g
    to the column of l*g."""
    red = _reducer(n)
    un = units(n)
    for l in un:
        for g in un:
            if red.act_unit(l, cols[g]) != cols[un.mul(l, g)]:
                return False
    return True


def _check_naturality(family: ClassifierFamily, n: int, m: int,
                      cols_n: dict[int, Sparse],
                      cols_m: dict[int, Sparse]) -> int | None:
    """Summation over fibers against inflation; returns a failing unit."""
    red_n, red_m = _reducer(n), _reducer(m)
    _, fibers = unit_reduction(m, n)
    for g in units(n):
        lhs = red_m.inflate_from(red_n, cols_n[g])
        rhs: Sparse = {}
        for gt in fibers[g]:
            for e, c in cols_m[gt].items():
                v = rhs.get(e, _F0) + c
                if v:
                    rhs[e] = v
                elif e in rhs:
                    del rhs[e]
        if lhs != rhs:
            return g
    return None


def _check_rank(family: ClassifierFamily, n: int,
                cols: dict[int, Sparse]) -> tuple[bool, str]:
    """Levelwise invertibility, dense when small, tensor-certified when not.

    The certificate checks that every column literally equals the tensor
    product of its prime-power columns under the residue splitting of
    exponents and units, and that each prime-power level matrix has full
    rank; the composite rank is then the product of full local ranks.
    """
    d = totient(n)
    if d <= _DENSE_RANK_BOUND:
        return rank(_columns_to_matrix(n, cols)) == d, "dense"
    facs = factorization(n)
    locals_cols: dict[int, dict[int, Sparse]] = {}
    for p, k in facs:
        pk = p ** k
        if totient(pk) > _DENSE_RANK_BOUND:
            return rank(_columns_to_matrix(n, cols)) == d, "dense"
        local = {g: _reducer(pk).act_unit(g, _classifier_sparse(p, k, family.scaled))
                 for g in units(pk)}
        if rank(_columns_to_matrix(pk, local)) != totient(pk):
            return False, "tensor"
        locals_cols[pk] = local
    for g, col in cols.items():
        expected: Sparse = {0: _F1}
        scale_n = 1
        for p, k in facs:
            pk = p ** k
            u_p = (n // pk) % pk
            gp = (g * u_p) % pk
            nxt: Sparse = {}
            for e0, c0 in expected.items():
                for e1, c1 in locals_cols[pk][gp].items():
                    # residue splitting: combine exponents by CRT
                    e = _crt_merge(e0, scale_n, e1, pk)
                    nxt[e] = c0 * c1
            expected = nxt
            scale_n *= pk
        if expected != col:
            return False, "tensor"
    return True, "tensor"


def _crt_merge(e0: int, m0: int, e1: int, m1: int) -> int:
    """The residue below m0*m1 matching e0 mod m0 and e1 mod m1."""
    if m0 == 1:
        return e1 % m1
    inv = pow(m0, -1, m1)
    return (e0 + m0 * ((e1 - e0) * inv % m1)) % (m0 * m1)


def classifier_report(family: ClassifierFamily) -> NormalBasisReport:
    """Build the morphism classified by the family and check everything.

    Nothing raises here; scaling bugs (or deliberately unscaled families)
    show up as failing squares in the report.
    """
    support = family.support
    source = lazy_regular_module(support)
    target = monomial_tau_module(support)
    all_cols = {n: _phi_columns(family, n) for n in support}
    mats = {n: _columns_to_matrix(n, all_cols[n]) for n in support}
    morphism = ModuleMorphism(source, target, mats)

    levels = []
    for n in support:
        inv, method = _check_rank(family, n, all_cols[n])
        eq = _check_equivariance(n, all_cols[n])
        levels.append(LevelCheck(n, totient(n), inv, method, eq))
    squares = []
    for n, m in support.covering_pairs():
        bad = _check_naturality(family, n, m, all_cols[n], all_cols[m])
        squares.append(SquareCheck(n, m, bad is None, bad))
    return NormalBasisReport(support, morphism, levels, squares, family.scaled)


def map_from_classifier(family: ClassifierFamily) -> ModuleMorphism:
    """The morphism out of the regular module classified by the family.

    Level n sends the basis unit g to the g-action on the classifier.
    Raises when the result is not a valid morphism, which is the signature
    of an incorrect family (the unscaled one, for instance).
    """
    report = classifier_report(family)
    if not (all(l.equivariant for l in report.levels)
            and all(s.natural for s in report.squares)):
        bad = [f"{s.source}->{s.target}" for s in report.squares if not s.natural]
        bad += [f"level {l.level}" for l in report.levels if not l.equivariant]
        raise ValueError(f"classifier family does not define a morphism; failures at: "
                         f"{', '.join(bad)}")
    return report.morphism


def normal_basis_iso(support: SupportSet) -> ModuleMorphism:
    """The isomorphism from the regular module onto the transfer quotient.

    Raises if any level matrix fails to be invertible, which would falsify
    the construction rather than the underlying mathematics.
    """
    report = normal_basis_report(support)
    if not report.ok:
        bad = [l.level for l in report.levels if not (l.invertible and l.equivariant)]
        bad += [f"{s.source}->{s.target}" for s in report.squares if not s.natural]
        raise ValueError(f"normal basis map failed verification at: {bad}")
    return report.morphism


def normal_basis_report(support: SupportSet) -> NormalBasisReport:
    return classifier_report(assemble(support, scaled=True))


def unscaled_family(support: SupportSet) -> ClassifierFamily:
    """The classifier family without the -1/p^{k-1} scaling; it generates
    each cyclotomic level but cannot commute with the restrictions."""
    return assemble(support, scaled=False)
