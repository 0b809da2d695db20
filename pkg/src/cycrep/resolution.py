"""The explicit resolution of the level-1 atom by semifree modules.

The degree-n term is the sum, over strictly increasing n-tuples of primes
from a finite ambient list, of the semifree module at the product of the
tuple.  The differential drops one prime at a time with alternating signs;
levelwise it is the (augmented) simplicial boundary of a simplex on the
prime factors, which is why a weighted insertion operator furnishes a chain
contraction at every level with at least one prime factor.

The insertion sign convention is pinned empirically: the contraction
identity dh + hd = id holds with 1-based insertion positions against the
1-based differential signs, and flipping to 0-based insertion flips the
composite to minus the identity.  The verification report records the
convention in force.

The cokernels of the differentials carry the witness cocycles: the
projection of the degree-n term onto coker(d_{n+1}) is a nonzero cocycle
that cannot be a coboundary because nothing maps from the degree-(n-1) term
into that cokernel, exhibiting nonvanishing degree-n extensions at
arbitrarily high n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cyclic_site import SupportSet
from .linalg import QMatrix, rank
from .modules import (
    ModuleMorphism,
    MorphismFactorization,
    OutCycModule,
    atomic_module,
    direct_sum,
    morphism_factor,
    semifree_module,
    zero_module,
)
from .hom_ext import hom_direct

_F1 = Fraction(1)

PrimeTuple = tuple[int, ...]

CONTRACTION_SIGN_CONVENTION = "1-based insertion position"


def _product(t: PrimeTuple) -> int:
    out = 1
    for p in t:
        out *= p
    return out


@dataclass
class PrimeComplex:
    """The chain modules, differentials and augmentation, built to a degree."""
    primes: tuple[int, ...]
    max_degree: int
    support: SupportSet
    modules: list[OutCycModule]        # degrees 0..max_degree
    diffs: list[ModuleMorphism]        # diffs[k] : degree k+1 -> degree k
    augmentation: ModuleMorphism       # degree 0 -> the level-1 atom
    target: OutCycModule
    tuples: list[list[PrimeTuple]]

    def module(self, k: int) -> OutCycModule:
        if 0 <= k < len(self.modules):
            return self.modules[k]
        return zero_module(self.support)

    def diff(self, k: int) -> ModuleMorphism:
        """d_k : P_k -> P_{k-1} for 1 <= k <= max_degree."""
        return self.diffs[k - 1]

    def level_tuples(self, k: int, m: int) -> list[PrimeTuple]:
        return [t for t in self.tuples[k] if m % _product(t) == 0]

    def diff_at_level(self, k: int, m: int) -> QMatrix:
        return self.diffs[k - 1].mats[m]


def build_complex(primes: list[int], max_degree: int, support: SupportSet) -> PrimeComplex:
    """Chain modules and differentials over the given ambient primes.

    Degree k sums the semifree modules at the products of k distinct primes;
    the support must contain every such product up to the requested degree.
    The differential drops the i-th prime of a tuple with sign (-1)^i,
    1-based, acting levelwise.
    """
    primes = sorted(set(primes))
    for t in combinations(primes, min(max_degree, len(primes))):
        if _product(t) not in support:
            raise ValueError(f"support too small: needs level {_product(t)}")
    all_tuples = [[tuple(t) for t in combinations(primes, k)]
                  for k in range(max_degree + 1)]

    modules = []
    for k in range(max_degree + 1):
        parts = [semifree_module(_product(t), support) for t in all_tuples[k]]
        if parts:
            modules.append(direct_sum(parts, name=f"P{k}"))
        else:
            modules.append(zero_module(support))

    diffs = []
    for k in range(1, max_degree + 1):
        mats = {}
        for m in support:
            src = [t for t in all_tuples[k] if m % _product(t) == 0]
            tgt = [t for t in all_tuples[k - 1] if m % _product(t) == 0]
            tgt_index = {t: i for i, t in enumerate(tgt)}
            mat = QMatrix.zeros(len(tgt), len(src))
            for j, t in enumerate(src):
                for i in range(len(t)):
                    face = t[:i] + t[i + 1:]
                    sign = -1 if (i + 1) % 2 else 1
                    mat._e[tgt_index[face] * len(src) + j] += sign
            mats[m] = mat
        diffs.append(ModuleMorphism(modules[k], modules[k - 1], mats))

    target = atomic_module(1, 1, support)
    aug_mats = {}
    for m in support:
        aug_mats[m] = (QMatrix.from_rows([[1]]) if m == 1
                       else QMatrix.zeros(0, modules[0].dim(m)))
    augmentation = ModuleMorphism(modules[0], target, aug_mats)
    return PrimeComplex(tuple(primes), max_degree, support, modules, diffs,
                        augmentation, target, all_tuples)


def contraction(cx: PrimeComplex, m: int) -> list[QMatrix]:
    """The maps h_n from degree n to degree n+1 at level m, for m > 1.

    h scales by the reciprocal of the number of prime factors and inserts
    each absent prime with the sign of its 1-based insertion position.
    Degrees beyond the built range would land in unbuilt modules; the list
    covers n = 0 .. max_degree - 1, plus max_degree itself whenever the
    module one degree up is empty at this level (then h is zero there).
    """
    if m == 1:
        raise ValueError("the contraction is defined only at levels with a prime factor")
    level_primes = [p for p in cx.primes if m % p == 0]
    omega = len(level_primes)
    if omega < 1:
        raise ValueError(f"level {m} has no prime factors among the ambient primes")
    weight = Fraction(1, omega)
    out = []
    top = cx.max_degree
    for n in range(top + 1):
        src = cx.level_tuples(n, m)
        if n + 1 <= top:
            tgt = cx.level_tuples(n + 1, m)
        else:
            tgt = [t for t in combinations(level_primes, n + 1)]
            if tgt:
                break  # cannot express h into an unbuilt nonzero module
            tgt = []
        tgt_index = {t: i for i, t in enumerate(tgt)}
        mat = QMatrix.zeros(len(tgt), len(src))
        for j, alpha in enumerate(src):
            present = set(alpha)
            for p in level_primes:
                if p in present:
                    continue
                pos = sum(1 for q in alpha if q < p) + 1  # 1-based insertion slot
                bigger = tuple(sorted(alpha + (p,)))
                sign = -1 if pos % 2 else 1
                mat._e[tgt_index[bigger] * len(src) + j] += weight * sign
        out.append(mat)
    return out


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: str = ""


@dataclass
class ResolutionReport:
    checks: list[CheckResult]
    convention: str = CONTRACTION_SIGN_CONVENTION

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]


def verify_resolution(primes: list[int], max_degree: int,
                      support: SupportSet) -> ResolutionReport:
    """d squared, exactness of the augmented complex, and the contraction
    identity, all levelwise; failures are report entries, not exceptions."""
    cx = build_complex(primes, max_degree, support)
    checks: list[CheckResult] = []

    for k in range(2, max_degree + 1):
        ok = all((cx.diff_at_level(k - 1, m) @ cx.diff_at_level(k, m)).is_zero()
                 for m in support)
        checks.append(CheckResult(f"d{k - 1} after d{k} is zero", ok))

    aug_ranks = {m: rank(cx.augmentation.mats[m]) for m in support}
    checks.append(CheckResult(
        "augmentation surjective",
        all(aug_ranks[m] == cx.target.dim(m) for m in support),
        "rank matches the target dimension at every level"))

    ok0 = True
    for m in support:
        if not (cx.augmentation.mats[m] @ cx.diff_at_level(1, m)).is_zero():
            ok0 = False
            break
        ker_aug = cx.modules[0].dim(m) - aug_ranks[m]
        if rank(cx.diff_at_level(1, m)) != ker_aug:
            ok0 = False
            break
    checks.append(CheckResult("exact at degree 0 (image of d1 = kernel of augmentation)", ok0))

    for k in range(1, max_degree):
        ok = all(rank(cx.diff_at_level(k + 1, m)) + rank(cx.diff_at_level(k, m))
                 == cx.modules[k].dim(m) for m in support)
        checks.append(CheckResult(f"exact at degree {k}", ok))

    for m in support:
        if m == 1:
            continue
        hs = contraction(cx, m)
        for n in range(len(hs)):
            ident = QMatrix.identity(cx.modules[n].dim(m))
            total = QMatrix.zeros(ident.rows, ident.cols)
            if n + 1 <= cx.max_degree:
                total = total + cx.diff_at_level(n + 1, m) @ hs[n]
            elif not hs[n].is_zero():
                total = None
            if total is not None and n >= 1:
                total = total + hs[n - 1] @ cx.diff_at_level(n, m)
            passed = total is not None and total == ident
            checks.append(CheckResult(f"contraction identity at level {m}, degree {n}",
                                      passed))
    return ResolutionReport(checks)


@dataclass
class ExtWitnessReport:
    degree: int
    hom_below_dim: int
    cocycle_is_zero: bool
    composes_to_zero: bool

    @property
    def nontrivial(self) -> bool:
        """A nonzero cocycle with no morphisms from one degree down is a
        class no coboundary can reach: nonvanishing Ext in this degree."""
        return (self.hom_below_dim == 0 and not self.cocycle_is_zero
                and self.composes_to_zero)


def nontrivial_ext_witness(n: int, primes: list[int],
                           support: SupportSet) -> tuple[ExtWitnessReport,
                                                         ModuleMorphism,
                                                         MorphismFactorization]:
    """The universal cocycle in degree n: the projection onto coker(d_{n+1}).

    Returns the report, the cocycle itself, and the factorization carrying
    the cokernel module.
    """
    if n < 1:
        raise ValueError("the witness degree must be at least 1")
    cx = build_complex(primes, n + 1, support)
    fact = morphism_factor(cx.diff(n + 1))
    xi = fact.cokernel_projection  # P_n ->> coker(d_{n+1})
    hom_below = hom_direct(cx.modules[n - 1], fact.cokernel)
    composed = xi.compose(cx.diff(n + 1))
    report = ExtWitnessReport(
        degree=n,
        hom_below_dim=hom_below.dimension,
        cocycle_is_zero=xi.is_zero(),
        composes_to_zero=composed.is_zero(),
    )
    return report, xi, fact
