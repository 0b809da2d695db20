"""Hom and Ext computations, two independent ways.

``hom_direct`` solves the full linear system cut out by equivariance and
naturality.  ``hom_via_limit`` instead computes the inverse limit of the
levelwise dual system and reconstructs morphisms into the regular module
from compatible families of linear forms.  The two must agree, and that
agreement is one of the package's central cross-checks.

Derived functors of the inverse limit are computed from the nerve cochain
complex of the support poset; Ext groups are computed from resolutions by
sums of representable modules.  On a support with a maximum element every
higher derived limit vanishes; on non-directed supports they do not, and
the first interesting example lives over the three-element support {1,2,3}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .cyclic_site import SupportSet, units
from .linalg import (
    QMatrix,
    hstack,
    kernel_basis,
    kronecker,
    column_space_basis,
    rank,
)
from .modules import (
    InverseSystem,
    ModuleMorphism,
    OutCycModule,
    dual_system,
    regular_module,
    restriction_matrix,
)

_F0 = Fraction(0)
_F1 = Fraction(1)


@dataclass
class HomSpace:
    """A basis of the space of morphisms between two modules."""
    source: OutCycModule
    target: OutCycModule
    basis: list[ModuleMorphism]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def stacked_matrix(self) -> QMatrix:
        """Basis morphisms flattened to columns of one matrix."""
        cols = [f.stacked_vector() for f in self.basis]
        nrows = sum(self.source.dim(n) * self.target.dim(n) for n in self.source.support)
        return QMatrix.from_columns(cols, rows=nrows)


@dataclass
class LimitElement:
    """A compatible family of linear forms, one per level.

    Compatibility: the form at a multiple, composed with the restriction
    from the divisor, recovers the form at the divisor.
    """
    forms: dict[int, list[Fraction]]

    def check_compatible(self, x: OutCycModule) -> bool:
        for n, m in x.support.covering_pairs():
            res = x.restriction_step(n, m)
            lam_m = self.forms[m]
            composed = [sum((lam_m[i] * res[i, j] for i in range(res.rows)), _F0)
                        for j in range(res.cols)]
            if composed != self.forms[n]:
                return False
        return True


class CochainComplex:
    """A sequence of differentials C^0 -> C^1 -> ... with d after d zero."""

    def __init__(self, diffs: list[QMatrix]):
        for a, b in zip(diffs, diffs[1:]):
            if b.cols != a.rows:
                raise ValueError("differential shapes do not compose")
        self.diffs = diffs

    def space_dim(self, k: int) -> int:
        if k < len(self.diffs):
            return self.diffs[k].cols
        if k == len(self.diffs) and self.diffs:
            return self.diffs[-1].rows
        return 0

    def check_d_squared(self) -> bool:
        return all((b @ a).is_zero() for a, b in zip(self.diffs, self.diffs[1:]))

    def cohomology_dims(self, up_to: int) -> list[int]:
        ranks = [rank(d) for d in self.diffs]
        out = []
        for k in range(up_to + 1):
            dim_k = self.space_dim(k)
            rk = ranks[k] if k < len(ranks) else 0
            rk_prev = ranks[k - 1] if k >= 1 and k - 1 < len(ranks) else 0
            out.append(dim_k - rk - rk_prev)
        return out


# ---------------------------------------------------------------------------
# Hom by direct linear algebra
# ---------------------------------------------------------------------------

def _equivariant_basis(x: OutCycModule, y: OutCycModule, n: int) -> QMatrix:
    """Columns spanning the equivariant maps x(n) -> y(n), as row-major
    flattened matrices.

    Uses the exact group-averaging projector over all of units(n): its image
    is precisely the space of equivariant maps, and every unit element
    enters the average.
    """
    dx, dy = x.dim(n), y.dim(n)
    if dx == 0 or dy == 0:
        return QMatrix.zeros(dx * dy, 0)
    un = units(n)
    size = dx * dy
    total = QMatrix.zeros(size, size)
    for l in un:
        linv = un.inv(l)
        # row-major vec:  vec(A f B) = (A kron B^T) vec(f)
        total = total + kronecker(y.action(n, linv), x.action(n, l).transpose())
    avg = total.scale(Fraction(1, len(un)))
    basis, _ = column_space_basis(avg)
    return basis


def _unvec(v: Sequence[Fraction], rows: int, cols: int) -> QMatrix:
    return QMatrix(rows, cols, list(v))


def hom_direct(x: OutCycModule, y: OutCycModule) -> HomSpace:
    """Basis of the morphism space, from the equivariance + naturality system.

    Solved in two exact stages with the same solution set as the monolithic
    system: first a basis of the levelwise equivariant maps, then the
    naturality constraints over all covering pairs expressed in those
    coordinates.
    """
    if x.support != y.support:
        raise ValueError("support mismatch")
    support = x.support
    levels = list(support)
    eq_bases = {n: _equivariant_basis(x, y, n) for n in levels}
    offsets: dict[int, int] = {}
    total = 0
    for n in levels:
        offsets[n] = total
        total += eq_bases[n].cols

    rows: list[list[Fraction]] = []
    for n, m in support.covering_pairs():
        res_x = x.restriction_step(n, m)
        res_y = y.restriction_step(n, m)
        dxn, dyn = x.dim(n), y.dim(n)
        dxm, dym = x.dim(m), y.dim(m)
        block_rows = dym * dxn
        if block_rows == 0:
            continue
        block = [[_F0] * total for _ in range(block_rows)]
        bn = eq_bases[n]
        for k in range(bn.cols):
            f_n = _unvec(bn.col(k), dyn, dxn)
            contrib = res_y @ f_n
            col = offsets[n] + k
            for r, v in enumerate(contrib._e):
                if v:
                    block[r][col] = v
        bm = eq_bases[m]
        for k in range(bm.cols):
            f_m = _unvec(bm.col(k), dym, dxm)
            contrib = f_m @ res_x
            col = offsets[m] + k
            for r, v in enumerate(contrib._e):
                if v:
                    block[r][col] -= v
        rows.extend(block)

    system = QMatrix.from_rows(rows, cols=total)
    coeffs = kernel_basis(system)
    basis = []
    for k in range(coeffs.cols):
        mats = {}
        for n in levels:
            bn = eq_bases[n]
            acc = QMatrix.zeros(y.dim(n), x.dim(n))
            for j in range(bn.cols):
                c = coeffs[offsets[n] + j, k]
                if c:
                    acc = acc + _unvec(bn.col(j), y.dim(n), x.dim(n)).scale(c)
            mats[n] = acc
        basis.append(ModuleMorphism(x, y, mats))
    return HomSpace(x, y, basis)


# ---------------------------------------------------------------------------
# Hom through the inverse limit of the dual system
# ---------------------------------------------------------------------------

def limit_basis(d: InverseSystem) -> list[dict[int, list[Fraction]]]:
    """Basis of the inverse limit: compatible families, one form per level."""
    levels = list(d.support)
    offsets: dict[int, int] = {}
    total = 0
    for n in levels:
        offsets[n] = total
        total += d.dim(n)
    rows: list[list[Fraction]] = []
    for n, m in d.support.covering_pairs():
        step = d.structure_step(n, m)  # D(m) -> D(n)
        for i in range(d.dim(n)):
            row = [_F0] * total
            row[offsets[n] + i] = _F1
            for j in range(d.dim(m)):
                v = step[i, j]
                if v:
                    row[offsets[m] + j] -= v
            rows.append(row)
    system = QMatrix.from_rows(rows, cols=total)
    kb = kernel_basis(system)
    out = []
    for k in range(kb.cols):
        fam = {n: [kb[offsets[n] + i, k] for i in range(d.dim(n))] for n in levels}
        out.append(fam)
    return out


def hom_via_limit(x: OutCycModule) -> HomSpace:
    """Morphisms from x into the regular module, via the dual-system limit.

    A compatible family of forms (lam_n) reconstructs to the morphism whose
    level-n matrix has, in the row of basis unit g, the form
    lam_n composed with the action of g^{-1}.
    """
    reg = regular_module(x.support)
    families = limit_basis(dual_system(x))
    basis = []
    for fam in families:
        mats = {}
        for n in x.support:
            un = units(n)
            d = x.dim(n)
            mat = QMatrix.zeros(len(un), d)
            lam = fam[n]
            for g in un:
                act = x.action(n, un.inv(g))
                r = un.index(g)
                for j in range(d):
                    s = _F0
                    for i in range(act.rows):
                        v = act[i, j]
                        if v:
                            s += lam[i] * v
                    if s:
                        mat._e[r * d + j] = s
            mats[n] = mat
        basis.append(ModuleMorphism(x, reg, mats))
    return HomSpace(x, reg, basis)


def limit_elements(x: OutCycModule) -> list[LimitElement]:
    return [LimitElement(f) for f in limit_basis(dual_system(x))]


# ---------------------------------------------------------------------------
# derived inverse limits over the support poset
# ---------------------------------------------------------------------------

def _chains(support: SupportSet, length: int) -> list[tuple[int, ...]]:
    """Strictly increasing divisibility chains with the given element count."""
    levels = list(support)
    out: list[tuple[int, ...]] = []

    def extend(chain: tuple[int, ...]) -> None:
        if len(chain) == length:
            out.append(chain)
            return
        last = chain[-1]
        for m in levels:
            if m > last and m % last == 0:
                extend(chain + (m,))

    for n in levels:
        extend((n,))
    return out


def nerve_complex(d: InverseSystem, max_k: int) -> tuple[CochainComplex, list[list[tuple[int, ...]]]]:
    """The cochain complex computing the derived limits of d.

    Degree k is a product over (k+1)-element chains of the value at the
    chain's bottom element.  The differential is the alternating sum of face
    maps; dropping the bottom element composes with the structure map down
    to it, every other face is a plain identity inclusion.
    """
    all_chains = [_chains(d.support, k + 1) for k in range(max_k + 2)]
    layouts = []
    for chains in all_chains:
        offs = {}
        total = 0
        for ch in chains:
            offs[ch] = total
            total += d.dim(ch[0])
        layouts.append((offs, total))

    diffs = []
    for k in range(max_k + 1):
        offs_k, dim_k = layouts[k]
        offs_k1, dim_k1 = layouts[k + 1]
        mat = QMatrix.zeros(dim_k1, dim_k)
        for sigma in all_chains[k + 1]:
            row0 = offs_k1[sigma]
            d_sigma = d.dim(sigma[0])
            for i in range(len(sigma)):
                tau = sigma[:i] + sigma[i + 1:]
                sign = -1 if i % 2 else 1
                col0 = offs_k[tau]
                if i == 0:
                    step = d.structure(sigma[0], sigma[1])  # D(sigma[1]) -> D(sigma[0])
                    for a in range(d_sigma):
                        base = (row0 + a) * dim_k
                        for b in range(step.cols):
                            v = step[a, b]
                            if v:
                                mat._e[base + col0 + b] += v if sign == 1 else -v
                else:
                    for a in range(d_sigma):
                        mat._e[(row0 + a) * dim_k + col0 + a] += _F1 if sign == 1 else -_F1
        diffs.append(mat)
    return CochainComplex(diffs), all_chains


@dataclass
class DerivedLimit:
    dims: list[int]
    witnesses: list[list[list[Fraction]]]
    complex: CochainComplex


def lim_derived(d: InverseSystem, max_k: int) -> DerivedLimit:
    """Dimensions (and witness cocycles) of the derived limits up to max_k.

    Degree zero agrees with the equalizer description of the plain limit;
    that equality and d-squared-is-zero are asserted by the test suite, not
    assumed.
    """
    cx, _ = nerve_complex(d, max_k)
    dims = cx.cohomology_dims(max_k)
    witnesses: list[list[list[Fraction]]] = []
    for k in range(max_k + 1):
        cocycles = kernel_basis(cx.diffs[k]) if k < len(cx.diffs) else QMatrix.zeros(0, 0)
        if k == 0:
            image: Optional[QMatrix] = None
        else:
            image, _ = column_space_basis(cx.diffs[k - 1])
        chosen: list[list[Fraction]] = []
        if cocycles.cols:
            span = image
            for j in range(cocycles.cols):
                if len(chosen) == dims[k]:
                    break
                vec = cocycles.column_vector(j)
                candidate = vec if span is None else None
                if span is not None:
                    from .linalg import solve
                    if solve(span, vec) is None:
                        candidate = vec
                if candidate is not None:
                    chosen.append(candidate.col(0))
                    span = candidate if span is None else hstack(span, candidate)
        witnesses.append(chosen)
    return DerivedLimit(dims, witnesses, cx)


def limit_dims_equalizer(d: InverseSystem) -> int:
    """The plain limit computed directly from the equalizer system."""
    return len(limit_basis(d))


# ---------------------------------------------------------------------------
# sequential towers
# ---------------------------------------------------------------------------

@dataclass
class TowerReport:
    lim_dim: int
    lim1_dim: int
    mittag_leffler: bool


def sequential_lim1(dims: Sequence[int], maps: Sequence[QMatrix]) -> TowerReport:
    """lim and lim^1 of a finite tower D_0 <- D_1 <- ... <- D_K.

    maps[k] is the structure map D_{k+1} -> D_k.  The two-term complex sends
    a family (x_k) to the differences (x_k - d(x_{k+1})) for k < K; the top
    coordinate of a finite tower is unconstrained.  The Mittag-Leffler flag
    reports whether every structure map is surjective, which is the finite
    shadow of the image-stabilization condition.
    """
    if len(maps) != len(dims) - 1:
        raise ValueError("a tower with k+1 spaces needs k maps")
    for k, m in enumerate(maps):
        if m.shape() != (dims[k], dims[k + 1]):
            raise ValueError(f"map {k} has shape {m.shape()}, expected "
                             f"{(dims[k], dims[k + 1])}")
    top = len(dims) - 1
    total_src = sum(dims)
    total_tgt = sum(dims[:top])
    phi = QMatrix.zeros(total_tgt, total_src)
    roff = 0
    offsets = []
    acc = 0
    for d in dims:
        offsets.append(acc)
        acc += d
    for k in range(top):
        for i in range(dims[k]):
            phi._e[(roff + i) * total_src + offsets[k] + i] = _F1
        m = maps[k]
        for i in range(m.rows):
            base = (roff + i) * total_src + offsets[k + 1]
            for j in range(m.cols):
                v = m[i, j]
                if v:
                    phi._e[base + j] = -v
        roff += dims[k]
    r = rank(phi)
    ml = all(rank(m) == dims[k] for k, m in enumerate(maps))
    return TowerReport(lim_dim=total_src - r, lim1_dim=total_tgt - r, mittag_leffler=ml)


def tower_along_chain(d: InverseSystem, chain: Sequence[int]) -> tuple[list[int], list[QMatrix]]:
    """Extract the tower of a divisibility chain n_0 | n_1 | ... from a system."""
    for a, b in zip(chain, chain[1:]):
        if b % a:
            raise ValueError("not a divisibility chain")
    dims = [d.dim(n) for n in chain]
    maps = [d.structure(chain[k], chain[k + 1]) for k in range(len(chain) - 1)]
    return dims, maps


# ---------------------------------------------------------------------------
# Ext via resolutions by sums of representable modules
# ---------------------------------------------------------------------------

class _SpanTracker:
    """Incremental row-echelon span of integer-scaled vectors."""

    __slots__ = ("dim", "rows", "pivots", "nonzeros")

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []
        self.nonzeros: list[list[int]] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    @staticmethod
    def _scaled(vec: Sequence[Fraction]) -> list[int]:
        from math import gcd
        den = 1
        for v in vec:
            if v:
                d = v.denominator
                if d != 1:
                    den = den * d // gcd(den, d)
        if den == 1:
            return [v.numerator for v in vec]
        return [v.numerator * (den // v.denominator) for v in vec]

    def _reduce(self, row: list[int]) -> list[int]:
        from math import gcd
        for r, p, nz in zip(self.rows, self.pivots, self.nonzeros):
            v = row[p]
            if v:
                pv = r[p]
                g = gcd(pv, v)
                a = pv // g
                b = v // g
                if a != 1:
                    for j in range(self.dim):
                        w = row[j]
                        if w:
                            row[j] = a * w
                for j in nz:
                    row[j] -= b * r[j]
        return row

    def contains(self, vec: Sequence[Fraction]) -> bool:
        return not any(self._reduce(self._scaled(vec)))

    def contains_unit(self, t: int) -> bool:
        row = [0] * self.dim
        row[t] = 1
        return not any(self._reduce(row))

    def add(self, vec: Sequence[Fraction]) -> bool:
        """Insert the vector; True when the span grew."""
        row = self._reduce(self._scaled(vec))
        piv = next((j for j, v in enumerate(row) if v), None)
        if piv is None:
            return False
        g = 0
        for x in row:
            if x:
                g = gcd(g, -x if x < 0 else x)
                if g == 1:
                    break
        if g > 1:
            row = [x // g for x in row]
        at = 0
        while at < len(self.pivots) and self.pivots[at] < piv:
            at += 1
        self.rows.insert(at, row)
        self.pivots.insert(at, piv)
        self.nonzeros.insert(at, [j for j, x in enumerate(row) if x])
        return True


class _FreeSum:
    """A finite sum of representable modules, given by generator levels.

    The value at level m has one block per generator whose level divides m,
    with the block basis indexed by the units of the generator level.  All
    structure maps are index bookkeeping: actions permute within blocks and
    restrictions relabel blocks, so applying them costs one pass over the
    vector.
    """

    __slots__ = ("gens", "support", "_layout")

    def __init__(self, gens: list[int], support: SupportSet):
        self.gens = list(gens)
        self.support = support
        self._layout: dict[int, list[tuple[int, int]]] = {}
        for m in support:
            lay = []
            off = 0
            for i, n in enumerate(self.gens):
                if m % n == 0:
                    lay.append((i, off))
                    off += len(units(n))
            self._layout[m] = lay

    def dim(self, m: int) -> int:
        lay = self._layout[m]
        if not lay:
            return 0
        i, off = lay[-1]
        return off + len(units(self.gens[i]))

    def layout(self, m: int) -> list[tuple[int, int]]:
        return self._layout[m]

    def act(self, m: int, l: int, vec: list[Fraction]) -> list[Fraction]:
        out = [_F0] * len(vec)
        for i, off in self._layout[m]:
            un = units(self.gens[i])
            lbar = 1 if un.modulus == 1 else l % un.modulus
            for k, u in enumerate(un):
                v = vec[off + k]
                if v:
                    out[off + un.index(un.mul(u, lbar))] = v
        return out

    def res(self, n: int, m: int, vec: list[Fraction]) -> list[Fraction]:
        """Composite restriction from level n to level m (n | m): blocks keep
        their labels, the target simply has room for more of them."""
        out = [_F0] * self.dim(m)
        dst = {i: off for i, off in self._layout[m]}
        for i, off in self._layout[n]:
            doff = dst[i]
            size = len(units(self.gens[i]))
            for k in range(size):
                v = vec[off + k]
                if v:
                    out[doff + k] = v
        return out


class _Stage:
    """A module a resolution step must cover: either the original module or
    the kernel of the previous covering map, presented inside a free sum."""

    def __init__(self, support: SupportSet):
        self.support = support

    def dim(self, n: int) -> int:
        raise NotImplementedError

    def generator_images(self, n_gen: int, idx: int) -> dict[int, list[list[Fraction]]]:
        """For the standard basis vector ``idx`` at level ``n_gen``, the value
        of every induced basis map at every level: images[m][k] is the image
        at level m of the k-th unit of units(n_gen)."""
        raise NotImplementedError


class _ModuleStage(_Stage):
    def __init__(self, x: OutCycModule):
        super().__init__(x.support)
        self.x = x
        self._res_cache: dict[tuple[int, int], QMatrix] = {}

    def dim(self, n: int) -> int:
        return self.x.dim(n)

    def _res(self, n: int, m: int) -> QMatrix:
        key = (n, m)
        if key not in self._res_cache:
            self._res_cache[key] = restriction_matrix(self.x, m, n)
        return self._res_cache[key]

    def generator_images(self, n_gen: int, idx: int) -> dict[int, list[list[Fraction]]]:
        out: dict[int, list[list[Fraction]]] = {}
        un = units(n_gen)
        acted = [self.x.action(n_gen, u).col(idx) for u in un]
        for m in self.support.multiples_of(n_gen):
            res = self._res(n_gen, m)
            out[m] = [res.apply(v) for v in acted]
        return out


class _KernelStage(_Stage):
    """The kernel of a covering map out of a free sum.

    The inclusion matrices are reduced kernel bases, so the coordinates of
    an ambient kernel vector are just its entries at the free rows; action
    and restriction are computed ambiently through the free sum's index
    bookkeeping and then read off.
    """

    def __init__(self, free: _FreeSum, incl: dict[int, QMatrix],
                 free_rows: dict[int, list[int]]):
        super().__init__(free.support)
        self.free = free
        self.incl = incl
        self.free_rows = free_rows

    def dim(self, n: int) -> int:
        return self.incl[n].cols

    def generator_images(self, n_gen: int, idx: int) -> dict[int, list[list[Fraction]]]:
        out: dict[int, list[list[Fraction]]] = {}
        ambient = self.incl[n_gen].col(idx)
        un = units(n_gen)
        acted = [self.free.act(n_gen, u, ambient) for u in un]
        for m in self.support.multiples_of(n_gen):
            rows = self.free_rows[m]
            vals = []
            for v in acted:
                w = self.free.res(n_gen, m, v)
                vals.append([w[r] for r in rows])
            out[m] = vals
        return out


@dataclass
class ResolutionStep:
    gens: list[int]                      # generator levels, with multiplicity
    classifier_cols: list[list[Fraction]]  # image of each generator in the
                                           # previous step's ambient coordinates


def _cover_stage(stage: _Stage) -> tuple[list[int], list[int],
                                          dict[int, list[list[list[Fraction]]]]]:
    """Greedy cover of a stage by representable generators.

    Walks the support upward; at each level it adds generators on standard
    basis vectors not yet hit until the level is full.  Returns the chosen
    generator levels, their basis indices, and all generator images (the
    columns of the covering map, grouped by generator then level).
    """
    support = stage.support
    trackers = {n: _SpanTracker(stage.dim(n)) for n in support}
    gens: list[int] = []
    gen_idx: list[int] = []
    images: dict[int, list[list[list[Fraction]]]] = {n: [] for n in support}
    for n in support:
        d = stage.dim(n)
        guard = 0
        scan = 0  # unit vectors stay covered once covered, so never rescan
        while trackers[n].rank < d:
            guard += 1
            if guard > d + 1:
                raise RuntimeError(f"covering failed to progress at level {n}")
            while scan < d and trackers[n].contains_unit(scan):
                scan += 1
            assert scan < d
            pick = scan
            gens.append(n)
            gen_idx.append(pick)
            imgs = stage.generator_images(n, pick)
            for m, vals in imgs.items():
                tr = trackers[m]
                if tr.rank < stage.dim(m):
                    for v in vals:
                        tr.add(v)
            for m in support:
                images[m].append(imgs.get(m, []))
    return gens, gen_idx, images


def _kernel_with_free_rows(m: QMatrix) -> tuple[QMatrix, list[int]]:
    from .linalg import _rref_rows
    rows, pivots = _rref_rows(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    out = QMatrix.zeros(m.cols, len(free))
    for k, j in enumerate(free):
        out._e[j * len(free) + k] = _F1
        for r, c in enumerate(pivots):
            v = rows[r][j]
            if v:
                out._e[c * len(free) + k] = -v
    return out, free


def resolve_by_representables(x: OutCycModule, depth: int) -> list[ResolutionStep]:
    """A resolution of x by sums of representable modules, to the given depth.

    Step k records the generator levels of the k-th term and, for k >= 1,
    the classifying columns of the differential into the previous term.
    """
    support = x.support
    stage: _Stage = _ModuleStage(x)
    steps: list[ResolutionStep] = []
    for k in range(depth + 1):
        gens, gen_idx, images = _cover_stage(stage)
        free = _FreeSum(gens, support)
        if k == 0:
            classifier_cols = []
        else:
            prev_stage = stage
            assert isinstance(prev_stage, _KernelStage)
            classifier_cols = [prev_stage.incl[n].col(i)
                               for n, i in zip(gens, gen_idx)]
        steps.append(ResolutionStep(gens, classifier_cols))
        if k == depth:
            break
        # the covering map's matrix at each level, in stage coordinates
        incl: dict[int, QMatrix] = {}
        free_rows: dict[int, list[int]] = {}
        all_zero = True
        for m in support:
            cols: list[list[Fraction]] = []
            for gi, n_gen in enumerate(gens):
                if m % n_gen == 0:
                    cols.extend(images[m][gi])
            eps = QMatrix.from_columns(cols, rows=stage.dim(m))
            kb, fr = _kernel_with_free_rows(eps)
            incl[m] = kb
            free_rows[m] = fr
            if kb.cols:
                all_zero = False
        stage = _KernelStage(free, incl, free_rows)
        if all_zero:
            # kernel vanished: the resolution ends; remaining terms are zero
            for _ in range(k + 1, depth + 1):
                steps.append(ResolutionStep([], []))
            break
    return steps


def _hom_cochain(steps: list[ResolutionStep], y: OutCycModule,
                 support: SupportSet) -> CochainComplex:
    """Apply morphisms-into-y to the resolution, in representable coordinates.

    The degree-k space is the sum of y's values at the k-th generator levels;
    the differential evaluates a morphism on the classifying columns of the
    next differential, using that a morphism out of a representable is the
    unit-orbit of a single value pushed up through the restrictions.
    """
    res_cache: dict[tuple[int, int], QMatrix] = {}

    def y_res(n: int, m: int) -> QMatrix:
        key = (n, m)
        if key not in res_cache:
            res_cache[key] = restriction_matrix(y, m, n)
        return res_cache[key]

    def layout(gens: list[int]) -> tuple[list[int], int]:
        offs = []
        tot = 0
        for n in gens:
            offs.append(tot)
            tot += y.dim(n)
        return offs, tot

    diffs: list[QMatrix] = []
    for k in range(len(steps) - 1):
        gens_k = steps[k].gens
        gens_k1 = steps[k + 1].gens
        offs_k, dim_k = layout(gens_k)
        offs_k1, dim_k1 = layout(gens_k1)
        free_k = _FreeSum(gens_k, support)
        mat = QMatrix.zeros(dim_k1, dim_k)
        for j, (n_j, z) in enumerate(zip(gens_k1, steps[k + 1].classifier_cols)):
            # z lives in the k-th free sum at level n_j
            lay = free_k.layout(n_j)
            for i, off in lay:
                n_i = gens_k[i]
                un = units(n_i)
                dy = y.dim(n_i)
                acc = [_F0] * (dy * dy)
                hit = False
                for t, u in enumerate(un):
                    c = z[off + t]
                    if c:
                        hit = True
                        for idx, v in enumerate(y.action(n_i, u)._e):
                            if v:
                                acc[idx] += c * v
                if not hit:
                    continue
                weighted = QMatrix(dy, dy, acc)
                block = y_res(n_i, n_j) @ weighted
                r0, c0 = offs_k1[j], offs_k[i]
                for a in range(block.rows):
                    base = (r0 + a) * dim_k + c0
                    row = block.row(a)
                    for b, v in enumerate(row):
                        if v:
                            mat._e[base + b] += v
        diffs.append(mat)
    return CochainComplex(diffs)


def ext_via_resolution(x: OutCycModule, y: OutCycModule, max_k: int) -> list[int]:
    """Ext dimensions in degrees 0..max_k, from a representable resolution.

    Degree zero is the morphism space, and must agree with hom_direct; the
    test suite asserts that, along with agreement with derived limits when
    the target is the regular module.
    """
    if x.support != y.support:
        raise ValueError("support mismatch")
    steps = resolve_by_representables(x, max_k + 1)
    cx = _hom_cochain(steps, y, x.support)
    return cx.cohomology_dims(max_k)
