"""Truncated modules over the cyclic-group site.

An object assigns to every level n of a divisor-closed support a rational
vector space with an action of units(n), and to every covering pair
(n, n*q) an equivariant restriction matrix going up the divisibility
order.  Restrictions are stored on covering pairs only; longer ones are
composites, and path independence of the composites is a validation
invariant rather than extra data.

Morphisms are levelwise matrices that are equivariant and commute with the
restrictions.  Levelwise kernels, images and cokernels inherit module
structures, which is what makes resolutions and Ext computations possible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .cyclic_site import (
    SupportSet,
    prime_factors,
    reduce_unit,
    totient,
    units,
)
from .linalg import QMatrix, column_space_basis, kernel_basis, cokernel, solve_matrix


class OutCycModule:
    """Per-level unit-group representations linked by restriction matrices.

    Actions and restriction steps are usually stored as explicit matrices;
    for very large levels they may instead be computed on demand through
    provider callables (same contract, lazy storage).
    """

    __slots__ = ("support", "dims", "_actions", "_restrictions",
                 "_action_fn", "_restriction_fn", "name")

    def __init__(
        self,
        support: SupportSet,
        dims: dict[int, int],
        actions: Optional[dict[int, dict[int, QMatrix]]] = None,
        restrictions: Optional[dict[tuple[int, int], QMatrix]] = None,
        action_fn: Optional[Callable[[int, int], QMatrix]] = None,
        restriction_fn: Optional[Callable[[int, int], QMatrix]] = None,
        name: str = "",
    ):
        self.support = support
        self.dims = {n: int(dims.get(n, 0)) for n in support}
        self._actions = actions
        self._restrictions = restrictions
        self._action_fn = action_fn
        self._restriction_fn = restriction_fn
        self.name = name

    def dim(self, n: int) -> int:
        return self.dims[n]

    def action(self, n: int, l: int) -> QMatrix:
        if self._actions is not None and n in self._actions:
            return self._actions[n][l]
        if self._action_fn is not None:
            return self._action_fn(n, l)
        raise KeyError(f"no action data at level {n}")

    def restriction_step(self, n: int, m: int) -> QMatrix:
        """Restriction matrix for a covering pair (n, m) with m = n * prime."""
        if self._restrictions is not None and (n, m) in self._restrictions:
            return self._restrictions[(n, m)]
        if self._restriction_fn is not None:
            return self._restriction_fn(n, m)
        raise KeyError(f"no restriction data for {n} -> {m}")

    def is_materialized(self) -> bool:
        return self._actions is not None and self._restrictions is not None

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.dims.values())

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OutCycModule):
            return NotImplemented
        if self.support != other.support or self.dims != other.dims:
            return False
        for n in self.support:
            for l in units(n):
                if self.action(n, l) != other.action(n, l):
                    return False
        for n, m in self.support.covering_pairs():
            if self.restriction_step(n, m) != other.restriction_step(n, m):
                return False
        return True

    def __repr__(self) -> str:
        tag = self.name or "module"
        dims = ", ".join(f"{n}:{d}" for n, d in self.dims.items())
        return f"OutCycModule<{tag}; {dims}>"

    def validate(self) -> list[str]:
        return validate(self)


def restriction_matrix(x: OutCycModule, m: int, n: int) -> QMatrix:
    """Composite restriction from level n up to level m (n | m, both in S).

    Composes covering steps along the prime factorization of m/n taken in
    increasing order; path independence makes any other chain agree.
    """
    if n not in x.support or m not in x.support:
        raise ValueError(f"levels {n}, {m} must lie in the support")
    if m % n:
        raise ValueError(f"{n} does not divide {m}")
    mat = QMatrix.identity(x.dim(n))
    cur = n
    rest = m // n
    for p in prime_factors(rest):
        while rest % p == 0:
            mat = x.restriction_step(cur, cur * p) @ mat
            cur *= p
            rest //= p
    return mat


def validate_actions(x: OutCycModule, n: int) -> list[str]:
    """Level-n invariants: identity at 1, shapes, full multiplicativity."""
    out: list[str] = []
    d = x.dim(n)
    un = units(n)
    if x.action(n, 1) != QMatrix.identity(d):
        out.append(f"action(1) is not the identity at level {n}")
    mats = {l: x.action(n, l) for l in un}
    for l, a in mats.items():
        if a.shape() != (d, d):
            out.append(f"action({l}) at level {n} has shape {a.shape()}, expected {(d, d)}")
    for l in un:
        for lp in un:
            if mats[l] @ mats[lp] != mats[un.mul(l, lp)]:
                out.append(f"action not multiplicative at level {n}: {l} * {lp}")
    return out


def validate_squares(x: OutCycModule) -> list[str]:
    """Equivariance of every restriction against every unit upstairs."""
    out: list[str] = []
    for n, m in x.support.covering_pairs():
        res = x.restriction_step(n, m)
        if res.shape() != (x.dim(m), x.dim(n)):
            out.append(f"restriction {n}->{m} has shape {res.shape()}, "
                       f"expected {(x.dim(m), x.dim(n))}")
            continue
        for phi in units(m):
            phibar = reduce_unit(m, n, phi)
            if x.action(m, phi) @ res != res @ x.action(n, phibar):
                out.append(f"equivariance fails on square {n}->{m} at unit {phi}")
    return out


def validate_paths(x: OutCycModule) -> list[str]:
    """Composites along different prime orders must agree."""
    out: list[str] = []
    mset = set(x.support)
    for n in x.support:
        qs = sorted({p for m in x.support.multiples_of(n) for p in prime_factors(m // n) if m != n})
        for i, q in enumerate(qs):
            for qp in qs[i + 1:]:
                top = n * q * qp
                if top in mset and n * q in mset and n * qp in mset:
                    left = x.restriction_step(n * q, top) @ x.restriction_step(n, n * q)
                    right = x.restriction_step(n * qp, top) @ x.restriction_step(n, n * qp)
                    if left != right:
                        out.append(f"path independence fails: {n} -> {top} via {q} vs {qp}")
    return out


def validate(x: OutCycModule) -> list[str]:
    """All structural invariants, exhaustively; violations come back as data."""
    out: list[str] = []
    for n in x.support:
        out.extend(validate_actions(x, n))
    out.extend(validate_squares(x))
    out.extend(validate_paths(x))
    return out


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def regular_module(support: SupportSet) -> OutCycModule:
    """The regular unit-group representation at every level.

    Level n has basis indexed by units(n) with the translation action; the
    restriction for a covering pair sends a basis unit j to the sum of the
    basis units reducing to j, i.e. summation over the fibers.
    """
    dims = {n: totient(n) for n in support}
    actions: dict[int, dict[int, QMatrix]] = {}
    restrictions: dict[tuple[int, int], QMatrix] = {}
    for n in support:
        un = units(n)
        d = len(un)
        acts = {}
        for l in un:
            a = QMatrix.zeros(d, d)
            for j in un:
                a._e[un.index(un.mul(l, j)) * d + un.index(j)] = 1
            acts[l] = a
        actions[n] = acts
    for n, m in support.covering_pairs():
        un, um = units(n), units(m)
        r = QMatrix.zeros(len(um), len(un))
        for jt in um:
            r._e[um.index(jt) * len(un) + un.index(reduce_unit(m, n, jt))] = 1
        restrictions[(n, m)] = r
    return OutCycModule(support, dims, actions, restrictions, name="regular")


def free_module(n: int, support: SupportSet) -> OutCycModule:
    """The representable module at level n.

    Levels m divisible by n carry the span of the surjections onto the
    level-n cyclic group, identified with units(n) by where the chosen
    generator goes; other levels vanish.  Morphisms out of it correspond
    to elements of the target at level n.
    """
    if n not in support:
        raise ValueError(f"{n} not in support")
    un = units(n)
    d = len(un)
    dims = {m: (d if m % n == 0 else 0) for m in support}
    actions: dict[int, dict[int, QMatrix]] = {}
    restrictions: dict[tuple[int, int], QMatrix] = {}
    for m in support:
        um = units(m)
        if m % n:
            actions[m] = {l: QMatrix.zeros(0, 0) for l in um}
            continue
        acts = {}
        for l in um:
            lbar = reduce_unit(m, n, l)
            a = QMatrix.zeros(d, d)
            for u in un:
                a._e[un.index(un.mul(u, lbar)) * d + un.index(u)] = 1
            acts[l] = a
        actions[m] = acts
    for a, b in support.covering_pairs():
        restrictions[(a, b)] = (QMatrix.identity(d) if a % n == 0
                                else QMatrix.zeros(dims[b], dims[a]))
    return OutCycModule(support, dims, actions, restrictions, name=f"free:{n}")


def semifree_module(n: int, support: SupportSet) -> OutCycModule:
    """One copy of Q at every level divisible by n, identity restrictions.

    Co-represents the unit-group invariants of the level-n value.  When the
    support contains no multiple of n this is simply the zero module.
    """
    if n < 1:
        raise ValueError("level must be positive")
    dims = {m: (1 if m % n == 0 else 0) for m in support}
    actions = {m: {l: QMatrix.identity(dims[m]) for l in units(m)} for m in support}
    restrictions = {
        (a, b): (QMatrix.identity(1) if a % n == 0 else QMatrix.zeros(dims[b], dims[a]))
        for a, b in support.covering_pairs()
    }
    return OutCycModule(support, dims, actions, restrictions, name=f"semifree:{n}")


def atomic_module(n: int, d: int, support: SupportSet) -> OutCycModule:
    """A d-dimensional trivial representation at level n only, zero elsewhere."""
    if n not in support:
        raise ValueError(f"{n} not in support")
    dims = {m: (d if m == n else 0) for m in support}
    actions = {m: {l: QMatrix.identity(dims[m]) for l in units(m)} for m in support}
    restrictions = {(a, b): QMatrix.zeros(dims[b], dims[a])
                    for a, b in support.covering_pairs()}
    return OutCycModule(support, dims, actions, restrictions, name=f"atomic:{n}:{d}")


def zero_module(support: SupportSet) -> OutCycModule:
    return OutCycModule(
        support,
        {n: 0 for n in support},
        {n: {l: QMatrix.zeros(0, 0) for l in units(n)} for n in support},
        {pair: QMatrix.zeros(0, 0) for pair in support.covering_pairs()},
        name="zero",
    )


def direct_sum(mods: Sequence[OutCycModule], name: str = "") -> OutCycModule:
    """Levelwise block-diagonal sum; summand order fixes the basis order."""
    if not mods:
        raise ValueError("empty direct sum; pass zero_module instead")
    support = mods[0].support
    if any(m.support != support for m in mods):
        raise ValueError("summands live over different supports")
    dims = {n: sum(m.dim(n) for m in mods) for n in support}

    def block_diag(mats: list[QMatrix]) -> QMatrix:
        r = sum(m.rows for m in mats)
        c = sum(m.cols for m in mats)
        out = QMatrix.zeros(r, c)
        ro = co = 0
        for m in mats:
            for i in range(m.rows):
                base = (ro + i) * c + co
                row = m.row(i)
                for j, v in enumerate(row):
                    if v:
                        out._e[base + j] = v
            ro += m.rows
            co += m.cols
        return out

    actions = {n: {l: block_diag([m.action(n, l) for m in mods]) for l in units(n)}
               for n in support}
    restrictions = {pair: block_diag([m.restriction_step(*pair) for m in mods])
                    for pair in support.covering_pairs()}
    return OutCycModule(support, dims, actions, restrictions,
                        name=name or "(+)".join(m.name or "?" for m in mods))


def conjugate_module(x: OutCycModule, transforms: dict[int, QMatrix],
                     name: str = "") -> OutCycModule:
    """Base change by an invertible matrix at every level.

    Produces an isomorphic module with scrambled coordinates; useful for
    generating seeded valid test modules that are not visibly structured.
    """
    inv: dict[int, QMatrix] = {}
    for n in x.support:
        t = transforms[n]
        ti = solve_matrix(t, QMatrix.identity(t.rows))
        if ti is None or t.rows != t.cols or t.rows != x.dim(n):
            raise ValueError(f"transform at level {n} is not invertible of the right size")
        inv[n] = ti
    actions = {n: {l: transforms[n] @ x.action(n, l) @ inv[n] for l in units(n)}
               for n in x.support}
    restrictions = {(a, b): transforms[b] @ x.restriction_step(a, b) @ inv[a]
                    for a, b in x.support.covering_pairs()}
    return OutCycModule(x.support, dict(x.dims), actions, restrictions,
                        name=name or f"conj({x.name})")


def random_module(support: SupportSet, seed: int) -> OutCycModule:
    """A seeded pseudo-random valid module: a sum of structured pieces
    conjugated by random unimodular base changes at every level."""
    rng = random.Random(seed)
    levels = list(support)
    pieces: list[OutCycModule] = []
    for _ in range(rng.randint(1, 3)):
        kind = rng.choice(["atomic", "semifree", "free"])
        n = rng.choice(levels)
        if kind == "atomic":
            pieces.append(atomic_module(n, rng.randint(1, 2), support))
        elif kind == "semifree":
            pieces.append(semifree_module(n, support))
        else:
            small = [m for m in levels if totient(m) <= 4]
            pieces.append(free_module(rng.choice(small or [1]), support))
    x = direct_sum(pieces) if len(pieces) > 1 else pieces[0]

    transforms: dict[int, QMatrix] = {}
    for n in support:
        d = x.dim(n)
        lower = QMatrix.identity(d)
        upper = QMatrix.identity(d)
        for i in range(d):
            for j in range(i):
                lower._e[i * d + j] = rng.choice([-1, 0, 0, 1])
                upper._e[j * d + i] = rng.choice([-1, 0, 0, 1])
        transforms[n] = lower @ upper
    return conjugate_module(x, transforms, name=f"random:{seed}")


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------

class ModuleMorphism:
    """Levelwise matrices source -> target, equivariant and natural."""

    __slots__ = ("source", "target", "mats")

    def __init__(self, source: OutCycModule, target: OutCycModule,
                 mats: dict[int, QMatrix]):
        if source.support != target.support:
            raise ValueError("source and target live over different supports")
        self.source = source
        self.target = target
        self.mats = {n: mats[n] for n in source.support}

    def __getitem__(self, n: int) -> QMatrix:
        return self.mats[n]

    def validate(self) -> list[str]:
        out = []
        bad_levels = set()
        for n in self.source.support:
            f = self.mats[n]
            if f.shape() != (self.target.dim(n), self.source.dim(n)):
                out.append(f"level {n} matrix has shape {f.shape()}, expected "
                           f"{(self.target.dim(n), self.source.dim(n))}")
                bad_levels.add(n)
                continue
            for l in units(n):
                if f @ self.source.action(n, l) != self.target.action(n, l) @ f:
                    out.append(f"equivariance fails at level {n}, unit {l}")
        for n, m in self.source.support.covering_pairs():
            if n in bad_levels or m in bad_levels:
                continue
            lhs = self.target.restriction_step(n, m) @ self.mats[n]
            rhs = self.mats[m] @ self.source.restriction_step(n, m)
            if lhs != rhs:
                out.append(f"naturality fails on restriction {n}->{m}")
        return out

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.mats.values())

    def compose(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """self after other (matrix order: self @ other)."""
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise ValueError("composition mismatch")
        return ModuleMorphism(other.source, self.target,
                              {n: self.mats[n] @ other.mats[n] for n in self.mats})

    def stacked_vector(self) -> list:
        """All level matrices flattened row-major, levels in support order.

        This is the coefficient list used to compare morphisms as vectors.
        """
        out = []
        for n in self.source.support:
            out.extend(self.mats[n]._e)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModuleMorphism):
            return NotImplemented
        return self.mats == other.mats

    def __repr__(self) -> str:
        return f"ModuleMorphism<{self.source.name or '?'} -> {self.target.name or '?'}>"


def identity_morphism(x: OutCycModule) -> ModuleMorphism:
    return ModuleMorphism(x, x, {n: QMatrix.identity(x.dim(n)) for n in x.support})


def zero_morphism(x: OutCycModule, y: OutCycModule) -> ModuleMorphism:
    return ModuleMorphism(x, y, {n: QMatrix.zeros(y.dim(n), x.dim(n)) for n in x.support})


@dataclass
class MorphismFactorization:
    kernel: OutCycModule
    kernel_inclusion: ModuleMorphism
    image: OutCycModule
    image_inclusion: ModuleMorphism
    source_to_image: ModuleMorphism
    cokernel: OutCycModule
    cokernel_projection: ModuleMorphism


def _induced_on_subspace(basis_n: QMatrix, basis_m: QMatrix, carrier: QMatrix) -> QMatrix:
    """The unique matrix X with basis_m @ X == carrier @ basis_n."""
    x = solve_matrix(basis_m, carrier @ basis_n)
    if x is None:
        raise ValueError("carrier does not preserve the subspace")
    return x


def morphism_factor(f: ModuleMorphism) -> MorphismFactorization:
    """Levelwise kernel, image and cokernel with their induced structures.

    The induced action and restriction matrices are the unique solutions of
    the corresponding commuting squares; existence is guaranteed because a
    valid morphism's kernel and image are preserved by actions and
    restrictions impose naturality.
    """
    src, tgt = f.source, f.target
    support = src.support

    ker_basis = {n: kernel_basis(f.mats[n]) for n in support}
    img_data = {n: column_space_basis(f.mats[n]) for n in support}
    cok_data = {n: cokernel(f.mats[n]) for n in support}

    def sub_module(bases: dict[int, QMatrix], ambient: OutCycModule, name: str) -> OutCycModule:
        dims = {n: bases[n].cols for n in support}
        actions = {n: {l: _induced_on_subspace(bases[n], bases[n], ambient.action(n, l))
                       for l in units(n)} for n in support}
        restrictions = {(a, b): _induced_on_subspace(bases[a], bases[b],
                                                     ambient.restriction_step(a, b))
                        for a, b in support.covering_pairs()}
        return OutCycModule(support, dims, actions, restrictions, name=name)

    kernel_mod = sub_module(ker_basis, src, f"ker({src.name}->{tgt.name})")
    image_mod = sub_module({n: img_data[n][0] for n in support}, tgt,
                           f"im({src.name}->{tgt.name})")

    def quotient_induced(p_n: QMatrix, p_m: QMatrix, carrier: QMatrix) -> QMatrix:
        x = solve_matrix(p_n.transpose(), (p_m @ carrier).transpose())
        if x is None:
            raise ValueError("carrier does not descend to the quotient")
        return x.transpose()

    cok_dims = {n: cok_data[n][1] for n in support}
    cok_actions = {n: {l: quotient_induced(cok_data[n][0], cok_data[n][0],
                                           tgt.action(n, l))
                       for l in units(n)} for n in support}
    cok_restrictions = {(a, b): quotient_induced(cok_data[a][0], cok_data[b][0],
                                                 tgt.restriction_step(a, b))
                        for a, b in support.covering_pairs()}
    cokernel_mod = OutCycModule(support, cok_dims, cok_actions, cok_restrictions,
                                name=f"coker({src.name}->{tgt.name})")

    src_to_img = {}
    for n in support:
        x = solve_matrix(img_data[n][0], f.mats[n])
        assert x is not None
        src_to_img[n] = x

    return MorphismFactorization(
        kernel=kernel_mod,
        kernel_inclusion=ModuleMorphism(kernel_mod, src, ker_basis),
        image=image_mod,
        image_inclusion=ModuleMorphism(image_mod, tgt, {n: img_data[n][0] for n in support}),
        source_to_image=ModuleMorphism(src, image_mod, src_to_img),
        cokernel=cokernel_mod,
        cokernel_projection=ModuleMorphism(tgt, cokernel_mod,
                                           {n: cok_data[n][0] for n in support}),
    )


# ---------------------------------------------------------------------------
# inverse systems
# ---------------------------------------------------------------------------

class InverseSystem:
    """Rational vector spaces over the support with maps from multiples to
    divisors, one matrix per covering pair."""

    __slots__ = ("support", "dims", "maps")

    def __init__(self, support: SupportSet, dims: dict[int, int],
                 maps: dict[tuple[int, int], QMatrix]):
        self.support = support
        self.dims = {n: int(dims.get(n, 0)) for n in support}
        self.maps = dict(maps)
        for (n, m), mat in self.maps.items():
            if mat.shape() != (self.dims[n], self.dims[m]):
                raise ValueError(f"structure map {m}->{n} has shape {mat.shape()}, "
                                 f"expected {(self.dims[n], self.dims[m])}")

    def dim(self, n: int) -> int:
        return self.dims[n]

    def structure_step(self, n: int, m: int) -> QMatrix:
        """The map D(m) -> D(n) for a covering pair (n, m)."""
        return self.maps[(n, m)]

    def structure(self, n: int, m: int) -> QMatrix:
        """Composite map D(m) -> D(n) for any n | m in the support."""
        if m % n:
            raise ValueError(f"{n} does not divide {m}")
        mat = QMatrix.identity(self.dims[m])
        cur = m
        rest = m // n
        for p in prime_factors(rest):
            while rest % p == 0:
                mat = self.maps[(cur // p, cur)] @ mat
                cur //= p
                rest //= p
        return mat

    def validate(self) -> list[str]:
        out = []
        mset = set(self.support)
        for n in self.support:
            qs = sorted({p for m in self.support.multiples_of(n)
                         for p in prime_factors(m // n) if m != n})
            for i, q in enumerate(qs):
                for qp in qs[i + 1:]:
                    top = n * q * qp
                    if top in mset:
                        left = self.maps[(n, n * q)] @ self.maps[(n * q, top)]
                        right = self.maps[(n, n * qp)] @ self.maps[(n * qp, top)]
                        if left != right:
                            out.append(f"path independence fails: {top} -> {n} via {q} vs {qp}")
        return out


def dual_system(x: OutCycModule) -> InverseSystem:
    """Levelwise linear duals with transposed restrictions, actions dropped."""
    maps = {(n, m): x.restriction_step(n, m).transpose()
            for n, m in x.support.covering_pairs()}
    return InverseSystem(x.support, dict(x.dims), maps)
