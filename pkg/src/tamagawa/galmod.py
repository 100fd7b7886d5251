"""Finite Galois modules and their cohomology.

A module is presented as Z^k / L with L a full-rank relation lattice and a
finite abelian group acting through integer matrices.  Fixed points and
cyclic H^1 are computed lattice-theoretically (stacked kernels, Smith
normal form), so module orders may be astronomically large at no cost.
Cocycle enumeration (h1_small, sha1) is the only element-wise algorithm
and is budget-guarded.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceededError, InputError
from .intlat import (
    FinAbGroup,
    IntMatrix,
    cokernel_structure,
    in_column_span,
    kernel_basis,
    lattice_basis,
    rank,
    snf,
    solve_columns,
)

__all__ = [
    "GroupGenerator",
    "GaloisModule",
    "CyclicAction",
    "validate_module",
    "fixed_points",
    "h1_cyclic",
    "h1_small",
    "sha1",
    "h1_lattice_cyclic",
]

DEFAULT_COCYCLE_BUDGET = 10**7


@dataclass(frozen=True)
class GroupGenerator:
    """A generator of the acting group: a label, its order, and the k x k
    integer matrix through which it acts on the ambient lattice."""

    label: str
    order: int
    action: IntMatrix


@dataclass(frozen=True)
class GaloisModule:
    """Z^ambient_rank / columnspan(relations) with a finite abelian group
    acting by the given generators.

    The acting group is the product of the cyclic groups generated by the
    labelled generators; commutation is checked, non-abelian actions are
    rejected.
    """

    ambient_rank: int
    relations: IntMatrix
    generators: tuple[GroupGenerator, ...] = ()

    @property
    def group_order(self) -> int:
        return math.prod(g.order for g in self.generators)


@dataclass(frozen=True)
class CyclicAction:
    """A GaloisModule whose group has a single generator sigma."""

    module: GaloisModule

    def __post_init__(self) -> None:
        if len(self.module.generators) != 1:
            raise InputError("CyclicAction needs exactly one generator")

    @property
    def order(self) -> int:
        return self.module.generators[0].order

    @property
    def action(self) -> IntMatrix:
        return self.module.generators[0].action


def validate_module(module: GaloisModule) -> int:
    """Check all module invariants; return the module order.

    Rejects ill-defined actions (A L not contained in L) and unsatisfied
    group relations, naming the failing generator.
    """
    k = module.ambient_rank
    rel = module.relations
    if rel.rows != k:
        raise InputError("relations must live in the ambient rank %d" % k)
    if rank(rel) != k:
        raise InputError("relation lattice is not of full rank: module is infinite")
    basis = lattice_basis(rel)
    ident = IntMatrix.identity(k)
    for gen in module.generators:
        a = gen.action
        if a.rows != k or a.cols != k:
            raise InputError("generator %s: action matrix must be %dx%d" % (gen.label, k, k))
        if gen.order < 1:
            raise InputError("generator %s: order must be >= 1" % gen.label)
        if solve_columns(basis, a @ basis) is None:
            raise InputError(
                "generator %s: action does not preserve the relation lattice" % gen.label
            )
        if solve_columns(basis, a.pow(gen.order) - ident) is None:
            raise InputError(
                "group relation violated: %s^%d is not the identity on the module"
                % (gen.label, gen.order)
            )
    for g1, g2 in itertools.combinations(module.generators, 2):
        comm = g1.action @ g2.action - g2.action @ g1.action
        if solve_columns(basis, comm) is None:
            raise InputError(
                "generators %s and %s do not commute on the module" % (g1.label, g2.label)
            )
    return cokernel_structure(rel).order


def _quotient_of_spans(big: IntMatrix, small: IntMatrix) -> FinAbGroup:
    """Structure of colspan(big) / colspan(small); the small span must be
    contained in the big one."""
    basis = lattice_basis(big)
    coords = solve_columns(basis, small)
    if coords is None:
        raise InputError("quotient of non-nested lattices")
    return cokernel_structure(coords)


def fixed_points(module: GaloisModule) -> FinAbGroup:
    """The subgroup {x in M : g x = x for all g}, as a FinAbGroup.

    Computed via the lattice P = {x in Z^k : (A_i - 1) x in L for all i}
    (a stacked integer kernel), then P / L by Smith normal form.  No
    element enumeration, so |M| may be huge.
    """
    validate_module(module)
    k = module.ambient_rank
    rel = module.relations
    gens = module.generators
    if not gens:
        return cokernel_structure(rel)
    m = rel.cols
    ident = IntMatrix.identity(k)
    blocks = []
    for i, gen in enumerate(gens):
        row = [gen.action - ident]
        for j in range(len(gens)):
            row.append((-rel) if j == i else IntMatrix.zero(k, m))
        blocks.append(IntMatrix.hstack(*row))
    stacked = IntMatrix.vstack(*blocks)
    kern = kernel_basis(stacked)
    top = IntMatrix.from_rows([kern.row(i) for i in range(k)], cols=kern.cols)
    p_gen = IntMatrix.hstack(top, rel)
    return _quotient_of_spans(p_gen, rel)


def h1_cyclic(cyclic: CyclicAction) -> FinAbGroup:
    """H^1 of a cyclic group on a finite module: ker(Norm) / im(sigma - 1),
    with Norm = 1 + sigma + ... + sigma^(n-1), all realized integrally on
    the presentation Z^k / L."""
    module = cyclic.module
    validate_module(module)
    k = module.ambient_rank
    rel = module.relations
    a = cyclic.action
    n = cyclic.order
    ident = IntMatrix.identity(k)
    norm = IntMatrix.zero(k, k)
    power = ident
    for _ in range(n):
        norm = norm + power
        power = power @ a
    # preimage of ker(Norm on M): {x : Norm x in L}
    stacked = IntMatrix.hstack(norm, -rel)
    kern = kernel_basis(stacked)
    top = IntMatrix.from_rows([kern.row(i) for i in range(k)], cols=kern.cols)
    z_gen = IntMatrix.hstack(top, rel)
    b_gen = IntMatrix.hstack(a - ident, rel)
    return _quotient_of_spans(z_gen, b_gen)


def h1_lattice_cyclic(action: IntMatrix, order: int) -> FinAbGroup:
    """H^1 of a cyclic group acting on a free lattice Z^r: ker(N)/im(A - 1)."""
    if not action.is_square():
        raise InputError("lattice action must be square")
    r = action.rows
    ident = IntMatrix.identity(r)
    if action.pow(order) != ident:
        raise InputError("action matrix is not of finite order %d" % order)
    norm = IntMatrix.zero(r, r)
    power = ident
    for _ in range(order):
        norm = norm + power
        power = power @ action
    kern = kernel_basis(norm)
    coords = solve_columns(kern, action - ident)
    if coords is None:
        raise InputError("image of (action - 1) escapes ker(Norm); inconsistent input")
    return cokernel_structure(coords)


# ---- element-wise algorithms (budget-guarded) ----------------------------


class _QuotientCoords:
    """Cyclic coordinates for a finite quotient Z^k / L.

    Smith normal form of the relation matrix gives U with
    Z^k / L  ~  Z^k / diag(d), elements being residue tuples mod d.
    """

    def __init__(self, relations: IntMatrix):
        k = relations.rows
        if rank(relations) != k:
            raise InputError("quotient is infinite")
        u, d, _ = snf(relations)
        self.k = k
        self.d = tuple(d[i, i] for i in range(k))
        self.u = u
        self.u_inv = solve_columns(u, IntMatrix.identity(k))
        self.order = math.prod(self.d)

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % di for x, di in zip(vec, self.d))

    def elements(self):
        return itertools.product(*(range(di) for di in self.d))

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % di for a, b, di in zip(x, y, self.d))

    def action_matrix(self, a: IntMatrix) -> IntMatrix:
        """The action in diagonal coordinates (still an integer matrix)."""
        return self.u @ a @ self.u_inv

    def apply(self, mat: IntMatrix, x) -> tuple[int, ...]:
        return self.reduce(mat.apply(x))

    def relation_diagonal(self) -> IntMatrix:
        return IntMatrix.diagonal(list(self.d))


def _partial_norms(coords: _QuotientCoords, t: IntMatrix, order: int) -> list[IntMatrix]:
    """[0, 1, 1+t, ..., 1+t+...+t^(order-1)] as integer matrices."""
    k = coords.k
    out = [IntMatrix.zero(k, k)]
    acc = IntMatrix.zero(k, k)
    power = IntMatrix.identity(k)
    for _ in range(order):
        acc = acc + power
        out.append(acc)
        power = power @ t
    return out


def _enumerate_cocycles(module: GaloisModule, coords: _QuotientCoords):
    """All 1-cocycles as tuples of generator values (in coordinates), plus
    the set of coboundaries."""
    gens = module.generators
    g = len(gens)
    ident = IntMatrix.identity(coords.k)
    acts = [coords.action_matrix(gen.action) for gen in gens]
    norms = [_partial_norms(coords, t, gen.order)[gen.order] for t, gen in zip(acts, gens)]
    deltas = [t - ident for t in acts]

    cocycles = []
    for tup in itertools.product(list(coords.elements()), repeat=g):
        ok = True
        for i in range(g):
            if any(coords.apply(norms[i], tup[i])):
                ok = False
                break
        if ok:
            for i in range(g):
                for j in range(i + 1, g):
                    if coords.apply(deltas[i], tup[j]) != coords.apply(deltas[j], tup[i]):
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            cocycles.append(tup)
    coboundaries = {
        tuple(coords.apply(deltas[i], m) for i in range(g)) for m in coords.elements()
    }
    return cocycles, sorted(coboundaries)


def _tuple_quotient(coords: _QuotientCoords, g: int, numerator, denominator) -> FinAbGroup:
    """Structure of (subgroup of M^g spanned by numerator tuples) modulo
    (subgroup spanned by denominator tuples), both containing the ambient
    relation lattice."""
    if g == 0:
        return FinAbGroup()
    k = coords.k
    ambient = IntMatrix.diagonal([coords.d[i] for _ in range(g) for i in range(k)])
    num_cols = [[x for part in tup for x in part] for tup in numerator]
    den_cols = [[x for part in tup for x in part] for tup in denominator]
    big = IntMatrix.hstack(IntMatrix.from_columns(num_cols, rows=g * k), ambient) \
        if num_cols else ambient
    small = IntMatrix.hstack(IntMatrix.from_columns(den_cols, rows=g * k), ambient) \
        if den_cols else ambient
    return _quotient_of_spans(big, small)


def _check_budget(module: GaloisModule, coords: _QuotientCoords, budget: int) -> None:
    g = len(module.generators)
    gamma = module.group_order
    work = (coords.order**g) * max(gamma, 1)
    if gamma * coords.order > budget or work > budget:
        raise BudgetExceededError(
            "cocycle enumeration needs %d table entries, budget is %d" % (work, budget)
        )


def h1_small(module: GaloisModule, budget: int = DEFAULT_COCYCLE_BUDGET) -> FinAbGroup:
    """H^1 by explicit 1-cocycle enumeration over the generators.

    A candidate assignment of generator values is a cocycle iff it kills
    each generator's norm and satisfies the pairwise compatibility coming
    from commutation; the quotient modulo coboundaries is then presented
    integrally and read off by Smith normal form.  Agrees with h1_cyclic
    whenever the group is cyclic.
    """
    validate_module(module)
    coords = _QuotientCoords(module.relations)
    _check_budget(module, coords, budget)
    g = len(module.generators)
    cocycles, coboundaries = _enumerate_cocycles(module, coords)
    return _tuple_quotient(coords, g, cocycles, coboundaries)


def _element_exponents(module: GaloisModule):
    return itertools.product(*(range(gen.order) for gen in module.generators))


def _cyclic_subgroup(exponents, orders) -> frozenset:
    n = 1
    for e, o in zip(exponents, orders):
        if e:
            n = math.lcm(n, o // math.gcd(e, o))
    return frozenset(
        tuple((j * e) % o for e, o in zip(exponents, orders)) for j in range(n)
    )


def sha1(module: GaloisModule, budget: int = DEFAULT_COCYCLE_BUDGET) -> FinAbGroup:
    """Kernel of H^1(G, M) -> prod over cyclic subgroups H of H^1(H, M).

    One representative generator per cyclic subgroup suffices.  A class is
    locally trivial at H = <h> iff the cocycle value at h lies in the
    image of (h - 1) on M.
    """
    validate_module(module)
    coords = _QuotientCoords(module.relations)
    _check_budget(module, coords, budget)
    gens = module.generators
    g = len(gens)
    if g == 0:
        return FinAbGroup()
    orders = tuple(gen.order for gen in gens)
    acts = [coords.action_matrix(gen.action) for gen in gens]
    partials = [_partial_norms(coords, t, gen.order) for t, gen in zip(acts, gens)]
    power_cache = [[t.pow(e) for e in range(gen.order)] for t, gen in zip(acts, gens)]

    cocycles, coboundaries = _enumerate_cocycles(module, coords)

    seen: dict[frozenset, tuple] = {}
    for exps in _element_exponents(module):
        key = _cyclic_subgroup(exps, orders)
        if key not in seen:
            seen[key] = exps
    diag = coords.relation_diagonal()
    tests = []
    for exps in seen.values():
        t_el = IntMatrix.identity(coords.k)
        for i, e in enumerate(exps):
            t_el = t_el @ power_cache[i][e]
        image = IntMatrix.hstack(t_el - IntMatrix.identity(coords.k), diag)
        tests.append((exps, image))

    def value_at(cocycle, exps):
        val = (0,) * coords.k
        acting = IntMatrix.identity(coords.k)
        for i, e in enumerate(exps):
            part = coords.apply(partials[i][e], cocycle[i])
            val = coords.add(val, coords.apply(acting, part))
            acting = acting @ power_cache[i][e]
        return val

    locally_trivial = []
    for f in cocycles:
        if all(in_column_span(image, value_at(f, exps)) for exps, image in tests):
            locally_trivial.append(f)
    return _tuple_quotient(coords, g, locally_trivial, coboundaries)
