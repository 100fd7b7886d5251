"""Root data: Cartan matrices, fundamental groups, isogeny lattices,
diagram automorphisms, and the torus constructions used by the engine
(Weil restriction quotients and norm-one character lattices).

All matrices use Bourbaki node ordering:
  A_n   1 - 2 - ... - n
  B_n   1 - ... - (n-1) => n          (n short)
  C_n   1 - ... - (n-1) <= n          (n long)
  D_n   1 - ... - (n-2) < (n-1, n)
  E_n   1 - 3 - 4 - 5 - 6 [- 7 [- 8]] with 2 attached to 4
  F_4   1 - 2 => 3 - 4
  G_2   1 <= 2                        (1 short)

Entry convention: C[i][j] = <alpha_i, alpha_j^vee>, so in the basis of
fundamental weights the simple root alpha_j is column j of C^T.  The
fundamental-group presentations below all live in that weight basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import InputError
from .galmod import GaloisModule, GroupGenerator, validate_module
from .intlat import FinAbGroup, IntMatrix, cokernel_structure

__all__ = [
    "RootDatum",
    "FieldExtensionSpec",
    "RamifiedPlace",
    "CyclicLatticeAction",
    "cartan_matrix",
    "fundamental_group",
    "diagram_automorphism",
    "center_dual_module",
    "weil_restriction_center_dual",
    "norm_one_character_lattice",
    "constant_field_extension",
    "kummer_quadratic_extension",
    "carlitz_cyclotomic_extension",
    "abstract_cyclic_extension",
]

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")

_E_EDGES = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]


def _validate_type(family: str, rank: int) -> None:
    if family not in FAMILIES:
        raise InputError("unknown family %r" % family)
    limits = {"A": rank >= 1, "B": rank >= 2, "C": rank >= 2, "D": rank >= 3,
              "E": rank in (6, 7, 8), "F": rank == 4, "G": rank == 2}
    if not limits[family]:
        raise InputError("unsupported rank %d for family %s" % (rank, family))


def cartan_matrix(family: str, rank: int) -> IntMatrix:
    """The Cartan matrix in Bourbaki ordering."""
    _validate_type(family, rank)
    n = rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def edge(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    if family in ("A", "B", "C"):
        for i in range(n - 1):
            edge(i, i + 1)
        if family == "B" and n >= 2:
            edge(n - 2, n - 1, -2, -1)  # alpha_n short
        if family == "C" and n >= 2:
            edge(n - 2, n - 1, -1, -2)  # alpha_n long
    elif family == "D":
        for i in range(n - 2):
            edge(i, i + 1)
        edge(n - 3, n - 1)  # both end nodes hang off node n-2
    elif family == "E":
        for i, j in _E_EDGES:
            if i <= n and j <= n:
                edge(i - 1, j - 1)
    elif family == "F":
        edge(0, 1)
        edge(1, 2, -2, -1)
        edge(2, 3)
    elif family == "G":
        edge(0, 1, -1, -3)
    return IntMatrix.from_rows(c)


def fundamental_group(family: str, rank: int) -> FinAbGroup:
    """Weight lattice modulo root lattice, as invariant factors."""
    return cokernel_structure(cartan_matrix(family, rank).transpose())


def diagram_automorphism(family: str, rank: int, name: str) -> IntMatrix:
    """Permutation matrix of a Dynkin diagram automorphism on the weight
    basis (e_i maps to e_pi(i)).

    Supported: "flip" of order 2 for A_n (n >= 2), D_n (n >= 4), E_6; and
    "triality" of order 3 for D_4.
    """
    _validate_type(family, rank)
    n = rank
    if name == "flip":
        if family == "A" and n >= 2:
            images = [n - 1 - i for i in range(n)]
        elif family == "D" and n >= 4:
            images = list(range(n))
            images[n - 2], images[n - 1] = n - 1, n - 2
        elif family == "E" and n == 6:
            images = [5, 1, 4, 3, 2, 0]
        else:
            raise InputError("no order-2 diagram automorphism for %s_%d" % (family, n))
    elif name == "triality":
        if family == "D" and n == 4:
            images = [2, 1, 3, 0]
        else:
            raise InputError("triality exists only for D_4")
    else:
        raise InputError("unknown diagram automorphism %r" % name)
    perm = IntMatrix.from_columns(
        [[1 if r == images[i] else 0 for r in range(n)] for i in range(n)], rows=n
    )
    c = cartan_matrix(family, rank)
    if perm.transpose() @ c @ perm != c:
        raise InputError("permutation does not preserve the Cartan matrix")
    return perm


@dataclass(frozen=True)
class RootDatum:
    """A simple type, a choice of isogeny lattice, and an optional twist.

    The isogeny lattice is recorded as a subgroup S of the fundamental
    group (weight lattice over root lattice): the character lattice of the
    corresponding group is the preimage of S, and the center-dual quotient
    has order |fundamental group| / |S|.  "adjoint" means S = 0 (full
    quotient), "simply_connected" means S = everything (trivial quotient);
    intermediate subgroups are given by generator vectors in the weight
    basis.
    """

    family: str
    rank: int
    lattice: str | tuple[tuple[int, ...], ...] = "adjoint"
    twist: str | None = None

    def __post_init__(self) -> None:
        _validate_type(self.family, self.rank)
        if isinstance(self.lattice, str):
            if self.lattice not in ("adjoint", "simply_connected"):
                raise InputError("unknown lattice choice %r" % self.lattice)
        else:
            for vec in self.lattice:
                if len(vec) != self.rank:
                    raise InputError("lattice generator of wrong length")
        if self.twist is not None:
            diagram_automorphism(self.family, self.rank, self.twist)

    def choice_generators(self) -> IntMatrix:
        if self.lattice == "adjoint":
            return IntMatrix.zero(self.rank, 0)
        if self.lattice == "simply_connected":
            return IntMatrix.identity(self.rank)
        return IntMatrix.from_columns([list(v) for v in self.lattice], rows=self.rank)

    def twist_matrix(self) -> IntMatrix:
        if self.twist is None:
            return IntMatrix.identity(self.rank)
        return diagram_automorphism(self.family, self.rank, self.twist)


def center_dual_module(
    rd: RootDatum,
    frobenius_twist: tuple[int, IntMatrix] | None = None,
    inertia_twist: tuple[int, IntMatrix] | None = None,
) -> GaloisModule:
    """The character group of the center kernel, i.e. the weight lattice
    modulo (root lattice + chosen subgroup lifts), with declared local
    actions: each twist is a pair (generator order, weight-basis matrix).

    Raises if a twist does not preserve the chosen intermediate lattice.
    """
    n = rd.rank
    relations = IntMatrix.hstack(
        cartan_matrix(rd.family, rd.rank).transpose(), rd.choice_generators()
    )
    gens = []
    for label, twist in (("frobenius", frobenius_twist), ("inertia", inertia_twist)):
        if twist is None:
            continue
        order, mat = twist
        gens.append(GroupGenerator(label, order, mat))
    module = GaloisModule(n, relations, tuple(gens))
    validate_module(module)
    return module


@dataclass(frozen=True)
class RamifiedPlace:
    label: str
    e: int

    def __post_init__(self) -> None:
        if self.e < 1:
            raise InputError("ramification index must be >= 1")


@dataclass(frozen=True)
class FieldExtensionSpec:
    """A cyclic extension L/K of the rational function field over F_q,
    described by the data the engine needs: degree, ramified finite
    places, and (e, f) at the infinite place."""

    kind: str
    degree: int
    base_q: int
    ramified_places: tuple[RamifiedPlace, ...] = ()
    infinity: tuple[int, int] = (1, 1)

    KINDS = ("constant-field", "kummer-quadratic", "carlitz-cyclotomic", "abstract-cyclic")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise InputError("unknown extension kind %r" % self.kind)
        if self.degree < 1:
            raise InputError("degree must be >= 1")
        e_inf, f_inf = self.infinity
        if e_inf < 1 or f_inf < 1 or self.degree % (e_inf * f_inf):
            raise InputError(
                "e * f at infinity must divide the degree (Galois extension)"
            )
        for place in self.ramified_places:
            if math.gcd(place.e, self.base_q) != 1:
                raise InputError("wild ramification at %s rejected" % place.label)
        if math.gcd(e_inf, self.base_q) != 1:
            raise InputError("wild ramification at infinity rejected")

    @property
    def gamma_order(self) -> int:
        return self.degree

    @property
    def e_infinity(self) -> int:
        return self.infinity[0]

    @property
    def f_infinity(self) -> int:
        return self.infinity[1]

    def component_index_product(self) -> int:
        """Product of the norm-torus component indices e_p over all
        ramified places, the infinite one included."""
        prod = self.e_infinity
        for place in self.ramified_places:
            prod *= place.e
        return prod


def constant_field_extension(q: int, degree: int) -> FieldExtensionSpec:
    """Extension of constants F_{q^degree} * K: unramified everywhere; a
    degree-one infinite place stays inert."""
    return FieldExtensionSpec("constant-field", degree, q, (), (1, degree))


def kummer_quadratic_extension(q: int, num_finite_primes: int) -> FieldExtensionSpec:
    """K(sqrt(d)) with d a product of distinct finite primes, each of them
    and infinity ramifying."""
    if q % 2 == 0:
        raise InputError("quadratic Kummer extensions need odd q")
    places = tuple(RamifiedPlace("p%d" % (i + 1), 2) for i in range(num_finite_primes))
    return FieldExtensionSpec("kummer-quadratic", 2, q, places, (2, 1))


def carlitz_cyclotomic_extension(q: int, d: int) -> FieldExtensionSpec:
    """The cyclotomic extension attached to an irreducible polynomial of
    degree d: cyclic of order q^d - 1, totally ramified at (f), with
    e = q - 1 at infinity."""
    n = q**d - 1
    return FieldExtensionSpec(
        "carlitz-cyclotomic", n, q, (RamifiedPlace("f", n),), (q - 1, 1)
    )


def abstract_cyclic_extension(
    q: int,
    degree: int,
    ramified: Sequence[tuple[str, int]] = (),
    infinity: tuple[int, int] = (1, 1),
) -> FieldExtensionSpec:
    places = tuple(RamifiedPlace(label, e) for label, e in ramified)
    return FieldExtensionSpec("abstract-cyclic", degree, q, places, infinity)


def _shift_matrix(m: int) -> IntMatrix:
    return IntMatrix.from_columns(
        [[1 if r == (i + 1) % m else 0 for r in range(m)] for i in range(m)], rows=m
    )


def weil_restriction_center_dual(n: int, ext: FieldExtensionSpec) -> GaloisModule:
    """Character group of ker[R_{L/K}(mu_n) -> mu_n]: the group algebra of
    the cyclic Galois group with Z/n coefficients, modulo the all-ones
    norm character, carrying the coordinate-shift action.  Order is
    n^(degree - 1)."""
    if n < 2:
        raise InputError("n must be >= 2")
    if math.gcd(n, ext.base_q) != 1:
        raise InputError("wild kernel rejected: gcd(n, q) must be 1")
    m = ext.degree
    relations = IntMatrix.hstack(
        IntMatrix.diagonal([n] * m), IntMatrix.from_columns([[1] * m], rows=m)
    )
    module = GaloisModule(m, relations, (GroupGenerator("sigma", m, _shift_matrix(m)),))
    validate_module(module)
    return module


@dataclass(frozen=True)
class CyclicLatticeAction:
    """A free lattice with a finite-order integer action; feeds
    h1_lattice_cyclic."""

    matrix: IntMatrix
    order: int


def norm_one_character_lattice(ext: FieldExtensionSpec) -> CyclicLatticeAction:
    """Character lattice of the norm-one torus of L/K: the group algebra
    of the cyclic Galois group modulo the norm element, a free lattice of
    rank degree - 1 with the induced shift action."""
    m = ext.degree
    if m < 2:
        raise InputError("norm-one torus needs degree >= 2")
    cols = []
    for i in range(m - 2):
        cols.append([1 if r == i + 1 else 0 for r in range(m - 1)])
    cols.append([-1] * (m - 1))
    return CyclicLatticeAction(IntMatrix.from_columns(cols, rows=m - 1), m)
