import itertools
import math
import random
from fractions import Fraction

import pytest

from tamagawa.errors import InputError
from tamagawa.intlat import (
    FinAbGroup,
    IntMatrix,
    cokernel_structure,
    in_column_span,
    kernel_basis,
    lattice_basis,
    rank,
    snf,
    solve_columns,
    sublattice_index,
)

rng = random.Random(20260810)

CARTAN_A2 = IntMatrix.from_rows([[2, -1], [-1, 2]])


def random_matrix(max_dim=6, lo=-9, hi=9):
    r = rng.randint(0, max_dim)
    c = rng.randint(0, max_dim)
    return IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)], cols=c)


# ---- oracles -------------------------------------------------------------


def laplace_det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        total += (-1) ** j * rows[0][j] * laplace_det(minor)
    return total


def invariant_factors_from_minors(m):
    """Divisor-chain oracle: d_k = gcd(k-minors) / gcd((k-1)-minors)."""
    k = min(m.rows, m.cols)
    factors = []
    prev = 1
    for size in range(1, k + 1):
        g = 0
        for rsel in itertools.combinations(range(m.rows), size):
            for csel in itertools.combinations(range(m.cols), size):
                sub = [[m[i, j] for j in csel] for i in rsel]
                g = math.gcd(g, laplace_det(sub))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    factors += [0] * (k - len(factors))
    return factors


def rational_solve(basis_cols, target):
    """Solve sum x_j * basis_cols[j] = target over Q; None if unsolvable."""
    nrows = len(target)
    ncols = len(basis_cols)
    aug = [[Fraction(basis_cols[j][i]) for j in range(ncols)] + [Fraction(target[i])]
           for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        aug[r] = [x / aug[r][c] for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] for row in aug[r:]):
        return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][-1]
    return sol


def member_of_lattice(basis_cols, vec):
    sol = rational_solve(basis_cols, vec)
    return sol is not None and all(x.denominator == 1 for x in sol)


def brute_cokernel_order(m):
    """Count residues of Z^rows / colspan(m) by closure under unit steps."""
    cols = [list(m.column(j)) for j in range(m.cols)]
    reps = [tuple([0] * m.rows)]
    frontier = list(reps)
    while frontier:
        cur = frontier.pop()
        for i in range(m.rows):
            for step in (1, -1):
                cand = list(cur)
                cand[i] += step
                if not any(
                    member_of_lattice(cols, [a - b for a, b in zip(cand, rep)]) for rep in reps
                ):
                    reps.append(tuple(cand))
                    frontier.append(tuple(cand))
        if len(reps) > 200:
            raise AssertionError("quotient larger than expected")
    return len(reps)


# ---- snf -----------------------------------------------------------------


def test_snf_identity():
    m = IntMatrix.identity(2)
    u, d, v = snf(m)
    assert d == IntMatrix.identity(2)
    assert u @ m @ v == d


def test_snf_diag_2_3_gives_chain_1_6():
    m = IntMatrix.diagonal([2, 3])
    _, d, _ = snf(m)
    assert [d[0, 0], d[1, 1]] == [1, 6]
    assert invariant_factors_from_minors(m) == [1, 6]


def test_snf_cartan_a2():
    _, d, _ = snf(CARTAN_A2)
    assert [d[0, 0], d[1, 1]] == [1, 3]
    assert invariant_factors_from_minors(CARTAN_A2) == [1, 3]


def test_snf_zero_dimension_edges():
    for m in (IntMatrix.zero(0, 3), IntMatrix.zero(3, 0), IntMatrix.zero(0, 0)):
        u, d, v = snf(m)
        assert (d.rows, d.cols) == (m.rows, m.cols)
        assert u @ m @ v == d
        assert abs(u.det()) == 1 and abs(v.det()) == 1


def test_snf_properties_on_random_matrices():
    for _ in range(500):
        m = random_matrix()
        u, d, v = snf(m)
        assert u @ m @ v == d
        assert abs(u.det()) == 1
        assert abs(v.det()) == 1
        diag = [d[i, i] for i in range(min(d.rows, d.cols))]
        for i in range(d.rows):
            for j in range(d.cols):
                if i != j:
                    assert d[i, j] == 0
        assert all(x >= 0 for x in diag)
        nz = [x for x in diag if x]
        assert all(diag[i] == 0 for i in range(len(nz), len(diag)))
        assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
        assert diag == invariant_factors_from_minors(m)


# ---- cokernel_structure ---------------------------------------------------


def cartan_a(n):
    return IntMatrix.from_rows(
        [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
    )


def test_cokernel_cartan_a_series():
    for n in range(2, 7):
        g = cokernel_structure(cartan_a(n - 1))
        assert g == FinAbGroup((n,))


def test_cokernel_cartan_d4():
    d4 = IntMatrix.from_rows(
        [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
    )
    assert cokernel_structure(d4) == FinAbGroup((2, 2))


def test_cokernel_zero_map():
    g = cokernel_structure(IntMatrix.zero(1, 1))
    assert g == FinAbGroup((), free_rank=1)
    assert not g.is_finite


def test_cokernel_of_empty_matrix_is_free():
    assert cokernel_structure(IntMatrix.zero(3, 0)) == FinAbGroup((), free_rank=3)


def test_cokernel_order_matches_residue_enumeration():
    cases = [
        IntMatrix.from_rows([[2, 0], [0, 3]]),
        IntMatrix.from_rows([[1, 1], [1, -1]]),
        IntMatrix.from_rows([[4, 1], [0, 5]]),
        CARTAN_A2,
        IntMatrix.from_rows([[2, 1, 0], [0, 2, 1], [0, 0, 2]]),
    ]
    for _ in range(10):
        while True:
            m = IntMatrix.from_rows(
                [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
            )
            if 0 < abs(m.det()) <= 50:
                cases.append(m)
                break
    for m in cases:
        assert cokernel_structure(m).order == brute_cokernel_order(m)


# ---- kernel_basis ----------------------------------------------------------


def test_kernel_of_row_vector():
    k = kernel_basis(IntMatrix.from_rows([[1, 1]]))
    assert k.cols == 1
    assert tuple(k.column(0)) in {(1, -1), (-1, 1)}


def test_kernel_of_invertible_matrix_is_empty():
    k = kernel_basis(IntMatrix.from_rows([[2, 1], [1, 1]]))
    assert k.cols == 0


def test_kernel_rank_one_case():
    m = IntMatrix.from_rows([[2, -2], [-1, 1]])
    k = kernel_basis(m)
    assert k.cols == 1
    assert (m @ k).is_zero()
    # oracle: every small kernel vector is an integer multiple of the basis
    for a in range(-3, 4):
        for b in range(-3, 4):
            if m.apply((a, b)) == (0, 0):
                assert member_of_lattice([list(k.column(0))], [a, b])


def test_kernel_of_zero_by_n_map_is_everything():
    k = kernel_basis(IntMatrix.zero(0, 3))
    assert k.cols == 3
    assert abs(k.det()) == 1


def test_kernel_is_annihilated_and_saturated():
    for _ in range(100):
        m = random_matrix(max_dim=5, lo=-5, hi=5)
        k = kernel_basis(m)
        assert k.cols == m.cols - rank(m)
        if k.cols:
            assert (m @ k).is_zero()
            # saturated: the quotient of the kernel inside its rational
            # span is torsion-free, i.e. the SNF diagonal is all ones
            _, d, _ = snf(k)
            assert all(d[i, i] == 1 for i in range(min(d.rows, d.cols)))


# ---- sublattice_index -------------------------------------------------------


def test_index_of_doubled_lattice():
    assert sublattice_index(IntMatrix.identity(2), IntMatrix.diagonal([2, 2])) == 4


def test_index_of_same_lattice_in_another_basis():
    unimod = IntMatrix.from_rows([[1, 1], [0, 1]])
    assert sublattice_index(IntMatrix.identity(2), unimod) == 1


def test_index_checkerboard():
    small = IntMatrix.from_rows([[1, 1], [1, -1]])
    assert sublattice_index(IntMatrix.identity(2), small) == 2


def test_index_rejects_non_sublattice():
    with pytest.raises(InputError):
        sublattice_index(IntMatrix.diagonal([2, 2]), IntMatrix.identity(2))


def test_index_rejects_rank_deficiency():
    with pytest.raises(InputError):
        sublattice_index(IntMatrix.from_rows([[1, 1], [1, 1]]), IntMatrix.diagonal([2, 2]))


def test_index_multiplicative_on_nested_triples():
    for _ in range(25):
        n = rng.randint(1, 3)
        while True:
            a = IntMatrix.from_rows([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
            if a.det() != 0:
                break
        t1 = IntMatrix.diagonal([rng.randint(1, 3) for _ in range(n)])
        t2 = IntMatrix.from_rows(
            [
                [rng.randint(1, 3) if i == j else rng.randint(-2, 2) * (i < j) for j in range(n)]
                for i in range(n)
            ]
        )
        b = a @ t1
        c = b @ t2
        assert sublattice_index(a, c) == sublattice_index(a, b) * sublattice_index(b, c)


# ---- helpers used by the rest of the package --------------------------------


def test_lattice_basis_spans_the_same_lattice():
    for _ in range(50):
        m = random_matrix(max_dim=4, lo=-4, hi=4)
        basis = lattice_basis(m)
        assert basis.rows == m.rows
        assert basis.cols == rank(m)
        for j in range(m.cols):
            assert in_column_span(basis, m.column(j))
        for j in range(basis.cols):
            assert in_column_span(m, basis.column(j))


def test_solve_columns_roundtrip():
    for _ in range(50):
        b = random_matrix(max_dim=4, lo=-4, hi=4)
        x = IntMatrix.from_rows(
            [[rng.randint(-3, 3) for _ in range(2)] for _ in range(b.cols)], cols=2
        )
        t = b @ x
        sol = solve_columns(b, t)
        assert sol is not None
        assert b @ sol == t


def test_solve_columns_detects_unsolvable():
    b = IntMatrix.diagonal([2, 2])
    t = IntMatrix.from_columns([[1, 0]], rows=2)
    assert solve_columns(b, t) is None


def test_finabgroup_validation():
    with pytest.raises(InputError):
        FinAbGroup((3, 2))
    with pytest.raises(InputError):
        FinAbGroup((1, 2))
    assert FinAbGroup((2, 4)).order == 8
    assert str(FinAbGroup((2, 4), free_rank=1)) == "Z x Z/2 x Z/4"
    assert str(FinAbGroup()) == "0"
