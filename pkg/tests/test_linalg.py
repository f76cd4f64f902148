import itertools
import random
from fractions import Fraction

import pytest

from bihomlie.fields import GF, QQ
from bihomlie.linalg import (Matrix, MatrixSubspace, SingularMatrixError,
                             VectorSubspace, char_poly, invert, is_invertible,
                             nullspace_basis, rank, rref)


def mat(rows, field=QQ):
    return Matrix(rows, field)


# --- rref ----------------------------------------------------------------

def test_rref_identity():
    m = Matrix.identity(2, QQ)
    r, pivots = rref(m)
    assert r == m
    assert pivots == [0, 1]


def test_rref_rank_one():
    r, pivots = rref(mat([[1, 2], [2, 4]]))
    assert r == mat([[1, 2], [0, 0]])
    assert pivots == [0]


def test_rref_f3():
    F3 = GF(3)
    r, pivots = rref(mat([[1, 1], [1, 2]], F3))
    assert r == Matrix.identity(2, F3)
    assert pivots == [0, 1]


def test_rref_idempotent_random():
    rng = random.Random(20240817)
    for _ in range(25):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        m = mat([[Fraction(rng.randrange(-4, 5)) for _ in range(cols)]
                 for _ in range(rows)])
        r1, p1 = rref(m)
        r2, p2 = rref(r1)
        assert r1 == r2
        assert p1 == p2


# --- nullspace -----------------------------------------------------------

def test_nullspace_zero_matrix():
    assert len(nullspace_basis(Matrix.zero(2, 3, QQ))) == 3


def test_nullspace_identity():
    assert nullspace_basis(Matrix.identity(3, QQ)) == []


def test_nullspace_line():
    basis = nullspace_basis(mat([[1, 1]]))
    assert len(basis) == 1
    v = basis[0]
    assert v[0] * 1 + v[1] * 1 == 0
    # up to scaling this is (1, -1)
    assert v[0] != 0 and v[1] == -v[0]


def test_rank_nullity_random():
    rng = random.Random(99)
    for _ in range(40):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        m = mat([[Fraction(rng.randrange(-3, 4)) for _ in range(cols)]
                 for _ in range(rows)])
        basis = nullspace_basis(m)
        assert rank(m) + len(basis) == cols
        for v in basis:
            assert all(x == 0 for x in m.apply(v))


def test_nullspace_counts_fp_exhaustive():
    # solution count by brute force must equal p^(nullity)
    rng = random.Random(4)
    for p in (2, 3):
        F = GF(p)
        for _ in range(6):
            rows = rng.randrange(1, 4)
            cols = rng.randrange(1, 4)
            m = mat([[F(rng.randrange(p)) for _ in range(cols)]
                     for _ in range(rows)], F)
            basis = nullspace_basis(m)
            count = 0
            for combo in itertools.product(range(p), repeat=cols):
                v = tuple(F(c) for c in combo)
                if all(x == F(0) for x in m.apply(v)):
                    count += 1
            assert count == p ** len(basis)


# --- inverse / rank -------------------------------------------------------

def test_invert_diagonal():
    m = mat([[2, 0], [0, 3]])
    assert invert(m) == mat([[Fraction(1, 2), 0], [0, Fraction(1, 3)]])


def test_rank_one_matrix():
    assert rank(mat([[1, 2], [2, 4]])) == 1


def test_invert_random():
    rng = random.Random(7)
    found = 0
    while found < 10:
        m = mat([[Fraction(rng.randrange(-4, 5)) for _ in range(3)]
                 for _ in range(3)])
        if not is_invertible(m):
            continue
        found += 1
        assert m * invert(m) == Matrix.identity(3, QQ)


def test_invert_singular_raises():
    with pytest.raises(SingularMatrixError):
        invert(mat([[1, 2], [2, 4]]))


# --- char poly ------------------------------------------------------------

def test_char_poly_diag():
    # (t-2)(t-3) = t^2 - 5t + 6
    assert char_poly(mat([[2, 0], [0, 3]])) == (1, -5, 6)


def test_char_poly_nilpotent():
    assert char_poly(mat([[0, 1], [0, 0]])) == (1, 0, 0)


def test_char_poly_companion():
    # companion matrix of t^3 - 2t - 5
    m = mat([[0, 0, 5], [1, 0, 2], [0, 1, 0]])
    assert char_poly(m) == (1, 0, -2, -5)


def test_char_poly_f3():
    F3 = GF(3)
    m = mat([[1, 1], [1, 2]], F3)
    # trace 0 mod 3, det 1 mod 3 -> t^2 + 0t + 1
    assert char_poly(m) == (F3(1), F3(0), F3(1))


# --- matrix algebra -------------------------------------------------------

def test_matrix_power():
    m = mat([[1, 1], [0, 1]])
    assert m ** 0 == Matrix.identity(2, QQ)
    assert m ** 3 == mat([[1, 3], [0, 1]])


def test_apply_uses_columns_as_images():
    m = mat([[0, 2], [1, 0]])
    # image of e1 is first column (0, 1)
    assert m.apply((1, 0)) == (0, 1)
    assert m.apply((0, 1)) == (2, 0)


def test_vectorize_row_major():
    m = mat([[1, 2], [3, 4]])
    assert m.vectorize() == (1, 2, 3, 4)


# --- subspaces ------------------------------------------------------------

def test_vector_subspace_membership():
    s = VectorSubspace(3, [(1, 1, 0), (0, 0, 2)], QQ)
    assert s.dim == 2
    assert s.contains((2, 2, 5))
    assert not s.contains((1, 0, 0))


def test_vector_subspace_canonical_equality():
    a = VectorSubspace(2, [(1, 1), (1, -1)], QQ)
    b = VectorSubspace(2, [(2, 0), (0, 3)], QQ)
    assert a == b
    assert a.dim == 2


def test_subspace_sum_and_intersection():
    x = VectorSubspace(3, [(1, 0, 0)], QQ)
    y = VectorSubspace(3, [(0, 1, 0)], QQ)
    assert x.sum(y).dim == 2
    assert x.intersection(y).dim == 0
    diag = VectorSubspace(3, [(1, 1, 0)], QQ)
    plane = VectorSubspace(3, [(1, 0, 0), (0, 1, 0)], QQ)
    meet = diag.intersection(plane)
    assert meet.dim == 1
    assert meet.contains((1, 1, 0))


def test_intersection_random_consistency():
    rng = random.Random(55)
    for _ in range(20):
        n = 4
        a = VectorSubspace(n, [tuple(Fraction(rng.randrange(-2, 3))
                                     for _ in range(n))
                               for _ in range(rng.randrange(0, 4))], QQ)
        b = VectorSubspace(n, [tuple(Fraction(rng.randrange(-2, 3))
                                     for _ in range(n))
                               for _ in range(rng.randrange(0, 4))], QQ)
        meet = a.intersection(b)
        join = a.sum(b)
        assert meet.dim + join.dim == a.dim + b.dim
        for v in meet.basis:
            assert a.contains(v) and b.contains(v)


def test_matrix_subspace():
    e11 = Matrix.unit(2, 0, 0, QQ)
    e22 = Matrix.unit(2, 1, 1, QQ)
    s = MatrixSubspace(2, [e11, e22], QQ)
    assert s.dim == 2
    assert s.contains(mat([[5, 0], [0, -1]]))
    assert not s.contains(mat([[0, 1], [0, 0]]))
    ident = MatrixSubspace(2, [Matrix.identity(2, QQ)], QQ)
    assert s.contains_subspace(ident)
    assert not ident.contains_subspace(s)
