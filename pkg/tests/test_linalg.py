import random
from fractions import Fraction

import pytest

from coendcalc import GF, QQ, Matrix, ShapeError, kernel_basis, kron, quotient_split, rref
from coendcalc.linalg import (
    VectorSpan,
    inverse,
    left_inverse,
    rank,
    solve,
    unvec_matrix,
    vec_matrix,
)


def random_matrix(field, rows, cols, rng):
    if field is QQ:
        return Matrix(
            field, rows, cols,
            [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(rows * cols)],
        )
    return Matrix(field, rows, cols, [rng.randint(0, 4) for _ in range(rows * cols)])


def test_rref_identity():
    ident = Matrix.identity(QQ, 2)
    reduced, pivots, rk = rref(ident)
    assert reduced == ident and pivots == (0, 1) and rk == 2


def test_rref_proportional_rows():
    m = Matrix.from_rows(QQ, [[1, 2], [2, 4]])
    reduced, pivots, rk = rref(m)
    assert reduced == Matrix.from_rows(QQ, [[1, 2], [0, 0]])
    assert pivots == (0,) and rk == 1


def test_rref_zero():
    z = Matrix.zeros(QQ, 2, 3)
    reduced, pivots, rk = rref(z)
    assert reduced == z and pivots == () and rk == 0


@pytest.mark.parametrize("field", [QQ, GF(5)])
def test_rref_idempotent(field):
    rng = random.Random(7)
    for _ in range(25):
        m = random_matrix(field, rng.randint(0, 5), rng.randint(0, 5), rng)
        reduced = rref(m)[0]
        assert rref(reduced)[0] == reduced


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(QQ, 3)) == []
    (v,) = kernel_basis(Matrix.from_rows(QQ, [[1, 1]]))
    assert v[0] == -v[1] and v[1] != 0
    (w,) = kernel_basis(Matrix.from_rows(QQ, [[1, 2], [2, 4]]))
    assert w[0] * Fraction(-1) == w[1] * 2  # proportional to (2, -1)


@pytest.mark.parametrize("field", [QQ, GF(5)])
def test_kernel_property(field):
    rng = random.Random(11)
    for _ in range(25):
        m = random_matrix(field, rng.randint(1, 5), rng.randint(1, 5), rng)
        basis = kernel_basis(m)
        assert len(basis) == m.cols - rank(m)
        for v in basis:
            assert all(x == field.zero for x in m.apply(v))


def test_kron_examples():
    b = Matrix.from_rows(QQ, [[1, 2], [3, 4]])
    assert kron(Matrix.from_rows(QQ, [[2]]), b) == b.scale(2)
    assert kron(Matrix.identity(QQ, 2), Matrix.identity(QQ, 2)) == Matrix.identity(QQ, 4)
    c = kron(b, b)
    assert (c.rows, c.cols) == (4, 4)
    # block-row-major convention
    assert c[0, 0] == 1 and c[0, 2] == 2 and c[2, 0] == 3


@pytest.mark.parametrize("field", [QQ, GF(5)])
def test_kron_mixed_product(field):
    rng = random.Random(13)
    for _ in range(15):
        a = random_matrix(field, 2, 3, rng)
        c = random_matrix(field, 3, 2, rng)
        b = random_matrix(field, 2, 2, rng)
        d = random_matrix(field, 2, 3, rng)
        assert kron(a, b) * kron(c, d) == kron(a * c, b * d)


def test_vec_convention():
    m = Matrix.from_rows(QQ, [[1, 2], [3, 4]])
    # vec[i*rows + j] = m[j, i]: columns stacked
    assert vec_matrix(m) == (1, 3, 2, 4)
    assert unvec_matrix(QQ, vec_matrix(m), 2, 2) == m


@pytest.mark.parametrize("field", [QQ, GF(5)])
def test_vec_of_product_identity(field):
    rng = random.Random(17)
    for _ in range(15):
        a = random_matrix(field, 2, 3, rng)
        t = random_matrix(field, 3, 2, rng)
        b = random_matrix(field, 2, 3, rng)
        lhs = vec_matrix(a * t * b)
        rhs = kron(b.transpose(), a).apply(vec_matrix(t))
        assert lhs == rhs


def test_quotient_split_line():
    split = quotient_split(QQ, 2, [(1, 1)])
    assert split.quotient_dim == 1
    assert split.projection.apply((1, 1)) == (Fraction(0),)
    assert split.projection * split.section == Matrix.identity(QQ, 1)


def test_quotient_split_trivial_cases():
    empty = quotient_split(QQ, 3, [])
    assert empty.quotient_dim == 3
    assert empty.projection == Matrix.identity(QQ, 3)
    full = quotient_split(QQ, 2, [(1, 0), (0, 1)])
    assert full.quotient_dim == 0


@pytest.mark.parametrize("field", [QQ, GF(5)])
def test_quotient_split_invariants(field):
    rng = random.Random(19)
    for _ in range(20):
        n = rng.randint(0, 6)
        vecs = [tuple(random_matrix(field, 1, n, rng).row(0)) for _ in range(rng.randint(0, 4))]
        split = quotient_split(field, n, vecs)
        assert split.quotient_dim == n - rank(Matrix(field, len(vecs), n, [x for v in vecs for x in v]))
        for v in vecs:
            assert all(x == field.zero for x in split.projection.apply(v))
        assert split.projection * split.section == Matrix.identity(field, split.quotient_dim)


def test_solve_and_inverse():
    m = Matrix.from_rows(QQ, [[2, 1], [1, 1]])
    x = solve(m, (3, 2))
    assert m.apply(x) == (Fraction(3), Fraction(2))
    assert inverse(m) * m == Matrix.identity(QQ, 2)
    assert solve(Matrix.from_rows(QQ, [[1, 1], [1, 1]]), (0, 1)) is None
    with pytest.raises(ShapeError):
        inverse(Matrix.from_rows(QQ, [[1, 1], [1, 1]]))


def test_left_inverse():
    m = Matrix.from_rows(QQ, [[1, 0], [1, 1], [0, 1]])
    l = left_inverse(m)
    assert l * m == Matrix.identity(QQ, 2)
    assert left_inverse(Matrix.from_rows(QQ, [[1, 1], [2, 2]])) is None


def test_zero_dimensional_edges():
    z = Matrix(QQ, 0, 3, [])
    assert len(kernel_basis(z)) == 3
    assert rref(z)[2] == 0
    assert kron(z, Matrix.identity(QQ, 2)).rows == 0
    assert quotient_split(QQ, 0, []).quotient_dim == 0
    e = Matrix(QQ, 0, 0, [])
    assert e * e == e


def test_vector_span():
    span = VectorSpan(QQ, 3)
    assert span.add((1, 1, 0))
    assert not span.add((2, 2, 0))
    assert span.add((0, 1, 1))
    assert span.dim == 2
    assert span.contains((1, 0, -1))
    assert not span.contains((0, 0, 1))


def test_matrix_shape_errors():
    with pytest.raises(ShapeError):
        Matrix(QQ, 2, 2, [1, 2, 3])
    with pytest.raises(ShapeError):
        Matrix.from_rows(QQ, [[1, 2], [3]])
    with pytest.raises(ShapeError):
        Matrix.identity(QQ, 2) * Matrix.identity(QQ, 3)


def test_matrix_immutable():
    m = Matrix.identity(QQ, 2)
    with pytest.raises(AttributeError):
        m.rows = 3
