import math
import random
from itertools import combinations

import pytest

from toruscert.exact import (
    FgAbelianGroup,
    IntMatrix,
    IntPolynomial,
    NonSquareError,
    charpoly,
    companion,
    discriminant,
    poly_div_exact,
    poly_gcd,
    rank,
    resultant,
    snf,
    squarefree_part,
)


# --- independent oracles -----------------------------------------------------


def laplace_det(rows):
    """Cofactor-expansion determinant; independent of the library's Bareiss path."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        total += (-1) ** j * rows[0][j] * laplace_det(minor)
    return total


def determinantal_divisors(m: IntMatrix):
    """d_k = gcd of all k x k minors; the invariant factors are d_k / d_{k-1}."""
    divisors = []
    for k in range(1, min(m.rows, m.cols) + 1):
        g = 0
        for rs in combinations(range(m.rows), k):
            for cs in combinations(range(m.cols), k):
                sub = [[m[i, j] for j in cs] for i in rs]
                g = math.gcd(g, abs(laplace_det(sub)))
        divisors.append(g)
    factors = []
    prev = 1
    for d in divisors:
        if d == 0:
            factors.append(0)
        else:
            factors.append(d // prev)
            prev = d
    return tuple(factors)


def random_matrix(rng, rows, cols, bound=50):
    return IntMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]
    )


# --- Smith normal form -------------------------------------------------------


def test_snf_identity():
    dec = snf(IntMatrix.identity(3))
    assert dec.diag == (1, 1, 1)
    assert dec.U == IntMatrix.identity(3)
    assert dec.V == IntMatrix.identity(3)


def test_snf_worked_example():
    a = IntMatrix.from_rows([[4, 6], [2, 2]])
    dec = snf(a)
    assert dec.diag == (2, 2)
    # oracle: first divisor is the gcd of entries, product is |det|
    assert math.gcd(4, math.gcd(6, 2)) == 2
    assert abs(laplace_det([[4, 6], [2, 2]])) == dec.diag[0] * dec.diag[1]
    assert determinantal_divisors(a) == (2, 2)


def test_snf_already_diagonal():
    dec = snf(IntMatrix.from_rows([[2, 0], [0, 6]]))
    assert dec.diag == (2, 6)


def test_snf_zero_matrix():
    dec = snf(IntMatrix.zeros(2, 3))
    assert dec.diag == (0, 0)
    assert dec.U @ IntMatrix.zeros(2, 3) @ dec.V == dec.D


@pytest.mark.parametrize("shape", [(2, 2), (3, 5), (5, 3), (4, 4), (6, 6), (1, 4)])
def test_snf_random_shapes(shape):
    rng = random.Random(hash(shape) & 0xFFFF)
    for _ in range(25):
        a = random_matrix(rng, *shape)
        dec = snf(a)
        assert dec.U @ a @ dec.V == dec.D
        assert abs(dec.U.det()) == 1
        assert abs(dec.V.det()) == 1
        assert dec.diag == determinantal_divisors(a)


def test_rank_examples():
    assert rank(IntMatrix.zeros(2, 2)) == 0
    assert rank(IntMatrix.identity(4)) == 4
    assert rank(IntMatrix.from_rows([[2, 0], [0, 6]])) == 2


def test_rank_transpose_invariant():
    rng = random.Random(7)
    for _ in range(30):
        a = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), bound=9)
        assert rank(a) == rank(a.transpose())


# --- characteristic polynomials ----------------------------------------------


def test_charpoly_identity():
    p = charpoly(IntMatrix.identity(2))
    assert p == IntPolynomial((1, -2, 1))  # (x-1)^2


def test_charpoly_companion_roundtrip():
    rng = random.Random(11)
    for deg in range(1, 17):
        coeffs = [rng.randint(-9, 9) for _ in range(deg)] + [1]
        p = IntPolynomial(tuple(coeffs))
        assert charpoly(companion(p)) == p


def test_charpoly_constant_term_matches_determinant():
    rng = random.Random(13)
    for _ in range(10):
        a = random_matrix(rng, 5, 5, bound=9)
        p = charpoly(a)
        det_oracle = laplace_det([list(r) for r in a.entries])
        # p(0) = det(-A) = (-1)^5 det(A)
        assert p.coeffs[0] == -det_oracle
        assert a.det() == det_oracle


def test_cayley_hamilton():
    rng = random.Random(17)
    for dim in range(1, 9):
        a = random_matrix(rng, dim, dim, bound=7)
        p = charpoly(a)
        assert p.eval_matrix(a).is_zero()


def test_charpoly_requires_square():
    with pytest.raises(NonSquareError):
        charpoly(IntMatrix.zeros(2, 3))


def test_companion_examples():
    assert companion(IntPolynomial((1, 0, 1))) == IntMatrix.from_rows([[0, -1], [1, 0]])
    c = companion(IntPolynomial((1, 1, 0, 0, 1)))
    assert c.col(3) == (-1, -1, 0, 0)
    assert companion(IntPolynomial((-3, 1))) == IntMatrix.from_rows([[3]])
    with pytest.raises(ValueError):
        companion(IntPolynomial((1, 2)))


# --- polynomial utilities ----------------------------------------------------


def test_poly_str_and_json():
    p = IntPolynomial((1, 1, 0, 0, 1))
    assert str(p) == "x^4 + x + 1"
    assert IntPolynomial.from_json(p.to_json()) == p


def test_poly_gcd_and_squarefree():
    x_minus_1 = IntPolynomial((-1, 1))
    x_plus_2 = IntPolynomial((2, 1))
    p = x_minus_1 * x_minus_1 * x_plus_2
    g = poly_gcd(p, p.derivative())
    assert g == x_minus_1
    assert squarefree_part(p) == x_minus_1 * x_plus_2
    assert poly_div_exact(p, x_minus_1) == x_minus_1 * x_plus_2


def test_discriminant_values():
    # classical formulas: disc(x^2+bx+c) = b^2-4c, disc(x^4+px+q) = -27 p^4 + 256 q^3
    assert discriminant(IntPolynomial((3, 2, 1))) == 4 - 12
    assert discriminant(IntPolynomial((1, 1, 0, 0, 1))) == 229
    # res(x-1, x-2) = q(1) = -1
    assert resultant(IntPolynomial((-1, 1)), IntPolynomial((-2, 1))) == -1


def test_matrix_json_roundtrip_and_bignum():
    big = 10**40
    a = IntMatrix.from_rows([[big, -1], [0, 2]])
    assert IntMatrix.from_json(a.to_json()) == a
    assert a.to_json()["entries"][0][0] == str(big)


def test_inverse_unimodular():
    rng = random.Random(23)
    for _ in range(20):
        a = random_matrix(rng, 4, 4, bound=6)
        dec = snf(a)
        for u in (dec.U, dec.V):
            assert u @ u.inverse_unimodular() == IntMatrix.identity(u.rows)


# --- abelian groups ----------------------------------------------------------


def test_fg_abelian_group_validation():
    g = FgAbelianGroup(2, (2, 4))
    assert g.generator_count == 4
    assert str(g) == "Z^2 + Z/2 + Z/4"
    with pytest.raises(ValueError):
        FgAbelianGroup(1, (3, 4))  # 3 does not divide 4
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (1,))
