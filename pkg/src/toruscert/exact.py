"""Exact integer linear algebra: matrices, polynomials, Smith normal form.

Everything here is arbitrary-precision and immutable; all operations are
pure functions, safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class NonSquareError(ValueError):
    """Raised when an operation needs a square matrix and got none."""


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, stored as a tuple of row tuples."""

    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix must have at least one row and column")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry shape does not match rows x cols")

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        return cls(len(data), len(data[0]) if data else 0, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, rows: int, cols: int, diag) -> "IntMatrix":
        m = [[0] * cols for _ in range(rows)]
        for k, d in enumerate(diag):
            m[k][k] = int(d)
        return cls.from_rows(m)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in r) for r in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(list(zip(*self.entries)))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._shape_check(other)
        return IntMatrix.from_rows(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._shape_check(other)
        return IntMatrix.from_rows(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix.from_rows([[-a for a in r] for r in self.entries])

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix.from_rows([[c * a for a in r] for r in self.entries])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        bt = list(zip(*other.entries))
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.entries]
        )

    def apply(self, vec) -> tuple:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * x for a, x in zip(row, vec)) for row in self.entries)

    def trace(self) -> int:
        if not self.is_square():
            raise NonSquareError("trace needs a square matrix")
        return sum(self.entries[i][i] for i in range(self.rows))

    def max_abs(self) -> int:
        return max(abs(x) for r in self.entries for x in r)

    def _shape_check(self, other: "IntMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def det(self) -> int:
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise NonSquareError("determinant needs a square matrix")
        n = self.rows
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if pivot is None:
                    return 0
                m[k], m[pivot] = m[pivot], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def inverse_unimodular(self) -> "IntMatrix":
        """Inverse of a matrix with determinant +-1 (exact, integer)."""
        d = self.det()
        if d not in (1, -1):
            raise ValueError("matrix is not unimodular")
        n = self.rows
        aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
               for i, row in enumerate(self.entries)]
        for k in range(n):
            pivot = next(i for i in range(k, n) if aug[i][k] != 0)
            aug[k], aug[pivot] = aug[pivot], aug[k]
            pk = aug[k][k]
            aug[k] = [x / pk for x in aug[k]]
            for i in range(n):
                if i != k and aug[i][k] != 0:
                    f = aug[i][k]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
        inv = [row[n:] for row in aug]
        if any(x.denominator != 1 for row in inv for x in row):
            raise ValueError("inverse is not integral")  # unreachable for det +-1
        return IntMatrix.from_rows([[int(x) for x in row] for row in inv])

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(x) for x in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "IntMatrix":
        entries = [[int(x) for x in row] for row in obj["entries"]]
        m = cls.from_rows(entries)
        if m.rows != int(obj["rows"]) or m.cols != int(obj["cols"]):
            raise ValueError("declared shape does not match entries")
        return m

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients constant-term first."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        if not c:
            c = (0,)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_coeffs(cls, coeffs) -> "IntPolynomial":
        return cls(tuple(int(x) for x in coeffs))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        if self.is_zero():
            return -1
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def is_monic(self) -> bool:
        return not self.is_zero() and self.coeffs[-1] == 1

    def leading(self) -> int:
        return self.coeffs[-1]

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-x for x in self.coeffs))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial((0,))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def scale(self, c: int) -> "IntPolynomial":
        return IntPolynomial(tuple(c * x for x in self.coeffs))

    def derivative(self) -> "IntPolynomial":
        if len(self.coeffs) == 1:
            return IntPolynomial((0,))
        return IntPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k >= 1))

    def __call__(self, x):
        """Horner evaluation; works for int, Fraction, mpmath and matrices via *,+."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return acc

    def eval_matrix(self, a: IntMatrix) -> IntMatrix:
        """Exact evaluation at a square integer matrix."""
        if not a.is_square():
            raise NonSquareError("polynomial evaluation needs a square matrix")
        n = a.rows
        acc = IntMatrix.zeros(n, n)
        for c in reversed(self.coeffs):
            acc = acc @ a + IntMatrix.identity(n).scale(c)
        return acc

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c))
        return g

    def primitive(self) -> "IntPolynomial":
        """Divide by the content; sign of the leading coefficient is kept."""
        g = self.content()
        if g <= 1:
            return self
        return IntPolynomial(tuple(c // g for c in self.coeffs))

    def max_abs_coeff(self) -> int:
        return max(abs(c) for c in self.coeffs)

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "IntPolynomial":
        return cls(tuple(int(c) for c in obj["coeffs"]))

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                body = f"{mag}x" if k == 1 else f"{mag}x^{k}"
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms)


def poly_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Primitive gcd of integer polynomials, positive leading coefficient."""
    a = [Fraction(c) for c in p.primitive().coeffs]
    b = [Fraction(c) for c in q.primitive().coeffs]

    def trim(v):
        while len(v) > 1 and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(a), trim(b)
    if b == [Fraction(0)]:
        a, b = b, a
    while b != [Fraction(0)]:
        r = _frac_rem(a, b)
        a, b = b, trim(r)
    return _fractions_to_primitive(a)


def _frac_rem(a, b):
    """Remainder of Fraction-coefficient polynomial division a mod b."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r != [Fraction(0)]:
        if r[-1] == 0:
            r.pop()
            continue
        f = r[-1] / lb
        shift = len(r) - 1 - db
        for i in range(db + 1):
            r[shift + i] -= f * b[i]
        r.pop()
        if not r:
            r = [Fraction(0)]
    return r


def _fractions_to_primitive(v) -> IntPolynomial:
    from math import gcd, lcm

    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    p = IntPolynomial(tuple(ints))
    if not p.is_zero() and p.leading() < 0:
        p = -p
    return p


def poly_div_exact(p: IntPolynomial, d: IntPolynomial) -> IntPolynomial:
    """Quotient p/d when d divides p over the rationals, returned primitive."""
    a = [Fraction(c) for c in p.coeffs]
    b = [Fraction(c) for c in d.coeffs]
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        f = r[shift + db] / lb
        q[shift] = f
        for i in range(db + 1):
            r[shift + i] -= f * b[i]
    if any(x != 0 for x in r):
        raise ValueError("division is not exact")
    return _fractions_to_primitive(q)


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """p with repeated roots removed (primitive, positive leading coefficient)."""
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree part")
    if p.degree == 0:
        return IntPolynomial((1,))
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        out = p.primitive()
    else:
        out = poly_div_exact(p, g)
    if out.leading() < 0:
        out = -out
    return out


def sylvester_matrix(p: IntPolynomial, q: IntPolynomial) -> IntMatrix:
    m, n = p.degree, q.degree
    if m < 0 or n < 0:
        raise ValueError("resultant of the zero polynomial is undefined")
    size = m + n
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([0] * i + pc + [0] * (size - i - len(pc)))
    for i in range(m):
        rows.append([0] * i + qc + [0] * (size - i - len(qc)))
    return IntMatrix.from_rows(rows)


def resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    return sylvester_matrix(p, q).det()


def discriminant(p: IntPolynomial) -> int:
    """Discriminant of p; exact, via the resultant with the derivative."""
    n = p.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    res = resultant(p, p.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    num = sign * res
    lead = p.leading()
    if num % lead != 0:
        raise ArithmeticError("resultant not divisible by leading coefficient")
    return num // lead


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFDecomposition:
    """U @ A @ V = D with U, V unimodular and D diagonal (divisibility chain)."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    diag: tuple

    def nonzero_count(self) -> int:
        return sum(1 for d in self.diag if d != 0)

    def to_json(self) -> dict:
        return {
            "U": self.U.to_json(),
            "D": self.D.to_json(),
            "V": self.V.to_json(),
            "diag": [str(d) for d in self.diag],
        }


def _sym_div(a: int, b: int) -> int:
    # quotient with remainder in (-|b|/2, |b|/2]; b > 0 here
    q, r = divmod(a, b)
    if 2 * r > b:
        q += 1
    return q


def snf(a: IntMatrix) -> SNFDecomposition:
    """Smith normal form with unimodular transforms.

    Pivots are chosen with minimal absolute value to keep intermediate
    entries small; diagonal entries come out nonnegative with each one
    dividing the next, zeros trailing.
    """
    m, n = a.rows, a.cols
    mat = [list(r) for r in a.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        mat[i], mat[j] = mat[j], mat[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in mat:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_sub(i, j, q):
        # row_i -= q * row_j
        mat[i] = [x - q * y for x, y in zip(mat[i], mat[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_sub(i, j, q):
        # col_i -= q * col_j
        for row in mat:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def negate_col(j):
        for row in mat:
            row[j] = -row[j]
        for row in v:
            row[j] = -row[j]

    def min_abs_pos(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = mat[i][j]
                if x != 0 and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        return None if best is None else (best[1], best[2])

    t = 0
    while t < min(m, n):
        pos = min_abs_pos(t)
        if pos is None:
            break
        i0, j0 = pos
        if i0 != t:
            swap_rows(t, i0)
        if j0 != t:
            swap_cols(t, j0)
        if mat[t][t] < 0:
            negate_col(t)
        while True:
            # clear column t, keeping the pivot minimal
            dirty = False
            for i in range(t + 1, m):
                if mat[i][t] != 0:
                    q = _sym_div(mat[i][t], mat[t][t])
                    if q:
                        row_sub(i, t, q)
                    if mat[i][t] != 0:
                        swap_rows(t, i)
                        if mat[t][t] < 0:
                            negate_col(t)
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, n):
                if mat[t][j] != 0:
                    q = _sym_div(mat[t][j], mat[t][t])
                    if q:
                        col_sub(j, t, q)
                    if mat[t][j] != 0:
                        swap_cols(t, j)
                        if mat[t][t] < 0:
                            negate_col(t)
                        dirty = True
            if dirty:
                continue
            # divisibility sweep over the remaining block
            offender = None
            p = mat[t][t]
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if mat[i][j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            # fold the offending row into the pivot row and re-clear
            mat[t] = [x + y for x, y in zip(mat[t], mat[offender])]
            u[t] = [x + y for x, y in zip(u[t], u[offender])]
        t += 1

    diag = tuple(mat[k][k] for k in range(min(m, n)))
    dec = SNFDecomposition(
        U=IntMatrix.from_rows(u),
        D=IntMatrix.from_rows(mat),
        V=IntMatrix.from_rows(v),
        diag=diag,
    )
    _check_snf(a, dec)
    return dec


def _check_snf(a: IntMatrix, dec: SNFDecomposition):
    if dec.U @ a @ dec.V != dec.D:
        raise AssertionError("U*A*V != D")
    for k in range(len(dec.diag) - 1):
        d0, d1 = dec.diag[k], dec.diag[k + 1]
        if d0 == 0 and d1 != 0:
            raise AssertionError("zero diag entry before a nonzero one")
        if d0 != 0 and d1 % d0 != 0:
            raise AssertionError("divisibility chain violated")
    if any(d < 0 for d in dec.diag):
        raise AssertionError("negative diagonal entry")


def rank(a: IntMatrix) -> int:
    """Rank over the integers (= number of nonzero invariant factors)."""
    return snf(a).nonzero_count()


def charpoly(a: IntMatrix) -> IntPolynomial:
    """Characteristic polynomial det(xI - A), exact and fraction free.

    Uses the classical trace recurrence (Faddeev-LeVerrier); every integer
    division along the way is exact, which is asserted.
    """
    if not a.is_square():
        raise NonSquareError("characteristic polynomial needs a square matrix")
    n = a.rows
    ident = IntMatrix.identity(n)
    coeff_desc = [1]  # x^n, then x^{n-1}, ...
    nmat = ident
    for k in range(1, n + 1):
        an = a @ nmat
        tr = an.trace()
        if tr % k != 0:
            raise ArithmeticError("trace recurrence produced a non-integer")
        ck = -(tr // k)
        coeff_desc.append(ck)
        nmat = an + ident.scale(ck)
    if not nmat.is_zero():
        raise ArithmeticError("trace recurrence did not terminate at zero")
    return IntPolynomial(tuple(reversed(coeff_desc)))


def companion(p: IntPolynomial) -> IntMatrix:
    """Companion matrix of a monic polynomial; charpoly(companion(p)) == p."""
    if not p.is_monic():
        raise ValueError("companion matrix needs a monic polynomial")
    n = p.degree
    if n < 1:
        raise ValueError("companion matrix needs degree >= 1")
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -p.coeffs[i]
    return IntMatrix.from_rows(rows)


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FgAbelianGroup:
    """Z^freeRank plus cyclic torsion with a divisibility chain of invariants."""

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        tor = tuple(int(t) for t in self.torsion)
        for t in tor:
            if t < 2:
                raise ValueError("torsion invariants must be >= 2")
        for a, b in zip(tor, tor[1:]):
            if b % a != 0:
                raise ValueError("torsion invariants must form a divisibility chain")
        object.__setattr__(self, "torsion", tor)

    @property
    def generator_count(self) -> int:
        return self.free_rank + len(self.torsion)

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": [str(t) for t in self.torsion]}

    @classmethod
    def from_json(cls, obj: dict) -> "FgAbelianGroup":
        return cls(int(obj["free_rank"]), tuple(int(t) for t in obj.get("torsion", ())))

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}" if self.free_rank > 1 else "Z")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"
