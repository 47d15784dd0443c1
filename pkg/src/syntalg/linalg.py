"""Dense exact linear algebra and polynomial helpers over an exact field.

Vectors are tuples of scalars.  Subspaces are kept in reduced row echelon
form, which makes them canonical: two subspaces are equal iff their RREF
bases are equal.  Polynomials are coefficient tuples, lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import QQ


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged rows")

    @staticmethod
    def identity(field, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return Matrix(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(field, nrows: int, ncols: int) -> "Matrix":
        zero = field.zero
        return Matrix(field, [[zero] * ncols for _ in range(nrows)])

    @staticmethod
    def from_int_rows(field, rows) -> "Matrix":
        return Matrix(field, [[field.of(x) for x in r] for r in rows])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
        bt = tuple(zip(*other.rows)) if other.rows else ()
        zero = self.field.zero
        out = []
        for r in self.rows:
            out.append(tuple(sum((x * y for x, y in zip(r, c) if x), zero) for c in bt))
        return Matrix(self.field, out)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.field, [tuple(x + y for x, y in zip(r, s))
                                   for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.field, [tuple(x - y for x, y in zip(r, s))
                                   for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix(self.field, [tuple(-x for x in r) for r in self.rows])

    def scale(self, c) -> "Matrix":
        return Matrix(self.field, [tuple(c * x for x in r) for r in self.rows])

    def transpose(self) -> "Matrix":
        return Matrix(self.field, list(zip(*self.rows)) if self.rows else [])

    def trace(self):
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), self.field.zero)

    def flatten(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    def is_zero(self) -> bool:
        zero = self.field.zero
        return all(x == zero for r in self.rows for x in r)

    def __pow__(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        acc = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Matrix({self.rows})"


def trace_of_product(a: Matrix, b: Matrix):
    """Trace(a*b) without forming the product: sum a[i][j]*b[j][i]."""
    if a.ncols != b.nrows or a.nrows != b.ncols:
        raise ValueError("shape mismatch")
    total = a.field.zero
    for i, row in enumerate(a.rows):
        for j, x in enumerate(row):
            if x:
                total = total + x * b.rows[j][i]
    return total


def vec_mat(v, m: Matrix):
    """Row vector times matrix."""
    if len(v) != m.nrows:
        raise ValueError("shape mismatch")
    zero = m.field.zero
    cols = tuple(zip(*m.rows)) if m.rows else ()
    return tuple(sum((x * y for x, y in zip(v, c) if x), zero) for c in cols)


def mat_vec(m: Matrix, v):
    """Matrix times column vector."""
    if len(v) != m.ncols:
        raise ValueError("shape mismatch")
    zero = m.field.zero
    return tuple(sum((x * y for x, y in zip(r, v) if x), zero) for r in m.rows)


def dot(u, v, field=QQ):
    return sum((x * y for x, y in zip(u, v) if x), field.zero)


def _rref_rows(field, rows):
    """Reduced row echelon form of a list of row tuples.

    Returns (rows, pivot_columns) with zero rows dropped; canonical for the
    row space.
    """
    work = [list(r) for r in rows]
    nrows = len(work)
    ncols = len(work[0]) if work else 0
    zero = field.zero
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if work[i][c] != zero:
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = field.one / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][c] != zero:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(row) for row in work[:r]], pivots


def rref(m: Matrix):
    """(canonical RREF matrix including zero rows stripped, rank)."""
    rows, pivots = _rref_rows(m.field, m.rows)
    return Matrix(m.field, rows) if rows else Matrix(m.field, []), len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[1]


@dataclass(frozen=True)
class Subspace:
    """Subspace of K^ambient, canonical RREF basis (rows)."""

    field: object
    ambient: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        if len(v) != self.ambient:
            raise ValueError("wrong ambient dimension")
        return _reduce_against(self.field, list(v), self.basis) is None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def basis_matrix(self) -> Matrix:
        return Matrix(self.field, self.basis) if self.basis else Matrix(self.field, [])

    def coordinates(self, v):
        """Coordinates of v in the RREF basis, or None if v is outside."""
        zero = self.field.zero
        if not self.basis:
            return () if all(x == zero for x in v) else None
        pivots = [next(j for j, x in enumerate(r) if x != zero) for r in self.basis]
        coords = tuple(v[p] for p in pivots)
        rebuilt = [zero] * self.ambient
        for c, b in zip(coords, self.basis):
            rebuilt = [x + c * y for x, y in zip(rebuilt, b)]
        return coords if tuple(rebuilt) == tuple(v) else None


def _reduce_against(field, v, basis_rows):
    """Reduce v against RREF rows; None if it lands in the span, else residue."""
    zero = field.zero
    v = list(v)
    for b in basis_rows:
        p = next(j for j, x in enumerate(b) if x != zero)
        if v[p] != zero:
            f = v[p]
            v = [x - f * y for x, y in zip(v, b)]
    return None if all(x == zero for x in v) else v


def span(field, ambient: int, vectors) -> Subspace:
    vectors = [tuple(v) for v in vectors]
    for v in vectors:
        if len(v) != ambient:
            raise ValueError("wrong ambient dimension")
    rows, _ = _rref_rows(field, vectors) if vectors else ([], [])
    return Subspace(field, ambient, tuple(rows))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient != b.ambient:
        raise ValueError("ambient mismatch")
    return span(a.field, a.ambient, list(a.basis) + list(b.basis))


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the kernel of (x, y) -> x*Ba - y*Bb."""
    if a.ambient != b.ambient:
        raise ValueError("ambient mismatch")
    if not a.basis or not b.basis:
        return span(a.field, a.ambient, [])
    stacked = Matrix(a.field, list(a.basis) + list(b.basis)).transpose()
    ker = kernel(stacked)
    vectors = []
    ka = len(a.basis)
    for w in ker.basis:
        v = [a.field.zero] * a.ambient
        for c, row in zip(w[:ka], a.basis):
            v = [x + c * y for x, y in zip(v, row)]
        vectors.append(tuple(v))
    return span(a.field, a.ambient, vectors)


def kernel(m: Matrix) -> Subspace:
    """Right kernel {x : m x = 0} as a subspace of K^ncols."""
    field = m.field
    rows, pivots = _rref_rows(field, m.rows)
    n = m.ncols
    free = [c for c in range(n) if c not in pivots]
    basis = []
    zero, one = field.zero, field.one
    for f in free:
        v = [zero] * n
        v[f] = one
        for r, p in zip(rows, pivots):
            v[p] = -r[f]
        basis.append(tuple(v))
    return span(field, n, basis)


def left_kernel(m: Matrix) -> Subspace:
    return kernel(m.transpose())


def solve(m: Matrix, b):
    """One solution x of m x = b, or None if inconsistent."""
    field = m.field
    if len(b) != m.nrows:
        raise ValueError("shape mismatch")
    aug = [list(r) + [bv] for r, bv in zip(m.rows, b)]
    rows, pivots = _rref_rows(field, aug)
    n = m.ncols
    zero = field.zero
    x = [zero] * n
    for r, p in zip(rows, pivots):
        if p == n:
            return None  # pivot in the constant column: inconsistent
        x[p] = r[n]
    return tuple(x)


# -- polynomials: coefficient tuples, lowest degree first --------------------

def poly_trim(field, f):
    f = list(f)
    while f and f[-1] == field.zero:
        f.pop()
    return tuple(f)


def poly_deg(field, f):
    f = poly_trim(field, f)
    return len(f) - 1 if f else -1


def poly_mul(field, f, g):
    if not f or not g:
        return ()
    zero = field.zero
    out = [zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == zero:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return poly_trim(field, out)


def poly_divmod(field, f, g):
    f = list(poly_trim(field, f))
    g = poly_trim(field, g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    zero = field.zero
    q = [zero] * max(0, len(f) - len(g) + 1)
    lead = g[-1]
    while len(f) >= len(g):
        c = f[-1] / lead
        d = len(f) - len(g)
        q[d] = c
        for i, b in enumerate(g):
            f[d + i] = f[d + i] - c * b
        f = list(poly_trim(field, f))
        if not f:
            break
    return poly_trim(field, q), poly_trim(field, f)


def poly_monic(field, f):
    f = poly_trim(field, f)
    if not f:
        return f
    inv = field.one / f[-1]
    return tuple(x * inv for x in f)


def poly_gcd(field, f, g):
    """Monic gcd by Euclid's algorithm."""
    f, g = poly_trim(field, f), poly_trim(field, g)
    while g:
        _, r = poly_divmod(field, f, g)
        f, g = g, r
    return poly_monic(field, f)


def poly_derivative(field, f):
    """Formal derivative; coefficient k computed in the field (char-aware)."""
    f = poly_trim(field, f)
    return poly_trim(field, [field.of(k) * c for k, c in enumerate(f)][1:])


def poly_is_squarefree(field, f) -> bool:
    """True iff gcd(f, f') = 1.  In char p a vanishing derivative means a
    p-th power factor, hence not squarefree (for deg >= 1)."""
    f = poly_trim(field, f)
    if poly_deg(field, f) <= 0:
        return True
    d = poly_derivative(field, f)
    if not d:
        return False
    return poly_deg(field, poly_gcd(field, f, d)) == 0


def poly_apply(field, f, m: Matrix) -> Matrix:
    """Evaluate f at a square matrix by Horner's rule."""
    n = m.nrows
    ident = Matrix.identity(field, n)
    acc = Matrix.zeros(field, n, n)
    for c in reversed(poly_trim(field, f) or (field.zero,)):
        acc = acc * m + ident.scale(c)
    return acc


def minimal_polynomial(m: Matrix):
    """Monic minimal polynomial of a square matrix, as a coefficient tuple.

    Found as the first linear dependency among I, m, m^2, ... (flattened),
    tracked through an augmented row reduction.
    """
    if m.nrows != m.ncols:
        raise ValueError("minimal polynomial of a non-square matrix")
    field = m.field
    n = m.nrows
    if n == 0:
        return (field.one,)  # minimal polynomial 1 for the empty matrix
    zero = field.zero
    power = Matrix.identity(field, n)
    flat_basis = []  # echelon rows: flattened power entries | combination tail
    k = 0
    while True:
        # row layout: n*n matrix entries, then coordinates over 1, m, m^2, ...
        row = list(power.flatten()) + [zero] * k + [field.one]
        for b in flat_basis:
            p = next(j for j in range(n * n) if b[j] != zero)
            if row[p] != zero:
                f = row[p]
                padded = list(b) + [zero] * (len(row) - len(b))
                row = [x - f * y for x, y in zip(row, padded)]
        if all(x == zero for x in row[: n * n]):
            return poly_monic(field, row[n * n:])
        p = next(j for j in range(n * n) if row[j] != zero)
        inv = field.one / row[p]
        flat_basis.append([x * inv for x in row])
        power = power * m
        k += 1
        if k > n * n + 1:
            raise RuntimeError("minimal polynomial search failed to terminate")
