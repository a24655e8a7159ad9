"""Exact linear algebra over a FieldConfig (dense matrices, sparse elimination)."""
from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import CYCLOTOMIC, FieldConfig, Scalar


class SingularMatrix(ArithmeticError):
    pass


class Matrix:
    """Immutable dense matrix of Scalars; products skip zero entries."""
    __slots__ = ("field", "rows", "nrows", "ncols", "_nz")

    def __init__(self, field: FieldConfig, rows, ncols: int | None = None):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        self._nz = None

    # constructors
    @classmethod
    def zeros(cls, field, m, n):
        z = field.zero
        return cls(field, [[z] * n for _ in range(m)], n)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, field, entries):
        n = len(entries)
        z = field.zero
        return cls(field, [[entries[i] if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field, cols, nrows):
        if not cols:
            return cls(field, [[] for _ in range(nrows)], 0)
        return cls(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    @classmethod
    def from_sparse(cls, field, m, n, entries):
        """entries: iterable of (i, j, value); repeated positions are summed."""
        z = field.zero
        rows = [[z] * n for _ in range(m)]
        for i, j, v in entries:
            rows[i][j] = rows[i][j] + v
        return cls(field, rows, n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def nz(self):
        if self._nz is None:
            self._nz = [[(j, a) for j, a in enumerate(r) if a] for r in self.rows]
        return self._nz

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self):
        return Matrix(self.field, zip(*self.rows) if self.rows else [], self.nrows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = self.field.zero
        onz = other.nz()
        out = []
        for row in self.nz():
            acc = [z] * other.ncols
            for k, a in row:
                for j, b in onz[k]:
                    acc[j] = acc[j] + a * b
            out.append(acc)
        return Matrix(self.field, out, other.ncols)

    def apply(self, v: Sequence[Scalar]) -> list:
        z = self.field.zero
        out = []
        for row in self.nz():
            acc = z
            for k, a in row:
                if v[k]:
                    acc = acc + a * v[k]
            out.append(acc)
        return out

    def __add__(self, other):
        return Matrix(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other):
        return Matrix(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self):
        return Matrix(self.field, [[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        if not c:
            return Matrix.zeros(self.field, self.nrows, self.ncols)
        return Matrix(self.field, [[a * c if a else a for a in r] for r in self.rows], self.ncols)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and all(
            (a == 1) if i == j else (not a) for i, r in enumerate(self.rows) for j, a in enumerate(r))

    def trace(self):
        t = self.field.zero
        for i in range(min(self.nrows, self.ncols)):
            t = t + self.rows[i][i]
        return t

    def kron(self, other: "Matrix") -> "Matrix":
        z = self.field.zero
        n2 = other.ncols
        out = []
        onz = other.nz()
        for r in self.nz():
            for i2 in range(other.nrows):
                acc = [z] * (self.ncols * n2)
                for j, a in r:
                    base = j * n2
                    for j2, b in onz[i2]:
                        acc[base + j2] = a * b
                out.append(acc)
        return Matrix(self.field, out, self.ncols * n2)

    def submatrix(self, rows, cols) -> "Matrix":
        return Matrix(self.field, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def hstack(self, other):
        return Matrix(self.field, [r + s for r, s in zip(self.rows, other.rows)], self.ncols + other.ncols)

    def vstack(self, other):
        return Matrix(self.field, self.rows + other.rows, self.ncols)

    def power(self, n: int) -> "Matrix":
        out = Matrix.identity(self.field, self.nrows)
        base = self
        while n:
            if n & 1:
                out = out @ base
            n >>= 1
            if n:
                base = base @ base
        return out

    def flat(self) -> list:
        return [a for r in self.rows for a in r]

    def to_strings(self):
        return [[str(a) for a in r] for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"


def block_diag(field, mats: Sequence[Matrix]) -> Matrix:
    n = sum(m.nrows for m in mats)
    c = sum(m.ncols for m in mats)
    entries = []
    ro = co = 0
    for m in mats:
        for i, row in enumerate(m.nz()):
            for j, a in row:
                entries.append((ro + i, co + j, a))
        ro += m.nrows
        co += m.ncols
    return Matrix.from_sparse(field, n, c, entries)


# -- sparse incremental elimination -------------------------------------------------

class RowSpace:
    """Reduced echelon basis of a growing set of sparse vectors (dict index -> scalar).

    Every stored row has its pivot coefficient 1 and contains no other pivot index.
    """

    def __init__(self, field: FieldConfig):
        self.field = field
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        v = {k: a for k, a in v.items() if a}
        for p in [k for k in v if k in self.rows]:
            c = v.get(p)
            if not c:
                continue
            for k, a in self.rows[p].items():
                t = v.get(k)
                t = -(c * a) if t is None else t - c * a
                if t:
                    v[k] = t
                else:
                    v.pop(k, None)
        return v

    def add(self, v: dict) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        self._insert(v, min(v))
        return True

    def _insert(self, v, p):
        inv = v[p].inv()
        v = {k: a * inv for k, a in v.items()}
        v[p] = self.field.one
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                for k, a in v.items():
                    t = row.get(k)
                    t = -(c * a) if t is None else t - c * a
                    if t:
                        row[k] = t
                    else:
                        row.pop(k, None)
        self.rows[p] = v

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def nullspace(self, nvars: int) -> list[dict]:
        """Treat stored rows as homogeneous equations; return a kernel basis."""
        one = self.field.one
        free = [j for j in range(nvars) if j not in self.rows]
        basis = []
        for f in free:
            vec = {f: one}
            for p, row in self.rows.items():
                c = row.get(f)
                if c:
                    vec[p] = -c
            basis.append(vec)
        return basis


def _dense(v: dict, n: int, zero) -> list:
    out = [zero] * n
    for k, a in v.items():
        out[k] = a
    return out


def _sparse(v: Sequence) -> dict:
    return {k: a for k, a in enumerate(v) if a}


def nullspace(A: Matrix) -> list[list]:
    """Basis of {x : A x = 0} as dense vectors."""
    rs = RowSpace(A.field)
    for row in A.nz():
        rs.add(dict(row))
    return [_dense(v, A.ncols, A.field.zero) for v in rs.nullspace(A.ncols)]


def rank(A: Matrix) -> int:
    rs = RowSpace(A.field)
    for row in A.nz():
        rs.add(dict(row))
    return len(rs)


def independent_columns(field, cols: Iterable[Sequence]) -> list[int]:
    """Indices of a maximal independent subfamily, chosen greedily in order."""
    rs = RowSpace(field)
    return [i for i, c in enumerate(cols) if rs.add(_sparse(c))]


def inverse(A: Matrix) -> Matrix:
    n = A.nrows
    if n != A.ncols:
        raise SingularMatrix("not square")
    f = A.field
    # eliminate on [A | I] using sparse rows; pivots land on the A-part first
    rs = RowSpace(f)
    for i, row in enumerate(A.nz()):
        v = dict(row)
        v[n + i] = f.one
        rs.add(v)
    if any(p >= n for p in rs.rows) or len(rs) < n:
        raise SingularMatrix("matrix is singular")
    out = []
    for p in range(n):
        row = rs.rows[p]
        out.append([row.get(n + j, f.zero) for j in range(n)])
    return Matrix(f, out, n)


def is_invertible(A: Matrix) -> bool:
    return A.nrows == A.ncols and rank(A) == A.nrows


def solve(A: Matrix, b: Sequence) -> list | None:
    """One solution of A x = b, or None if inconsistent."""
    f = A.field
    n = A.ncols
    rs = RowSpace(f)
    for row, bi in zip(A.nz(), b):
        v = dict(row)
        if bi:
            v[n] = bi
        rs.add(v)
    if n in rs.rows:
        return None
    x = [f.zero] * n
    for p, row in rs.rows.items():
        x[p] = row.get(n, f.zero)
    return x


def is_nilpotent(A: Matrix) -> bool:
    n = A.nrows
    P = A
    k = 1
    while k < n:
        P = P @ P
        k *= 2
    return P.is_zero()


def krylov_relation(apply, v: Sequence, field: FieldConfig) -> list:
    """Monic polynomial g (low-to-high) of least degree with g(A) v = 0."""
    n = len(v)
    rs = RowSpace(field)
    cur = list(v)
    for k in range(n + 1):
        vec = _sparse(cur)
        vec[n + k] = field.one
        red = rs.reduce(vec)
        if all(key >= n for key in red):
            # relation among A^0 v .. A^k v
            c = red[n + k]
            return [red.get(n + i, field.zero) / c for i in range(k + 1)]
        rs._insert(red, min(red))
        cur = apply(cur)
    raise AssertionError("no Krylov relation found")


# -- roots of polynomials in the field --------------------------------------------

_SYMPY_FIELDS: dict = {}


def _algebraic_field(l: int):
    K = _SYMPY_FIELDS.get(l)
    if K is None:
        from sympy import I, QQ, exp, pi
        z = exp(2 * pi * I / l)
        K = QQ.algebraic_field(z)
        # the primitive element must be eps itself for coordinate transfer
        assert list(K.from_sympy(z).to_list()) == [1, 0]
        _SYMPY_FIELDS[l] = K
    return K


def field_roots(field: FieldConfig, coeffs: Sequence[Scalar]) -> list[Scalar]:
    """Distinct roots in the field of sum coeffs[i] x^i (factorization by sympy)."""
    from fractions import Fraction

    from sympy import GF, Poly, QQ, Symbol

    x = Symbol("x")
    while coeffs and not coeffs[-1]:
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return []
    if len(coeffs) == 2:
        return [-coeffs[0] / coeffs[1]]
    roots = []
    if field.mode == CYCLOTOMIC:
        K = _algebraic_field(field.l)
        elts = []
        for c in reversed(coeffs):
            lst = [QQ(a.numerator, a.denominator) for a in reversed(c.to_fraction_list())]
            elts.append(K(lst))
        P = Poly(elts, x, domain=K)
        for fac, _ in P.factor_list()[1]:
            if fac.degree() == 1:
                a1, a0 = fac.rep.to_list()
                lst = (-(a0 / a1)).to_list()
                val = field.zero
                for i, q in enumerate(reversed(lst)):
                    if q:
                        val = val + field.eps_pow(i) * field(Fraction(int(q.numerator), int(q.denominator)))
                roots.append(val)
    else:
        P = Poly([int(c.v) for c in reversed(coeffs)], x, domain=GF(field.p))
        for fac, _ in P.factor_list()[1]:
            if fac.degree() == 1:
                a1, a0 = [int(t) for t in fac.all_coeffs()]
                roots.append(field(-a0) / field(a1))
    return roots
