"""Small dense matrices over an exact field.

Entries are elements of ``field`` (ScalarQ, Fraction or RatFunZ). Products
skip zero entries since the operators met here are very sparse.
"""


class Matrix:
    __slots__ = ("rows", "field", "n", "m")

    def __init__(self, rows, field):
        self.rows = [list(r) for r in rows]
        self.field = field
        self.n = len(self.rows)
        self.m = len(self.rows[0]) if self.rows else 0

    @classmethod
    def zeros(cls, n, m, field):
        z = field.zero
        return cls([[z] * m for _ in range(n)], field)

    @classmethod
    def identity(cls, n, field):
        return cls.diag([field.one] * n, field)

    @classmethod
    def diag(cls, entries, field):
        entries = list(entries)
        n = len(entries)
        out = cls.zeros(n, n, field)
        for i, x in enumerate(entries):
            out.rows[i][i] = x
        return out

    @classmethod
    def block_diag(cls, blocks, field):
        n = sum(b.n for b in blocks)
        out = cls.zeros(n, n, field)
        off = 0
        for b in blocks:
            for i in range(b.n):
                for j in range(b.m):
                    out.rows[off + i][off + j] = b.rows[i][j]
            off += b.n
        return out

    @property
    def shape(self):
        return (self.n, self.m)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def copy(self):
        return Matrix(self.rows, self.field)

    def map(self, f, field=None):
        return Matrix([[f(x) for x in r] for r in self.rows], field or self.field)

    def is_zero(self):
        return not any(x for r in self.rows for x in r)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    __hash__ = None

    def __add__(self, other):
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.field)

    def __sub__(self, other):
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.field)

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows], self.field)

    def scale(self, c):
        if not c:
            return Matrix.zeros(self.n, self.m, self.field)
        z = self.field.zero
        return Matrix([[a * c if a else z for a in r] for r in self.rows], self.field)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self.matmul(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(self.field.one / c)

    def matmul(self, other):
        if self.m != other.n:
            raise ValueError(f"shape mismatch {self.shape} x {other.shape}")
        z = self.field.zero
        brows = [[(j, x) for j, x in enumerate(r) if x] for r in other.rows]
        out = []
        for r in self.rows:
            acc = [z] * other.m
            for k, a in enumerate(r):
                if a:
                    for j, b in brows[k]:
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return Matrix(out, self.field)

    def apply(self, v):
        z = self.field.zero
        out = []
        for r in self.rows:
            acc = z
            for a, x in zip(r, v):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return out

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = Matrix.identity(self.n, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    @property
    def T(self):
        return Matrix([list(c) for c in zip(*self.rows)], self.field)

    def submatrix(self, rows, cols):
        return Matrix([[self.rows[i][j] for j in cols] for i in rows], self.field)

    def is_diagonal(self):
        return all(not x for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def is_upper_triangular(self):
        return all(not x for i, r in enumerate(self.rows) for j, x in enumerate(r) if j < i)

    def is_lower_triangular(self):
        return all(not x for i, r in enumerate(self.rows) for j, x in enumerate(r) if j > i)

    def diagonal(self):
        return [self.rows[i][i] for i in range(min(self.n, self.m))]

    def _pivot_key(self, x):
        k = getattr(x, "complexity", None)
        return k() if k else 0

    def _rref(self, aug=None):
        """Row-reduce in place copies; returns (R, A, pivots)."""
        R = [list(r) for r in self.rows]
        A = [list(r) for r in aug.rows] if aug is not None else None
        one = self.field.one
        pivots = []
        row = 0
        for col in range(self.m):
            cand = [i for i in range(row, self.n) if R[i][col]]
            if not cand:
                continue
            p = min(cand, key=lambda i: self._pivot_key(R[i][col]))
            R[row], R[p] = R[p], R[row]
            if A is not None:
                A[row], A[p] = A[p], A[row]
            inv = one / R[row][col]
            R[row] = [x * inv if x else x for x in R[row]]
            if A is not None:
                A[row] = [x * inv if x else x for x in A[row]]
            for i in range(self.n):
                if i != row and R[i][col]:
                    f = R[i][col]
                    R[i] = [a - f * b if b else a for a, b in zip(R[i], R[row])]
                    if A is not None:
                        A[i] = [a - f * b if b else a for a, b in zip(A[i], A[row])]
            pivots.append(col)
            row += 1
            if row == self.n:
                break
        return R, A, pivots

    def rank(self):
        return len(self._rref()[2])

    def inverse(self):
        if self.n != self.m:
            raise ValueError("inverse of a non-square matrix")
        R, A, piv = self._rref(Matrix.identity(self.n, self.field))
        if len(piv) < self.n:
            raise ZeroDivisionError("singular matrix")
        return Matrix(A, self.field)

    def nullspace(self):
        """Basis of {v : self v = 0} as a list of column vectors (lists)."""
        R, _, piv = self._rref()
        free = [j for j in range(self.m) if j not in piv]
        basis = []
        for f in free:
            v = [self.field.zero] * self.m
            v[f] = self.field.one
            for i, p in enumerate(piv):
                if R[i][f]:
                    v[p] = -R[i][f]
            basis.append(v)
        return basis

    def to_strings(self, fmt=None):
        fmt = fmt or self.field.to_str
        return [[fmt(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.to_strings(str)})"


def commutator(a, b):
    return a * b - b * a


def column(v, field):
    return Matrix([[x] for x in v], field)
