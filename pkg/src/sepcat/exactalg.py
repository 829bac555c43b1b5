"""Exact scalars over Q or F_p and dense exact linear algebra.

Scalars are plain Python values: rationals (gmpy2.mpq when available,
fractions.Fraction otherwise) and integers in [0, p) for prime fields.
A Field object carries the arithmetic; matrices store their field and
stay immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

try:
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as _rational

__all__ = ["Field", "QQ", "Matrix", "RrefResult"]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """The base field: rationals when p is None, else the prime field F_p."""

    p: Optional[int] = None

    def __post_init__(self) -> None:
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_rationals(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self):
        return _rational(0) if self.p is None else 0

    @property
    def one(self):
        return _rational(1) if self.p is None else 1

    def of(self, value):
        """Canonicalize an int, string, or rational into a field scalar."""
        if self.p is None:
            return _rational(value)
        if isinstance(value, str):
            value = int(value)
        if not isinstance(value, int):
            raise TypeError(f"cannot coerce {value!r} into F_{self.p}")
        return value % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError(f"division by zero in {self}")
        return 1 / _rational(a) if self.p is None else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def arith(self, a, b, op: str):
        """Dispatch one of add/sub/mul/div by name."""
        return {"add": self.add, "sub": self.sub, "mul": self.mul, "div": self.div}[op](a, b)

    def format(self, a) -> str:
        # Q: "n" or "n/d" in lowest terms with d > 0; F_p: least residue.
        return str(a)

    def parse(self, text: str):
        if self.p is None:
            return _rational(text)
        return int(text) % self.p

    def to_json(self):
        return "Q" if self.p is None else {"Fp": self.p}

    @classmethod
    def from_json(cls, doc) -> "Field":
        if doc == "Q":
            return cls()
        if isinstance(doc, dict) and set(doc) == {"Fp"}:
            return cls(int(doc["Fp"]))
        raise ValueError(f"bad field description {doc!r}")

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"


QQ = Field()


@dataclass(frozen=True)
class RrefResult:
    reduced: "Matrix"
    rank: int
    pivot_cols: tuple[int, ...]


class Matrix:
    """Dense exact matrix; entries are row-major field scalars.

    Instances are immutable; the reduced row echelon form is computed once
    and cached. Pivoting picks the first nonzero entry in column order.
    """

    __slots__ = ("field", "rows", "cols", "entries", "_rref")

    def __init__(self, field: Field, rows: int, cols: int, entries: Sequence):
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", list(entries))
        object.__setattr__(self, "_rref", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, [field.zero] * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        zero, one = field.zero, field.one
        ent = [zero] * (n * n)
        for i in range(n):
            ent[i * n + i] = one
        return cls(field, n, n, ent)

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable]) -> "Matrix":
        data = [[field.of(e) for e in row] for row in rows]
        ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise ValueError("ragged rows")
        return cls(field, len(data), ncols, [e for row in data for e in row])

    @classmethod
    def column(cls, field: Field, values: Iterable) -> "Matrix":
        vals = [field.of(v) for v in values]
        return cls(field, len(vals), 1, vals)

    # -- access -------------------------------------------------------

    def __getitem__(self, key: tuple[int, int]):
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> list:
        return self.entries[j :: self.cols] if self.cols else []

    def column_matrix(self, j: int) -> "Matrix":
        return Matrix(self.field, self.rows, 1, self.col(j))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.format(e) for e in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.field}, {self.rows}x{self.cols}, [{body}])"

    def _check_compatible(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_compatible(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        p = self.field.p
        if p is None:
            ent = [a + b for a, b in zip(self.entries, other.entries)]
        else:
            ent = [(a + b) % p for a, b in zip(self.entries, other.entries)]
        return Matrix(self.field, self.rows, self.cols, ent)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_compatible(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in sub")
        p = self.field.p
        if p is None:
            ent = [a - b for a, b in zip(self.entries, other.entries)]
        else:
            ent = [(a - b) % p for a, b in zip(self.entries, other.entries)]
        return Matrix(self.field, self.rows, self.cols, ent)

    def __neg__(self) -> "Matrix":
        p = self.field.p
        ent = [-a for a in self.entries] if p is None else [(-a) % p for a in self.entries]
        return Matrix(self.field, self.rows, self.cols, ent)

    def scale(self, scalar) -> "Matrix":
        s = self.field.of(scalar)
        p = self.field.p
        ent = [s * a for a in self.entries] if p is None else [(s * a) % p for a in self.entries]
        return Matrix(self.field, self.rows, self.cols, ent)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_compatible(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch in matmul: {self.cols} vs {other.rows}")
        m, n, q = self.rows, self.cols, other.cols
        p = self.field.p
        out = [self.field.zero] * (m * q)
        a, b = self.entries, other.entries
        for i in range(m):
            ai = i * n
            oi = i * q
            for k in range(n):
                aik = a[ai + k]
                if not aik:
                    continue
                bk = k * q
                if p is None:
                    for j in range(q):
                        v = b[bk + j]
                        if v:
                            out[oi + j] += aik * v
                else:
                    for j in range(q):
                        v = b[bk + j]
                        if v:
                            out[oi + j] = (out[oi + j] + aik * v) % p
        return Matrix(self.field, m, q, out)

    def transpose(self) -> "Matrix":
        ent = [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)]
        return Matrix(self.field, self.cols, self.rows, ent)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check_compatible(other)
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        ent = []
        for i in range(self.rows):
            ent.extend(self.row(i))
            ent.extend(other.row(i))
        return Matrix(self.field, self.rows, self.cols + other.cols, ent)

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check_compatible(other)
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return Matrix(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; row (i,k) and column (j,l) with i, j major."""
        self._check_compatible(other)
        m, n = self.rows, self.cols
        r, c = other.rows, other.cols
        fmul = self.field.mul
        out = [self.field.zero] * (m * r * n * c)
        for i in range(m):
            for j in range(n):
                a = self.entries[i * n + j]
                if not a:
                    continue
                for k in range(r):
                    base = (i * r + k) * (n * c) + j * c
                    orow = other.entries[k * c : (k + 1) * c]
                    for l, b in enumerate(orow):
                        if b:
                            out[base + l] = fmul(a, b)
        return Matrix(self.field, m * r, n * c, out)

    # -- elimination ---------------------------------------------------

    def rref(self) -> RrefResult:
        cached = self._rref
        if cached is not None:
            return cached
        nrows, ncols = self.rows, self.cols
        p = self.field.p
        work = [self.row(i) for i in range(nrows)]
        pivots: list[int] = []
        pr = 0
        for pc in range(ncols):
            piv = -1
            for i in range(pr, nrows):
                if work[i][pc]:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != pr:
                work[pr], work[piv] = work[piv], work[pr]
            prow = work[pr]
            v = prow[pc]
            if p is None:
                if v != 1:
                    s = 1 / _rational(v)
                    for j in range(pc, ncols):
                        if prow[j]:
                            prow[j] = s * prow[j]
                nz = [j for j in range(pc, ncols) if prow[j]]
                for i in range(nrows):
                    if i == pr:
                        continue
                    f = work[i][pc]
                    if f:
                        ri = work[i]
                        for j in nz:
                            ri[j] = ri[j] - f * prow[j]
            else:
                if v != 1:
                    s = pow(v, -1, p)
                    for j in range(pc, ncols):
                        if prow[j]:
                            prow[j] = (s * prow[j]) % p
                nz = [j for j in range(pc, ncols) if prow[j]]
                for i in range(nrows):
                    if i == pr:
                        continue
                    f = work[i][pc]
                    if f:
                        ri = work[i]
                        for j in nz:
                            ri[j] = (ri[j] - f * prow[j]) % p
            pivots.append(pc)
            pr += 1
            if pr == nrows:
                break
        reduced = Matrix(self.field, nrows, ncols, [e for row in work for e in row])
        result = RrefResult(reduced, len(pivots), tuple(pivots))
        object.__setattr__(reduced, "_rref", result)
        object.__setattr__(self, "_rref", result)
        return result

    def rank(self) -> int:
        return self.rref().rank

    def solve(self, b: "Matrix") -> Optional["Matrix"]:
        """One exact solution of self @ x = b (free variables set to zero)."""
        sol = self.solve_many(b)
        return sol

    def solve_many(self, b: "Matrix") -> Optional["Matrix"]:
        """Columnwise solve of self @ X = B; None if any column is inconsistent."""
        self._check_compatible(b)
        if b.rows != self.rows:
            raise ValueError(f"dimension mismatch: {self.rows} equations vs {b.rows} rhs rows")
        n = self.cols
        aug = self.hstack(b).rref()
        red = aug.reduced
        out = Matrix.zeros(self.field, n, b.cols)
        for r, pc in enumerate(aug.pivot_cols):
            if pc >= n:
                return None
            for j in range(b.cols):
                out.entries[pc * b.cols + j] = red.entries[r * red.cols + n + j]
        return out

    def kernel_basis(self) -> "Matrix":
        """Columns span ker(self): the standard free-variable basis from rref."""
        res = self.rref()
        red = res.reduced
        pivot_set = set(res.pivot_cols)
        free = [j for j in range(self.cols) if j not in pivot_set]
        out = Matrix.zeros(self.field, self.cols, len(free))
        neg = self.field.neg
        for k, fc in enumerate(free):
            out.entries[fc * len(free) + k] = self.field.one
            for r, pc in enumerate(res.pivot_cols):
                v = red.entries[r * red.cols + fc]
                if v:
                    out.entries[pc * len(free) + k] = neg(v)
        return out

    def to_json(self) -> list[str]:
        return [self.field.format(e) for e in self.entries]

    @classmethod
    def from_json(cls, field: Field, rows: int, cols: int, texts: Sequence[str]) -> "Matrix":
        if len(texts) != rows * cols:
            raise ValueError("matrix entry count does not match declared shape")
        return cls(field, rows, cols, [field.parse(t) for t in texts])
