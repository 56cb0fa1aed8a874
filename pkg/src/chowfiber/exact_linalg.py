"""Exact linear algebra over the integers.

This module is the arithmetic engine of the package: Hermite and Smith
normal forms with their unimodular transformation matrices, integer
kernels, lattice membership tests, and cokernel presentations of
finitely generated abelian groups.

Everything works on Python's native ``int``, which is arbitrary
precision.  That is not a convenience but a requirement: the
intermediate entries of a Smith reduction can exceed 64 bits even for
small inputs, so fixed-width arithmetic is never used here.

Two deliberately different routes to the invariant factors coexist:

* ``snf`` diagonalizes by unimodular row and column operations and is
  the production path;
* ``determinantal_divisors`` enumerates all k-by-k minors and takes
  gcds.  It is exponential and size-capped, but it shares no code with
  the reduction, which makes it a trustworthy independent oracle:
  invariant factor k equals ``d_k / d_{k-1}``.

``snf`` always re-verifies its own output (``u @ a @ v == s`` and
unimodularity of the transforms) and raises :class:`SelfCheckError`
if the verification fails, so a silently wrong decomposition cannot
propagate into downstream group computations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class NotInLattice(Exception):
    """Raised when a vector has no integer coordinates in the given basis."""


class OracleSizeLimitError(ValueError):
    """Raised when a matrix is too large for exhaustive minor enumeration."""


class SelfCheckError(RuntimeError):
    """An internal consistency check failed; the result cannot be trusted."""


class MatrixFormatError(ValueError):
    """Raised on malformed matrix text (see :func:`parse_matrix_text`)."""


#: Largest min(rows, cols) accepted by the determinantal-divisor oracle.
#: Minor enumeration is exponential; the oracle exists to be trustworthy
#: at desk scale, not to be fast.
ORACLE_SIZE_LIMIT = 8


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``x*a + y*b == g``."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


@dataclass(frozen=True)
class IntMatrix:
    """A dense, immutable integer matrix.

    ``rows`` is a tuple of row tuples.  ``row_count`` and ``col_count``
    are stored explicitly so that empty shapes (0 rows and/or 0 columns)
    are first-class values rather than edge cases.
    """

    row_count: int
    col_count: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.row_count < 0 or self.col_count < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.rows) != self.row_count:
            raise ValueError("row count does not match the number of rows")
        for row in self.rows:
            if len(row) != self.col_count:
                raise ValueError("ragged rows: all rows must have col_count entries")

    # -- constructors ------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], col_count: int | None = None) -> IntMatrix:
        """Build a matrix from an iterable of rows.

        ``col_count`` is only needed when ``rows`` is empty, in which
        case the result is a 0-by-``col_count`` matrix.
        """
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if col_count is not None and col_count != width:
                raise ValueError("col_count disagrees with the supplied rows")
            return cls(len(data), width, data)
        if col_count is None:
            raise ValueError("col_count is required for a matrix with no rows")
        return cls(0, col_count, ())

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable[int]], row_count: int | None = None) -> IntMatrix:
        """Build a matrix whose columns are the given vectors."""
        cols = [tuple(int(x) for x in c) for c in columns]
        if cols:
            height = len(cols[0])
            if any(len(c) != height for c in cols):
                raise ValueError("ragged columns")
            if row_count is not None and row_count != height:
                raise ValueError("row_count disagrees with the supplied columns")
            return cls(height, len(cols), tuple(zip(*cols)) if height else ())
        if row_count is None:
            raise ValueError("row_count is required for a matrix with no columns")
        return cls(row_count, 0, ((),) * row_count)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, row_count: int, col_count: int) -> IntMatrix:
        return cls(row_count, col_count, ((0,) * col_count,) * row_count)

    # -- accessors ---------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.row_count, self.col_count)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.rows[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.col_count)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_columns(self.rows, row_count=self.col_count)

    def is_square(self) -> bool:
        return self.row_count == self.col_count

    def diagonal_entries(self) -> tuple[int, ...]:
        return tuple(self.rows[i][i] for i in range(min(self.row_count, self.col_count)))

    # -- arithmetic --------------------------------------------------

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.col_count != other.row_count:
            raise ValueError(f"shape mismatch for product: {self.shape} @ {other.shape}")
        cols = other.columns()
        return IntMatrix(
            self.row_count,
            other.col_count,
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.rows
            ),
        )

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        if len(vector) != self.col_count:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.rows)

    def __str__(self) -> str:
        if self.row_count == 0 or self.col_count == 0:
            return f"<empty {self.row_count}x{self.col_count} matrix>"
        text = [[str(e) for e in row] for row in self.rows]
        widths = [max(len(text[i][j]) for i in range(self.row_count)) for j in range(self.col_count)]
        return "\n".join(
            "[ " + "  ".join(t.rjust(w) for t, w in zip(row, widths)) + " ]"
            for row in text
        )


@dataclass(frozen=True)
class SmithDecomposition:
    """A Smith normal form ``s = u @ a @ v`` with unimodular ``u`` and ``v``.

    ``s`` is diagonal with nonnegative entries, each nonzero diagonal
    entry divides the next, and zero entries come last.
    """

    s: IntMatrix
    u: IntMatrix
    v: IntMatrix

    def rank(self) -> int:
        return sum(1 for d in self.s.diagonal_entries() if d != 0)

    def nonzero_diagonal(self) -> tuple[int, ...]:
        return tuple(d for d in self.s.diagonal_entries() if d != 0)


@dataclass(frozen=True)
class FGAbelianGroup:
    """A finitely generated abelian group ``Z^rank + Z/f_1 + ... + Z/f_k``.

    The invariant factors form a divisibility chain and every factor is
    at least 2, so each abstract isomorphism class has exactly one
    representation and ``==`` decides isomorphism.
    """

    rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        factors = tuple(int(f) for f in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        for f in factors:
            if f < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def trivial(cls) -> FGAbelianGroup:
        return cls(0, ())

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.invariant_factors

    def __str__(self) -> str:
        parts: list[str] = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{f}" for f in self.invariant_factors)
        return " ⊕ ".join(parts) if parts else "0"


@dataclass(frozen=True)
class CokernelPresentation:
    """The quotient of ``Z^ambient_rank`` by the column span of ``relations``.

    ``change_of_basis`` is the unimodular row transform of the Smith
    decomposition of ``relations``: in the coordinates ``y = change_of_basis @ x``
    the relation lattice is spanned by multiples of the standard basis
    vectors, so ``y`` reads off the canonical generators of ``group``.
    """

    ambient_rank: int
    relations: IntMatrix
    group: FGAbelianGroup
    change_of_basis: IntMatrix


# ----------------------------------------------------------------------
# determinants
# ----------------------------------------------------------------------


def determinant(a: IntMatrix) -> int:
    """Exact determinant of a square matrix (fraction-free elimination)."""
    if not a.is_square():
        raise ValueError("determinant requires a square matrix")
    n = a.row_count
    if n == 0:
        return 1
    m = [list(row) for row in a.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Bareiss update: the division is exact.
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(a: IntMatrix) -> bool:
    return a.is_square() and determinant(a) in (1, -1)


# ----------------------------------------------------------------------
# Hermite normal form
# ----------------------------------------------------------------------


def hnf(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ a == h``, where
    ``h`` is in row echelon form with positive pivots and every entry
    above a pivot reduced into ``[0, pivot)``.  Total on all shapes,
    including empty matrices.
    """
    m, n = a.shape
    h = [list(row) for row in a.rows]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def combine_rows(r: int, i: int, coeffs: tuple[int, int, int, int]) -> None:
        # Replace rows r, i by an unimodular combination.
        x, y, z, w = coeffs
        for mat in (h, u):
            ri, rj = mat[r], mat[i]
            mat[r] = [x * p + y * q for p, q in zip(ri, rj)]
            mat[i] = [z * p + w * q for p, q in zip(ri, rj)]

    r = 0
    for c in range(n):
        pivot_row = next((i for i in range(r, m) if h[i][c] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            h[r], h[pivot_row] = h[pivot_row], h[r]
            u[r], u[pivot_row] = u[pivot_row], u[r]
        for i in range(r + 1, m):
            if h[i][c] == 0:
                continue
            g, x, y = xgcd(h[r][c], h[i][c])
            combine_rows(r, i, (x, y, -(h[i][c] // g), h[r][c] // g))
        if h[r][c] < 0:
            h[r] = [-e for e in h[r]]
            u[r] = [-e for e in u[r]]
        for j in range(r):
            q = h[j][c] // h[r][c]
            if q:
                h[j] = [p - q * s for p, s in zip(h[j], h[r])]
                u[j] = [p - q * s for p, s in zip(u[j], u[r])]
        r += 1
        if r == m:
            break
    return IntMatrix.from_rows(h, col_count=n), IntMatrix.from_rows(u, col_count=m)


# ----------------------------------------------------------------------
# Smith normal form
# ----------------------------------------------------------------------


def snf(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms, self-verified before returning.

    The pivot at each stage is a nonzero entry of minimal absolute value
    in the remaining submatrix; that choice only limits intermediate
    entry growth, correctness does not depend on it.
    """
    m, n = a.shape
    s = [list(row) for row in a.rows]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i: int, j: int) -> None:
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src: int, dst: int, factor: int) -> None:
        s[dst] = [p + factor * q for p, q in zip(s[dst], s[src])]
        u[dst] = [p + factor * q for p, q in zip(u[dst], u[src])]

    def add_col(src: int, dst: int, factor: int) -> None:
        for row in s:
            row[dst] += factor * row[src]
        for row in v:
            row[dst] += factor * row[src]

    def find_pivot(t: int) -> tuple[int, int] | None:
        best: tuple[int, int] | None = None
        best_abs = 0
        for i in range(t, m):
            for j in range(t, n):
                e = s[i][j]
                if e != 0 and (best is None or abs(e) < best_abs):
                    best, best_abs = (i, j), abs(e)
                    if best_abs == 1:
                        return best
        return best

    t = 0
    while t < min(m, n):
        pos = find_pivot(t)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])

        while True:
            # Clear column t below the pivot.  A nonzero remainder is
            # strictly smaller in magnitude than the pivot, so swapping
            # it up strictly shrinks the pivot and the loop terminates.
            dirty = False
            for i in range(t + 1, m):
                if s[i][t] == 0:
                    continue
                add_row(t, i, -(s[i][t] // s[t][t]))
                if s[i][t] != 0:
                    swap_rows(t, i)
                    dirty = True
            if dirty:
                continue
            for j in range(t + 1, n):
                if s[t][j] == 0:
                    continue
                add_col(t, j, -(s[t][j] // s[t][t]))
                if s[t][j] != 0:
                    swap_cols(t, j)
                    dirty = True
                    break
            if dirty:
                continue

            # Row and column are clear; force the pivot to divide the
            # whole remaining submatrix before moving on, so the
            # diagonal comes out as a divisibility chain.
            offender = next(
                (
                    i
                    for i in range(t + 1, m)
                    if any(s[i][j] % s[t][t] != 0 for j in range(t + 1, n))
                ),
                None,
            )
            if offender is None:
                break
            add_row(offender, t, 1)

        if s[t][t] < 0:
            s[t] = [-e for e in s[t]]
            u[t] = [-e for e in u[t]]
        t += 1

    result = SmithDecomposition(
        s=IntMatrix.from_rows(s, col_count=n),
        u=IntMatrix.from_rows(u, col_count=m),
        v=IntMatrix.from_rows(v, col_count=n),
    )
    _verify_snf(a, result)
    return result


def _verify_snf(a: IntMatrix, dec: SmithDecomposition) -> None:
    if dec.u @ a @ dec.v != dec.s:
        raise SelfCheckError("Smith decomposition does not reproduce the input")
    if not is_unimodular(dec.u) or not is_unimodular(dec.v):
        raise SelfCheckError("Smith transforms are not unimodular")
    diag = dec.s.diagonal_entries()
    for i, row in enumerate(dec.s.rows):
        for j, e in enumerate(row):
            if i != j and e != 0:
                raise SelfCheckError("Smith form is not diagonal")
    seen_zero = False
    for d in diag:
        if d < 0:
            raise SelfCheckError("Smith diagonal has a negative entry")
        if d == 0:
            seen_zero = True
        elif seen_zero:
            raise SelfCheckError("zero entries must come last on the Smith diagonal")
    for p, q in zip(diag, diag[1:]):
        if p != 0 and q != 0 and q % p != 0:
            raise SelfCheckError("Smith diagonal is not a divisibility chain")


# ----------------------------------------------------------------------
# determinantal-divisor oracle
# ----------------------------------------------------------------------


def determinantal_divisors(a: IntMatrix) -> list[int]:
    """gcd of all k-by-k minors, for k = 1 .. min(rows, cols).

    Entry k (1-based) is 0 when every k-by-k minor vanishes.  This is
    the independent oracle for invariant factors: factor k equals
    ``d_k / d_{k-1}`` with ``d_0 = 1``.  Deliberately naive; refuses
    matrices with min-dimension beyond :data:`ORACLE_SIZE_LIMIT`.
    """
    m, n = a.shape
    k_max = min(m, n)
    if k_max > ORACLE_SIZE_LIMIT:
        raise OracleSizeLimitError(
            f"oracle size limit: min(rows, cols) = {k_max} exceeds "
            f"{ORACLE_SIZE_LIMIT}; minor enumeration is exponential"
        )
    divisors: list[int] = []
    for k in range(1, k_max + 1):
        g = 0
        for row_sel in itertools.combinations(range(m), k):
            for col_sel in itertools.combinations(range(n), k):
                minor = IntMatrix.from_rows(
                    [[a.rows[i][j] for j in col_sel] for i in row_sel],
                    col_count=k,
                )
                g = gcd(g, determinant(minor))
                if g == 1:
                    break
            if g == 1:
                break
        divisors.append(g)
        if g == 0:
            # rank < k, so all larger minors vanish too
            divisors.extend([0] * (k_max - k))
            break
    return divisors


def invariant_factors_from_divisors(divisors: Sequence[int]) -> list[int]:
    """Successive quotients ``d_k / d_{k-1}`` up to the last nonzero divisor."""
    factors: list[int] = []
    prev = 1
    for d in divisors:
        if d == 0:
            break
        factors.append(d // prev)
        prev = d
    return factors


# ----------------------------------------------------------------------
# derived constructions
# ----------------------------------------------------------------------


def cokernel(a: IntMatrix) -> CokernelPresentation:
    """Present ``Z^rows / column-span(a)`` with its canonical coordinates."""
    dec = snf(a)
    nonzero = dec.nonzero_diagonal()
    group = FGAbelianGroup(
        rank=a.row_count - len(nonzero),
        invariant_factors=tuple(d for d in nonzero if d >= 2),
    )
    return CokernelPresentation(
        ambient_rank=a.row_count,
        relations=a,
        group=group,
        change_of_basis=dec.u,
    )


def integer_kernel(a: IntMatrix) -> IntMatrix:
    """A saturated basis of ``{x : a @ x == 0}``, as matrix columns.

    The basis consists of the kernel-aligned columns of the Smith column
    transform, so it is automatically a direct summand of the ambient
    lattice.
    """
    dec = snf(a)
    r = dec.rank()
    cols = [dec.v.column(j) for j in range(r, a.col_count)]
    return IntMatrix.from_columns(cols, row_count=a.col_count)


def solve_in_lattice(basis: IntMatrix, target: Sequence[int]) -> tuple[int, ...]:
    """Integer coordinates of ``target`` in the column lattice of ``basis``.

    Requires the basis columns to be linearly independent.  Raises
    :class:`NotInLattice` when the vector lies outside the lattice
    (including outside its rational span).
    """
    target = tuple(int(x) for x in target)
    if len(target) != basis.row_count:
        raise ValueError("target length does not match basis row count")
    dec = snf(basis)
    if dec.rank() < basis.col_count:
        raise ValueError("basis columns must be linearly independent")
    w = dec.u.apply(target)
    diag = dec.s.diagonal_entries()
    reduced: list[int] = []
    for i, wi in enumerate(w):
        if i < basis.col_count:
            if wi % diag[i] != 0:
                raise NotInLattice(
                    f"component {i} is not divisible by the lattice elementary divisor"
                )
            reduced.append(wi // diag[i])
        elif wi != 0:
            raise NotInLattice("target is outside the rational span of the basis")
    return dec.v.apply(reduced)


def matrix_rank(a: IntMatrix) -> int:
    """Rank over the rationals (equivalently the number of nonzero invariant factors)."""
    return snf(a).rank()


# ----------------------------------------------------------------------
# matrix text format
# ----------------------------------------------------------------------


def parse_matrix_text(text: str) -> IntMatrix:
    """Parse the plain matrix interchange format.

    The first significant line is ``R C`` (row and column counts); then
    R lines of C whitespace-separated base-10 integers.  Blank lines and
    lines starting with ``#`` are ignored.
    """
    significant: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        significant.append((lineno, stripped))
    if not significant:
        raise MatrixFormatError("empty input: expected a header line 'R C'")
    header_line, header = significant[0]
    parts = header.split()
    if len(parts) != 2:
        raise MatrixFormatError(f"line {header_line}: header must be 'R C', got {header!r}")
    try:
        r, c = int(parts[0]), int(parts[1])
    except ValueError:
        raise MatrixFormatError(f"line {header_line}: header must hold two integers") from None
    if r < 0 or c < 0:
        raise MatrixFormatError(f"line {header_line}: dimensions must be nonnegative")
    body = significant[1:]
    if len(body) != r:
        raise MatrixFormatError(f"expected {r} matrix rows, found {len(body)}")
    rows: list[list[int]] = []
    for lineno, line in body:
        fields = line.split()
        if len(fields) != c:
            raise MatrixFormatError(f"line {lineno}: expected {c} entries, found {len(fields)}")
        try:
            rows.append([int(f) for f in fields])
        except ValueError:
            raise MatrixFormatError(f"line {lineno}: entries must be base-10 integers") from None
    return IntMatrix.from_rows(rows, col_count=c)


def format_matrix_text(a: IntMatrix) -> str:
    lines = [f"{a.row_count} {a.col_count}"]
    lines.extend(" ".join(str(e) for e in row) for row in a.rows)
    return "\n".join(lines) + "\n"
