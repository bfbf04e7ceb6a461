"""Exact integer and rational linear algebra used throughout the package.

Every computation in this package runs over Python's unbounded ``int`` and
``fractions.Fraction``; nothing here ever rounds.  This module collects the
lattice and feasibility primitives the geometric layers are built on:

* column-style Hermite normal form together with its unimodular
  transformation matrix,
* primitive integer vectors,
* exact solving of linear systems over the rationals or the integers,
* Fourier-Motzkin elimination for strict/weak linear inequality systems,
  including an exact rational witness when the system is feasible.

All vectors are plain tuples, matrices are immutable ``IntMatrix`` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Vec = tuple[int, ...]
QVec = tuple[Fraction, ...]

__all__ = [
    "IntMatrix",
    "Vec",
    "QVec",
    "dot",
    "gcd_list",
    "primitive_vector",
    "hermite_normal_form",
    "lattice_is_saturated",
    "det",
    "rank",
    "kernel_lattice_basis",
    "solve_linear",
    "fm_feasible",
]


def dot(a: Sequence, b: Sequence):
    """Exact dot product of two equal-length sequences."""
    if len(a) != len(b):
        raise ValueError("dot: length mismatch")
    return sum(x * y for x, y in zip(a, b))


def gcd_list(xs) -> int:
    g = 0
    for x in xs:
        g = gcd(g, abs(x))
    return g


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix with positive dimensions."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("matrix rows must all have the same length")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def from_rows(rows) -> "IntMatrix":
        return IntMatrix(tuple(tuple(row) for row in rows))

    def row(self, i: int) -> Vec:
        return self.entries[i]

    def column(self, j: int) -> Vec:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[Vec]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(self.column(j) for j in range(self.cols)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("matrix product shape mismatch")
        return IntMatrix(
            tuple(
                tuple(sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols)) for j in range(other.cols))
                for i in range(self.rows)
            )
        )

    def mul_vec(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError("matrix-vector shape mismatch")
        return tuple(dot(row, v) for row in self.entries)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)


def primitive_vector(v: Sequence[int]) -> Vec:
    """Divide an integer vector by the gcd of its entries, keeping orientation.

    Raises ``ValueError`` on the zero vector, which has no primitive form.
    """
    v = tuple(int(x) for x in v)
    g = gcd_list(v)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in v)


def hermite_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form ``H = M * U`` with ``U`` unimodular.

    ``H`` has its pivot columns first (one pivot per nonzero row, positive
    pivot entries), zeros to the right of each pivot in its row, entries to
    the left of a pivot reduced into ``[0, pivot)``, and zero columns at the
    end.  ``|det U| = 1`` always, so the column lattices of ``M`` and ``H``
    coincide.
    """
    if M.is_zero():
        raise ValueError("hermite_normal_form requires a nonzero matrix")
    d, m = M.rows, M.cols
    H = [list(row) for row in M.entries]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def swap_cols(a, b):
        if a == b:
            return
        for i in range(d):
            H[i][a], H[i][b] = H[i][b], H[i][a]
        for i in range(m):
            U[i][a], U[i][b] = U[i][b], U[i][a]

    def addmul_col(dst, src, q):
        # column dst -= q * column src
        if q == 0:
            return
        for i in range(d):
            H[i][dst] -= q * H[i][src]
        for i in range(m):
            U[i][dst] -= q * U[i][src]

    def negate_col(a):
        for i in range(d):
            H[i][a] = -H[i][a]
        for i in range(m):
            U[i][a] = -U[i][a]

    col = 0
    for row in range(d):
        if col >= m:
            break
        while True:
            nz = [j for j in range(col, m) if H[row][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: (abs(H[row][j]), j))
            swap_cols(col, j0)
            clean = True
            for j in range(col + 1, m):
                if H[row][j] != 0:
                    addmul_col(j, col, H[row][j] // H[row][col])
                    if H[row][j] != 0:
                        clean = False
            if clean:
                break
        if H[row][col] == 0:
            continue  # no pivot in this row
        if H[row][col] < 0:
            negate_col(col)
        for j in range(col):
            addmul_col(j, col, H[row][j] // H[row][col])
        col += 1
    return IntMatrix.from_rows(H), IntMatrix.from_rows(U)


def lattice_is_saturated(M: IntMatrix) -> bool:
    """True iff the columns of ``M`` generate all of ``Z^d`` (d = row count).

    Checked on the Hermite normal form: the lattice is full exactly when the
    top-left ``d x d`` block of ``H`` is the identity.
    """
    H, _ = hermite_normal_form(M)
    d = M.rows
    if M.cols < d:
        return False
    for i in range(d):
        for j in range(d):
            if H.entries[i][j] != (1 if i == j else 0):
                return False
    return True


def det(M: IntMatrix) -> int:
    """Exact determinant of a square integer matrix (Gaussian elimination)."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    a = [[Fraction(x) for x in row] for row in M.entries]
    sign = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for j in range(c, n):
                    a[r][j] -= f * a[c][j]
    result = Fraction(sign)
    for c in range(n):
        result *= a[c][c]
    if result.denominator != 1:
        raise AssertionError("integer determinant came out fractional")
    return int(result)


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q of a matrix given as a sequence of rows (ints or Fractions)."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                for j in range(c, ncols):
                    a[i][j] -= f * a[r][j]
        r += 1
        if r == nrows:
            break
    return r


def kernel_lattice_basis(M: IntMatrix) -> list[Vec]:
    """Basis of the saturated integer kernel lattice ``{x in Z^m : M x = 0}``.

    Computed from the column Hermite normal form: the columns of ``U`` that
    map to zero columns of ``H`` form a basis.  Returns ``[]`` for injective
    matrices; for the zero matrix the standard basis is returned.
    """
    if M.is_zero():
        return [tuple(1 if i == j else 0 for i in range(M.cols)) for j in range(M.cols)]
    H, U = hermite_normal_form(M)
    basis = []
    for j in range(M.cols):
        if all(H.entries[i][j] == 0 for i in range(M.rows)):
            basis.append(U.column(j))
    return basis


def solve_linear(M: Sequence[Sequence], b: Sequence, domain: str = "rational") -> Optional[list[Fraction]]:
    """Solve ``M x = b`` exactly; return one solution or ``None``.

    ``domain`` is ``"rational"`` or ``"integer"``.  Free variables (if the
    system is underdetermined) are set to zero.  Returns ``None`` when the
    system is inconsistent, or when ``domain="integer"`` and the computed
    rational solution is not integral.  (With integer-domain requests on
    systems with free columns this is a sufficient check only for the
    injective matrices used in this package.)
    """
    if domain not in ("rational", "integer"):
        raise ValueError("domain must be 'rational' or 'integer'")
    a = [[Fraction(x) for x in row] for row in M]
    rhs = [Fraction(x) for x in b]
    if len(a) != len(rhs):
        raise ValueError("solve_linear: shape mismatch")
    if not a:
        return []
    nrows, ncols = len(a), len(a[0])
    aug = [row + [rhs[i]] for i, row in enumerate(a)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][c]
        aug[r] = [x / inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols] != 0:
            return None  # inconsistent
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncols]
    if domain == "integer" and any(v.denominator != 1 for v in x):
        return None
    return x


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination
# ---------------------------------------------------------------------------

# A constraint is (coefficients, constant, relation) meaning  a . x REL c
# with REL one of ">=" and ">".

Constraint = tuple[Sequence, object, str]


def _canon_constraint(a: QVec, c: Fraction, strict: bool):
    """Scale a constraint to a canonical integer form for deduplication."""
    denoms = [x.denominator for x in a] + [c.denominator]
    mult = 1
    for d in denoms:
        mult = mult * d // gcd(mult, d)
    ia = [int(x * mult) for x in a]
    ic = int(c * mult)
    g = gcd_list(ia + [ic])
    if g > 1:
        ia = [x // g for x in ia]
        ic //= g
    return tuple(ia), ic, strict


def fm_feasible(ineqs: Sequence[Constraint]) -> tuple[bool, Optional[list[Fraction]]]:
    """Exact feasibility of a system of strict/weak linear inequalities.

    Input constraints are triples ``(a, c, rel)`` encoding ``a . x >= c`` or
    ``a . x > c`` with ``rel`` in ``{">=", ">"}``.  Eliminates variables one
    at a time (Fourier-Motzkin), carrying strictness; on success a rational
    witness is reconstructed by back-substitution and returned.
    """
    parsed = []
    n = None
    for a, c, rel in ineqs:
        if rel not in (">=", ">"):
            raise ValueError("relation must be '>=' or '>'")
        av = tuple(Fraction(x) for x in a)
        if n is None:
            n = len(av)
        elif len(av) != n:
            raise ValueError("fm_feasible: constraints of differing arity")
        parsed.append((av, Fraction(c), rel == ">"))
    if not parsed:
        return True, []
    assert n is not None

    def prune(system):
        seen = set()
        out = []
        for a, c, strict in system:
            if all(x == 0 for x in a):
                ok = (c < 0) if strict else (c <= 0)
                if not ok:
                    return None  # constant contradiction
                continue
            key = _canon_constraint(a, c, strict)
            if key in seen:
                continue
            seen.add(key)
            out.append((a, c, strict))
        return out

    levels = []
    cur = prune(parsed)
    if cur is None:
        return False, None
    for k in range(n, 0, -1):
        levels.append(cur)
        lows, ups, rest = [], [], []
        for a, c, strict in cur:
            coef = a[k - 1]
            if coef > 0:
                lows.append((a, c, strict))
            elif coef < 0:
                ups.append((a, c, strict))
            else:
                rest.append((a[: k - 1], c, strict))
        new = list(rest)
        for al, cl, sl in lows:
            for au, cu, su in ups:
                # positive combination cancelling x_{k-1}
                pl, pu = -au[k - 1], al[k - 1]
                a_new = tuple(pl * al[i] + pu * au[i] for i in range(k - 1))
                c_new = pl * cl + pu * cu
                new.append((a_new, c_new, sl or su))
        cur = prune(new)
        if cur is None:
            return False, None
    # all variables eliminated and no contradiction found: feasible
    witness: list[Fraction] = []
    for k in range(1, n + 1):
        system = levels[n - k]
        lo = hi = None
        lo_strict = hi_strict = False
        for a, c, strict in system:
            coef = a[k - 1]
            if coef == 0:
                continue
            bound = (c - sum(a[i] * witness[i] for i in range(k - 1))) / coef
            if coef > 0:
                if lo is None or bound > lo or (bound == lo and strict):
                    lo, lo_strict = bound, strict
            else:
                if hi is None or bound < hi or (bound == hi and strict):
                    hi, hi_strict = bound, strict
        if lo is None and hi is None:
            val = Fraction(0)
        elif hi is None:
            val = lo + 1 if lo_strict else lo
        elif lo is None:
            val = hi - 1 if hi_strict else hi
        elif lo < hi:
            val = (lo + hi) / 2
        else:
            # lo == hi; both bounds must be weak or elimination would have failed
            val = lo
        witness.append(val)
    return True, witness
