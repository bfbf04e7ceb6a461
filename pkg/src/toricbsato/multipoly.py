"""Sparse multivariate and dense univariate polynomials over exact rationals.

``MultiPoly`` stores a mapping from exponent tuples to nonzero ``Fraction``
coefficients; the number of variables is fixed per polynomial.  Monomial
orders are small value objects carrying a key function on exponent tuples,
so Python's tuple comparison does the actual ordering work.  ``UniPoly`` is
a dense univariate polynomial used for b-functions and root bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Mapping, Optional, Sequence

__all__ = [
    "MultiPoly",
    "UniPoly",
    "MonomialOrder",
    "grevlex",
    "block_elimination",
]


def _grevlex_key(e: tuple[int, ...]) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


@dataclass(frozen=True)
class MonomialOrder:
    """A total order on exponent tuples, given by a sort key."""

    name: str
    key: Callable[[tuple[int, ...]], tuple]


def grevlex(nvars: int) -> MonomialOrder:
    """Graded reverse-lexicographic order on ``nvars`` variables."""
    return MonomialOrder(f"grevlex({nvars})", _grevlex_key)


def block_elimination(n_front: int) -> MonomialOrder:
    """Block order: grevlex on the first ``n_front`` variables, which
    dominate grevlex on the remaining block.

    Any monomial involving a front variable is larger than every monomial in
    the back variables only, so a Groebner basis under this order eliminates
    the front block.
    """

    def key(e: tuple[int, ...]) -> tuple:
        front, back = e[:n_front], e[n_front:]
        return (_grevlex_key(front), _grevlex_key(back))

    return MonomialOrder(f"block_elimination({n_front})", key)


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables over ``Fraction``.

    ``terms`` maps exponent tuples to nonzero coefficients.  Instances are
    treated as immutable values; all operations return new polynomials.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.nvars = int(nvars)
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                c = Fraction(coeff)
                if c == 0:
                    continue
                exp = tuple(int(x) for x in exp)
                if len(exp) != self.nvars or any(x < 0 for x in exp):
                    raise ValueError("bad exponent tuple")
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if clean[exp] == 0:
                    del clean[exp]
        self.terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "MultiPoly":
        return MultiPoly(nvars)

    @staticmethod
    def constant(nvars: int, c) -> "MultiPoly":
        return MultiPoly(nvars, {(0,) * nvars: Fraction(c)})

    @staticmethod
    def variable(nvars: int, i: int) -> "MultiPoly":
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return MultiPoly(nvars, {exp: Fraction(1)})

    @staticmethod
    def linear_form(coeffs: Sequence, const=0) -> "MultiPoly":
        """Polynomial ``sum coeffs[i] * x_i + const``."""
        n = len(coeffs)
        terms: dict[tuple[int, ...], Fraction] = {}
        for i, c in enumerate(coeffs):
            if c:
                terms[tuple(1 if j == i else 0 for j in range(n))] = Fraction(c)
        if const:
            terms[(0,) * n] = Fraction(const)
        return MultiPoly(n, terms)

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def leading_exponent(self, order: MonomialOrder) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder) -> Fraction:
        return self.terms[self.leading_exponent(order)]

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = MultiPoly.__new__(MultiPoly)
        out.nvars = self.nvars
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultiPoly.__new__(MultiPoly)
        out.nvars = self.nvars
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return MultiPoly.zero(self.nvars)
            out = MultiPoly.__new__(MultiPoly)
            out.nvars = self.nvars
            out.terms = {e: k * c for e, k in self.terms.items()}
            return out
        self._check(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        out = MultiPoly.__new__(MultiPoly)
        out.nvars = self.nvars
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        c = Fraction(scalar)
        if c == 0:
            raise ZeroDivisionError
        return self * (1 / c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- evaluation and variable bookkeeping --------------------------

    def eval_at(self, point: Sequence) -> Fraction:
        vals = [Fraction(x) for x in point]
        if len(vals) != self.nvars:
            raise ValueError("evaluation point has wrong length")
        total = Fraction(0)
        for e, c in self.terms.items():
            prod = c
            for x, k in zip(vals, e):
                if k:
                    prod *= x**k
            total += prod
        return total

    def extend_vars(self, extra: int) -> "MultiPoly":
        """View this polynomial inside a ring with ``extra`` appended variables."""
        if extra < 0:
            raise ValueError("extra must be nonnegative")
        pad = (0,) * extra
        return MultiPoly(self.nvars + extra, {e + pad: c for e, c in self.terms.items()})

    def monic(self, order: MonomialOrder) -> "MultiPoly":
        if self.is_zero():
            return self
        return self / self.leading_coefficient(order)

    # -- display ------------------------------------------------------

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        if self.is_zero():
            return "0"
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, key=_grevlex_key, reverse=True):
            c = self.terms[e]
            monos = [f"{names[i]}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k]
            body = "*".join(monos)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"MultiPoly({self.format()})"


def binom_poly(E: MultiPoly, m: int) -> MultiPoly:
    """Generalized binomial coefficient ``binom(E, m)`` as a polynomial.

    Falling-factorial form: ``E (E-1) ... (E-m+1) / m!``; ``m = 0`` gives 1.
    """
    if m < 0:
        raise ValueError("binom_poly needs m >= 0")
    result = MultiPoly.constant(E.nvars, 1)
    for j in range(m):
        result = result * (E - j)
    return result / factorial(m)


class UniPoly:
    """Dense univariate polynomial over ``Fraction`` (ascending coefficients)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def zero() -> "UniPoly":
        return UniPoly([])

    @staticmethod
    def from_roots(roots: Sequence, lead=1) -> "UniPoly":
        p = UniPoly([Fraction(lead)])
        for r in roots:
            p = p * UniPoly([-Fraction(r), 1])
        return p

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        return len(self.coeffs) - 1

    def leading_coefficient(self) -> Fraction:
        if self.is_zero():
            raise ValueError("zero polynomial")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return not self.is_zero() and self.coeffs[-1] == 1

    def monic(self) -> "UniPoly":
        if self.is_zero():
            raise ValueError("zero polynomial cannot be made monic")
        lc = self.coeffs[-1]
        return UniPoly([c / lc for c in self.coeffs])

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * Fraction(other) for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError
        rem = list(self.coeffs)
        dd, dv = len(rem) - 1, other.degree
        if dd < dv:
            return UniPoly.zero(), UniPoly(rem)
        quot = [Fraction(0)] * (dd - dv + 1)
        lc = other.coeffs[-1]
        for k in range(dd - dv, -1, -1):
            c = rem[k + dv] / lc
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quot), UniPoly(rem)

    def divides(self, other: "UniPoly") -> bool:
        """True iff ``self`` divides ``other`` exactly."""
        if self.is_zero():
            return other.is_zero()
        _, r = other.divmod(self)
        return r.is_zero()

    def deflate_root(self, r) -> "UniPoly":
        """Exact division by ``(x - r)``; raises if ``r`` is not a root."""
        q, rem = self.divmod(UniPoly([-Fraction(r), 1]))
        if not rem.is_zero():
            raise ValueError("not a root")
        return q

    def format(self, var: str = "s") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                body = str(c)
            else:
                v = var if k == 1 else f"{var}^{k}"
                if c == 1:
                    body = v
                elif c == -1:
                    body = f"-{v}"
                else:
                    body = f"{c}*{v}"
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"UniPoly({self.format()})"
