"""Affine semigroup data for normal toric rings.

A semigroup datum is a ``d x m`` integer matrix ``A`` whose columns generate
a full-dimensional, strongly convex rational cone ``C`` and the full lattice
``Z^d``.  The datum carries the primitive integral support functions of the
facets of ``C``; stacking them gives the injective transport map
``F : Z^d -> Z^F`` that moves monomial ideals of the semigroup ring into an
ordinary polynomial ring.

Normality (``C intersect Z^d = NA``) is what makes membership testable by
``F(v) >= 0``; it is expensive to verify, so it is computed on demand by
:func:`is_normal` and cached on the datum.  Operations that rely on the
F-criterion document that caveat rather than re-checking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence

from .exactnum import (
    IntMatrix,
    Vec,
    dot,
    fm_feasible,
    kernel_lattice_basis,
    lattice_is_saturated,
    primitive_vector,
    rank,
    solve_linear,
)
from .multipoly import MultiPoly
from .polyhedra import cone_facet_normals

__all__ = [
    "StructuralError",
    "SemigroupData",
    "MonomialIdeal",
    "build_semigroup",
    "is_normal",
    "assume_normal",
    "contains",
    "f_map",
    "f_section",
    "theta_generator",
    "extreme_rays",
    "minimalize_exponents",
    "monomial_ideal",
]


class StructuralError(ValueError):
    """A structural assumption on the semigroup datum fails."""


@dataclass
class SemigroupData:
    """Validated semigroup datum: matrix, facet support vectors, flags.

    ``facets`` lists the primitive support vectors ``f`` with
    ``F_sigma(p) = f . p``, in descending lexicographic order; this fixed
    order is the coordinate order of ``Z^F`` everywhere downstream.  The
    ``normal`` flag is three-valued: ``None`` = not yet determined.
    """

    A: IntMatrix
    facets: tuple[Vec, ...]
    pointed: bool
    saturated: bool
    normal: Optional[bool] = None
    normality_witness: Optional[Vec] = None
    _pointed_witness: Optional[tuple[Fraction, ...]] = field(default=None, repr=False)

    @property
    def d(self) -> int:
        return self.A.rows

    @property
    def m(self) -> int:
        return self.A.cols

    @property
    def nfacets(self) -> int:
        return len(self.facets)

    @property
    def e(self) -> Vec:
        """The all-ones vector of ``Z^F`` (one coordinate per facet)."""
        return (1,) * self.nfacets

    def f_matrix(self) -> IntMatrix:
        """The transport map as a matrix (rows = facet support vectors)."""
        return IntMatrix.from_rows(self.facets)


def build_semigroup(A: IntMatrix) -> SemigroupData:
    """Validate ``A`` and compute the facet support functions.

    Raises :class:`StructuralError` when the cone is not full-dimensional
    ("cone not full-dimensional") or not strongly convex ("cone not
    strongly convex").  Whether the columns span all of ``Z^d`` is recorded
    in the ``saturated`` verdict rather than raised here, so that the
    normality checker can still exhibit a witness point on unsaturated
    input; operations that rely on the assumption refuse via
    :func:`assume_normal` ("ZA != Z^d").
    """
    if not isinstance(A, IntMatrix):
        A = IntMatrix.from_rows(A)
    d = A.rows
    columns = A.columns()
    if rank(columns) != d:
        raise StructuralError("cone not full-dimensional")
    feasible, witness = fm_feasible([(a, 1, ">=") for a in columns])
    if not feasible:
        raise StructuralError("cone not strongly convex")
    facets = tuple(cone_facet_normals(columns, d))
    S = SemigroupData(
        A=A,
        facets=facets,
        pointed=True,
        saturated=lattice_is_saturated(A),
        _pointed_witness=tuple(witness) if witness is not None else None,
    )
    # completeness sanity check: all generators on the nonnegative side, and
    # for d >= 2 each facet is incident to at least one generator
    for f in facets:
        vals = [dot(f, a) for a in columns]
        if any(v < 0 for v in vals):
            raise AssertionError("facet normal negative on a generator")
        if d >= 2 and min(vals) != 0:
            raise AssertionError("facet not incident to any generator")
    return S


def f_map(S: SemigroupData, v: Sequence[int]) -> Vec:
    """Transport ``v`` to ``Z^F``: the tuple of support values ``F_sigma(v)``."""
    return tuple(dot(f, v) for f in S.facets)


def f_section(S: SemigroupData, q: Sequence[int]) -> Optional[Vec]:
    """The unique ``v`` with ``f_map(v) = q``, or ``None`` if there is none.

    ``F`` is injective (the cone is pointed and full-dimensional), so at most
    one preimage exists; it must be integral.
    """
    if len(q) != S.nfacets:
        raise ValueError("q has wrong length")
    x = solve_linear(S.facets, q, domain="integer")
    if x is None:
        return None
    v = tuple(int(c) for c in x)
    if f_map(S, v) != tuple(int(c) for c in q):
        return None
    return v


def contains(S: SemigroupData, v: Sequence[int]) -> bool:
    """Membership of ``v`` in the semigroup via the support-function
    criterion ``F(v) >= 0``.

    Valid when the semigroup is normal; on unverified data this tests
    membership in ``C intersect Z^d`` only.
    """
    return all(x >= 0 for x in f_map(S, v))


def _combination_exists(S: SemigroupData, p: Vec, memo: dict) -> bool:
    """Bounded search: is ``p`` a nonnegative integer combination of columns?"""
    if all(x == 0 for x in p):
        return True
    cached = memo.get(p)
    if cached is not None:
        return cached
    memo[p] = False  # cycle guard; revisits cannot help
    result = False
    for a in S.A.columns():
        q = tuple(x - y for x, y in zip(p, a))
        if all(val >= 0 for val in f_map(S, q)) and _combination_exists(S, q, memo):
            result = True
            break
    memo[p] = result
    return result


def is_normal(S: SemigroupData) -> bool:
    """Decide ``C intersect Z^d = NA`` exactly; caches the answer.

    Any counterexample must appear among the lattice points of the zonotope
    ``{sum t_i a_i : t in [0,1]^m}`` (an irreducible semigroup element is a
    sub-[0,1) combination of the generators), so scanning the integer
    bounding box of the zonotope for points of ``C`` that are not
    nonnegative combinations is a complete test.  On failure the first
    witness found is stored in ``S.normality_witness``.
    """
    if S.normal is not None:
        return S.normal
    d = S.d
    cols = S.A.columns()
    lo = [sum(min(0, a[i]) for a in cols) for i in range(d)]
    hi = [sum(max(0, a[i]) for a in cols) for i in range(d)]
    memo: dict = {}
    for p in product(*(range(lo[i], hi[i] + 1) for i in range(d))):
        if any(x < 0 for x in f_map(S, p)):
            continue  # outside the cone
        if not _combination_exists(S, p, memo):
            S.normal = False
            S.normality_witness = p
            return False
    S.normal = True
    return True


def assume_normal(S: SemigroupData) -> None:
    """Declare the semigroup normal without running the scan.

    Cheap certain violations are still refused: an unsaturated column
    lattice ("ZA != Z^d") or an already-verified non-normality cannot be
    assumed away.
    """
    if not S.saturated:
        raise StructuralError("ZA != Z^d")
    if S.normal is False:
        raise StructuralError("semigroup is verified non-normal")
    S.normal = True


def theta_generator(S: SemigroupData, u: Sequence[int]) -> MultiPoly:
    """Generator of the weight-``u`` piece of the ring of differential
    operators, as a polynomial in the Euler operators ``theta_1..theta_d``.

    Returns ``prod over facets with F_sigma(u) > 0 of
    prod_{j=0}^{F_sigma(u)-1} (F_sigma(theta) - j)``; the empty product is 1.
    Meaningful when the semigroup is normal.
    """
    d = S.d
    result = MultiPoly.constant(d, 1)
    for f, val in zip(S.facets, f_map(S, u)):
        if val <= 0:
            continue
        form = MultiPoly.linear_form(f)
        for j in range(val):
            result = result * (form - j)
    return result


def extreme_rays(S: SemigroupData) -> tuple[Vec, ...]:
    """Primitive generators of the extreme rays of the cone, one per ray.

    Each extreme ray of a full-dimensional pointed cone is cut out by
    ``d - 1`` facets whose normals span a hyperplane; scan facet subsets the
    same way facets are found from generators.  Descending lex order.
    """
    d = S.d
    if d == 1:
        # the cone is a half-line; any column is a generator of it
        return (primitive_vector(S.A.column(0)),)
    rays: set[Vec] = set()
    for subset in combinations(range(S.nfacets), d - 1):
        rows = [S.facets[i] for i in subset]
        if rank(rows) != d - 1:
            continue
        basis = kernel_lattice_basis(IntMatrix.from_rows(rows))
        if len(basis) != 1:
            continue
        r = primitive_vector(basis[0])
        for cand in (r, tuple(-x for x in r)):
            vals = f_map(S, cand)
            if all(v >= 0 for v in vals):
                if rank([f for f, v in zip(S.facets, vals) if v == 0]) == d - 1:
                    rays.add(cand)
    return tuple(sorted(rays, reverse=True))


def minimalize_exponents(S: SemigroupData, exps: Sequence[Sequence[int]]) -> tuple[Vec, ...]:
    """Antichain of minimal exponents under semigroup divisibility.

    ``v`` divides ``w`` iff ``w - v`` lies in the semigroup, which under
    normality is the componentwise test ``f_map(w) >= f_map(v)``.  Returns
    the minimal elements sorted lexicographically.
    """
    vecs = sorted({tuple(int(x) for x in v) for v in exps})
    images = {v: f_map(S, v) for v in vecs}
    minimal = []
    for v in vecs:
        dominated = False
        for w in vecs:
            if w != v and all(x <= y for x, y in zip(images[w], images[v])):
                dominated = True
                break
        if dominated:
            continue
        minimal.append(v)
    return tuple(minimal)


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal of the semigroup ring, stored by its minimal
    generator exponents (a lex-sorted antichain)."""

    owner: SemigroupData
    generators: tuple[Vec, ...]


def monomial_ideal(S: SemigroupData, exps: Sequence[Sequence[int]]) -> MonomialIdeal:
    """Build a :class:`MonomialIdeal`, validating membership and minimalizing."""
    if not exps:
        raise ValueError("a monomial ideal needs at least one generator")
    for v in exps:
        if len(v) != S.d:
            raise ValueError("exponent has wrong dimension")
        if not contains(S, v):
            raise ValueError(f"exponent {tuple(v)} outside the semigroup")
    return MonomialIdeal(owner=S, generators=minimalize_exponents(S, exps))
