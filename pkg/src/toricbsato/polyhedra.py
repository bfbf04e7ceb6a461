"""Exact rational convex geometry: cones and Newton polyhedra.

A Newton polyhedron here is ``conv(points) + cone(rays)`` for finitely many
integer points and integer recession rays.  Facets are computed exactly by
homogenizing to a cone one dimension up and scanning generator subsets for
supporting hyperplanes; the resulting H-representation has primitive integer
normals and integer offsets.  Membership in dilations, relative-interior
membership and the point threshold (the dilation factor at which a point
enters the boundary) are all exact.

All polyhedra constructed here are required to be full-dimensional, so the
relative interior coincides with the topological interior and is cut out by
making every facet inequality strict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .exactnum import (
    IntMatrix,
    Vec,
    dot,
    kernel_lattice_basis,
    primitive_vector,
    rank,
)

__all__ = [
    "NewtonPolyhedron",
    "cone_facet_normals",
    "newton_polyhedron",
    "membership",
    "point_threshold",
    "INFINITY",
]

#: Sentinel for an unbounded point threshold.  ``float("inf")`` compares
#: correctly against Fractions and carries no rounding, so it is safe here.
INFINITY = float("inf")


def cone_facet_normals(generators: Sequence[Vec], dim: int) -> list[Vec]:
    """Primitive facet normals of the full-dimensional cone spanned by
    ``generators`` in ``R^dim``.

    Scans all ``(dim-1)``-subsets of generators; a subset of rank ``dim-1``
    determines a hyperplane, and its primitive normal is kept (suitably
    oriented) when all generators lie on one side.  This enumerates every
    facet because each facet of a finitely generated full-dimensional cone
    is spanned by ``dim-1`` linearly independent generators, except in the
    one-dimensional case where the origin is the only facet.

    The returned list is sorted in descending lexicographic order.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if any(len(g) != dim for g in gens):
        raise ValueError("generator dimension mismatch")
    found: set[Vec] = set()
    if dim == 1:
        for cand in ((1,), (-1,)):
            vals = [dot(cand, g) for g in gens]
            if all(v >= 0 for v in vals):
                found.add(cand)
        found_list = sorted(found, reverse=True)
        return found_list
    for subset in combinations(range(len(gens)), dim - 1):
        rows = [gens[i] for i in subset]
        if rank(rows) != dim - 1:
            continue
        basis = kernel_lattice_basis(IntMatrix.from_rows(rows))
        if len(basis) != 1:
            continue
        normal = primitive_vector(basis[0])
        vals = [dot(normal, g) for g in gens]
        if all(v >= 0 for v in vals):
            found.add(normal)
        elif all(v <= 0 for v in vals):
            found.add(tuple(-x for x in normal))
    return sorted(found, reverse=True)


@dataclass(frozen=True)
class NewtonPolyhedron:
    """H- and V-representation of ``conv(points) + cone(rays)``.

    ``facets`` is a tuple of ``(normal, offset)`` pairs encoding the
    irredundant inequalities ``normal . x >= offset`` with primitive integer
    normals and integer offsets.  ``vertices`` are the extreme points and
    ``recession_rays`` the primitive input rays.
    """

    ambient_dim: int
    vertices: tuple[Vec, ...]
    recession_rays: tuple[Vec, ...]
    facets: tuple[tuple[Vec, int], ...]


def newton_polyhedron(points: Sequence[Vec], rays: Sequence[Vec]) -> NewtonPolyhedron:
    """Build the polyhedron ``conv(points) + cone(rays)`` exactly.

    Both inputs must be nonempty and integral, and the result must be
    full-dimensional (equivalently: the homogenization cone over
    ``{(1, p)} u {(0, r)}`` has full rank); otherwise ``ValueError``.
    """
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise ValueError("at least one point is required")
    n = len(pts[0])
    rys = sorted({primitive_vector(r) for r in rays})
    if not rys:
        raise ValueError("at least one recession ray is required")
    if any(len(p) != n for p in pts) or any(len(r) != n for r in rys):
        raise ValueError("dimension mismatch between points and rays")

    homog = [(1,) + p for p in pts] + [(0,) + r for r in rys]
    if rank(homog) != n + 1:
        raise ValueError("polyhedron not full-dimensional")

    facets: list[tuple[Vec, int]] = []
    for w in cone_facet_normals(homog, n + 1):
        normal = w[1:]
        if all(x == 0 for x in normal):
            continue  # the hyperplane at infinity, not a polyhedron facet
        normal = primitive_vector(normal)
        offset = min(dot(normal, p) for p in pts)
        facets.append((normal, offset))
    facets = sorted(set(facets))

    # sanity: the V-representation satisfies the H-representation
    for normal, offset in facets:
        for p in pts:
            if dot(normal, p) < offset:
                raise AssertionError("input point violates computed facet")
        for r in rys:
            if dot(normal, r) < 0:
                raise AssertionError("input ray violates computed facet")

    vertices = []
    for p in pts:
        tight = [normal for normal, offset in facets if dot(normal, p) == offset]
        if rank(tight) == n:
            vertices.append(p)
    return NewtonPolyhedron(
        ambient_dim=n,
        vertices=tuple(vertices),
        recession_rays=tuple(rys),
        facets=tuple(facets),
    )


def membership(P: NewtonPolyhedron, q: Sequence, alpha, mode: str = "closed") -> bool:
    """Exact membership of ``q`` in the dilation ``alpha * P``.

    ``mode="closed"`` tests the closed polyhedron, ``mode="relint"`` its
    relative interior (= interior; the construction guarantees full
    dimension).  ``alpha`` must be a positive rational.
    """
    if mode not in ("closed", "relint"):
        raise ValueError("mode must be 'closed' or 'relint'")
    a = Fraction(alpha)
    if a <= 0:
        raise ValueError("dilation factor must be positive")
    qv = [Fraction(x) for x in q]
    if len(qv) != P.ambient_dim:
        raise ValueError("point has wrong dimension")
    for normal, offset in P.facets:
        lhs = dot(normal, qv)
        rhs = a * offset
        if mode == "closed":
            if lhs < rhs:
                return False
        else:
            if lhs <= rhs:
                return False
    return True


def point_threshold(P: NewtonPolyhedron, q: Sequence):
    """The dilation factor at which ``q`` stops being interior, exactly.

    Returns ``min over facets with positive offset of (normal . q) / offset``
    as a ``Fraction``.  Special values: ``None`` (undefined) when some
    zero-offset facet has ``normal . q < 0``, so ``q`` never enters any
    dilation; ``INFINITY`` when no facet has a positive offset.
    """
    qv = [Fraction(x) for x in q]
    if len(qv) != P.ambient_dim:
        raise ValueError("point has wrong dimension")
    best = None
    for normal, offset in P.facets:
        lhs = dot(normal, qv)
        if offset == 0 and lhs < 0:
            return None
        if offset <= 0:
            continue
        ratio = Fraction(lhs, offset)
        if best is None or ratio < best:
            best = ratio
    if best is None:
        return INFINITY
    if best > 0 and all(offset >= 0 for _, offset in P.facets):
        # q must sit on the boundary of the critical dilation
        if not membership(P, qv, best, "closed") or membership(P, qv, best, "relint"):
            raise AssertionError("threshold point not on the critical boundary")
    return best
