"""Multiplier ideals, log-canonical thresholds and jumping coefficients.

Everything runs through one geometric engine: transport a monomial ideal
along the facet map ``F`` into the orthant, take the Newton polyhedron of
the transported exponents, and answer membership questions about dilations
of that polyhedron exactly.  A monomial ``y^v`` lies in the multiplier
ideal at parameter ``alpha`` precisely when ``F(v) + e`` lies in the
relative interior of ``alpha`` times the polyhedron, where ``e`` is the
all-ones vector indexed by facets.  Jumping coefficients are the parameter
values where a lattice point of the image ``F(NA)`` sits on the boundary;
each reported one comes with a lattice witness that is re-checked exactly.

The enumeration boxes used to find minimal generators and the lattice
search windows used for jumping witnesses in dimension >= 3 are finite, so
those outputs carry honest ``stabilized`` / ``search_mode`` flags instead
of a silent claim of completeness.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product
from math import ceil, floor, gcd
from typing import Optional, Sequence, Union

from .exactnum import IntMatrix, Vec, dot, fm_feasible, kernel_lattice_basis
from .polyhedra import (
    INFINITY,
    NewtonPolyhedron,
    membership,
    newton_polyhedron,
    point_threshold,
)
from .toric import (
    MonomialIdeal,
    SemigroupData,
    build_semigroup,
    extreme_rays,
    f_map,
    f_section,
    monomial_ideal,
)

__all__ = [
    "MultiplierIdealResult",
    "JumpingReport",
    "CorrespondenceReport",
    "transport",
    "transport_polynomial",
    "transported_polyhedron",
    "multiplier_ideal",
    "multiplier_ideal_with_boundary",
    "lct",
    "jumping_coefficients",
    "verify_correspondence",
    "identity_semigroup",
    "ambient_pair",
]

Rational = Union[int, Fraction]


# ---------------------------------------------------------------------------
# transport along the facet map
# ---------------------------------------------------------------------------


def transport(S: SemigroupData, ideal) -> tuple[Vec, ...]:
    """Minimal generator exponents of the transported monomial ideal.

    ``ideal`` is a :class:`MonomialIdeal` or a plain list of exponent
    vectors.  The result lists ``F(beta)`` for the minimal generators
    ``beta``, sorted; since divisibility in the semigroup matches
    componentwise comparison of ``F``-images, this is also the minimal
    generating set of the transported ideal in the orthant.
    """
    if not isinstance(ideal, MonomialIdeal):
        ideal = monomial_ideal(S, ideal)
    return tuple(sorted(f_map(S, b) for b in ideal.generators))


def transport_polynomial(
    S: SemigroupData, term_lists: Sequence[Sequence[tuple[Rational, Sequence[int]]]]
) -> list[list[tuple[Fraction, Vec]]]:
    """Transport polynomial generators termwise: ``y^beta`` becomes
    ``x^{F(beta)}`` with coefficients untouched.

    Each generator is a list of ``(coefficient, exponent)`` terms.  Raises
    if an exponent lies outside the semigroup.
    """
    out = []
    for terms in term_lists:
        mapped: dict[Vec, Fraction] = {}
        for coeff, beta in terms:
            q = f_map(S, beta)
            if any(x < 0 for x in q):
                raise ValueError(f"exponent {tuple(beta)} outside the semigroup")
            mapped[q] = mapped.get(q, Fraction(0)) + Fraction(coeff)
        out.append(sorted(((e, c) for e, c in mapped.items() if c != 0)))
    return [[(c, e) for e, c in terms] for terms in out]


def transported_polyhedron(S: SemigroupData, ideal) -> NewtonPolyhedron:
    """Newton polyhedron of the transported ideal inside the orthant
    indexed by facets (recession cone = the full orthant)."""
    points = transport(S, ideal)
    n = S.nfacets
    rays = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    return newton_polyhedron(points, rays)


def identity_semigroup(n: int) -> SemigroupData:
    """The free semigroup ``N^n`` (polynomial-ring case, A = identity)."""
    return build_semigroup(IntMatrix.identity(n))


def ambient_pair(S: SemigroupData, ideal) -> tuple[SemigroupData, MonomialIdeal]:
    """The transported pair: the free semigroup on the facet coordinates
    together with the transported monomial ideal."""
    S_free = identity_semigroup(S.nfacets)
    return S_free, monomial_ideal(S_free, transport(S, ideal))


# ---------------------------------------------------------------------------
# multiplier ideals by box enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiplierIdealResult:
    """Minimal generators of a multiplier ideal at one parameter value.

    ``generators`` are exponents ``v`` in the semigroup, an antichain under
    semigroup divisibility, sorted.  ``box_used`` is the componentwise
    bound on ``F(v)`` that the final enumeration ran over; ``stabilized``
    reports whether enlarging the box once more left the answer unchanged.
    """

    alpha: Fraction
    mode: str
    generators: tuple[Vec, ...]
    box_used: tuple[int, ...]
    stabilized: bool


def _generator_column_maxima(S: SemigroupData) -> list[int]:
    cols = S.A.columns()
    return [max(dot(f, a) for a in cols) for f in S.facets]


def _vertex_maxima_q(vertices: Sequence[Sequence[Rational]]) -> list[Fraction]:
    n = len(vertices[0])
    return [max(Fraction(v[k]) for v in vertices) for k in range(n)]


def _minimal_members(
    S: SemigroupData, box: Sequence[int], keep
) -> tuple[tuple[Vec, ...], bool]:
    """Scan ``q`` in the box, lift through ``f_section``, keep members,
    reduce to the divisibility antichain.  Returns (generators, any_member)."""
    members: list[tuple[Vec, Vec]] = []  # (q, v)
    for q in product(*(range(b + 1) for b in box)):
        v = f_section(S, q)
        if v is None:
            continue
        if keep(q, v):
            members.append((q, v))
    members.sort(key=lambda qv: (sum(qv[0]), qv[0]))
    kept: list[tuple[Vec, Vec]] = []
    for q, v in members:
        if any(all(x <= y for x, y in zip(q2, q)) for q2, _ in kept):
            continue
        kept.append((q, v))
    return tuple(sorted(v for _, v in kept)), bool(members)


def multiplier_ideal(
    S: SemigroupData,
    ideal,
    alpha: Rational,
    mode: str = "relint",
    doublings: int = 1,
) -> MultiplierIdealResult:
    """Multiplier ideal of a monomial ideal at parameter ``alpha``.

    ``mode="relint"`` is the multiplier ideal proper (``F(v) + e`` in the
    relative interior of the dilated transported polyhedron);
    ``mode="closed"`` is its left limit, the ideal "just below" ``alpha``.
    Assumes a normal semigroup.  Enumeration starts on the box
    ``ceil(alpha * m) + M`` (``m`` = vertex maxima of the polyhedron,
    ``M`` = facet values of the semigroup generators) and doubles up to
    ``doublings`` times until the minimal generating set stops changing.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if mode not in ("relint", "closed"):
        raise ValueError("mode must be 'relint' or 'closed'")
    P = transported_polyhedron(S, ideal)
    m = _vertex_maxima_q(P.vertices)
    M = _generator_column_maxima(S)
    box = [max(1, ceil(alpha * mk) + Mk) for mk, Mk in zip(m, M)]

    def keep(q, v):
        point = tuple(a + b for a, b in zip(q, S.e))
        return membership(P, point, alpha, mode)

    gens, _ = _minimal_members(S, box, keep)
    stabilized = False
    for _ in range(max(0, doublings)):
        bigger = [2 * b for b in box]
        gens2, _ = _minimal_members(S, bigger, keep)
        box = bigger
        if gens2 == gens:
            stabilized = True
            break
        gens = gens2
    return MultiplierIdealResult(
        alpha=alpha, mode=mode, generators=gens, box_used=tuple(box), stabilized=stabilized
    )


def multiplier_ideal_with_boundary(
    S: SemigroupData,
    ideal,
    w: Sequence[Rational],
    alpha: Rational,
    mode: str = "relint",
    doublings: int = 1,
) -> MultiplierIdealResult:
    """Multiplier ideal twisted by a boundary divisor encoded by ``w``.

    ``w`` is a rational vector in the character space; the associated
    boundary divisor is effective exactly when ``F(w) >= -e``, which is
    enforced.  Membership becomes ``v - w`` in the relative interior of
    ``alpha`` times the Newton polyhedron of the ideal itself (taken in the
    character space, with recession cone spanned by the extreme rays of the
    semigroup).
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if mode not in ("relint", "closed"):
        raise ValueError("mode must be 'relint' or 'closed'")
    if not isinstance(ideal, MonomialIdeal):
        ideal = monomial_ideal(S, ideal)
    wq = tuple(Fraction(x) for x in w)
    if len(wq) != S.d:
        raise ValueError("w must live in the character space")
    fw = [dot(f, wq) for f in S.facets]
    if any(x < -1 for x in fw):
        raise ValueError("boundary divisor not effective")
    P = newton_polyhedron(ideal.generators, extreme_rays(S))
    m = _vertex_maxima_q([f_map(S, p) for p in P.vertices])
    M = _generator_column_maxima(S)
    box = [
        max(1, ceil(alpha * mk + max(Fraction(0), fk)) + Mk)
        for mk, Mk, fk in zip(m, M, fw)
    ]

    def keep(q, v):
        point = tuple(Fraction(x) - y for x, y in zip(v, wq))
        return membership(P, point, alpha, mode)

    gens, _ = _minimal_members(S, box, keep)
    stabilized = False
    for _ in range(max(0, doublings)):
        bigger = [2 * b for b in box]
        gens2, _ = _minimal_members(S, bigger, keep)
        box = bigger
        if gens2 == gens:
            stabilized = True
            break
        gens = gens2
    return MultiplierIdealResult(
        alpha=alpha, mode=mode, generators=gens, box_used=tuple(box), stabilized=stabilized
    )


# ---------------------------------------------------------------------------
# thresholds and jumping coefficients
# ---------------------------------------------------------------------------


def lct(S: SemigroupData, ideal):
    """Log-canonical threshold: the dilation at which the all-ones point
    ``e`` hits the boundary of the transported polyhedron.  Returns a
    ``Fraction``, or infinity for the unit ideal."""
    P = transported_polyhedron(S, ideal)
    t = point_threshold(P, S.e)
    if t is None:
        raise AssertionError("threshold undefined for a point of the orthant")
    return t


@dataclass(frozen=True)
class JumpingReport:
    """Jumping coefficients up to ``window_max``, each with a witness.

    A witness for ``alpha`` is an exponent ``v`` in the semigroup whose
    image ``F(v) + e`` lies on the boundary of the ``alpha``-dilated
    polyhedron (closed member, not interior) — checked exactly before being
    reported.  ``search_mode`` is ``"exact"`` when the witness search is
    provably complete (character space of dimension <= 2) and
    ``"windowed"`` otherwise; candidates that could not be settled in the
    windowed regime are listed in ``unresolved``.
    """

    lct: Fraction
    jumping: tuple[tuple[Fraction, Vec], ...]
    window_max: Fraction
    search_mode: str
    unresolved: tuple[Fraction, ...]
    bfunction_check: Optional[str] = None


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _diophantine_particular(g: Sequence[int], rhs: int) -> Optional[Vec]:
    """One integer solution of ``g . v = rhs``, or ``None``."""
    n = len(g)
    nz = [i for i in range(n) if g[i]]
    if not nz:
        return tuple(0 for _ in range(n)) if rhs == 0 else None
    coeffs = [0] * n
    i0 = nz[0]
    G = abs(g[i0])
    coeffs[i0] = 1 if g[i0] > 0 else -1
    for i in nz[1:]:
        G2, x, y = _xgcd(G, g[i])
        coeffs = [c * x for c in coeffs]
        coeffs[i] += y
        G = G2
    if rhs % G:
        return None
    scale = rhs // G
    return tuple(c * scale for c in coeffs)


def _interval_pick(constraints) -> Optional[int]:
    """Integer point of a one-variable rational system ``a*t + b >= 0``."""
    lo: Optional[int] = None
    hi: Optional[int] = None
    for a, b in constraints:
        if a == 0:
            if b < 0:
                return None
        elif a > 0:
            bound = ceil(-b / a)
            lo = bound if lo is None else max(lo, bound)
        else:
            bound = floor(-b / a)
            hi = bound if hi is None else min(hi, bound)
    if lo is not None and hi is not None and lo > hi:
        return None
    if lo is not None:
        return lo
    if hi is not None:
        return hi
    return 0


def _witness_search(
    S: SemigroupData,
    P: NewtonPolyhedron,
    alpha: Fraction,
    window0: int,
    kappa: int,
    expansions: int,
) -> tuple[Optional[Vec], bool]:
    """Find ``v`` with ``F(v) + e`` on the boundary of ``alpha * P``.

    Works facet by facet: force one positive-offset facet to be tight
    (an integer linear equation on ``v``), parametrize its solutions by
    the kernel lattice, and look for a parameter choice satisfying the
    remaining inequalities.  Returns ``(witness, exhausted)`` where
    ``exhausted`` means some tight-facet system was rationally feasible
    but no lattice point was found inside the search windows.
    """
    d = S.d
    e = S.e
    exhausted = False
    for ell, c in P.facets:
        if c <= 0:
            continue
        rhs_q = alpha * c - dot(ell, e)
        if rhs_q.denominator != 1:
            continue
        rhs = int(rhs_q)

        def check(v: Vec) -> bool:
            q = f_map(S, v)
            if any(x < 0 for x in q):
                return False
            if dot(ell, q) != rhs:
                return False
            point = tuple(a + b for a, b in zip(q, e))
            return membership(P, point, alpha, "closed") and not membership(
                P, point, alpha, "relint"
            )

        if rhs == 0 and check(tuple(0 for _ in range(d))):
            return tuple(0 for _ in range(d)), exhausted
        g = tuple(dot(ell, [facet[i] for facet in S.facets]) for i in range(d))
        v0 = _diophantine_particular(g, rhs)
        if v0 is None:
            continue
        kernel = kernel_lattice_basis(IntMatrix([list(g)]))
        # inequality system on the kernel parameters tau:
        #   F(v0 + sum tau_j k_j) >= 0  and  closed membership at alpha
        rows = []
        for f in S.facets:
            rows.append(([Fraction(dot(f, k)) for k in kernel], Fraction(dot(f, v0))))
        for ell2, c2 in P.facets:
            coeffs = [
                Fraction(sum(ell2[s] * dot(S.facets[s], k) for s in range(S.nfacets)))
                for k in kernel
            ]
            const = (
                Fraction(sum(ell2[s] * dot(S.facets[s], v0) for s in range(S.nfacets)))
                + dot(ell2, e)
                - alpha * c2
            )
            rows.append((coeffs, const))
        if not kernel:
            if all(b >= 0 for _, b in rows) and check(v0):
                return v0, exhausted
            continue
        if len(kernel) == 1:
            tau = _interval_pick([(a[0], b) for a, b in rows])
            if tau is not None:
                v = tuple(x + tau * k for x, k in zip(v0, kernel[0]))
                if check(v):
                    return v, exhausted
            continue
        feasible, witness = fm_feasible([(a, -b, ">=") for a, b in rows])
        if not feasible:
            continue
        center = [int(round(x)) for x in witness]
        width = window0
        found = None
        for _ in range(expansions + 1):
            for tau in product(*(range(cj - width, cj + width + 1) for cj in center)):
                if all(dot(a, tau) + b >= 0 for a, b in rows):
                    v = tuple(
                        x + sum(t * k[i] for t, k in zip(tau, kernel))
                        for i, x in enumerate(v0)
                    )
                    if check(v):
                        found = v
                        break
            if found:
                break
            width *= kappa
        if found:
            return found, exhausted
        exhausted = True
    return None, exhausted


def jumping_coefficients(
    S: SemigroupData,
    ideal,
    window_max: Rational,
    kappa: int = 3,
    window0: int = 4,
    expansions: int = 2,
) -> JumpingReport:
    """All jumping coefficients of the pair up to ``window_max``.

    Candidates are complete: a jump at ``alpha`` forces a lattice point of
    the image onto a tight positive-offset facet, so ``alpha`` is a
    multiple of ``1/c`` for some facet offset ``c``.  Witness search is
    complete for character spaces of dimension <= 2 and windowed above
    that (window radii ``window0 * kappa^i``, ``i <= expansions``).
    """
    T = Fraction(window_max)
    threshold = lct(S, ideal)
    if threshold == INFINITY or T < threshold:
        raise ValueError("window must reach the log-canonical threshold")
    P = transported_polyhedron(S, ideal)
    candidates: set[Fraction] = set()
    for _, c in P.facets:
        if c > 0:
            n0 = ceil(threshold * c)
            for n in range(max(1, n0), floor(T * c) + 1):
                candidates.add(Fraction(n, c))
    search_mode = "exact" if S.d <= 2 else "windowed"
    jumps: list[tuple[Fraction, Vec]] = []
    unresolved: list[Fraction] = []
    for alpha in sorted(candidates):
        witness, exhausted = _witness_search(S, P, alpha, window0, kappa, expansions)
        if witness is not None:
            jumps.append((alpha, witness))
        elif exhausted and search_mode == "windowed":
            unresolved.append(alpha)
    if not jumps or jumps[0][0] != threshold:
        raise AssertionError("threshold must head the jumping list")
    return JumpingReport(
        lct=threshold,
        jumping=tuple(jumps),
        window_max=T,
        search_mode=search_mode,
        unresolved=tuple(unresolved),
    )


# ---------------------------------------------------------------------------
# the correspondence verifier
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorrespondenceReport:
    """Verdict of the roots-versus-jumping check.

    PASS: the smallest root of ``b(-s)`` equals the log-canonical
    threshold and every jumping coefficient in ``[lct, lct + 1)`` is a
    root of ``b(-s)``.  FAIL carries the specific violations.
    INCONCLUSIVE means the evidence is incomplete (uncertified b-function
    or unsettled jumping candidates in the window), not that the
    correspondence is wrong.
    """

    verdict: str
    lct: Fraction
    roots_negated: tuple[tuple[Fraction, int], ...]
    jumping_in_window: tuple[Fraction, ...]
    failures: tuple[str, ...]
    notes: tuple[str, ...]
    bfunction_result: object
    jumping_report: Optional[JumpingReport]


def verify_correspondence(
    S: SemigroupData,
    ideal,
    schedule: Sequence[int] = (1, 2, 3, 4),
    cap: int = 6,
    kappa: int = 3,
) -> CorrespondenceReport:
    """Check that jumping coefficients in ``[lct, lct + 1)`` are roots of
    ``b(-s)`` and that the threshold is the smallest root."""
    from .bsato import bfunction

    if not isinstance(ideal, MonomialIdeal):
        ideal = monomial_ideal(S, ideal)
    threshold = lct(S, ideal)
    if threshold == INFINITY:
        res = bfunction(S, ideal, schedule=schedule, cap=cap)
        ok = res.b.degree == 0
        return CorrespondenceReport(
            verdict="PASS" if ok else "FAIL",
            lct=threshold,
            roots_negated=(),
            jumping_in_window=(),
            failures=() if ok else ("unit ideal must have trivial b-function",),
            notes=("unit ideal: empty jumping set",),
            bfunction_result=res,
            jumping_report=None,
        )
    res = bfunction(S, ideal, schedule=schedule, cap=cap)
    jr = jumping_coefficients(S, ideal, threshold + 1, kappa=kappa)
    roots_neg = sorted(((-r, mult) for r, mult in res.roots), key=lambda rm: rm[0])
    root_values = {r for r, _ in roots_neg}
    in_window = tuple(a for a, _ in jr.jumping if threshold <= a < threshold + 1)

    failures: list[str] = []
    notes: list[str] = []
    if not res.stabilized:
        notes.append("b-function not certified (truncation did not stabilize)")
    if res.unfactored_remainder.degree > 0:
        notes.append("b-function has a non-rational factor; root set incomplete")
    unresolved_in_window = [a for a in jr.unresolved if threshold <= a < threshold + 1]
    if unresolved_in_window:
        notes.append(
            "unsettled jumping candidates in window: "
            + ", ".join(str(a) for a in unresolved_in_window)
        )
    for a in in_window:
        if a not in root_values:
            failures.append(f"jumping coefficient {a} is not a root of b(-s)")
    if roots_neg:
        smallest = roots_neg[0][0]
        if smallest != threshold:
            msg = f"smallest root of b(-s) is {smallest}, lct is {threshold}"
            if res.stabilized:
                failures.append(msg)
            else:
                notes.append(msg)
    else:
        failures.append("b(-s) has no rational roots but the ideal is proper")
    if failures:
        verdict = "FAIL"
    elif notes:
        verdict = "INCONCLUSIVE"
    else:
        verdict = "PASS"
    jr = replace(jr, bfunction_check=verdict)
    return CorrespondenceReport(
        verdict=verdict,
        lct=threshold,
        roots_negated=tuple(roots_neg),
        jumping_in_window=in_window,
        failures=tuple(failures),
        notes=tuple(notes),
        bfunction_result=res,
        jumping_report=jr,
    )
