"""Exact Bernstein-Sato polynomials, multiplier ideals, log-canonical
thresholds and jumping coefficients for monomial ideals in normal toric
semigroup rings.

Everything is exact: integers, ``fractions.Fraction`` and lattice
arithmetic end to end.  The monomial data of the toric variety enters
through the facet map ``F`` of its cone; b-functions come from a Groebner
elimination over an explicit generator family, multiplier ideals and
jumping coefficients from Newton-polyhedron membership, and the two sides
are tied together by ``verify_correspondence``.
"""

from .bsato import (
    BFunctionResult,
    TruncationExhausted,
    bfunction,
    binom_poly,
    build_generator,
    c_vectors,
    eliminate_minimal_univariate,
    groebner_basis,
    monomial_generator,
    rational_roots,
    verify_groebner_basis,
)
from .exactnum import (
    IntMatrix,
    det,
    hermite_normal_form,
    kernel_lattice_basis,
    lattice_is_saturated,
    primitive_vector,
    solve_linear,
)
from .multipoly import MonomialOrder, MultiPoly, UniPoly, block_elimination, grevlex
from .multiplier import (
    CorrespondenceReport,
    JumpingReport,
    MultiplierIdealResult,
    ambient_pair,
    identity_semigroup,
    jumping_coefficients,
    lct,
    multiplier_ideal,
    multiplier_ideal_with_boundary,
    transport,
    transport_polynomial,
    transported_polyhedron,
    verify_correspondence,
)
from .polyhedra import (
    INFINITY,
    NewtonPolyhedron,
    cone_facet_normals,
    membership,
    newton_polyhedron,
    point_threshold,
)
from .toric import (
    MonomialIdeal,
    SemigroupData,
    StructuralError,
    assume_normal,
    build_semigroup,
    extreme_rays,
    f_map,
    f_section,
    is_normal,
    minimalize_exponents,
    monomial_ideal,
    theta_generator,
)

__version__ = "0.1.0"
