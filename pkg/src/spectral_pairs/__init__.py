"""Twisted pairs on P^1, their spectral curves, and the covers those curves define."""
from .errors import DomainError, OutsideTable, UnpackableFactorization
from .ratpoly import LambdaPoly, Poly, discriminant, resultant
from .sections import Section, flip_chart, is_generic, zero_profile
from .pairs import (
    BGType,
    CyclicChain,
    FactoredSection,
    HitchinTuple,
    Stability,
    TwistedPair,
    cayley_hamilton_check,
    chain_stability,
    char_coefficients_det,
    char_coefficients_newton,
    companion,
    cyclic_chain_build,
    grothendieck_constraint,
    nitsure_dimension,
    slope,
)
from .spectral import (
    Tri,
    cyclic_integrality,
    discriminant_section,
    genus_formula,
    genus_hurwitz_cyclic,
    smooth_locus_check,
    spectral_report,
)
from .permgroups import cyclic_cover_factorizable, is_imprimitive, minimal_blocks
from .tower import plan_tower, pushforward_degree
from .elliptic import EllipticBundleSpec, pushforward_splitting

__version__ = "0.1.0"
