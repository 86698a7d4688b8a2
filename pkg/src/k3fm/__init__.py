"""Exact lattice and discriminant-form toolkit for counting twisted
Fourier-Mukai partners of K3 surfaces."""
from .discform import (
    DiscriminantForm,
    FiniteIsometry,
    double_coset_count,
    double_cosets,
    is_isometric,
    isometry_group,
    isotropic_elements,
    orbits,
    perp_mod,
)
from .errors import K3FMError, InvariantViolation
from .fmcount import FmCountReport, HodgeGroupSpec, count_fm, count_fm_d1
from .lattice import (
    EvenLattice,
    direct_sum,
    discriminant_form,
    make_lattice,
    named,
    parse_lattice,
    rank_one,
    rescale,
)
from .overlattice import OverlatticeResult, overlattice
from .picard1 import closed_count, list_partners, partner_distinct, sigma_set

__version__ = "0.1.0"

__all__ = [
    "DiscriminantForm", "FiniteIsometry", "double_coset_count", "double_cosets", "is_isometric",
    "isometry_group", "isotropic_elements", "orbits", "perp_mod", "K3FMError",
    "InvariantViolation", "FmCountReport", "HodgeGroupSpec", "count_fm", "count_fm_d1",
    "EvenLattice", "direct_sum", "discriminant_form", "make_lattice", "named", "parse_lattice",
    "rank_one", "rescale", "OverlatticeResult", "overlattice", "closed_count", "list_partners",
    "partner_distinct", "sigma_set",
]
