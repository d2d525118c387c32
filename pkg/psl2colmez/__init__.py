"""
psl2colmez.
Exact computations for unitary CM fields with Galois group PSL2(F_q) x Z/2:
character tables, CM type census and the Colmez class function.
"""

__version__ = "0.1.0"

from .fields.finite_field import FieldConfig, FieldElement, RepSetA, field_of_order, make_field
from .groups.psl2 import PSL2, ClassKind, ConjClassLabel, P1Point, ProjectiveMatrix, make_group
from .cyclotomic.cyclotomic import CycloNumber, exact_sum, gauss_sum
from .characters.chartable import (
    CharacterTable,
    ClassFunction,
    build_table,
    fixed_point_character,
    induce_from_subgroup,
    inner_product,
)
from .cmtypes.cmtypes import (
    CensusRow,
    CMType,
    act,
    canonical_form,
    census,
    count_orbits_burnside,
    equivalent,
    exhaustive_orbit_counts,
    orbit,
    stabilizer,
)
from .colmez.group_ring import (
    ExtClassFunction,
    ExtClassLabel,
    ExtendedGroup,
    GalElement,
    GroupRingElement,
    extend_cm_type,
)
from .colmez.a_phi import (
    a_phi,
    a_phi0,
    decompose_a_phi0,
    induced_form,
    make_extended,
    star_term_check,
    theorem61_rhs,
    verify_theorem61,
)
from .colmez.identities import (
    class_multiset_of_borel,
    class_multiset_of_product,
    lemma_identities,
)
from .heights.l_functions import QuadraticCharacter, l_deriv_at_0, l_value_at_0, z0, z0_zeta_q
from .heights.quadratic_forms import class_number, unit_count
from .heights.heights import HeightExpression, average_height_check, theorem72_height
from .references.references import DEFAULTS, REFERENCE_CENSUS
from .utils.utils import setup_logging
from .utils.verification import SuiteResult, run_suites


__all__ = [
    "FieldConfig",
    "FieldElement",
    "RepSetA",
    "field_of_order",
    "make_field",
    "PSL2",
    "ClassKind",
    "ConjClassLabel",
    "P1Point",
    "ProjectiveMatrix",
    "make_group",
    "CycloNumber",
    "exact_sum",
    "gauss_sum",
    "CharacterTable",
    "ClassFunction",
    "build_table",
    "fixed_point_character",
    "induce_from_subgroup",
    "inner_product",
    "CensusRow",
    "CMType",
    "act",
    "canonical_form",
    "census",
    "count_orbits_burnside",
    "equivalent",
    "exhaustive_orbit_counts",
    "orbit",
    "stabilizer",
    "ExtClassFunction",
    "ExtClassLabel",
    "ExtendedGroup",
    "GalElement",
    "GroupRingElement",
    "extend_cm_type",
    "a_phi",
    "a_phi0",
    "decompose_a_phi0",
    "induced_form",
    "make_extended",
    "star_term_check",
    "theorem61_rhs",
    "verify_theorem61",
    "class_multiset_of_borel",
    "class_multiset_of_product",
    "lemma_identities",
    "QuadraticCharacter",
    "l_deriv_at_0",
    "l_value_at_0",
    "z0",
    "z0_zeta_q",
    "class_number",
    "unit_count",
    "HeightExpression",
    "average_height_check",
    "theorem72_height",
    "DEFAULTS",
    "REFERENCE_CENSUS",
    "setup_logging",
    "SuiteResult",
    "run_suites",
]
