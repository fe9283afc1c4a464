"""Lattice models of symplectic 4-manifolds: enumeration, splitting formulas,
and minimality decisions for sphere sums."""

__version__ = "0.1.0"

from .errors import (
    BasisChangeNotFound,
    BasisError,
    ContactMismatchError,
    GenusMismatch,
    MalformedDecompositionError,
    NotASphereCap,
    NotExceptionalError,
    PreconditionError,
    SquareMismatch,
    SympsumError,
)
from .lattice import (
    HomologyClass,
    IntersectionLattice,
    ManifoldModel,
    ModelFlags,
    SymplecticPair,
    adjunction_genus,
    gram_determinant,
    gram_signature,
    pairing,
    square,
    validate_model,
    validate_pair,
)
from .models import (
    CapKind,
    StandardCap,
    blow_down,
    blow_up,
    cap_bundle_fiber,
    cap_bundle_section,
    cap_cp2_2h,
    cap_cp2_h,
    completion_Q,
    cp2_blowup,
    exceptional_class_of,
    proper_transform,
    s2_bundle,
    standard_caps,
)
from .spheres import (
    RationalRow,
    RelativeMinimality,
    RuledRow,
    SphereClassReport,
    canonical_key,
    enumerate_exceptional_candidates,
    enumerate_sphere_classes,
    exceptional_search_is_exhaustive,
    find_blowdown_witness_pairs,
    is_relatively_minimal,
    reproduce_rational_table,
    reproduce_ruled_table,
)
from .gw import (
    ContactVector,
    Level,
    LevelDecomposition,
    VanishingVerdict,
    absolute_constraint_degree,
    glued_class,
    glued_genus,
    multilevel_index,
    purely_relative_vanishes,
    relative_constraint_degree,
    strata_dimension_bound,
)
from .fibersum import (
    ContributorAnalysis,
    ContributorConfiguration,
    MinimalityVerdict,
    SplittingRecord,
    check_compatibility,
    classify_cap,
    decide_minimality,
    enumerate_splittings,
    rational_blowdown_contributors,
    split_canonical,
    split_square,
    sum_characteristic_numbers,
)
from .manifest import Manifest, ManifestError, load_manifest, manifest_violations, parse_cap_label
