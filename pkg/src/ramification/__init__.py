"""Ramification types of polynomial maps: counting, stratum posets, census."""

from .census import (
    CensusRecord,
    PreconditionError,
    TypeOfResult,
    branch_poly,
    census,
    infer_c,
    ram_length,
    type_of,
    verify_count,
)
from .field import FieldParams, field_from_q, field_make
from .partitions import enumerate_partitions, partition_count
from .poly import DensePoly, poly_gcd_monic, resultant, squarefree_decomposition
from .poset import (
    GradedPoset,
    GroupAction,
    IntervalCohomology,
    interval_cohomology,
    invariant_cohomology,
    is_locally_semimodular,
    mobius,
    partition_lattice,
)
from .ramtypes import (
    AdmissibilityReport,
    BranchProfile,
    RamificationType,
    c_of_m,
    enumerate_types,
    is_affine_admissible,
    is_combinatorially_admissible,
    minimal_admissible_n,
    type_length,
)
from .strata import (
    SetPartition,
    StratumLabel,
    build_poset,
    check_vanishing,
    orbit_decomposition,
    quotient_poset,
    stabilization_check,
    stratum_invariants,
)

__version__ = "0.1.0"
