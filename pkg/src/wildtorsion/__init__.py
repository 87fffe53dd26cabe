"""Torsion of H^1(G, R') for wild Galois extensions of k((t)): closed formula and brute-force oracle."""

from .cohomology import (
    CohomologyResult,
    h1_cocycle,
    h1_invariants_of_subgroup,
    recheck_at,
    stabilized_h1,
    wild_subgroup,
)
from .errors import (
    GroupRelationError,
    InputError,
    NotGaloisError,
    PrecisionError,
    ResourceError,
    StabilizationError,
    TorsionError,
)
from .extension import (
    ExtensionSpec,
    LocalExtension,
    RamificationProfile,
    apply_galois,
    build_extension,
    ramification_profile,
    truncate_to_matrices,
    valuation,
)
from .field import FieldCtx, FieldElem, field_make, primitive_root_of_unity
from .report import Grid, JobSpec, Report, run_job, sweep
from .sen import (
    TorsionPartition,
    example_closed_form,
    kock_transform,
    sen_i_function,
    sen_intermediate,
    sen_partition,
)
from .series import INF, LaurentSeries, ZeroToPrecision, ls_add, ls_inv, ls_mul, ls_neg, ls_ord

__version__ = "0.1.0"
