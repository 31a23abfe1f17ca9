"""Exact toolkit for extremal families of fixed-weight vectors over
finite fields: field arithmetic, GF(q) linear algebra, closed-form
counting, extremal constructions, and brute-force oracles."""

from .constructions import (
    ConstructionReport,
    build_affine_family,
    build_coweight_family,
    build_dual_hamming,
    build_labeled_family,
    build_weight_family,
    check_report,
)
from .errors import (
    BudgetExceededError,
    FieldMismatchError,
    NotADownSetError,
    NotExhaustiveError,
    NotPrimePowerError,
    ProfileTooHeavyError,
    UnsupportedFieldError,
)
from .formulas import (
    ExtremalValue,
    aex_formula,
    bound_sums,
    coex_formula,
    count_orthogonal_nonzero,
    downset_count,
    ex_formula,
    ex_labeled_formula,
    hamming_params,
    multinomial,
    spacecount,
)
from .gf import FieldSpec, make_field, verify_field_axioms
from .linalg import (
    GfMatrix,
    GfVector,
    Subspace,
    a_rank,
    append_row,
    delete_row,
    enumerate_subspaces,
    gaussian_binomial,
    orthogonal_complement,
    rank,
    rref,
    subspace_members,
)
from .search import (
    OracleQuery,
    OracleResult,
    check_uniqueness,
    oracle_aex,
    oracle_coex,
    oracle_downset,
    oracle_ex,
    run_oracle,
    verify_recursion,
)
from .vectors import (
    LabelSystem,
    coweight,
    downset_closure,
    enumerate_coweight_vectors,
    enumerate_profile_vectors,
    is_down_set,
    profile_of,
    weight,
)

__version__ = "0.1.0"
