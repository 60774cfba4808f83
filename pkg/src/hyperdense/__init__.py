"""Exact decision procedures for Zariski density of S-integral points on the
complement of a hyperplane arrangement defined over a number field.

The package is layered: exact polynomials and linear algebra, number fields
and their certified complex embeddings, splitting fields with their Galois
groups, CM subfield detection, arrangements decomposed over the base field,
the density decision itself, and constructive witnesses (unit points, rank
probes, explicit vanishing forms).
"""

from .arrangement import (
    Arrangement,
    Component,
    Hyperplane,
    HyperplaneSpec,
    NormComponentSpec,
    build_arrangement,
    component_norm_form,
    components_over_k,
    linear_rank,
    minimal_definition_field,
)
from .cmfields import (
    CmReport,
    contains_cm_subfield_over,
    is_cm_field,
    maximal_cm_subfield_via_group,
    same_subfield,
)
from .density import (
    IdentitySolution,
    PlaceSpec,
    SplittingRecord,
    UnitActionData,
    Verdict,
    decide_general_s,
    decide_s_infinity,
    is_galois_over,
    prime_splitting,
    solve_identity_linear_algebra,
)
from .embeddings import (
    EmbeddingSet,
    RootBox,
    count_real_roots,
    embeddings_of,
    is_totally_imaginary,
    is_totally_real,
    isolate_real_roots,
    isolate_roots,
    signature,
    unit_rank,
)
from .errors import (
    CertificationError,
    DegreeCapError,
    DimensionError,
    HyperdenseError,
    NotAUnitError,
    NotCMError,
    NotDefinedOverK,
    ReducibleError,
)
from .factor import factor_over_q, is_irreducible
from .fieldpoly import factor_over_field, roots_in_field
from .galois import (
    PermutationGroup,
    SplittingField,
    automorphism_group,
    complex_conjugation,
    fixed_field,
    galois_closure,
    splitting_field,
    subgroups_between,
)
from .linalg import nullspace, rank, rref, solve
from .mpoly import MPoly
from .numberfield import (
    FieldElement,
    NumberField,
    identity_embedding,
    rational_embedding,
    SubfieldEmbedding,
    make_field,
    norm_form,
    primitive_element,
    rational_field,
)
from .polynomial import Poly, cyclotomic, discriminant, resultant
from .problem import Problem, load_problem, parse_problem
from .witness import (
    DensityReport,
    ProjectivePointSet,
    UnitSupply,
    cm_vanishing_forms,
    embeddings_over,
    empirical_density,
    make_unit_supply,
    torsion_units,
    product_points,
    unit_points,
    verify_integrality,
    verify_multiplicative_identity,
)

__version__ = "0.1.0"
