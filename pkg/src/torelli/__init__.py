"""Exact stable cohomology of Torelli groups as symplectic or orthogonal classes."""

from .branching import (
    ClassSeries,
    D,
    D_series,
    OrthSympClass,
    class_to_schur,
    dim_irrep,
    nl_coefficient,
    nl_product,
    render_class,
    render_class_series,
    restrict_coeffs,
    restrict_schur,
    restrict_series,
)
from .characters import (
    ClassFunction,
    ch_q,
    decompose,
    irreducible_character,
    murnaghan_nakayama,
)
from .graphs import (
    MarkedGraph,
    SignedGraphVector,
    corolla,
    parse_graph,
    presentation_audit,
    reduce,
    reduce_trivalent,
)
from .invariants import (
    DenseTensor,
    EpsForm,
    harmonic_multiplicity,
    harmonic_projection,
    matching_span_rank,
    omega_m,
    perfect_matchings,
)
from .labels import (
    LabelMonomial,
    ch_B,
    l_class,
    l_class_image,
    parse_label,
    poincare_series,
)
from .partitions import (
    Partition,
    parse_partition,
    partitions_of,
    symmetric_group_irrep_dim,
    z_lambda,
)
from .pipeline import (
    CohomologyTable,
    ConfigError,
    ExtrapolationWarning,
    NegativeMultiplicity,
    OracleReport,
    PipelineConfig,
    Unsupported,
    compute_cohomology,
    oracle_check,
    stable_range,
    variant_adjust,
)
from .setparts import (
    BrauerMorphism,
    LabelledPartition,
    SignedPartitionVector,
    apply_morphism,
    day_product,
    enumerate_basis,
    quotient_series_by_L,
    sigma_character,
)
from .symfunc import (
    LambdaSeries,
    SymFunc,
    change_basis,
    exp_h,
    lr_coefficient,
    omega,
    plethysm,
    render_series,
    series_invert,
)

__all__ = [
    "BrauerMorphism",
    "ClassFunction",
    "ClassSeries",
    "CohomologyTable",
    "ConfigError",
    "D",
    "D_series",
    "DenseTensor",
    "EpsForm",
    "ExtrapolationWarning",
    "LabelMonomial",
    "LabelledPartition",
    "LambdaSeries",
    "MarkedGraph",
    "NegativeMultiplicity",
    "OracleReport",
    "OrthSympClass",
    "Partition",
    "PipelineConfig",
    "SignedGraphVector",
    "SignedPartitionVector",
    "SymFunc",
    "Unsupported",
    "apply_morphism",
    "ch_B",
    "ch_q",
    "change_basis",
    "class_to_schur",
    "compute_cohomology",
    "corolla",
    "day_product",
    "decompose",
    "dim_irrep",
    "enumerate_basis",
    "exp_h",
    "harmonic_multiplicity",
    "harmonic_projection",
    "irreducible_character",
    "l_class",
    "l_class_image",
    "lr_coefficient",
    "matching_span_rank",
    "murnaghan_nakayama",
    "nl_coefficient",
    "nl_product",
    "omega",
    "omega_m",
    "oracle_check",
    "parse_graph",
    "parse_label",
    "parse_partition",
    "partitions_of",
    "perfect_matchings",
    "plethysm",
    "poincare_series",
    "presentation_audit",
    "quotient_series_by_L",
    "reduce",
    "reduce_trivalent",
    "render_class",
    "render_class_series",
    "render_series",
    "restrict_coeffs",
    "restrict_schur",
    "restrict_series",
    "series_invert",
    "sigma_character",
    "stable_range",
    "symmetric_group_irrep_dim",
    "variant_adjust",
    "z_lambda",
]
