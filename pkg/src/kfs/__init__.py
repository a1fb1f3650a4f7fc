"""Certified spectral-radius enclosures and k-factor certificates.

The package decides k-factor existence two independent ways (deficiency
splits and a matching gadget), computes certified spectral-radius
enclosures by power iteration with interval arithmetic guards, and runs
verification campaigns tying the two together around an extremal family
of near-threshold graphs.
"""
from .factors import (
    DEFAULT_SCAN_CAP,
    ClassWitness,
    DeficiencyWitness,
    FactorOutcome,
    GadgetMap,
    deficiency,
    has_k_factor,
    in_class_Gkn,
    in_class_Gnk_big,
    max_matching,
    search_certificate,
    tutte_gadget,
    validate_factor,
)
from .graph6 import Graph6Error, decode, encode
from .graphs import (
    MAX_VERTICES,
    GnkParams,
    Graph,
    add_edge,
    build_base_family_member,
    build_gnk,
    complement,
    complete,
    disjoint_union,
    empty,
    from_edges,
    gnk_blocks,
    induced_subgraph,
    join,
    random_graph,
    relabel,
    remove_edge,
)
from .report import canonical_json_bytes, render_table, write_details_csv, write_report
from .spectral import (
    DEFAULT_TOL,
    Ordering,
    SpectralEstimate,
    compare_estimates,
    compare_rho,
    hsf_bound,
    rho,
)
from .verify import (
    Failure,
    TheoremCheck,
    Verdict,
    VerificationReport,
    edge_addition_sweep,
    exhaustive_small_campaign,
    in_theorem_range,
    lemma1_monotonicity_suite,
    lemma2_rewiring_suite,
    lemma5_restricted_extremality,
    random_campaign,
    recognize_gnk,
    resolve_jobs,
    theorem_range_min,
    verify_theorem_on,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SCAN_CAP",
    "DEFAULT_TOL",
    "MAX_VERTICES",
    "ClassWitness",
    "DeficiencyWitness",
    "FactorOutcome",
    "Failure",
    "GadgetMap",
    "GnkParams",
    "Graph",
    "Graph6Error",
    "Ordering",
    "SpectralEstimate",
    "TheoremCheck",
    "Verdict",
    "VerificationReport",
    "add_edge",
    "build_base_family_member",
    "build_gnk",
    "canonical_json_bytes",
    "compare_estimates",
    "compare_rho",
    "complement",
    "complete",
    "decode",
    "deficiency",
    "disjoint_union",
    "edge_addition_sweep",
    "empty",
    "encode",
    "exhaustive_small_campaign",
    "from_edges",
    "gnk_blocks",
    "has_k_factor",
    "hsf_bound",
    "in_class_Gkn",
    "in_class_Gnk_big",
    "in_theorem_range",
    "induced_subgraph",
    "join",
    "lemma1_monotonicity_suite",
    "lemma2_rewiring_suite",
    "lemma5_restricted_extremality",
    "max_matching",
    "random_campaign",
    "random_graph",
    "recognize_gnk",
    "relabel",
    "remove_edge",
    "render_table",
    "resolve_jobs",
    "rho",
    "search_certificate",
    "theorem_range_min",
    "tutte_gadget",
    "validate_factor",
    "verify_theorem_on",
    "write_details_csv",
    "write_report",
]
