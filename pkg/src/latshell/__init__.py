"""Modular structure in finite lattices, shellability of order-complex
skeleta, discrete-Morse style chain analysis, and subgroup-lattice
solvability criteria."""

from .poset import (
    Chain,
    Poset,
    build_poset,
    interval,
    is_graded,
    maximal_chains,
    order_complex,
)
from .lattice import (
    Lattice,
    ModularChain,
    chains_of_complements,
    classify_modularity,
    complements,
    generated_sublattice,
    is_distributive,
    is_modular_pair,
    lattice_check,
    verify_chain_modularity,
)
from .labeling import (
    AscentSpine,
    ChainStats,
    EdgeLabeling,
    RootedLabeling,
    chain_stats,
    first_label_separation,
    geometric_atom_labeling,
    left_modular_labeling,
    min_chain_complexity,
    refine_to_el,
    verify_el,
    verify_quasi_cl,
    verify_quasi_el,
)
from .complexes import (
    SimplicialComplex,
    VDLeaf,
    VDNode,
    betti_numbers,
    constructive_vd_full,
    constructive_vd_skeleton,
    depth,
    is_cohen_macaulay,
    is_shedding_vertex,
    is_vd_bruteforce,
    lex_greatest_single_descent_chain,
    shelling_from_vd,
    validate_vd_certificate,
    verify_shelling,
)
from .morse import (
    connectivity_lower_bound,
    descending_equals_complements,
    homology_consistency,
    minimal_skipped_intervals,
    verify_skipped_interval_rules,
    weakly_descending_chains,
)
from .groups import (
    PermGroup,
    group_from_generators,
    is_solvable,
    skeleton_shellability_criterion,
    solvability_by_depth,
    subgroup_lattice,
    subgroups,
    thevenaz_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
