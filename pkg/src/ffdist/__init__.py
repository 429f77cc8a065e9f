"""Family-free DCJ-indel distances between genomes with marker similarities."""

from .decomposition import (
    CappingSet,
    ConsistentDecomposition,
    SiblingSet,
    best_over_cappings,
    evaluate_unweighted,
    evaluate_weighted,
    induce,
)
from .diagram import (
    build_ffr,
    build_ffrc,
    build_singular_diagram,
    cap,
    count_runs,
    count_transitions,
    dcj_distance_canonical,
    dcj_indel_circular,
    dcj_indel_upper_bound,
    decompose,
    indel_potential,
    lambda_via_transitions,
)
from .engines import compute_distance
from .errors import FFDistError
from .exact import Limits, balanced_reduction, ffd_exact, iter_decompositions, unwffd_exact
from .genome import Chromosome, Genome, genome_stats, parse_genomes, render_genomes
from .ilp import build_ilp, emit_lp, interpret, parse_lp, parse_solution, run_solver, solve_exhaustive
from .phylo import (
    DistanceMatrix,
    neighbor_joining,
    pairwise_matrix,
    parse_newick,
    parse_phylip,
    reroot_outgroup,
    write_newick,
    write_phylip,
)
from .simgen import SimParams, simulate_pair
from .similarity import SimilarityGraph, apply_threshold, indel_weight, parse_similarities

__version__ = "0.1.0"
