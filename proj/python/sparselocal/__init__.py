"""Local-structure toolkit for sparse random graphs."""

from ._core import (
    RNG_ID,
    Ball,
    BallStats,
    BasicLocalSentence,
    BoundCheck,
    CapacityError,
    Coloring,
    Digraph,
    ExperimentReport,
    ExperimentSpec,
    Graph,
    LocalPredicate,
    PathProbEstimate,
    Pattern,
    PatternCore,
    PCenteredResult,
    ScatterResult,
    Seed,
    SentenceResult,
    SurplusProfile,
    UndecidedError,
    __version__,
    bfs_ball,
    brute_force_embed,
    brute_force_sentence,
    check_sentence,
    compute_p_centered,
    count_cycles,
    count_dense_subgraphs,
    dumps_edgelist,
    edge_surplus,
    estimate_path_prob,
    eval_local_predicate,
    exact_scattered,
    find_subgraph,
    find_subgraph_multi,
    gen_ba,
    gen_er,
    greedy_coloring,
    greedy_scattered,
    induced_subgraph,
    load_edgelist,
    load_sentence,
    loads_edgelist,
    low_degree_orientation,
    max_ball_size,
    nhood_size_bound,
    parse_sentence,
    pattern_core,
    radius,
    run_experiment,
    save_edgelist,
    strip_early_vertices,
    surplus_profile,
    tfa_run,
    tfa_step,
    validate_embedding,
    verify_p_centered,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
