#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sparselocal/errors.hpp"
#include "sparselocal/graph.hpp"
#include "sparselocal/rng.hpp"

namespace sparselocal {

// Eccentricity-minimizing radius of a connected graph.
int radius(const Graph& h);

// A connected pattern to search for.
struct Pattern {
  Graph graph;
  int radius = 0;

  explicit Pattern(Graph h);
};

// Spanning structure used by the colorful search: a BFS spanning tree from
// vertex 0 plus at most two extra pattern edges folded into the core. The
// remaining pattern edges are checked on the host graph after a core
// embedding is found.
struct PatternCore {
  Graph core;                                     // tree plus embedded extras, on V(H)
  std::vector<std::pair<int, int>> tree_edges;    // (parent, child), BFS order
  std::vector<std::pair<int, int>> extra_edges;   // core edges outside the tree, at most 2
  std::vector<std::pair<int, int>> deferred_edges;  // pattern edges outside the core
};

PatternCore pattern_core(const Pattern& h);

// map[pattern vertex] = host vertex; always injective and edge-preserving
// for the pattern it was produced for.
using Embedding = std::vector<int>;

struct TrialConfig {
  double epsilon = 0.01;       // per-call failure probability target
  long long trials = 0;        // color-coding rounds; 0 derives ceil(e^h ln(1/epsilon))
  double ball_cap = 0.0;       // max allowed ball size; 0 derives log(n)^{2r} d^r from the host graph
  long long max_embeddings_per_ball = 1'000'000;
  long long reps = 0;          // disjoint-pattern rounds; 0 derives ceil(c^h ln(1/epsilon))
};

// Collects every embedding of the core that the colorful trials discover in
// `host` (expected to be a small ball). Each trial colors host vertices with
// |core| colors and enumerates rainbow embeddings of the tree, filtering by
// the core's extra edges. Results are deduplicated and sorted; each is
// re-verified edge-by-edge before return. Throws capacity_error when more
// than max_embeddings_per_ball distinct embeddings accumulate, and
// invalid_argument when the host exceeds a positive ball_cap.
std::vector<Embedding> colorful_search(const Graph& host, const PatternCore& core, const TrialConfig& cfg,
                                       const Seed& seed);

// Randomized search for one embedding of a connected pattern: scan r-balls
// (r = pattern radius) in ascending center order, run colorful_search in
// each, and check deferred pattern edges on g. Falls back to deterministic
// brute force when some ball exceeds the ball cap. One-sided: a returned
// embedding is always correct; absence may be a miss with probability at
// most epsilon per ball.
std::optional<Embedding> find_subgraph(const Graph& g, const Pattern& h, const TrialConfig& cfg,
                                       const Seed& seed);

// Disjoint union of connected patterns: repeatedly color g with one color
// class per part and require part i inside class i, so each round succeeds
// with probability at least c^-h. Returns one embedding per part, pairwise
// disjoint, or nullopt (one-sided, like find_subgraph).
std::optional<std::vector<Embedding>> find_subgraph_multi(const Graph& g, const std::vector<Pattern>& parts,
                                                          const TrialConfig& cfg, const Seed& seed);

// Deterministic backtracking search; h may be disconnected. Returns the
// lexicographically first embedding in its fixed search order, or nullopt.
std::optional<Embedding> brute_force_embed(const Graph& g, const Graph& h);

// Throws std::logic_error unless map is injective and maps every edge of h
// to an edge of g.
void validate_embedding(const Graph& g, const Graph& h, const Embedding& map);

}  // namespace sparselocal
