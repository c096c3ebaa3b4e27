#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "sparselocal/errors.hpp"
#include "sparselocal/graph.hpp"
#include "sparselocal/subgraph_iso.hpp"

namespace sparselocal {

// Vertex-local predicates evaluated on the induced ball N_radius(v).
struct ContainsPattern {
  Pattern pattern;
  int radius = 1;
};

struct MinDegreeInBall {
  int t = 0;       // degree of the center within its ball
  int radius = 1;
};

struct SurplusAtLeast {
  int m = 0;       // edges(ball) - |ball| >= m
  int radius = 1;
};

struct LocalPredicate {
  std::variant<ContainsPattern, MinDegreeInBall, SurplusAtLeast> kind;
  // Ball surplus at or above this triggers the naive evaluation branch for
  // pattern containment (dense balls defeat the structured search). Defaults:
  // |pattern| + 2, t + 2, m + 2.
  int surplus_threshold = 0;

  int radius() const;

  static LocalPredicate contains_pattern(Pattern pattern, int radius, int surplus_threshold = -1);
  static LocalPredicate min_degree_in_ball(int t, int radius, int surplus_threshold = -1);
  static LocalPredicate surplus_at_least(int m, int radius, int surplus_threshold = -1);
};

bool eval_local_predicate(const Graph& g, int v, const LocalPredicate& pred);

// "There exist s vertices, pairwise at distance greater than 2r, whose
// r-balls each satisfy pred." The predicate's own radius is independent of
// the scattering radius r.
struct BasicLocalSentence {
  int s = 1;
  int r = 1;
  LocalPredicate pred;
};

// JSON form:
//   {"s": 2, "r": 1, "pred": {"type": "contains_pattern",
//                             "pattern": "<edge list path>", "radius": 1}}
// Other predicate types: {"type": "min_degree_in_ball", "t": 3, "radius": 1}
// and {"type": "surplus_at_least", "m": 1, "radius": 2}. An optional
// "surplus_threshold" overrides the default fallback trigger. Relative
// pattern paths resolve against base_dir.
BasicLocalSentence parse_sentence(const nlohmann::json& j, const std::string& base_dir = ".");
BasicLocalSentence load_sentence(const std::string& path);

struct ScatterResult {
  bool found = false;
  std::vector<int> set;        // the scattered set that was built (see ops)
  long long greedy_size = 0;   // size the greedy pass reached
  bool used_exact = false;     // exact search ran after greedy fell short
};

// Scans `centers` in ascending vertex order, keeping each vertex at distance
// greater than 2r from everything already kept; stops once s are found.
ScatterResult greedy_scattered(const Graph& g, const std::vector<int>& centers, int r, int s);

struct ScatterOptions {
  long long node_budget = 10'000'000;  // branch-and-bound nodes before giving up
};

// Greedy first; when greedy stalls below s, decides exactly via maximum
// independent set on the conflict graph (centers adjacent iff distance at
// most 2r). `set` is then a maximum scattered subset of centers. Throws
// undecided_error if the search exceeds the node budget.
ScatterResult exact_scattered(const Graph& g, const std::vector<int>& centers, int r, int s,
                              const ScatterOptions& options = {});

struct SentenceResult {
  bool holds = false;
  std::optional<std::vector<int>> witnesses;  // s pairwise-far satisfying vertices
};

// Decides a basic local sentence: marks the vertices whose ball satisfies
// the predicate, then looks for an r-scattered set of s of them.
SentenceResult check_sentence(const Graph& g, const BasicLocalSentence& sentence,
                              const ScatterOptions& options = {});

// Independent reference decision: same predicate marking, then direct
// enumeration of s-subsets of marked vertices with pairwise BFS distance
// checks. Throws capacity_error when C(marked, s) exceeds max_subsets.
SentenceResult brute_force_sentence(const Graph& g, const BasicLocalSentence& sentence,
                                    long long max_subsets = 10'000'000);

}  // namespace sparselocal
