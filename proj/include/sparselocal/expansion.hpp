#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sparselocal/errors.hpp"
#include "sparselocal/graph.hpp"

namespace sparselocal {

// Simple directed graph (no loops, no parallel arcs; antiparallel pairs are
// allowed). Out- and in-lists are sorted.
class Digraph {
 public:
  Digraph() = default;
  Digraph(int n, const std::vector<std::pair<int, int>>& arcs);

  int num_vertices() const { return n_; }
  long long num_arcs() const { return a_; }
  const std::vector<int>& out(int v) const;
  const std::vector<int>& in(int v) const;
  bool has_arc(int u, int v) const;
  int max_in_degree() const;
  std::vector<std::pair<int, int>> arc_list() const;  // sorted (tail, head)

  // Forgets directions; an antiparallel pair collapses to one edge.
  Graph underlying() const;

 private:
  int n_ = 0;
  long long a_ = 0;
  std::vector<std::vector<int>> out_, in_;
};

// Orients each edge from the endpoint with the lexicographically larger
// (degree, id) key to the smaller, so arcs point from higher-degree vertices
// down and every vertex has in-degree at most its degree. Ties cannot occur;
// the result is acyclic along the key order.
Digraph low_degree_orientation(const Graph& g);

struct TfaOptions {
  // Hard bound on the arc count of any produced digraph; <0 means use the
  // default 50 * |E(g)| chosen at tfa_run entry. tfa_step applies it only
  // when nonnegative.
  long long arc_cap = -1;
};

// One transitivity-and-fraternity augmentation round, computed entirely from
// the input digraph: all transitive shortcuts (x->z->y gives x->y) are added,
// and every unlinked fraternal pair (x->z<-y with no arc between x and y)
// becomes an edge of an auxiliary graph that is then low-degree oriented and
// merged in. Throws capacity_error if the result would exceed the cap.
Digraph tfa_step(const Digraph& dg, const TfaOptions& options = {});

struct AugmentationTrace {
  struct Record {
    int step = 0;  // 1 is the initial orientation
    long long arcs = 0;
    int max_in_degree = 0;
  };
  std::vector<Record> records;
};

// Initial low-degree orientation followed by `steps` augmentation rounds.
// The trace holds one record per produced digraph (steps + 1 records).
std::pair<Digraph, AugmentationTrace> tfa_run(const Graph& g, int steps, const TfaOptions& options = {});

struct Coloring {
  std::vector<int> colors;
  int palette_size = 0;
};

// Colors vertices in descending-degree order (ties by ascending id) with the
// smallest color absent from each vertex's already-colored neighborhood.
Coloring greedy_coloring(const Graph& g);

struct PCenteredViolation {
  std::vector<int> colors;     // offending color subset, ascending
  std::vector<int> component;  // vertices of a component where no color is unique
};

struct PCenteredCheck {
  bool ok = false;
  std::optional<PCenteredViolation> witness;
};

// Checks whether `coloring` is p-centered on g: every connected subgraph
// either sees more than p colors or has some color exactly once. Equivalent
// component form is used: for every subset C of at most p colors, every
// connected component of the C-colored induced subgraph must contain a
// uniquely occurring color. Subsets are scanned by size then lexicographic
// order and the first failure is reported. max_subsets is a work budget:
// scanning more than that many subsets without a verdict raises
// capacity_error.
PCenteredCheck verify_p_centered(const Graph& g, const Coloring& coloring, int p,
                                 long long max_subsets = 1'000'000);

struct PCenteredResult {
  Coloring coloring;
  int steps_used = 0;  // 1-based index of the verified digraph (1 = initial orientation)
};

struct PCenteredOptions {
  long long max_subsets = 1'000'000;
  TfaOptions tfa;
};

// Augment-and-recolor loop: greedily color the current augmented underlying
// graph, verify p-centeredness on g, and apply another tfa_step on failure.
// Tries the digraphs 1..max_steps of the augmentation sequence; throws
// capacity_error if none of their colorings verifies.
PCenteredResult compute_p_centered(const Graph& g, int p, int max_steps,
                                   const PCenteredOptions& options = {});

}  // namespace sparselocal
