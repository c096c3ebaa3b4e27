#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sparselocal {

// Simple undirected graph on vertices 0..n-1. Immutable after construction;
// adjacency lists are kept sorted so neighbor iteration order and everything
// derived from it is deterministic.
class Graph {
 public:
  Graph() = default;

  // Edges may arrive in any order and orientation; self-loops and duplicate
  // edges are rejected. `arrival`, when present, maps each vertex to its
  // arrival rank (a permutation of 0..n-1) and is preserved by value.
  Graph(int n, const std::vector<std::pair<int, int>>& edges,
        std::optional<std::vector<int>> arrival = std::nullopt);

  int num_vertices() const { return n_; }
  long long num_edges() const { return m_; }

  const std::vector<int>& neighbors(int v) const;
  int degree(int v) const;
  bool has_edge(int u, int v) const;

  // Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<std::pair<int, int>> edge_list() const;

  const std::optional<std::vector<int>>& arrival() const { return arrival_; }

  bool connected() const;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  long long m_ = 0;
  std::vector<std::vector<int>> adj_;
  std::optional<std::vector<int>> arrival_;
};

// Vertices of the closed r-neighborhood of v, sorted ascending, with
// distances from v aligned index-for-index.
struct Ball {
  std::vector<int> vertices;
  std::vector<int> dist;
};

Ball bfs_ball(const Graph& g, int v, int r);

// Subgraph induced by `s` (must be duplicate-free, vertices valid).
// Vertices are relabeled 0..|s|-1 in ascending order of their original ids;
// kept[new_id] = original id.
struct InducedSubgraph {
  Graph graph;
  std::vector<int> kept;
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> s);

// Removes the floor(q*n) vertices of smallest arrival rank and relabels the
// rest by ascending original id. Requires arrival data and q in [0,1).
// The result carries arrival ranks renumbered to 0..n'-1 preserving order.
Graph strip_early_vertices(const Graph& g, double q);

}  // namespace sparselocal
