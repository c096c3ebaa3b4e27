#include "sparselocal/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

namespace sparselocal {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges,
             std::optional<std::vector<int>> arrival)
    : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0))), arrival_(std::move(arrival)) {
  if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
      throw std::invalid_argument("Graph: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("Graph: self-loop");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nb : adj_) {
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
      throw std::invalid_argument("Graph: duplicate edge");
  }
  m_ = static_cast<long long>(edges.size());
  if (arrival_) {
    if (static_cast<int>(arrival_->size()) != n_)
      throw std::invalid_argument("Graph: arrival size != n");
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    for (int rank : *arrival_) {
      if (rank < 0 || rank >= n_ || seen[rank])
        throw std::invalid_argument("Graph: arrival is not a permutation of 0..n-1");
      seen[rank] = 1;
    }
  }
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("Graph: vertex " + std::to_string(v) + " out of range");
}

const std::vector<int>& Graph::neighbors(int v) const {
  check_vertex(v);
  return adj_[v];
}

int Graph::degree(int v) const {
  check_vertex(v);
  return static_cast<int>(adj_[v].size());
}

bool Graph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return false;
  // Search the shorter list.
  const auto& nb = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  int target = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(nb.begin(), nb.end(), target);
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

bool Graph::connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : adj_[u])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push(w);
      }
  }
  return reached == n_;
}

Ball bfs_ball(const Graph& g, int v, int r) {
  if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("bfs_ball: center out of range");
  if (r < 0) throw std::invalid_argument("bfs_ball: negative radius");
  std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), -1);
  std::vector<int> order;
  order.push_back(v);
  dist[v] = 0;
  std::size_t head = 0;
  while (head < order.size()) {
    int u = order[head++];
    if (dist[u] == r) continue;
    for (int w : g.neighbors(u))
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        order.push_back(w);
      }
  }
  std::sort(order.begin(), order.end());
  Ball b;
  b.vertices = std::move(order);
  b.dist.reserve(b.vertices.size());
  for (int u : b.vertices) b.dist.push_back(dist[u]);
  return b;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> s) {
  std::vector<int> kept(s.begin(), s.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw std::invalid_argument("induced_subgraph: duplicate vertex in selection");
  std::vector<int> new_id(static_cast<std::size_t>(g.num_vertices()), -1);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i] < 0 || kept[i] >= g.num_vertices())
      throw std::out_of_range("induced_subgraph: vertex out of range");
    new_id[kept[i]] = static_cast<int>(i);
  }
  std::vector<std::pair<int, int>> edges;
  for (int old_u : kept)
    for (int old_v : g.neighbors(old_u))
      if (old_u < old_v && new_id[old_v] >= 0)
        edges.emplace_back(new_id[old_u], new_id[old_v]);
  return InducedSubgraph{Graph(static_cast<int>(kept.size()), edges), std::move(kept)};
}

Graph strip_early_vertices(const Graph& g, double q) {
  if (!g.arrival()) throw std::invalid_argument("strip_early_vertices: graph has no arrival data");
  if (!(q >= 0.0) || q >= 1.0) throw std::invalid_argument("strip_early_vertices: q outside [0,1)");
  int n = g.num_vertices();
  int cut = static_cast<int>(q * n);  // ranks 0..cut-1 are removed
  const auto& arrival = *g.arrival();
  std::vector<int> keep;
  keep.reserve(static_cast<std::size_t>(n - cut));
  for (int v = 0; v < n; ++v)
    if (arrival[v] >= cut) keep.push_back(v);
  InducedSubgraph sub = induced_subgraph(g, keep);
  // Renumber surviving arrival ranks to 0..n'-1, order preserved. Ranks are
  // exactly cut..n-1, so subtracting the cut is enough.
  std::vector<int> new_arrival(sub.kept.size());
  for (std::size_t i = 0; i < sub.kept.size(); ++i)
    new_arrival[i] = arrival[sub.kept[i]] - cut;
  return Graph(sub.graph.num_vertices(), sub.graph.edge_list(), std::move(new_arrival));
}

}  // namespace sparselocal
