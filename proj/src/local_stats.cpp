#include "sparselocal/local_stats.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace sparselocal {

namespace {

long long comb2(long long x) { return x < 2 ? 0 : x * (x - 1) / 2; }
long long comb3(long long x) { return x < 3 ? 0 : x * (x - 1) / 2 * (x - 2) / 3; }

// Enumerates each simple k-cycle exactly once as (s, v1, ..., v_{k-1}):
// s is the smallest vertex on the cycle and the direction is pinned by
// v1 < v_{k-1}.
template <class F>
void cycle_dfs(const Graph& g, int k, int s, std::vector<int>& path, std::vector<char>& in_path, F& fn) {
  int u = path.back();
  if (static_cast<int>(path.size()) == k) {
    if (path[1] < path[k - 1] && g.has_edge(u, s)) fn(std::span<const int>(path.data(), path.size()));
    return;
  }
  for (int w : g.neighbors(u)) {
    if (w <= s || in_path[w]) continue;
    path.push_back(w);
    in_path[w] = 1;
    cycle_dfs(g, k, s, path, in_path, fn);
    path.pop_back();
    in_path[w] = 0;
  }
}

template <class F>
void for_each_cycle(const Graph& g, int k, F fn) {
  std::vector<int> path;
  path.reserve(static_cast<std::size_t>(k));
  std::vector<char> in_path(static_cast<std::size_t>(g.num_vertices()), 0);
  for (int s = 0; s < g.num_vertices(); ++s) {
    path.push_back(s);
    in_path[s] = 1;
    cycle_dfs(g, k, s, path, in_path, fn);
    path.pop_back();
    in_path[s] = 0;
  }
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL + v.size();
    for (int x : v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

long long induced_edge_count(const Graph& g, const std::vector<int>& s) {
  long long e = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (g.has_edge(s[i], s[j])) ++e;
  return e;
}

struct CyclicSet {
  std::vector<int> verts;  // sorted
  long long edges = 0;
};

// All vertex sets of size 3..max_size that induce a connected subgraph
// containing a cycle. Every such set can be grown from one of its cycles by
// repeatedly adding an adjacent vertex, so closure over the cycle bases is
// complete; the hash set collapses the many growth orders.
std::vector<CyclicSet> enumerate_cyclic_sets(const Graph& g, int max_size) {
  std::unordered_set<std::vector<int>, VecHash> seen;
  std::vector<std::vector<int>> work;
  for (int len = 3; len <= max_size; ++len) {
    for_each_cycle(g, len, [&](std::span<const int> cyc) {
      std::vector<int> s(cyc.begin(), cyc.end());
      std::sort(s.begin(), s.end());
      if (seen.insert(s).second) work.push_back(std::move(s));
    });
  }
  std::vector<CyclicSet> out;
  std::vector<int> cand;
  for (std::size_t head = 0; head < work.size(); ++head) {
    std::vector<int> s = work[head];  // copy: work may reallocate below
    out.push_back(CyclicSet{s, induced_edge_count(g, s)});
    if (static_cast<int>(s.size()) >= max_size) continue;
    cand.clear();
    for (int v : s)
      for (int w : g.neighbors(v))
        if (!std::binary_search(s.begin(), s.end(), w)) cand.push_back(w);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (int w : cand) {
      std::vector<int> s2 = s;
      s2.insert(std::lower_bound(s2.begin(), s2.end(), w), w);
      if (seen.insert(s2).second) work.push_back(std::move(s2));
    }
  }
  return out;
}

// Forest-side counting state shared across all cyclic parts of one call.
struct GlobalStats {
  long long m = 0;
  long long p2 = 0;         // sum over v of C(deg v, 2)
  long long triangles = 0;  // total triangle count
};

// Number of f-subsets of A = V \ (D u N(D)) inducing a forest with exactly t
// components, summed over t = 1..min(f, tmax). Works entirely from global
// statistics adjusted by the small boundary of D, so it costs O(vol(N[D]))
// instead of a scan over A.
long long count_forest_extensions(const Graph& g, const GlobalStats& gs, const std::vector<int>& d_verts,
                                  int f, long long tmax, std::vector<int>& mark, int& stamp_counter) {
  assert(f >= 1 && f <= 3);
  if (tmax < 1) return 0;
  int n = g.num_vertices();
  int stamp = ++stamp_counter;
  // B = D u N(D); mark[v] == stamp iff v in B.
  std::vector<int> b_list;
  auto add_b = [&](int v) {
    if (mark[v] != stamp) {
      mark[v] = stamp;
      b_list.push_back(v);
    }
  };
  for (int v : d_verts) {
    add_b(v);
    for (int w : g.neighbors(v)) add_b(w);
  }
  long long size_a = n - static_cast<long long>(b_list.size());
  long long t_hi = std::min<long long>(f, tmax);
  if (f == 1) return size_a;

  long long deg_sum_b = 0;
  long long e_within_b = 0;
  for (int v : b_list) {
    deg_sum_b += g.degree(v);
    for (int w : g.neighbors(v))
      if (mark[w] == stamp && w > v) ++e_within_b;
  }
  long long e_a = gs.m - (deg_sum_b - e_within_b);
  if (f == 2) {
    long long total = e_a;
    if (t_hi >= 2) total += comb2(size_a) - e_a;
    return total;
  }

  // f == 3: classify all 3-subsets of A by induced edge count, adjusting the
  // global statistics for the boundary of B.
  long long p2_a = gs.p2;
  for (int v : b_list) p2_a -= comb2(g.degree(v));
  std::vector<int> outside;  // N(B) \ B
  for (int v : b_list)
    for (int w : g.neighbors(v))
      if (mark[w] != stamp) outside.push_back(w);
  std::sort(outside.begin(), outside.end());
  outside.erase(std::unique(outside.begin(), outside.end()), outside.end());
  for (int w : outside) {
    int into_b = 0;
    for (int x : g.neighbors(w))
      if (mark[x] == stamp) ++into_b;
    p2_a -= comb2(g.degree(w)) - comb2(g.degree(w) - into_b);
  }
  // Triangles meeting B, counted once each at their smallest B-vertex.
  long long tri_touch_b = 0;
  for (int b : b_list) {
    const auto& nb = g.neighbors(b);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        int x = nb[i], y = nb[j];
        if ((mark[x] == stamp && x < b) || (mark[y] == stamp && y < b)) continue;
        if (g.has_edge(x, y)) ++tri_touch_b;
      }
  }
  long long tri_a = gs.triangles - tri_touch_b;
  long long x3 = tri_a;
  long long x2 = p2_a - 3 * tri_a;
  long long x1 = e_a * (size_a - 2) - 2 * x2 - 3 * x3;
  long long x0 = comb3(size_a) - x1 - x2 - x3;
  assert(x3 >= 0 && x2 >= 0 && x1 >= 0 && x0 >= 0);
  long long total = x2;  // t == 1: 3-vertex trees
  if (t_hi >= 2) total += x1;
  if (t_hi >= 3) total += x0;
  return total;
}

}  // namespace

long long edge_surplus(const Graph& g, std::span<const int> s) {
  InducedSubgraph sub = induced_subgraph(g, s);  // validates the selection
  return sub.graph.num_edges() - sub.graph.num_vertices();
}

long long SurplusProfile::count_with_surplus_at_least(long long m) const {
  long long c = 0;
  for (const auto& b : balls)
    if (b.surplus >= m) ++c;
  return c;
}

SurplusProfile surplus_profile(const Graph& g, int r) {
  if (r < 0) throw std::invalid_argument("surplus_profile: negative radius");
  int n = g.num_vertices();
  SurplusProfile prof;
  prof.balls.reserve(static_cast<std::size_t>(n));
  prof.max_surplus = n == 0 ? 0 : std::numeric_limits<long long>::min();
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::vector<int> order;
  for (int v = 0; v < n; ++v) {
    order.clear();
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
    long long edges = 0;
    for (int u : order)
      for (int w : g.neighbors(u))
        if (dist[w] >= 0 && w > u) ++edges;
    BallStats bs;
    bs.center = v;
    bs.radius = r;
    bs.size = static_cast<long long>(order.size());
    bs.edges = edges;
    bs.surplus = edges - bs.size;
    prof.max_surplus = std::max(prof.max_surplus, bs.surplus);
    prof.balls.push_back(bs);
    for (int u : order) dist[u] = -1;
  }
  if (n == 0) prof.max_surplus = 0;
  return prof;
}

double nhood_size_bound(long long n, double d, int r) {
  if (n < 1) throw std::invalid_argument("nhood_size_bound: n must be positive");
  if (r < 0) throw std::invalid_argument("nhood_size_bound: negative radius");
  double ln = std::log(static_cast<double>(n));
  return std::pow(ln, 2 * r) * std::pow(d, r);
}

BoundCheck max_ball_size(const Graph& g, int r, double d) {
  if (r < 0) throw std::invalid_argument("max_ball_size: negative radius");
  int n = g.num_vertices();
  BoundCheck out;
  out.bound = nhood_size_bound(std::max(n, 1), d, r);
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::vector<int> order;
  for (int v = 0; v < n; ++v) {
    order.clear();
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
    out.max_observed = std::max(out.max_observed, static_cast<long long>(order.size()));
    for (int u : order) dist[u] = -1;
  }
  out.within = static_cast<double>(out.max_observed) <= out.bound;
  return out;
}

long long count_cycles(const Graph& g, int k) {
  if (k < 3 || k > 8) throw std::invalid_argument("count_cycles: k must be in [3, 8]");
  long long count = 0;
  for_each_cycle(g, k, [&](std::span<const int>) { ++count; });
  return count;
}

long long count_dense_subgraphs(const Graph& g, int k, int m) {
  if (k < 1 || k > 6) throw std::invalid_argument("count_dense_subgraphs: k must be in [1, 6]");
  if (m < 0) throw std::invalid_argument("count_dense_subgraphs: m must be >= 0");
  int n = g.num_vertices();
  if (k > n || k < 3) return 0;  // k+m edges never fit on fewer than 3 vertices

  GlobalStats gs;
  gs.m = g.num_edges();
  for (int v = 0; v < n; ++v) gs.p2 += comb2(g.degree(v));
  gs.triangles = count_cycles(g, 3);

  std::vector<CyclicSet> cyc = enumerate_cyclic_sets(g, k);
  std::vector<int> mark(static_cast<std::size_t>(n), 0);
  int stamp_counter = 0;
  long long total = 0;

  // Every counted subset splits uniquely into its cyclic components D and an
  // acyclic remainder F not adjacent to D; sum over the possible D.
  for (const auto& d : cyc) {
    long long sigma = d.edges - static_cast<long long>(d.verts.size());
    int f = k - static_cast<int>(d.verts.size());
    long long tmax = sigma - m;
    if (f == 0) {
      if (tmax >= 0) ++total;
    } else {
      total += count_forest_extensions(g, gs, d.verts, f, tmax, mark, stamp_counter);
    }
  }
  // D with two cyclic components (possible only for k >= 6: sizes 3 + 3).
  if (k >= 6) {
    std::vector<const CyclicSet*> small;
    for (const auto& c : cyc)
      if (static_cast<int>(c.verts.size()) == 3) small.push_back(&c);
    std::vector<int> merged;
    for (std::size_t i = 0; i < small.size(); ++i)
      for (std::size_t j = i + 1; j < small.size(); ++j) {
        const auto& a = small[i]->verts;
        const auto& b = small[j]->verts;
        bool clash = false;
        for (int u : a)
          for (int v : b)
            if (u == v || g.has_edge(u, v)) clash = true;
        if (clash) continue;
        long long sigma = (small[i]->edges + small[j]->edges) - 6;
        int f = k - 6;
        long long tmax = sigma - m;
        if (f == 0) {
          if (tmax >= 0) ++total;
        } else {
          merged.clear();
          merged.insert(merged.end(), a.begin(), a.end());
          merged.insert(merged.end(), b.begin(), b.end());
          std::sort(merged.begin(), merged.end());
          total += count_forest_extensions(g, gs, merged, f, tmax, mark, stamp_counter);
        }
      }
  }
  return total;
}

bool er_path_trial(const ErParams& params, int r, const Seed& seed) {
  if (params.n < 2) throw std::invalid_argument("er_path_trial: need n >= 2");
  if (r < 0) throw std::invalid_argument("er_path_trial: negative radius");
  Graph g = gen_er(params, seed);
  Ball b = bfs_ball(g, 0, r);
  return std::binary_search(b.vertices.begin(), b.vertices.end(), params.n - 1);
}

PathProbEstimate estimate_path_prob(const ErParams& params, int r, long long trials, const Seed& seed) {
  if (trials < 1) throw std::invalid_argument("estimate_path_prob: trials must be >= 1");
  long long hits = 0;
  for (long long t = 0; t < trials; ++t)
    if (er_path_trial(params, r, seed.stream(static_cast<std::uint64_t>(t)))) ++hits;
  PathProbEstimate est;
  est.trials = trials;
  est.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  est.se = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(trials));
  est.lower = params.d / params.n;
  est.upper = 2.0 * std::pow(params.d, r) / params.n;
  return est;
}

}  // namespace sparselocal
