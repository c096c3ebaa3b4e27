#include "sparselocal/subgraph_iso.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "sparselocal/local_stats.hpp"

namespace sparselocal {

int radius(const Graph& h) {
  int n = h.num_vertices();
  if (n == 0) throw std::invalid_argument("radius: empty graph");
  int best = n;  // upper bound; any eccentricity is < n
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<int> queue;
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    queue.push_back(s);
    dist[s] = 0;
    int ecc = 0;
    std::size_t head = 0;
    while (head < queue.size()) {
      int u = queue[head++];
      ecc = std::max(ecc, dist[u]);
      for (int w : h.neighbors(u))
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
    }
    if (static_cast<int>(queue.size()) != n) throw std::invalid_argument("radius: graph must be connected");
    best = std::min(best, ecc);
  }
  return best;
}

Pattern::Pattern(Graph h) : graph(std::move(h)) {
  if (graph.num_vertices() == 0) throw std::invalid_argument("Pattern: empty graph");
  if (!graph.connected()) throw std::invalid_argument("Pattern: graph must be connected");
  radius = sparselocal::radius(graph);
}

PatternCore pattern_core(const Pattern& h) {
  const Graph& hg = h.graph;
  int n = hg.num_vertices();
  PatternCore out;
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  std::size_t head = 0;
  while (head < queue.size()) {
    int u = queue[head++];
    for (int w : hg.neighbors(u))
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = u;
        out.tree_edges.emplace_back(u, w);
        queue.push_back(w);
      }
  }
  // Non-tree edges in lexicographic order; the first two are folded into the
  // core to prune the tree enumeration, the rest are deferred to the host.
  for (auto [u, v] : hg.edge_list()) {
    if (parent[v] == u || parent[u] == v) continue;
    if (out.extra_edges.size() < 2)
      out.extra_edges.emplace_back(u, v);
    else
      out.deferred_edges.emplace_back(u, v);
  }
  std::vector<std::pair<int, int>> core_edges = out.tree_edges;
  core_edges.insert(core_edges.end(), out.extra_edges.begin(), out.extra_edges.end());
  out.core = Graph(n, core_edges);
  return out;
}

void validate_embedding(const Graph& g, const Graph& h, const Embedding& map) {
  if (static_cast<int>(map.size()) != h.num_vertices())
    throw std::logic_error("validate_embedding: size mismatch");
  std::vector<int> sorted = map;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::logic_error("validate_embedding: not injective");
  for (int v : map)
    if (v < 0 || v >= g.num_vertices()) throw std::logic_error("validate_embedding: vertex out of range");
  for (auto [u, v] : h.edge_list())
    if (!g.has_edge(map[u], map[v])) throw std::logic_error("validate_embedding: edge not preserved");
}

namespace {

long long derive_trials(const TrialConfig& cfg, int h_size) {
  if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < 1.0))
    throw std::invalid_argument("TrialConfig: epsilon must be in (0, 1)");
  if (cfg.trials > 0) return cfg.trials;
  double t = std::ceil(std::exp(static_cast<double>(h_size)) * std::log(1.0 / cfg.epsilon));
  return std::max<long long>(1, static_cast<long long>(t));
}

struct ColorfulSearcher {
  const Graph& host;
  const PatternCore& core;
  long long cap;
  std::vector<int> seq;        // core vertices in assignment order (BFS)
  std::vector<int> parent_pos; // position of the tree parent in seq, -1 for root
  std::vector<int> color;      // current trial's coloring of host vertices
  std::vector<int> map;        // seq position -> host vertex
  std::set<Embedding> found;

  ColorfulSearcher(const Graph& host_, const PatternCore& core_, long long cap_)
      : host(host_), core(core_), cap(cap_) {
    int h = core.core.num_vertices();
    seq.reserve(static_cast<std::size_t>(h));
    seq.push_back(0);
    std::vector<int> pos_of(static_cast<std::size_t>(h), -1);
    pos_of[0] = 0;
    parent_pos.push_back(-1);
    for (auto [p, c] : core.tree_edges) {
      pos_of[c] = static_cast<int>(seq.size());
      seq.push_back(c);
      parent_pos.push_back(pos_of[p]);
    }
    map.assign(seq.size(), -1);
  }

  void record() {
    int h = core.core.num_vertices();
    Embedding emb(static_cast<std::size_t>(h));
    for (std::size_t i = 0; i < seq.size(); ++i) emb[seq[i]] = map[i];
    for (auto [u, v] : core.extra_edges)
      if (!host.has_edge(emb[u], emb[v])) return;
    auto [it, fresh] = found.insert(std::move(emb));
    (void)it;
    if (fresh && static_cast<long long>(found.size()) > cap)
      throw capacity_error("colorful_search: more than " + std::to_string(cap) + " embeddings in one ball");
  }

  void extend(std::size_t pos, std::uint64_t used_colors) {
    if (pos == seq.size()) {
      record();
      return;
    }
    if (parent_pos[pos] < 0) {
      for (int w = 0; w < host.num_vertices(); ++w) step(pos, used_colors, w);
    } else {
      for (int w : host.neighbors(map[parent_pos[pos]])) step(pos, used_colors, w);
    }
  }

  void step(std::size_t pos, std::uint64_t used_colors, int w) {
    std::uint64_t bit = std::uint64_t{1} << color[w];
    if (used_colors & bit) return;
    map[pos] = w;
    extend(pos + 1, used_colors | bit);
  }
};

double average_degree(const Graph& g) {
  if (g.num_vertices() == 0) return 0.0;
  return 2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(g.num_vertices());
}

}  // namespace

std::vector<Embedding> colorful_search(const Graph& host, const PatternCore& core, const TrialConfig& cfg,
                                       const Seed& seed) {
  int h = core.core.num_vertices();
  if (h < 1 || h > 63) throw std::invalid_argument("colorful_search: core size out of range");
  if (cfg.ball_cap > 0 && static_cast<double>(host.num_vertices()) > cfg.ball_cap)
    throw std::invalid_argument("colorful_search: host has " + std::to_string(host.num_vertices()) +
                                " vertices, above the ball cap");
  long long trials = derive_trials(cfg, h);
  ColorfulSearcher searcher(host, core, cfg.max_embeddings_per_ball);
  searcher.color.assign(static_cast<std::size_t>(host.num_vertices()), 0);
  if (host.num_vertices() >= h) {
    Rng rng = seed.rng();
    for (long long t = 0; t < trials; ++t) {
      for (int v = 0; v < host.num_vertices(); ++v)
        searcher.color[v] = static_cast<int>(rng.below(static_cast<std::uint64_t>(h)));
      searcher.extend(0, 0);
    }
  }
  std::vector<Embedding> out(searcher.found.begin(), searcher.found.end());
  for (const auto& emb : out) validate_embedding(host, core.core, emb);
  return out;
}

std::optional<Embedding> find_subgraph(const Graph& g, const Pattern& h, const TrialConfig& cfg,
                                       const Seed& seed) {
  int n = g.num_vertices();
  if (h.graph.num_vertices() > n) return std::nullopt;
  int r = h.radius;
  double cap = cfg.ball_cap > 0 ? cfg.ball_cap : nhood_size_bound(std::max(n, 2), average_degree(g), r);
  long long max_ball = 0;
  std::vector<Ball> balls;
  balls.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    balls.push_back(bfs_ball(g, v, r));
    max_ball = std::max(max_ball, static_cast<long long>(balls.back().vertices.size()));
  }
  if (static_cast<double>(max_ball) > cap) return brute_force_embed(g, h.graph);

  PatternCore core = pattern_core(h);
  for (int v = 0; v < n; ++v) {
    InducedSubgraph sub = induced_subgraph(g, balls[v].vertices);
    TrialConfig local = cfg;
    local.ball_cap = 0;  // already enforced above for every ball
    for (const Embedding& emb : colorful_search(sub.graph, core, local, seed.stream(static_cast<std::uint64_t>(v)))) {
      Embedding gmap(emb.size());
      for (std::size_t i = 0; i < emb.size(); ++i) gmap[i] = sub.kept[emb[i]];
      bool ok = true;
      for (auto [a, b] : core.deferred_edges)
        if (!g.has_edge(gmap[a], gmap[b])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      validate_embedding(g, h.graph, gmap);
      return gmap;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<Embedding>> find_subgraph_multi(const Graph& g, const std::vector<Pattern>& parts,
                                                          const TrialConfig& cfg, const Seed& seed) {
  if (parts.empty()) throw std::invalid_argument("find_subgraph_multi: no parts");
  if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < 1.0))
    throw std::invalid_argument("TrialConfig: epsilon must be in (0, 1)");
  int c = static_cast<int>(parts.size());
  long long h_total = 0;
  for (const auto& part : parts) h_total += part.graph.num_vertices();
  long long reps = cfg.reps;
  if (reps <= 0) {
    double raw = std::ceil(std::pow(static_cast<double>(c), static_cast<double>(h_total)) *
                           std::log(1.0 / cfg.epsilon));
    // Keep the round count finite; misses stay one-sided.
    reps = static_cast<long long>(std::min(raw, 1.0e6));
    reps = std::max<long long>(1, reps);
  }
  int n = g.num_vertices();
  std::vector<int> color(static_cast<std::size_t>(n));
  for (long long rep = 0; rep < reps; ++rep) {
    Seed rep_seed = seed.stream(static_cast<std::uint64_t>(rep));
    Rng rng = rep_seed.rng();
    for (int v = 0; v < n; ++v) color[v] = static_cast<int>(rng.below(static_cast<std::uint64_t>(c)));
    std::vector<std::vector<Embedding>> placed;
    bool all = true;
    for (int i = 0; i < c && all; ++i) {
      std::vector<int> cls;
      for (int v = 0; v < n; ++v)
        if (color[v] == i) cls.push_back(v);
      if (static_cast<int>(cls.size()) < parts[i].graph.num_vertices()) {
        all = false;
        break;
      }
      InducedSubgraph sub = induced_subgraph(g, cls);
      auto emb = find_subgraph(sub.graph, parts[i], cfg, rep_seed.stream(static_cast<std::uint64_t>(i) + 1));
      if (!emb) {
        all = false;
        break;
      }
      Embedding gmap(emb->size());
      for (std::size_t j = 0; j < emb->size(); ++j) gmap[j] = sub.kept[(*emb)[j]];
      placed.push_back({std::move(gmap)});
    }
    if (all) {
      std::vector<Embedding> out;
      out.reserve(static_cast<std::size_t>(c));
      for (auto& p : placed) out.push_back(std::move(p.front()));
      for (int i = 0; i < c; ++i) validate_embedding(g, parts[i].graph, out[i]);
      return out;
    }
  }
  return std::nullopt;
}

std::optional<Embedding> brute_force_embed(const Graph& g, const Graph& h) {
  int nh = h.num_vertices();
  int ng = g.num_vertices();
  if (nh > ng) return std::nullopt;
  if (nh == 0) return Embedding{};
  // Assignment order: components in ascending order of smallest vertex, BFS
  // inside each, so results are reproducible.
  std::vector<int> order;
  std::vector<int> pos_of(static_cast<std::size_t>(nh), -1);
  {
    std::vector<char> seen(static_cast<std::size_t>(nh), 0);
    for (int s = 0; s < nh; ++s) {
      if (seen[s]) continue;
      std::vector<int> queue{s};
      seen[s] = 1;
      std::size_t head = 0;
      while (head < queue.size()) {
        int u = queue[head++];
        pos_of[u] = static_cast<int>(order.size());
        order.push_back(u);
        for (int w : h.neighbors(u))
          if (!seen[w]) {
            seen[w] = 1;
            queue.push_back(w);
          }
      }
    }
  }
  // For each position, the earlier-placed h-neighbors to check against.
  std::vector<std::vector<int>> anchors(static_cast<std::size_t>(nh));
  for (int u = 0; u < nh; ++u)
    for (int w : h.neighbors(u))
      if (pos_of[w] < pos_of[u]) anchors[pos_of[u]].push_back(pos_of[w]);

  std::vector<int> map(static_cast<std::size_t>(nh), -1);  // position -> g vertex
  std::vector<char> used(static_cast<std::size_t>(ng), 0);

  auto fits = [&](int pos, int w) {
    if (used[w]) return false;
    if (g.degree(w) < h.degree(order[pos])) return false;
    for (int apos : anchors[pos])
      if (!g.has_edge(w, map[apos])) return false;
    return true;
  };

  std::vector<int> result;
  auto rec = [&](auto&& self, int pos) -> bool {
    if (pos == nh) {
      result.assign(static_cast<std::size_t>(nh), -1);
      for (int i = 0; i < nh; ++i) result[order[i]] = map[i];
      return true;
    }
    if (anchors[pos].empty()) {
      for (int w = 0; w < ng; ++w) {
        if (!fits(pos, w)) continue;
        map[pos] = w;
        used[w] = 1;
        if (self(self, pos + 1)) return true;
        used[w] = 0;
      }
    } else {
      for (int w : g.neighbors(map[anchors[pos][0]])) {
        if (!fits(pos, w)) continue;
        map[pos] = w;
        used[w] = 1;
        if (self(self, pos + 1)) return true;
        used[w] = 0;
      }
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  validate_embedding(g, h, result);
  return result;
}

}  // namespace sparselocal
