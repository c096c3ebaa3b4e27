#include "sparselocal/expansion.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace sparselocal {

Digraph::Digraph(int n, const std::vector<std::pair<int, int>>& arcs)
    : n_(n), out_(static_cast<std::size_t>(std::max(n, 0))), in_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0) throw std::invalid_argument("Digraph: negative vertex count");
  for (auto [u, v] : arcs) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
      throw std::invalid_argument("Digraph: arc endpoint out of range");
    if (u == v) throw std::invalid_argument("Digraph: loop arc");
    out_[u].push_back(v);
    in_[v].push_back(u);
  }
  for (auto& lst : out_) {
    std::sort(lst.begin(), lst.end());
    if (std::adjacent_find(lst.begin(), lst.end()) != lst.end())
      throw std::invalid_argument("Digraph: parallel arc");
  }
  for (auto& lst : in_) std::sort(lst.begin(), lst.end());
  a_ = static_cast<long long>(arcs.size());
}

const std::vector<int>& Digraph::out(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("Digraph::out: vertex out of range");
  return out_[v];
}

const std::vector<int>& Digraph::in(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("Digraph::in: vertex out of range");
  return in_[v];
}

bool Digraph::has_arc(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) throw std::out_of_range("Digraph::has_arc: vertex out of range");
  return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

int Digraph::max_in_degree() const {
  int best = 0;
  for (const auto& lst : in_) best = std::max(best, static_cast<int>(lst.size()));
  return best;
}

std::vector<std::pair<int, int>> Digraph::arc_list() const {
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(static_cast<std::size_t>(a_));
  for (int u = 0; u < n_; ++u)
    for (int v : out_[u]) arcs.emplace_back(u, v);
  return arcs;
}

Graph Digraph::underlying() const {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(a_));
  for (int u = 0; u < n_; ++u)
    for (int v : out_[u])
      if (u < v || !has_arc(v, u)) edges.emplace_back(std::min(u, v), std::max(u, v));
  return Graph(n_, edges);
}

Digraph low_degree_orientation(const Graph& g) {
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(static_cast<std::size_t>(g.num_edges()));
  for (auto [u, v] : g.edge_list()) {
    auto key = [&g](int x) { return std::pair<int, int>(g.degree(x), x); };
    if (key(u) > key(v))
      arcs.emplace_back(u, v);
    else
      arcs.emplace_back(v, u);
  }
  return Digraph(g.num_vertices(), arcs);
}

Digraph tfa_step(const Digraph& dg, const TfaOptions& options) {
  int n = dg.num_vertices();
  std::vector<std::pair<int, int>> arcs = dg.arc_list();
  // Transitive shortcuts.
  for (int z = 0; z < n; ++z)
    for (int x : dg.in(z))
      for (int y : dg.out(z))
        if (x != y) arcs.emplace_back(x, y);
  // Fraternal pairs: common out-neighborhoods, kept only when no arc links
  // the pair in either direction.
  std::vector<std::pair<int, int>> fraternal;
  for (int z = 0; z < n; ++z) {
    const auto& parents = dg.in(z);
    for (std::size_t i = 0; i < parents.size(); ++i)
      for (std::size_t j = i + 1; j < parents.size(); ++j) {
        int x = parents[i], y = parents[j];
        if (!dg.has_arc(x, y) && !dg.has_arc(y, x)) fraternal.emplace_back(x, y);
      }
  }
  std::sort(fraternal.begin(), fraternal.end());
  fraternal.erase(std::unique(fraternal.begin(), fraternal.end()), fraternal.end());
  Graph fraternity(n, fraternal);
  for (auto [u, v] : low_degree_orientation(fraternity).arc_list()) arcs.emplace_back(u, v);

  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  if (options.arc_cap >= 0 && static_cast<long long>(arcs.size()) > options.arc_cap)
    throw capacity_error("tfa_step: arc count " + std::to_string(arcs.size()) + " exceeds cap " +
                         std::to_string(options.arc_cap));
  return Digraph(n, arcs);
}

std::pair<Digraph, AugmentationTrace> tfa_run(const Graph& g, int steps, const TfaOptions& options) {
  if (steps < 0) throw std::invalid_argument("tfa_run: negative step count");
  TfaOptions eff = options;
  if (eff.arc_cap < 0) eff.arc_cap = 50 * g.num_edges();
  Digraph dg = low_degree_orientation(g);
  AugmentationTrace trace;
  trace.records.push_back({1, dg.num_arcs(), dg.max_in_degree()});
  for (int i = 0; i < steps; ++i) {
    dg = tfa_step(dg, eff);
    trace.records.push_back({i + 2, dg.num_arcs(), dg.max_in_degree()});
  }
  return {std::move(dg), std::move(trace)};
}

Coloring greedy_coloring(const Graph& g) {
  int n = g.num_vertices();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    auto da = g.degree(a), db = g.degree(b);
    return da != db ? da > db : a < b;
  });
  Coloring c;
  c.colors.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> taken(static_cast<std::size_t>(n) + 1, -1);
  for (int v : order) {
    for (int w : g.neighbors(v))
      if (c.colors[w] >= 0) taken[c.colors[w]] = v;
    int color = 0;
    while (taken[color] == v) ++color;
    c.colors[v] = color;
    c.palette_size = std::max(c.palette_size, color + 1);
  }
  return c;
}

namespace {

struct VerifyScratch {
  std::vector<std::vector<int>> classes;
  std::vector<int> color_pos;  // color -> index within the current subset
  std::vector<int> mark;       // stamped: vertex belongs to the current subset
  std::vector<int> comp_seen;  // stamped: vertex already assigned to a component
  std::vector<int> counts;     // per-subset-color occurrence counter
  std::vector<int> queue;
  int stamp = 0;
};

// Looks for a component of the subgraph induced by the chosen color classes
// in which no color appears exactly once.
std::optional<std::vector<int>> find_uncentered_component(const Graph& g, const std::vector<int>& colors,
                                                          const std::vector<int>& chosen, VerifyScratch& sc) {
  int stamp = ++sc.stamp;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    sc.color_pos[chosen[i]] = static_cast<int>(i);
    for (int v : sc.classes[chosen[i]]) sc.mark[v] = stamp;
  }
  sc.counts.assign(chosen.size(), 0);
  for (int c : chosen) {
    for (int start : sc.classes[c]) {
      if (sc.comp_seen[start] == stamp) continue;
      sc.queue.clear();
      sc.queue.push_back(start);
      sc.comp_seen[start] = stamp;
      std::size_t head = 0;
      while (head < sc.queue.size()) {
        int u = sc.queue[head++];
        for (int w : g.neighbors(u))
          if (sc.mark[w] == stamp && sc.comp_seen[w] != stamp) {
            sc.comp_seen[w] = stamp;
            sc.queue.push_back(w);
          }
      }
      std::fill(sc.counts.begin(), sc.counts.end(), 0);
      for (int u : sc.queue) ++sc.counts[sc.color_pos[colors[u]]];
      bool centered = false;
      for (int cnt : sc.counts)
        if (cnt == 1) {
          centered = true;
          break;
        }
      if (!centered) {
        std::sort(sc.queue.begin(), sc.queue.end());
        return sc.queue;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

PCenteredCheck verify_p_centered(const Graph& g, const Coloring& coloring, int p, long long max_subsets) {
  if (p < 1) throw std::invalid_argument("verify_p_centered: p must be >= 1");
  if (max_subsets < 1) throw std::invalid_argument("verify_p_centered: max_subsets must be >= 1");
  int n = g.num_vertices();
  if (static_cast<int>(coloring.colors.size()) != n)
    throw std::invalid_argument("verify_p_centered: coloring size mismatch");
  int palette = 0;
  for (int c : coloring.colors) {
    if (c < 0) throw std::invalid_argument("verify_p_centered: uncolored vertex");
    palette = std::max(palette, c + 1);
  }
  VerifyScratch sc;
  sc.classes.resize(static_cast<std::size_t>(palette));
  for (int v = 0; v < n; ++v) sc.classes[coloring.colors[v]].push_back(v);
  sc.color_pos.assign(static_cast<std::size_t>(palette), 0);
  sc.mark.assign(static_cast<std::size_t>(n), 0);
  sc.comp_seen.assign(static_cast<std::size_t>(n), 0);

  int top = std::min(p, palette);
  long long scanned = 0;
  std::vector<int> chosen;
  // Size-ascending, then lexicographic enumeration of color subsets.
  for (int s = 1; s <= top; ++s) {
    chosen.resize(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) chosen[i] = i;
    for (;;) {
      if (++scanned > max_subsets)
        throw capacity_error("verify_p_centered: subset count exceeds cap " + std::to_string(max_subsets));
      auto bad = find_uncentered_component(g, coloring.colors, chosen, sc);
      if (bad) {
        PCenteredCheck out;
        out.ok = false;
        out.witness = PCenteredViolation{chosen, std::move(*bad)};
        return out;
      }
      // Next combination.
      int i = s - 1;
      while (i >= 0 && chosen[i] == palette - s + i) --i;
      if (i < 0) break;
      ++chosen[i];
      for (int j = i + 1; j < s; ++j) chosen[j] = chosen[j - 1] + 1;
    }
  }
  return PCenteredCheck{true, std::nullopt};
}

PCenteredResult compute_p_centered(const Graph& g, int p, int max_steps, const PCenteredOptions& options) {
  if (max_steps < 1) throw std::invalid_argument("compute_p_centered: max_steps must be at least 1");
  TfaOptions tfa = options.tfa;
  if (tfa.arc_cap < 0) tfa.arc_cap = 50 * g.num_edges();
  Digraph dg = low_degree_orientation(g);
  for (int step = 1; step <= max_steps; ++step) {
    Coloring c = greedy_coloring(dg.underlying());
    if (verify_p_centered(g, c, p, options.max_subsets).ok) return PCenteredResult{std::move(c), step};
    if (step < max_steps) dg = tfa_step(dg, tfa);
  }
  throw capacity_error("compute_p_centered: no verified coloring within " + std::to_string(max_steps) +
                       " augmentation rounds");
}

}  // namespace sparselocal
