#include "sparselocal/scattered.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "sparselocal/edgelist_io.hpp"
#include "sparselocal/local_stats.hpp"

namespace sparselocal {

namespace {

// Fixed seed for the structured positive path inside predicate evaluation;
// the result never depends on it because negatives are confirmed naively.
constexpr std::uint64_t kEvalSeed = 0x5ca77e7edb411ULL;

int default_threshold(const std::variant<ContainsPattern, MinDegreeInBall, SurplusAtLeast>& kind) {
  if (std::holds_alternative<ContainsPattern>(kind))
    return std::get<ContainsPattern>(kind).pattern.graph.num_vertices() + 2;
  if (std::holds_alternative<MinDegreeInBall>(kind)) return std::get<MinDegreeInBall>(kind).t + 2;
  return std::get<SurplusAtLeast>(kind).m + 2;
}

// Vertices of `centers` within distance 2r of v (v included), via depth-2r BFS.
void collect_near(const Graph& g, int v, int r, std::vector<int>& dist, std::vector<int>& order) {
  order.clear();
  order.push_back(v);
  dist[v] = 0;
  std::size_t head = 0;
  while (head < order.size()) {
    int u = order[head++];
    if (dist[u] == 2 * r) continue;
    for (int w : g.neighbors(u))
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        order.push_back(w);
      }
  }
}

struct MisSearch {
  const std::vector<std::vector<int>>& adj;  // conflict adjacency (local ids)
  long long budget;
  long long nodes = 0;
  std::vector<int> best;
  std::vector<int> cur;

  void run(std::vector<int> cand) {
    if (++nodes > budget)
      throw undecided_error("exact_scattered: node budget " + std::to_string(budget) + " exhausted");
    if (cur.size() + cand.size() <= best.size()) return;
    if (cand.empty()) {
      best = cur;
      return;
    }
    // Branch on the candidate with the most conflicts among candidates.
    std::size_t pick = 0;
    int pick_deg = -1;
    std::vector<int> degs(cand.size(), 0);
    for (std::size_t i = 0; i < cand.size(); ++i) {
      int d = 0;
      for (int w : adj[cand[i]])
        if (std::binary_search(cand.begin(), cand.end(), w)) ++d;
      degs[i] = d;
      if (d > pick_deg) {
        pick_deg = d;
        pick = i;
      }
    }
    int v = cand[pick];
    // Include v.
    std::vector<int> rest;
    rest.reserve(cand.size());
    for (int w : cand)
      if (w != v && !std::binary_search(adj[v].begin(), adj[v].end(), w)) rest.push_back(w);
    cur.push_back(v);
    run(rest);
    cur.pop_back();
    // Exclude v (only useful if some conflict exists; otherwise including v
    // is always at least as good).
    if (pick_deg > 0) {
      std::vector<int> without;
      without.reserve(cand.size() - 1);
      for (int w : cand)
        if (w != v) without.push_back(w);
      run(without);
    }
  }
};

}  // namespace

int LocalPredicate::radius() const {
  return std::visit([](const auto& k) { return k.radius; }, kind);
}

LocalPredicate LocalPredicate::contains_pattern(Pattern pattern, int radius, int surplus_threshold) {
  if (radius < 0) throw std::invalid_argument("LocalPredicate: negative radius");
  LocalPredicate p{ContainsPattern{std::move(pattern), radius}, 0};
  p.surplus_threshold = surplus_threshold >= 0 ? surplus_threshold : default_threshold(p.kind);
  return p;
}

LocalPredicate LocalPredicate::min_degree_in_ball(int t, int radius, int surplus_threshold) {
  if (radius < 0) throw std::invalid_argument("LocalPredicate: negative radius");
  if (t < 0) throw std::invalid_argument("LocalPredicate: negative degree bound");
  LocalPredicate p{MinDegreeInBall{t, radius}, 0};
  p.surplus_threshold = surplus_threshold >= 0 ? surplus_threshold : default_threshold(p.kind);
  return p;
}

LocalPredicate LocalPredicate::surplus_at_least(int m, int radius, int surplus_threshold) {
  if (radius < 0) throw std::invalid_argument("LocalPredicate: negative radius");
  LocalPredicate p{SurplusAtLeast{m, radius}, 0};
  p.surplus_threshold = surplus_threshold >= 0 ? surplus_threshold : default_threshold(p.kind);
  return p;
}

bool eval_local_predicate(const Graph& g, int v, const LocalPredicate& pred) {
  if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("eval_local_predicate: vertex out of range");
  Ball ball = bfs_ball(g, v, pred.radius());
  InducedSubgraph sub = induced_subgraph(g, ball.vertices);
  long long surplus = sub.graph.num_edges() - sub.graph.num_vertices();
  if (std::holds_alternative<MinDegreeInBall>(pred.kind)) {
    const auto& k = std::get<MinDegreeInBall>(pred.kind);
    auto it = std::lower_bound(sub.kept.begin(), sub.kept.end(), v);
    int local = static_cast<int>(it - sub.kept.begin());
    return sub.graph.degree(local) >= k.t;
  }
  if (std::holds_alternative<SurplusAtLeast>(pred.kind)) {
    return surplus >= std::get<SurplusAtLeast>(pred.kind).m;
  }
  const auto& k = std::get<ContainsPattern>(pred.kind);
  if (k.pattern.graph.num_vertices() > sub.graph.num_vertices()) return false;
  if (surplus >= pred.surplus_threshold) {
    // Dense ball: the structured search's assumptions fail, go naive.
    return brute_force_embed(sub.graph, k.pattern.graph).has_value();
  }
  TrialConfig cfg;
  if (find_subgraph(sub.graph, k.pattern, cfg, Seed{kEvalSeed}.stream(static_cast<std::uint64_t>(v))))
    return true;
  // The randomized search is one-sided; confirm misses exactly.
  return brute_force_embed(sub.graph, k.pattern.graph).has_value();
}

ScatterResult greedy_scattered(const Graph& g, const std::vector<int>& centers, int r, int s) {
  if (r < 0) throw std::invalid_argument("greedy_scattered: negative radius");
  if (s < 1) throw std::invalid_argument("greedy_scattered: s must be >= 1");
  std::vector<int> sorted = centers;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int v : sorted)
    if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("greedy_scattered: center out of range");
  std::vector<char> blocked(static_cast<std::size_t>(g.num_vertices()), 0);
  std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), -1);
  std::vector<int> reach;
  ScatterResult res;
  for (int v : sorted) {
    if (blocked[v]) continue;
    res.set.push_back(v);
    if (static_cast<int>(res.set.size()) >= s) break;
    collect_near(g, v, r, dist, reach);
    for (int u : reach) {
      blocked[u] = 1;
      dist[u] = -1;
    }
  }
  res.greedy_size = static_cast<long long>(res.set.size());
  res.found = res.greedy_size >= s;
  res.used_exact = false;
  return res;
}

ScatterResult exact_scattered(const Graph& g, const std::vector<int>& centers, int r, int s,
                              const ScatterOptions& options) {
  ScatterResult greedy = greedy_scattered(g, centers, r, s);
  if (greedy.found) return greedy;

  std::vector<int> sorted = centers;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  int k = static_cast<int>(sorted.size());
  // Conflict graph: centers at distance <= 2r (local ids index `sorted`).
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(k));
  {
    std::vector<int> local(static_cast<std::size_t>(g.num_vertices()), -1);
    for (int i = 0; i < k; ++i) local[sorted[i]] = i;
    std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), -1);
    std::vector<int> reach;
    for (int i = 0; i < k; ++i) {
      collect_near(g, sorted[i], r, dist, reach);
      for (int u : reach) {
        if (local[u] >= 0 && local[u] > i) {
          adj[i].push_back(local[u]);
          adj[local[u]].push_back(i);
        }
        dist[u] = -1;
      }
    }
    for (auto& lst : adj) std::sort(lst.begin(), lst.end());
  }
  // Solve each conflict component independently; maxima add up.
  std::vector<int> comp(static_cast<std::size_t>(k), -1);
  ScatterResult res;
  res.greedy_size = greedy.greedy_size;
  res.used_exact = true;
  MisSearch mis{adj, options.node_budget, 0, {}, {}};
  for (int i = 0; i < k; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> members{i};
    comp[i] = i;
    std::size_t head = 0;
    while (head < members.size()) {
      int u = members[head++];
      for (int w : adj[u])
        if (comp[w] < 0) {
          comp[w] = i;
          members.push_back(w);
        }
    }
    std::sort(members.begin(), members.end());
    mis.best.clear();
    mis.cur.clear();
    mis.run(members);
    for (int m : mis.best) res.set.push_back(sorted[m]);
  }
  std::sort(res.set.begin(), res.set.end());
  res.found = static_cast<int>(res.set.size()) >= s;
  // Sanity: the chosen vertices really are pairwise far in g.
  {
    std::vector<char> chosen(static_cast<std::size_t>(g.num_vertices()), 0);
    for (int v : res.set) chosen[v] = 1;
    std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), -1);
    std::vector<int> reach;
    for (int v : res.set) {
      collect_near(g, v, r, dist, reach);
      for (int u : reach) {
        if (u != v && chosen[u]) throw std::logic_error("exact_scattered: produced set is not scattered");
        dist[u] = -1;
      }
    }
  }
  return res;
}

SentenceResult check_sentence(const Graph& g, const BasicLocalSentence& sentence,
                              const ScatterOptions& options) {
  if (sentence.s < 1) throw std::invalid_argument("check_sentence: s must be >= 1");
  if (sentence.r < 0) throw std::invalid_argument("check_sentence: negative r");
  std::vector<int> red;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (eval_local_predicate(g, v, sentence.pred)) red.push_back(v);
  ScatterResult sc = exact_scattered(g, red, sentence.r, sentence.s, options);
  SentenceResult out;
  out.holds = sc.found;
  if (sc.found)
    out.witnesses = std::vector<int>(sc.set.begin(), sc.set.begin() + sentence.s);
  return out;
}

SentenceResult brute_force_sentence(const Graph& g, const BasicLocalSentence& sentence, long long max_subsets) {
  if (sentence.s < 1) throw std::invalid_argument("brute_force_sentence: s must be >= 1");
  if (sentence.r < 0) throw std::invalid_argument("brute_force_sentence: negative r");
  std::vector<int> red;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (eval_local_predicate(g, v, sentence.pred)) red.push_back(v);
  int k = static_cast<int>(red.size());
  int s = sentence.s;
  if (k < s) return SentenceResult{false, std::nullopt};
  // C(k, s) against the guard.
  {
    double c = 1;
    for (int i = 0; i < s; ++i) c = c * (k - i) / (i + 1);
    if (c > static_cast<double>(max_subsets))
      throw capacity_error("brute_force_sentence: subset count exceeds cap");
  }
  // far[i][j]: distance(red[i], red[j]) > 2r, via one BFS per red vertex.
  std::vector<std::vector<char>> far(static_cast<std::size_t>(k), std::vector<char>(static_cast<std::size_t>(k), 1));
  {
    std::vector<int> local(static_cast<std::size_t>(g.num_vertices()), -1);
    for (int i = 0; i < k; ++i) local[red[i]] = i;
    std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), -1);
    std::vector<int> reach;
    for (int i = 0; i < k; ++i) {
      collect_near(g, red[i], sentence.r, dist, reach);
      for (int u : reach) {
        if (local[u] >= 0) far[i][local[u]] = far[local[u]][i] = 0;
        dist[u] = -1;
      }
    }
  }
  std::vector<int> pick;
  auto rec = [&](auto&& self, int from) -> bool {
    if (static_cast<int>(pick.size()) == s) return true;
    for (int i = from; i < k; ++i) {
      bool ok = true;
      for (int j : pick)
        if (!far[j][i]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      pick.push_back(i);
      if (self(self, i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  SentenceResult out;
  out.holds = rec(rec, 0);
  if (out.holds) {
    std::vector<int> w;
    for (int i : pick) w.push_back(red[i]);
    out.witnesses = std::move(w);
  }
  return out;
}

BasicLocalSentence parse_sentence(const nlohmann::json& j, const std::string& base_dir) {
  if (!j.is_object()) throw std::invalid_argument("parse_sentence: expected an object");
  BasicLocalSentence sent{0, 0, LocalPredicate::surplus_at_least(0, 0)};
  sent.s = j.at("s").get<int>();
  sent.r = j.at("r").get<int>();
  const auto& jp = j.at("pred");
  std::string type = jp.at("type").get<std::string>();
  int radius = jp.at("radius").get<int>();
  int threshold = jp.value("surplus_threshold", -1);
  if (type == "contains_pattern") {
    std::filesystem::path p = jp.at("pattern").get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    Pattern pattern(load_edgelist(p.string()));
    sent.pred = LocalPredicate::contains_pattern(std::move(pattern), radius, threshold);
  } else if (type == "min_degree_in_ball") {
    sent.pred = LocalPredicate::min_degree_in_ball(jp.at("t").get<int>(), radius, threshold);
  } else if (type == "surplus_at_least") {
    sent.pred = LocalPredicate::surplus_at_least(jp.at("m").get<int>(), radius, threshold);
  } else {
    throw std::invalid_argument("parse_sentence: unknown predicate type " + type);
  }
  if (sent.s < 1) throw std::invalid_argument("parse_sentence: s must be >= 1");
  if (sent.r < 0) throw std::invalid_argument("parse_sentence: negative r");
  return sent;
}

BasicLocalSentence load_sentence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_sentence: cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  return parse_sentence(j, std::filesystem::path(path).parent_path().string());
}

}  // namespace sparselocal
