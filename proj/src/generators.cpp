#include "sparselocal/generators.hpp"

#include <numeric>
#include <stdexcept>

namespace sparselocal {

namespace {
std::vector<int> identity_arrival(int n) {
  std::vector<int> a(static_cast<std::size_t>(n));
  std::iota(a.begin(), a.end(), 0);
  return a;
}
}  // namespace

Graph gen_er(const ErParams& params, const Seed& seed) {
  int n = params.n;
  if (n < 0) throw std::invalid_argument("gen_er: negative n");
  if (!(params.d >= 0.0)) throw std::invalid_argument("gen_er: negative d");
  double p = n > 0 ? params.d / n : 0.0;
  if (p > 1.0) throw std::invalid_argument("gen_er: d/n exceeds 1");
  Rng rng = seed.rng();
  std::uint64_t threshold = Rng::bernoulli_threshold(p);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(params.d * n / 2 + 16));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(threshold)) edges.emplace_back(u, v);
  return Graph(n, edges, identity_arrival(n));
}

Graph gen_ba(const BaParams& params, const Seed& seed) {
  int n = params.n;
  int d = params.d;
  if (d < 1) throw std::invalid_argument("gen_ba: d must be >= 1");
  if (n < d + 1) throw std::invalid_argument("gen_ba: n must be at least d+1");
  Rng rng = seed.rng();
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(d) * n);
  // Urn holds one entry per edge endpoint, so each vertex appears with
  // multiplicity equal to its degree.
  std::vector<int> urn;
  urn.reserve(2 * static_cast<std::size_t>(d) * n);
  for (int u = 0; u <= d; ++u)
    for (int v = u + 1; v <= d; ++v) {
      edges.emplace_back(u, v);
      urn.push_back(u);
      urn.push_back(v);
    }
  std::vector<int> targets;
  targets.reserve(static_cast<std::size_t>(d));
  std::vector<char> picked(static_cast<std::size_t>(n), 0);
  for (int v = d + 1; v < n; ++v) {
    targets.clear();
    while (static_cast<int>(targets.size()) < d) {
      int t = urn[rng.below(urn.size())];
      if (!picked[t]) {
        picked[t] = 1;
        targets.push_back(t);
      }
    }
    for (int t : targets) {
      picked[t] = 0;
      edges.emplace_back(t, v);
      urn.push_back(t);
      urn.push_back(v);
    }
  }
  return Graph(n, edges, identity_arrival(n));
}

}  // namespace sparselocal
