#pragma once

#include <vector>

#include "sparselocal/generators.hpp"
#include "sparselocal/graph.hpp"
#include "sparselocal/rng.hpp"

namespace sparselocal {

// Edge surplus of a vertex set: edges(S) - |S|. For connected S this is
// (cycle rank - 1): trees score -1, unicyclic sets 0, each extra chord +1.
long long edge_surplus(const Graph& g, std::span<const int> s);

struct BallStats {
  int center = 0;
  int radius = 0;
  long long size = 0;
  long long edges = 0;
  long long surplus = 0;  // edges - size
};

struct SurplusProfile {
  std::vector<BallStats> balls;  // one per vertex, index = center
  long long max_surplus = 0;

  long long count_with_surplus_at_least(long long m) const;
};

SurplusProfile surplus_profile(const Graph& g, int r);

struct BoundCheck {
  long long max_observed = 0;
  double bound = 0.0;
  bool within = false;
};

// Largest |N_r(v)| over all v against the reference bound log(n)^{2r} d^r
// (natural log).
BoundCheck max_ball_size(const Graph& g, int r, double d);

double nhood_size_bound(long long n, double d, int r);

// Number of simple cycles of length exactly k (as subgraphs, i.e. each cycle
// counted once). k must be in [3, 8]; the DFS enumeration is exponential in k.
long long count_cycles(const Graph& g, int k);

// Number of k-vertex subsets S with at least k + m induced edges. k must be
// in [1, 6], m >= 0. Exact; counting is organized around the cyclic part of
// each such subset so sparse graphs with few cycles are cheap even for large
// n (no Theta(n^k) subset scan).
long long count_dense_subgraphs(const Graph& g, int k, int m);

// One G(n, d/n) draw; true iff vertices 0 and n-1 are within distance r.
bool er_path_trial(const ErParams& params, int r, const Seed& seed);

struct PathProbEstimate {
  double estimate = 0.0;
  double se = 0.0;      // binomial standard error of the estimate
  double lower = 0.0;   // reference bounds: d/n and 2 d^r / n
  double upper = 0.0;
  long long trials = 0;
};

// Monte Carlo estimate of P[dist(u, v) <= r] for two fixed vertices of
// G(n, d/n); trial t uses seed.stream(t).
PathProbEstimate estimate_path_prob(const ErParams& params, int r, long long trials, const Seed& seed);

}  // namespace sparselocal
