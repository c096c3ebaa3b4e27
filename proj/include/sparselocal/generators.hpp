#pragma once

#include "sparselocal/graph.hpp"
#include "sparselocal/rng.hpp"

namespace sparselocal {

// G(n, d/n): each unordered pair independently an edge with probability d/n.
struct ErParams {
  int n = 0;
  double d = 0.0;  // target expected degree; edge probability is d/n
};

// Preferential attachment: complete seed on d+1 vertices, then each new
// vertex attaches to d distinct existing vertices chosen proportionally to
// degree.
struct BaParams {
  int n = 0;
  int d = 1;
};

// Pair order is pinned (row-major over u < v) so a given (params, seed)
// yields the same graph everywhere. Arrival order is vertex id.
Graph gen_er(const ErParams& params, const Seed& seed);

// Degree-proportional sampling uses a repeated-endpoint urn; the d targets of
// each vertex are drawn without replacement by rejecting duplicates.
// Arrival order is vertex id.
Graph gen_ba(const BaParams& params, const Seed& seed);

}  // namespace sparselocal
