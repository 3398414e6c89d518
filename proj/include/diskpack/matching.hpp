#ifndef DISKPACK_MATCHING_HPP
#define DISKPACK_MATCHING_HPP

#include <cstdint>
#include <vector>

namespace diskpack {

struct WeightedEdge {
  int u;
  int v;
  std::int64_t weight;
};

/// Maximum-weight matching in a general graph (Edmonds' blossom algorithm
/// with dual variables, O(n^3)). With `max_cardinality` set, the result is
/// the heaviest matching among those of maximum size. Returns mate[v], or -1
/// for unmatched vertices. Weights must be integers so that all dual updates
/// are exact.
std::vector<int> max_weight_matching(int vertex_count, const std::vector<WeightedEdge>& edges,
                                     bool max_cardinality);

/// Minimum-weight perfect matching. `cost(i, j)` is queried only for the
/// listed edges; a perfect matching must exist among them. Costs are
/// quantized to integers on a grid of about 1e-13 times the largest cost.
/// Throws Error(kInternal) if no perfect matching exists.
struct CostEdge {
  int u;
  int v;
  double cost;
};
std::vector<int> min_weight_perfect_matching(int vertex_count, const std::vector<CostEdge>& edges);

}  // namespace diskpack

#endif  // DISKPACK_MATCHING_HPP
