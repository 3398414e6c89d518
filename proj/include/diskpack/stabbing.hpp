#ifndef DISKPACK_STABBING_HPP
#define DISKPACK_STABBING_HPP

// Disk stabbing along a fixed direction: the pairwise s-distances form a
// metric, so a short stabbing is a short Hamiltonian path in that metric.

#include <cstddef>
#include <utility>
#include <vector>

#include "diskpack/geometry.hpp"

namespace diskpack {

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, const UnitVec3& direction);

  std::size_t size() const { return n_; }
  const UnitVec3& direction() const { return direction_; }

  double at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value);  // writes both (i, j) and (j, i)

  const std::vector<double>& entries() const { return entries_; }

 private:
  std::size_t n_ = 0;
  UnitVec3 direction_;
  std::vector<double> entries_;
};

using Ordering = std::vector<std::size_t>;

struct Stabbing {
  UnitVec3 direction;
  Ordering ordering;
  std::vector<double> offsets;  // offsets[k] belongs to disk ordering[k]
  double length = 0.0;
};

struct RealizedStabbing {
  Stabbing stabbing;
  // Indexed by disk, not by position in the ordering.
  std::vector<PlacedDisk> placements;
};

struct Edge {
  std::size_t u;
  std::size_t v;
  double weight;
};

struct SpanningTree {
  std::vector<Edge> edges;
  double weight = 0.0;
};

/// Pairwise s-distances (first index first along s). `threads == 0` picks
/// the hardware concurrency. The result does not depend on the thread count.
/// A GeometryError is rethrown with the offending pair named in its message.
DistanceMatrix build_distance_matrix(const std::vector<Disk>& disks, const UnitVec3& s,
                                     const ToleranceConfig& tol = {}, unsigned threads = 0);

/// Kruskal over the complete graph; equal weights are taken in (u, v) order.
SpanningTree mst(const DistanceMatrix& matrix);

double path_length(const DistanceMatrix& matrix, const Ordering& ordering);

bool is_permutation_of_size(const Ordering& ordering, std::size_t n);

/// Christofides' heuristic adapted to paths with free endpoints: at most 3/2
/// times the shortest Hamiltonian path when the matrix is metric.
Ordering christofides_path(const DistanceMatrix& matrix);

constexpr std::size_t kDefaultExactLimit = 15;

/// Exact shortest Hamiltonian path by subset DP; O(2^n n^2) time. Among
/// optimal paths the lexicographically smallest ordering is returned.
/// Throws SizeExceeded when n > limit.
Ordering held_karp_path(const DistanceMatrix& matrix, std::size_t limit = kDefaultExactLimit);

/// Places the disks on the line through the origin along s, in order, with
/// consecutive disks touching.
RealizedStabbing realize_stabbing(const std::vector<Disk>& disks, const Ordering& ordering, const UnitVec3& s,
                                  const ToleranceConfig& tol = {});

/// Same, reusing already computed distances.
RealizedStabbing realize_stabbing(const std::vector<Disk>& disks, const Ordering& ordering,
                                  const DistanceMatrix& matrix);

}  // namespace diskpack

#endif  // DISKPACK_STABBING_HPP
