#include "diskpack/stabbing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "diskpack/errors.hpp"
#include "diskpack/matching.hpp"

namespace diskpack {

DistanceMatrix::DistanceMatrix(std::size_t n, const UnitVec3& direction)
    : n_(n), direction_(direction), entries_(n * n, 0.0) {}

void DistanceMatrix::set(std::size_t i, std::size_t j, double value) {
  entries_[i * n_ + j] = value;
  entries_[j * n_ + i] = value;
}

DistanceMatrix build_distance_matrix(const std::vector<Disk>& disks, const UnitVec3& s, const ToleranceConfig& tol,
                                     unsigned threads) {
  const std::size_t n = disks.size();
  DistanceMatrix matrix(n, s);
  if (n < 2) return matrix;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n - 1));

  // Rows are handed out dynamically; each pair is written by exactly one
  // worker, so the result is the same for any thread count.
  std::atomic<std::size_t> next_row{0};
  std::mutex failure_mutex;
  std::size_t failed_row = n;
  std::exception_ptr failure;

  const auto work = [&] {
    for (std::size_t i = next_row++; i + 1 < n; i = next_row++) {
      std::size_t j = i + 1;
      try {
        for (; j < n; ++j) matrix.set(i, j, s_distance(disks[i], disks[j], s, tol));
      } catch (const GeometryError& e) {
        std::lock_guard lock(failure_mutex);
        if (i < failed_row) {
          failed_row = i;
          failure = std::make_exception_ptr(GeometryError(
              "pair (" + std::to_string(i) + ", " + std::to_string(j) + "): " + e.what(), e.first_normal(),
              e.second_normal(), e.direction()));
        }
        return;
      }
    }
  };

  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return matrix;
}

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }

  std::vector<std::size_t> parent;
};

}  // namespace

SpanningTree mst(const DistanceMatrix& matrix) {
  const std::size_t n = matrix.size();
  std::vector<Edge> all;
  all.reserve(n * (n - (n > 0 ? 1 : 0)) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) all.push_back({i, j, matrix.at(i, j)});
  }
  // Stable sort keeps the (u, v) generation order among equal weights.
  std::stable_sort(all.begin(), all.end(), [](const Edge& a, const Edge& b) { return a.weight < b.weight; });

  SpanningTree tree;
  DisjointSets sets(n);
  for (const Edge& e : all) {
    if (tree.edges.size() + 1 >= n) break;
    if (sets.unite(e.u, e.v)) {
      tree.edges.push_back(e);
      tree.weight += e.weight;
    }
  }
  return tree;
}

double path_length(const DistanceMatrix& matrix, const Ordering& ordering) {
  double total = 0.0;
  for (std::size_t k = 1; k < ordering.size(); ++k) total += matrix.at(ordering[k - 1], ordering[k]);
  return total;
}

bool is_permutation_of_size(const Ordering& ordering, std::size_t n) {
  if (ordering.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t v : ordering) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

namespace {

// Hierholzer's algorithm on a multigraph, always leaving a vertex through its
// smallest-index unused edge.
std::vector<std::size_t> eulerian_walk(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                       std::size_t start) {
  struct Arc {
    std::size_t to;
    std::size_t id;
  };
  std::vector<std::vector<Arc>> adj(n);
  for (std::size_t id = 0; id < edges.size(); ++id) {
    adj[edges[id].first].push_back({edges[id].second, id});
    adj[edges[id].second].push_back({edges[id].first, id});
  }
  for (auto& arcs : adj) {
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.to != b.to ? a.to < b.to : a.id < b.id; });
  }
  std::vector<bool> used(edges.size(), false);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<std::size_t> stack{start};
  std::vector<std::size_t> walk;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    auto& c = cursor[v];
    while (c < adj[v].size() && used[adj[v][c].id]) ++c;
    if (c == adj[v].size()) {
      walk.push_back(v);
      stack.pop_back();
    } else {
      used[adj[v][c].id] = true;
      stack.push_back(adj[v][c].to);
    }
  }
  std::reverse(walk.begin(), walk.end());
  return walk;
}

}  // namespace

Ordering christofides_path(const DistanceMatrix& matrix) {
  const std::size_t n = matrix.size();
  if (n <= 2) {
    Ordering trivial(n);
    std::iota(trivial.begin(), trivial.end(), 0);
    return trivial;
  }
  const SpanningTree tree = mst(matrix);
  std::vector<std::size_t> degree(n, 0);
  std::vector<std::pair<std::size_t, std::size_t>> multigraph;
  for (const Edge& e : tree.edges) {
    ++degree[e.u];
    ++degree[e.v];
    multigraph.emplace_back(e.u, e.v);
  }
  std::vector<std::size_t> odd;
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] % 2 == 1) odd.push_back(v);
  }

  // Two dummy vertices join every odd vertex at cost 0. The edge between
  // the dummies is left out entirely, which is what a prohibitive cost
  // amounts to: each dummy then frees one odd vertex to be a path endpoint.
  const int k = static_cast<int>(odd.size());
  const int dummy_a = k;
  const int dummy_b = k + 1;
  std::vector<CostEdge> edges;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) edges.push_back({i, j, matrix.at(odd[i], odd[j])});
  }
  for (int i = 0; i < k; ++i) {
    edges.push_back({i, dummy_a, 0.0});
    edges.push_back({i, dummy_b, 0.0});
  }
  const std::vector<int> mate = min_weight_perfect_matching(k + 2, edges);

  std::vector<std::size_t> endpoints;
  for (int i = 0; i < k; ++i) {
    if (mate[i] >= k) {
      endpoints.push_back(odd[i]);
    } else if (mate[i] > i) {
      multigraph.emplace_back(odd[i], odd[mate[i]]);
    }
  }
  if (endpoints.size() != 2) throw Error(ErrorCode::kInternal, "matching did not free two path endpoints");

  const std::vector<std::size_t> walk = eulerian_walk(n, multigraph, std::min(endpoints[0], endpoints[1]));
  if (walk.size() != multigraph.size() + 1) throw Error(ErrorCode::kInternal, "Eulerian walk is incomplete");

  Ordering ordering;
  ordering.reserve(n);
  std::vector<bool> seen(n, false);
  for (std::size_t v : walk) {
    if (!seen[v]) {
      seen[v] = true;
      ordering.push_back(v);
    }
  }
  return ordering;
}

Ordering held_karp_path(const DistanceMatrix& matrix, std::size_t limit) {
  const std::size_t n = matrix.size();
  if (n > limit) {
    throw SizeExceeded("exact stabbing limited to " + std::to_string(limit) + " disks, got " + std::to_string(n));
  }
  if (n == 0) return {};
  if (n > 24) throw SizeExceeded("exact stabbing table would not fit in memory");

  // rest[S * n + v]: shortest path that starts at v and visits every vertex
  // of S (v in S). Building from the front lets the reconstruction pick the
  // smallest next vertex greedily, which yields the lexicographically
  // smallest optimal ordering.
  const std::size_t full = (std::size_t{1} << n) - 1;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> rest((full + 1) * n, inf);
  for (std::size_t v = 0; v < n; ++v) rest[(std::size_t{1} << v) * n + v] = 0.0;
  for (std::size_t set = 1; set <= full; ++set) {
    if ((set & (set - 1)) == 0) continue;
    for (std::size_t v = 0; v < n; ++v) {
      if (!(set & (std::size_t{1} << v))) continue;
      const std::size_t others = set & ~(std::size_t{1} << v);
      double best = inf;
      for (std::size_t u = 0; u < n; ++u) {
        if (!(others & (std::size_t{1} << u))) continue;
        best = std::min(best, matrix.at(v, u) + rest[others * n + u]);
      }
      rest[set * n + v] = best;
    }
  }

  // Equal-length alternatives can differ in the last bits depending on
  // summation order, so ties are judged with a relative slack.
  double optimum = inf;
  for (std::size_t v = 0; v < n; ++v) optimum = std::min(optimum, rest[full * n + v]);
  const double slack = 1e-12 * (1.0 + optimum);

  Ordering ordering;
  ordering.reserve(n);
  std::size_t set = full;
  double remaining = optimum;
  std::size_t current = n;
  for (std::size_t step = 0; step < n; ++step) {
    for (std::size_t u = 0; u < n; ++u) {
      if (!(set & (std::size_t{1} << u))) continue;
      const double via = (current == n ? 0.0 : matrix.at(current, u)) + rest[set * n + u];
      if (via <= remaining + slack) {
        remaining = rest[set * n + u];
        current = u;
        break;
      }
    }
    ordering.push_back(current);
    set &= ~(std::size_t{1} << current);
  }
  return ordering;
}

namespace {

template <typename Gap>
RealizedStabbing realize(const std::vector<Disk>& disks, const Ordering& ordering, const UnitVec3& s, Gap gap) {
  if (!is_permutation_of_size(ordering, disks.size())) {
    throw InvalidInput("ordering is not a permutation of the " + std::to_string(disks.size()) + " disks");
  }
  RealizedStabbing out;
  out.stabbing.direction = s;
  out.stabbing.ordering = ordering;
  out.stabbing.offsets.assign(ordering.size(), 0.0);
  out.placements.resize(disks.size());
  double offset = 0.0;
  for (std::size_t k = 0; k < ordering.size(); ++k) {
    if (k > 0) offset += gap(ordering[k - 1], ordering[k]);
    out.stabbing.offsets[k] = offset;
    out.placements[ordering[k]] = {disks[ordering[k]], offset * s.vec()};
  }
  out.stabbing.length = offset;
  return out;
}

}  // namespace

RealizedStabbing realize_stabbing(const std::vector<Disk>& disks, const Ordering& ordering, const UnitVec3& s,
                                  const ToleranceConfig& tol) {
  return realize(disks, ordering, s,
                 [&](std::size_t a, std::size_t b) { return s_distance(disks[a], disks[b], s, tol); });
}

RealizedStabbing realize_stabbing(const std::vector<Disk>& disks, const Ordering& ordering,
                                  const DistanceMatrix& matrix) {
  if (matrix.size() != disks.size()) throw InvalidInput("distance matrix does not match the disk count");
  return realize(disks, ordering, matrix.direction(), [&](std::size_t a, std::size_t b) { return matrix.at(a, b); });
}

}  // namespace diskpack
