#include "diskpack/matching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "diskpack/errors.hpp"

namespace diskpack {

namespace {

// Primal-dual blossom algorithm. Vertices are 0..n-1, blossoms n..2n-1.
// Edge k has endpoints 2k (its u side) and 2k+1 (its v side); mate_ and
// label_end_ store endpoint indices, so p ^ 1 is the opposite end.
class BlossomMatcher {
 public:
  BlossomMatcher(int n, const std::vector<WeightedEdge>& edges, bool max_cardinality)
      : n_(n), edges_(edges), max_cardinality_(max_cardinality) {}

  std::vector<int> solve();

 private:
  using Weight = std::int64_t;

  Weight slack(int k) const {
    const WeightedEdge& e = edges_[static_cast<std::size_t>(k)];
    return dual_[e.u] + dual_[e.v] - 2 * e.weight;
  }

  void leaves(int b, std::vector<int>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (int t : childs_[b]) leaves(t, out);
  }

  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p);
  int scan_blossom(int v, int w);
  void add_blossom(int base, int k);
  void expand_blossom(int b, bool endstage);
  void augment_blossom(int b, int v);
  void augment_matching(int k);

  int n_;
  const std::vector<WeightedEdge>& edges_;
  bool max_cardinality_;

  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> label_end_;
  std::vector<int> in_blossom_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> childs_;
  std::vector<int> base_;
  std::vector<std::vector<int>> endps_;
  std::vector<int> best_edge_;
  std::vector<std::vector<int>> best_edges_;
  std::vector<bool> has_best_edges_;
  std::vector<int> unused_;
  std::vector<Weight> dual_;
  std::vector<bool> allow_edge_;
  std::vector<int> queue_;
};

void BlossomMatcher::assign_label(int w, int t, int p) {
  const int b = in_blossom_[w];
  label_[w] = label_[b] = t;
  label_end_[w] = label_end_[b] = p;
  best_edge_[w] = best_edge_[b] = -1;
  if (t == 1) {
    leaves(b, queue_);
  } else if (t == 2) {
    const int base = base_[b];
    assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
  }
}

int BlossomMatcher::scan_blossom(int v, int w) {
  std::vector<int> path;
  int base = -1;
  while (v != -1 || w != -1) {
    int b = in_blossom_[v];
    if (label_[b] & 4) {
      base = base_[b];
      break;
    }
    path.push_back(b);
    label_[b] = 5;
    if (label_end_[b] == -1) {
      v = -1;
    } else {
      v = endpoint_[label_end_[b]];
      b = in_blossom_[v];
      v = endpoint_[label_end_[b]];
    }
    if (w != -1) std::swap(v, w);
  }
  for (int b : path) label_[b] = 1;
  return base;
}

void BlossomMatcher::add_blossom(int base, int k) {
  int v = edges_[static_cast<std::size_t>(k)].u;
  int w = edges_[static_cast<std::size_t>(k)].v;
  const int bb = in_blossom_[base];
  int bv = in_blossom_[v];
  int bw = in_blossom_[w];
  const int b = unused_.back();
  unused_.pop_back();
  base_[b] = base;
  parent_[b] = -1;
  parent_[bb] = b;
  std::vector<int>& path = childs_[b];
  std::vector<int>& endps = endps_[b];
  path.clear();
  endps.clear();
  while (bv != bb) {
    parent_[bv] = b;
    path.push_back(bv);
    endps.push_back(label_end_[bv]);
    v = endpoint_[label_end_[bv]];
    bv = in_blossom_[v];
  }
  path.push_back(bb);
  std::reverse(path.begin(), path.end());
  std::reverse(endps.begin(), endps.end());
  endps.push_back(2 * k);
  while (bw != bb) {
    parent_[bw] = b;
    path.push_back(bw);
    endps.push_back(label_end_[bw] ^ 1);
    w = endpoint_[label_end_[bw]];
    bw = in_blossom_[w];
  }
  label_[b] = 1;
  label_end_[b] = label_end_[bb];
  dual_[b] = 0;
  for (int leaf : leaves(b)) {
    if (label_[in_blossom_[leaf]] == 2) queue_.push_back(leaf);
    in_blossom_[leaf] = b;
  }

  std::vector<int> best_to(static_cast<std::size_t>(2 * n_), -1);
  for (int sub : path) {
    std::vector<std::vector<int>> lists;
    if (!has_best_edges_[sub]) {
      for (int leaf : leaves(sub)) {
        std::vector<int> ks;
        for (int p : neighbend_[leaf]) ks.push_back(p / 2);
        lists.push_back(std::move(ks));
      }
    } else {
      lists.push_back(best_edges_[sub]);
    }
    for (const auto& list : lists) {
      for (int kk : list) {
        int i = edges_[static_cast<std::size_t>(kk)].u;
        int j = edges_[static_cast<std::size_t>(kk)].v;
        if (in_blossom_[j] == b) std::swap(i, j);
        const int bj = in_blossom_[j];
        if (bj != b && label_[bj] == 1 && (best_to[bj] == -1 || slack(kk) < slack(best_to[bj]))) {
          best_to[bj] = kk;
        }
      }
    }
    best_edges_[sub].clear();
    has_best_edges_[sub] = false;
    best_edge_[sub] = -1;
  }
  best_edges_[b].clear();
  for (int kk : best_to) {
    if (kk != -1) best_edges_[b].push_back(kk);
  }
  has_best_edges_[b] = true;
  best_edge_[b] = -1;
  for (int kk : best_edges_[b]) {
    if (best_edge_[b] == -1 || slack(kk) < slack(best_edge_[b])) best_edge_[b] = kk;
  }
}

void BlossomMatcher::expand_blossom(int b, bool endstage) {
  for (int s : childs_[b]) {
    parent_[s] = -1;
    if (s < n_) {
      in_blossom_[s] = s;
    } else if (endstage && dual_[s] == 0) {
      expand_blossom(s, endstage);
    } else {
      for (int leaf : leaves(s)) in_blossom_[leaf] = s;
    }
  }
  if (!endstage && label_[b] == 2) {
    const std::vector<int>& ch = childs_[b];
    const std::vector<int>& ep = endps_[b];
    const int len = static_cast<int>(ch.size());
    const int entry = in_blossom_[endpoint_[label_end_[b] ^ 1]];
    int j = static_cast<int>(std::find(ch.begin(), ch.end(), entry) - ch.begin());
    int jstep;
    int trick;
    if (j & 1) {
      j -= len;
      jstep = 1;
      trick = 0;
    } else {
      jstep = -1;
      trick = 1;
    }
    const auto at = [len](const std::vector<int>& xs, int idx) { return xs[static_cast<std::size_t>((idx % len + len) % len)]; };
    int p = label_end_[b];
    while (j != 0) {
      label_[endpoint_[p ^ 1]] = 0;
      label_[endpoint_[at(ep, j - trick) ^ trick ^ 1]] = 0;
      assign_label(endpoint_[p ^ 1], 2, p);
      allow_edge_[static_cast<std::size_t>(at(ep, j - trick) / 2)] = true;
      j += jstep;
      p = at(ep, j - trick) ^ trick;
      allow_edge_[static_cast<std::size_t>(p / 2)] = true;
      j += jstep;
    }
    int bv = at(ch, j);
    label_[endpoint_[p ^ 1]] = label_[bv] = 2;
    label_end_[endpoint_[p ^ 1]] = label_end_[bv] = p;
    best_edge_[bv] = -1;
    j += jstep;
    while (at(ch, j) != entry) {
      bv = at(ch, j);
      if (label_[bv] == 1) {
        j += jstep;
        continue;
      }
      int labelled = -1;
      for (int leaf : leaves(bv)) {
        if (label_[leaf] != 0) {
          labelled = leaf;
          break;
        }
      }
      if (labelled != -1) {
        label_[labelled] = 0;
        label_[endpoint_[mate_[base_[bv]]]] = 0;
        assign_label(labelled, 2, label_end_[labelled]);
      }
      j += jstep;
    }
  }
  label_[b] = label_end_[b] = -1;
  childs_[b].clear();
  endps_[b].clear();
  base_[b] = -1;
  best_edges_[b].clear();
  has_best_edges_[b] = false;
  best_edge_[b] = -1;
  unused_.push_back(b);
}

void BlossomMatcher::augment_blossom(int b, int v) {
  int t = v;
  while (parent_[t] != b) t = parent_[t];
  if (t >= n_) augment_blossom(t, v);
  std::vector<int>& ch = childs_[b];
  std::vector<int>& ep = endps_[b];
  const int len = static_cast<int>(ch.size());
  const auto at = [len](const std::vector<int>& xs, int idx) { return xs[static_cast<std::size_t>((idx % len + len) % len)]; };
  const int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
  int j = i;
  int jstep;
  int trick;
  if (i & 1) {
    j -= len;
    jstep = 1;
    trick = 0;
  } else {
    jstep = -1;
    trick = 1;
  }
  while (j != 0) {
    j += jstep;
    t = at(ch, j);
    const int p = at(ep, j - trick) ^ trick;
    if (t >= n_) augment_blossom(t, endpoint_[p]);
    j += jstep;
    t = at(ch, j);
    if (t >= n_) augment_blossom(t, endpoint_[p ^ 1]);
    mate_[endpoint_[p]] = p ^ 1;
    mate_[endpoint_[p ^ 1]] = p;
  }
  std::rotate(ch.begin(), ch.begin() + i, ch.end());
  std::rotate(ep.begin(), ep.begin() + i, ep.end());
  base_[b] = base_[ch.front()];
}

void BlossomMatcher::augment_matching(int k) {
  const int v = edges_[static_cast<std::size_t>(k)].u;
  const int w = edges_[static_cast<std::size_t>(k)].v;
  for (auto [s, p] : {std::pair{v, 2 * k + 1}, std::pair{w, 2 * k}}) {
    while (true) {
      const int bs = in_blossom_[s];
      if (bs >= n_) augment_blossom(bs, s);
      mate_[s] = p;
      if (label_end_[bs] == -1) break;
      const int t = endpoint_[label_end_[bs]];
      const int bt = in_blossom_[t];
      s = endpoint_[label_end_[bt]];
      const int j = endpoint_[label_end_[bt] ^ 1];
      if (bt >= n_) augment_blossom(bt, j);
      mate_[j] = label_end_[bt];
      p = label_end_[bt] ^ 1;
    }
  }
}

std::vector<int> BlossomMatcher::solve() {
  const int n = n_;
  const int m = static_cast<int>(edges_.size());
  if (n == 0) return {};
  Weight max_weight = 0;
  for (const WeightedEdge& e : edges_) max_weight = std::max(max_weight, e.weight);

  endpoint_.resize(static_cast<std::size_t>(2 * m));
  neighbend_.assign(static_cast<std::size_t>(n), {});
  for (int k = 0; k < m; ++k) {
    const WeightedEdge& e = edges_[static_cast<std::size_t>(k)];
    endpoint_[2 * k] = e.u;
    endpoint_[2 * k + 1] = e.v;
    neighbend_[e.u].push_back(2 * k + 1);
    neighbend_[e.v].push_back(2 * k);
  }
  const std::size_t two_n = static_cast<std::size_t>(2 * n);
  mate_.assign(static_cast<std::size_t>(n), -1);
  label_.assign(two_n, 0);
  label_end_.assign(two_n, -1);
  in_blossom_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) in_blossom_[i] = i;
  parent_.assign(two_n, -1);
  childs_.assign(two_n, {});
  base_.assign(two_n, -1);
  for (int i = 0; i < n; ++i) base_[i] = i;
  endps_.assign(two_n, {});
  best_edge_.assign(two_n, -1);
  best_edges_.assign(two_n, {});
  has_best_edges_.assign(two_n, false);
  unused_.clear();
  for (int b = 2 * n - 1; b >= n; --b) unused_.push_back(b);
  std::reverse(unused_.begin(), unused_.end());
  dual_.assign(two_n, 0);
  for (int i = 0; i < n; ++i) dual_[i] = max_weight;
  allow_edge_.assign(static_cast<std::size_t>(m), false);

  for (int stage = 0; stage < n; ++stage) {
    std::fill(label_.begin(), label_.end(), 0);
    std::fill(best_edge_.begin(), best_edge_.end(), -1);
    for (int b = n; b < 2 * n; ++b) {
      best_edges_[b].clear();
      has_best_edges_[b] = false;
    }
    std::fill(allow_edge_.begin(), allow_edge_.end(), false);
    queue_.clear();
    for (int v = 0; v < n; ++v) {
      if (mate_[v] == -1 && label_[in_blossom_[v]] == 0) assign_label(v, 1, -1);
    }

    bool augmented = false;
    while (true) {
      while (!queue_.empty() && !augmented) {
        const int v = queue_.back();
        queue_.pop_back();
        for (int p : neighbend_[v]) {
          const int k = p / 2;
          const int w = endpoint_[p];
          if (in_blossom_[v] == in_blossom_[w]) continue;
          Weight kslack = 0;
          if (!allow_edge_[k]) {
            kslack = slack(k);
            if (kslack <= 0) allow_edge_[k] = true;
          }
          if (allow_edge_[k]) {
            if (label_[in_blossom_[w]] == 0) {
              assign_label(w, 2, p ^ 1);
            } else if (label_[in_blossom_[w]] == 1) {
              const int base = scan_blossom(v, w);
              if (base >= 0) {
                add_blossom(base, k);
              } else {
                augment_matching(k);
                augmented = true;
                break;
              }
            } else if (label_[w] == 0) {
              label_[w] = 2;
              label_end_[w] = p ^ 1;
            }
          } else if (label_[in_blossom_[w]] == 1) {
            const int b = in_blossom_[v];
            if (best_edge_[b] == -1 || kslack < slack(best_edge_[b])) best_edge_[b] = k;
          } else if (label_[w] == 0) {
            if (best_edge_[w] == -1 || kslack < slack(best_edge_[w])) best_edge_[w] = k;
          }
        }
      }
      if (augmented) break;

      int delta_type = -1;
      Weight delta = 0;
      int delta_edge = -1;
      int delta_blossom = -1;
      if (!max_cardinality_) {
        delta_type = 1;
        delta = *std::min_element(dual_.begin(), dual_.begin() + n);
      }
      for (int v = 0; v < n; ++v) {
        if (label_[in_blossom_[v]] == 0 && best_edge_[v] != -1) {
          const Weight d = slack(best_edge_[v]);
          if (delta_type == -1 || d < delta) {
            delta = d;
            delta_type = 2;
            delta_edge = best_edge_[v];
          }
        }
      }
      for (int b = 0; b < 2 * n; ++b) {
        if (parent_[b] == -1 && label_[b] == 1 && best_edge_[b] != -1) {
          const Weight d = slack(best_edge_[b]) / 2;
          if (delta_type == -1 || d < delta) {
            delta = d;
            delta_type = 3;
            delta_edge = best_edge_[b];
          }
        }
      }
      for (int b = n; b < 2 * n; ++b) {
        if (base_[b] >= 0 && parent_[b] == -1 && label_[b] == 2 && (delta_type == -1 || dual_[b] < delta)) {
          delta = dual_[b];
          delta_type = 4;
          delta_blossom = b;
        }
      }
      if (delta_type == -1) {
        delta_type = 1;
        delta = std::max<Weight>(0, *std::min_element(dual_.begin(), dual_.begin() + n));
      }

      for (int v = 0; v < n; ++v) {
        const int lbl = label_[in_blossom_[v]];
        if (lbl == 1) {
          dual_[v] -= delta;
        } else if (lbl == 2) {
          dual_[v] += delta;
        }
      }
      for (int b = n; b < 2 * n; ++b) {
        if (base_[b] >= 0 && parent_[b] == -1) {
          if (label_[b] == 1) {
            dual_[b] += delta;
          } else if (label_[b] == 2) {
            dual_[b] -= delta;
          }
        }
      }

      if (delta_type == 1) break;
      if (delta_type == 2) {
        allow_edge_[delta_edge] = true;
        int i = edges_[static_cast<std::size_t>(delta_edge)].u;
        const int j = edges_[static_cast<std::size_t>(delta_edge)].v;
        if (label_[in_blossom_[i]] == 0) i = j;
        queue_.push_back(i);
      } else if (delta_type == 3) {
        allow_edge_[delta_edge] = true;
        queue_.push_back(edges_[static_cast<std::size_t>(delta_edge)].u);
      } else {
        expand_blossom(delta_blossom, false);
      }
    }
    if (!augmented) break;
    for (int b = n; b < 2 * n; ++b) {
      if (parent_[b] == -1 && base_[b] >= 0 && label_[b] == 1 && dual_[b] == 0) expand_blossom(b, true);
    }
  }

  std::vector<int> result(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (mate_[v] >= 0) result[v] = endpoint_[mate_[v]];
  }
  return result;
}

}  // namespace

std::vector<int> max_weight_matching(int vertex_count, const std::vector<WeightedEdge>& edges,
                                     bool max_cardinality) {
  // Doubling keeps every slack even, so halving it for blossom duals is exact.
  std::vector<WeightedEdge> doubled = edges;
  for (WeightedEdge& e : doubled) e.weight *= 2;
  BlossomMatcher matcher(vertex_count, doubled, max_cardinality);
  return matcher.solve();
}

std::vector<int> min_weight_perfect_matching(int vertex_count, const std::vector<CostEdge>& edges) {
  if (vertex_count % 2 != 0) throw Error(ErrorCode::kInternal, "perfect matching needs an even vertex count");
  if (vertex_count == 0) return {};
  double max_cost = 0.0;
  for (const CostEdge& e : edges) {
    if (!std::isfinite(e.cost) || e.cost < 0) throw Error(ErrorCode::kInternal, "matching costs must be finite and nonnegative");
    max_cost = std::max(max_cost, e.cost);
  }
  // Maximum cardinality with weights (top - cost) minimizes the total cost
  // among perfect matchings.
  const double scale = max_cost > 0 ? std::ldexp(1.0, 42) / max_cost : 1.0;
  const auto quantize = [&](double c) { return static_cast<std::int64_t>(std::llround(c * scale)); };
  const std::int64_t top = quantize(max_cost) + 1;
  std::vector<WeightedEdge> weighted;
  weighted.reserve(edges.size());
  for (const CostEdge& e : edges) weighted.push_back({e.u, e.v, top - quantize(e.cost)});
  std::vector<int> mate = max_weight_matching(vertex_count, weighted, true);
  for (int m : mate) {
    if (m < 0) throw Error(ErrorCode::kInternal, "no perfect matching exists");
  }
  return mate;
}

}  // namespace diskpack
