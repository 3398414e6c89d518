#include "diskpack/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>

#include "diskpack/errors.hpp"
#include "diskpack/instances.hpp"
#include "diskpack/stabbing.hpp"

namespace diskpack {

VerificationReport verify_packing(const PackingSolution& solution, const ToleranceConfig& tol) {
  VerificationReport report;
  const double r = solution.radius;
  const std::size_t n = solution.placements.size();

  // Everything is checked at unit radius; reported lengths are rescaled.
  std::vector<PlacedDisk> unit(solution.placements);
  for (PlacedDisk& p : unit) p.center = p.center / r;
  const Vec3 lo = solution.container.min_corner / r;
  const Vec3 hi = solution.container.max_corner() / r;

  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 half = 0.5 * disk_extent(unit[i].disk);
    double excess = 0.0;
    for (std::size_t a = 0; a < 3; ++a) {
      excess = std::max(excess, lo[a] - (unit[i].center[a] - half[a]));
      excess = std::max(excess, (unit[i].center[a] + half[a]) - hi[a]);
    }
    excess *= r;
    report.worst_containment = std::max(report.worst_containment, excess);
    if (excess > kContainmentSlack) report.outside.push_back(i);
  }

  // Sweep along x: only pairs within 2 + eps in x can touch.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return unit[a].center.x != unit[b].center.x ? unit[a].center.x < unit[b].center.x : a < b;
  });
  const double reach = 2.0 + tol.overlap_eps;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const PlacedDisk& a = unit[order[p]];
      const PlacedDisk& b = unit[order[q]];
      if (b.center.x - a.center.x > reach) break;
      if (std::abs(b.center.y - a.center.y) > reach || std::abs(b.center.z - a.center.z) > reach) continue;
      ++report.pairs_checked;
      OverlapReport o = assess_overlap(a, b, tol);
      if (o.status == OverlapStatus::kTouching && o.penetration > 0) {
        // Touching pairs carry the chord overlap as their bound, which near
        // rim-to-rim contact is far above the true depth; report the latter.
        o.penetration = std::min(o.penetration, penetration_depth(a, b, 0.0));
      }
      report.worst_penetration = std::max(report.worst_penetration, o.penetration * r);
      if (o.status == OverlapStatus::kOverlapping) {
        report.overlapping.push_back({std::min(order[p], order[q]), std::max(order[p], order[q]), o.penetration * r});
      }
      if (!o.converged) report.notes.push_back("distance search for pair did not converge");
    }
  }
  std::sort(report.overlapping.begin(), report.overlapping.end(),
            [](const OffendingPair& x, const OffendingPair& y) { return std::tie(x.first, x.second) < std::tie(y.first, y.second); });

  if (n > 0) {
    std::vector<Disk> disks;
    disks.reserve(n);
    for (const PlacedDisk& p : unit) disks.push_back(p.disk);
    const double bound = lower_bound(disks, tol).value * r * r * r;
    const double volume = solution.container.volume();
    report.certified_ratio = bound > 0 ? volume / bound : 0.0;
    if (bound > 0 && report.certified_ratio > kCertifiedFactor) {
      report.notes.push_back("container exceeds the certified volume ratio");
    }
  }
  report.pass = report.overlapping.empty() && report.outside.empty();
  return report;
}

MetricReport verify_metric(const std::vector<Disk>& disks, const UnitVec3& s, std::size_t trials, std::uint64_t seed,
                           const ToleranceConfig& tol) {
  if (trials == 0) throw InvalidInput("metric check needs at least one trial");
  if (disks.size() < 3) throw InvalidInput("metric check needs at least three disks");
  constexpr double kTol = 1e-9;
  constexpr std::size_t kMaxListed = 20;
  MetricReport report;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, disks.size() - 1);
  char buf[256];
  const auto violation = [&](const char* what, std::size_t i, std::size_t j, std::size_t k, double a, double b,
                             double c) {
    report.pass = false;
    if (report.violations.size() >= kMaxListed) return;
    std::snprintf(buf, sizeof buf, "%s: disks (%zu, %zu, %zu) distances %.17g %.17g %.17g", what, i, j, k, a, b, c);
    report.violations.emplace_back(buf);
  };
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
    while (j == i) j = pick(rng);
    while (k == i || k == j) k = pick(rng);
    const double d12 = s_distance(disks[i], disks[j], s, tol);
    const double d21 = s_distance(disks[j], disks[i], s, tol);
    const double d23 = s_distance(disks[j], disks[k], s, tol);
    const double d13 = s_distance(disks[i], disks[k], s, tol);
    ++report.triples;

    const double asym = std::abs(d12 - d21);
    report.worst_asymmetry = std::max(report.worst_asymmetry, asym);
    if (asym > kTol) violation("asymmetric", i, j, k, d12, d21, 0.0);

    const double excess = d13 - d12 - d23;
    report.worst_triangle_excess = std::max(report.worst_triangle_excess, excess);
    if (excess > kTol) violation("triangle", i, j, k, d12, d23, d13);

    const double deficit = std::sin(angle_between(disks[i], disks[j])) - d12;
    report.worst_sine_deficit = std::max(report.worst_sine_deficit, deficit);
    if (deficit > kTol) violation("below sine of angle", i, j, k, d12, d23, d13);

    const double over = std::max({d12, d23, d13}) - 2.0;
    report.worst_upper_excess = std::max(report.worst_upper_excess, over);
    if (over > kTol) violation("above 2", i, j, k, d12, d23, d13);
  }
  return report;
}

GrowthTable growth_experiment(const std::vector<std::size_t>& sizes, double c, const SolverConfig& config) {
  if (sizes.empty()) throw InvalidInput("growth experiment needs at least one size");
  config.validate();
  GrowthTable table;
  table.c = c;
  const UnitVec3 z = UnitVec3::axis(2);
  for (std::size_t n : sizes) {
    const Instance inst = gen_sphere_grid(n, c);
    GrowthRow row;
    row.n = n;
    row.epsilon = inst.meta.parameters.at("epsilon").get<double>();
    const DistanceMatrix m = build_distance_matrix(inst.disks, z, config.tol, config.threads);
    row.min_distance = n > 1 ? std::numeric_limits<double>::infinity() : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) row.min_distance = std::min(row.min_distance, m.at(i, j));
    }
    row.mst_weight = mst(m).weight;
    row.stab_bound = 8.0 / 81.0 * row.mst_weight;
    const PackingSolution sol = pack(inst.disks, config);
    row.lower_bound = sol.stats.lower.value;
    row.packed_volume = sol.stats.volume;
    row.certified_ratio = sol.stats.certified_ratio;
    row.verified = verify_packing(sol, config.tol).pass;
    table.rows.push_back(row);
  }

  std::vector<double> xs, ys;
  for (const GrowthRow& row : table.rows) {
    if (row.stab_bound > 0) {
      xs.push_back(std::log(static_cast<double>(row.n)));
      ys.push_back(std::log(row.stab_bound));
    }
  }
  if (xs.size() >= 2) {
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    table.slope = sxx > 0 ? sxy / sxx : 0.0;
  }
  return table;
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (const OffendingPair& p : report.overlapping) {
    pairs.push_back({{"first", p.first}, {"second", p.second}, {"penetration", p.penetration}});
  }
  return {{"pass", report.pass},
          {"worst_penetration", report.worst_penetration},
          {"worst_containment", report.worst_containment},
          {"overlapping", pairs},
          {"outside", report.outside},
          {"pairs_checked", report.pairs_checked},
          {"certified_ratio", report.certified_ratio},
          {"notes", report.notes}};
}

nlohmann::ordered_json to_json(const MetricReport& report) {
  return {{"pass", report.pass},
          {"triples", report.triples},
          {"worst_asymmetry", report.worst_asymmetry},
          {"worst_triangle_excess", report.worst_triangle_excess},
          {"worst_sine_deficit", report.worst_sine_deficit},
          {"worst_upper_excess", report.worst_upper_excess},
          {"violations", report.violations}};
}

nlohmann::ordered_json to_json(const GrowthTable& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const GrowthRow& r : table.rows) {
    rows.push_back({{"n", r.n},
                    {"epsilon", r.epsilon},
                    {"min_ds", r.min_distance},
                    {"mst", r.mst_weight},
                    {"stab_bound", r.stab_bound},
                    {"lower_bound", r.lower_bound},
                    {"packed_volume", r.packed_volume},
                    {"ratio", r.certified_ratio},
                    {"verified", r.verified}});
  }
  return {{"c", table.c}, {"rows", rows}, {"slope", table.slope}};
}

}  // namespace diskpack
