#ifndef DISKPACK_VERIFICATION_HPP
#define DISKPACK_VERIFICATION_HPP

// Independent checks of packings and of the s-distance metric, and the
// lower-bound growth experiment on sphere-grid instances.

#include <cstdint>
#include <string>
#include <vector>

#include "diskpack/geometry.hpp"
#include "diskpack/packing.hpp"
#include "json.hpp"

namespace diskpack {

struct OffendingPair {
  std::size_t first;
  std::size_t second;
  double penetration;
};

struct VerificationReport {
  bool pass = true;
  double worst_penetration = 0.0;
  double worst_containment = 0.0;  // how far any disk reaches outside the container
  std::vector<OffendingPair> overlapping;
  std::vector<std::size_t> outside;
  double certified_ratio = 0.0;
  std::size_t pairs_checked = 0;
  std::vector<std::string> notes;
};

constexpr double kContainmentSlack = 1e-9;

/// Checks every pair for overlap and every disk for containment. Pairs whose
/// centres are more than 2 + overlap_eps apart along some axis are skipped.
VerificationReport verify_packing(const PackingSolution& solution, const ToleranceConfig& tol = {});

struct MetricReport {
  bool pass = true;
  std::size_t triples = 0;
  double worst_asymmetry = 0.0;
  double worst_triangle_excess = 0.0;   // d13 - d12 - d23, maximized
  double worst_sine_deficit = 0.0;      // sin(angle) - d, maximized
  double worst_upper_excess = 0.0;      // d - 2, maximized
  std::vector<std::string> violations;  // at most 20, with the distances involved
};

/// Random triples from `disks` (drawn with the seeded generator) checked for
/// symmetry, the triangle inequality, d >= sin(angle) and d <= 2, all at 1e-9.
MetricReport verify_metric(const std::vector<Disk>& disks, const UnitVec3& s, std::size_t trials,
                           std::uint64_t seed = 1, const ToleranceConfig& tol = {});

struct GrowthRow {
  std::size_t n = 0;
  double epsilon = 0.0;
  double min_distance = 0.0;  // smallest pairwise s-distance along z
  double mst_weight = 0.0;
  double stab_bound = 0.0;
  double lower_bound = 0.0;
  double packed_volume = 0.0;
  double certified_ratio = 0.0;
  bool verified = false;
};

struct GrowthTable {
  double c = 0.0;
  std::vector<GrowthRow> rows;
  // Least-squares slope of log(stab_bound) against log(n).
  double slope = 0.0;
};

/// For each n: sphere-grid instance, spanning-tree bound, full packing.
GrowthTable growth_experiment(const std::vector<std::size_t>& sizes, double c, const SolverConfig& config = {});

nlohmann::ordered_json to_json(const VerificationReport& report);
nlohmann::ordered_json to_json(const MetricReport& report);
nlohmann::ordered_json to_json(const GrowthTable& table);

}  // namespace diskpack

#endif  // DISKPACK_VERIFICATION_HPP
