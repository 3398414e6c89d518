#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "diskpack/errors.hpp"
#include "diskpack/instances.hpp"
#include "diskpack/packing.hpp"
#include "diskpack/verification.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace diskpack;

namespace {

const double kTwoOverRootThree = 2.0 / std::sqrt(3.0);

Disk tilt_xz(double degrees) {
  const double a = degrees * M_PI / 180.0;
  return Disk({std::sin(a), 0, std::cos(a)});
}

std::vector<Disk> swap_axes(const std::vector<Disk>& disks, const std::array<int, 3>& perm) {
  std::vector<Disk> out;
  for (const Disk& d : disks) out.push_back(Disk(to_role_frame(d.normal(), perm)));
  return out;
}

}  // namespace

TEST_CASE("classification by largest normal coordinate") {
  CHECK(classify_disk(Disk({0.9, 0.1, 0.2})) == Axis::kX);
  CHECK(classify_disk(Disk({1, 1, 1})) == Axis::kX);
  CHECK(classify_disk(Disk({0, 1, 1})) == Axis::kY);
  CHECK(classify_disk(Disk({0, 0, 1})) == Axis::kZ);
  CHECK(classify_disk(Disk({0.1, -0.9, 0.2})) == Axis::kY);

  const std::vector<Disk> disks = testing::mixed_disks({7, 5, 9}, cap_angle(), 3);
  const Classification c = classify(disks);
  std::vector<std::size_t> all;
  for (const auto& m : c.members) all.insert(all.end(), m.begin(), m.end());
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> expected(disks.size());
  std::iota(expected.begin(), expected.end(), 0);
  CHECK(all == expected);
  for (int a = 0; a < 3; ++a) {
    for (std::size_t i : c.members[static_cast<std::size_t>(a)]) {
      const double angle = std::acos(std::abs(disks[i].normal()[static_cast<std::size_t>(a)]));
      CHECK(angle <= cap_angle() + 1e-12);
    }
  }
  CHECK(classify(gen_random_cap(100, Axis::kZ, 0.5, 4).disks).members[2].size() == 100);
}

TEST_CASE("global extent") {
  CHECK(global_extent({Disk({0, 0, 1})}) == Vec3{2, 2, 0});
  CHECK(global_extent({Disk({0, 0, 1}), Disk({1, 0, 0})}) == Vec3{2, 2, 2});
  CHECK_THROWS_AS(global_extent({}), InvalidInput);
  const Vec3 e = global_extent(gen_random_cap(100, Axis::kZ, cap_angle(), 9).disks);
  for (std::size_t a = 0; a < 3; ++a) {
    CHECK(e[a] >= kTwoOverRootThree - 1e-9);
    CHECK(e[a] <= 2.0);
  }
}

TEST_CASE("single class packing") {
  const PackingSolution one = pack_single_class({Disk({0, 0, 1})}, Axis::kZ);
  CHECK(one.container.dims == Vec3{2, 2, 0});
  CHECK(one.container.volume() == 0.0);
  CHECK(one.stats.lower.value == 0.0);

  // The pair stacks 0.5 apart along z; each tilted disk reaches 0.5 above
  // and below its centre, the flat one not at all.
  const PackingSolution pair = pack_single_class({Disk({0, 0, 1}), tilt_xz(30)}, Axis::kZ);
  CHECK(pair.container.dims.z <= 0.5 + 0.5 + 1e-9);
  CHECK(pair.container.volume() <= 6.0);
  CHECK(verify_packing(pair).pass);

  const std::vector<Disk> disks = gen_random_cap(20, Axis::kZ, cap_angle(), 21).disks;
  const PackingSolution sol = pack_single_class(disks, Axis::kZ);
  CHECK(verify_packing(sol).pass);
  CHECK(sol.container.volume() <= 4.0 * (sol.stats.class_length[2] + 2.0) + 1e-9);
  const Vec3 e = global_extent(disks);
  CHECK(sol.container.dims.x <= e.x + 1e-9);
  CHECK(sol.container.dims.y <= e.y + 1e-9);
  CHECK(sol.container.dims.z <= sol.stats.class_length[2] + e.z + 1e-9);
}

TEST_CASE("cutting a stabbing into pieces") {
  const std::vector<Disk> disks = gen_random_cap(30, Axis::kZ, cap_angle(), 30).disks;
  const ClassStabbing cs = stab_class(disks, [] {
    std::vector<std::size_t> all(30);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }(), Axis::kZ);
  const double length = cs.realized.stabbing.length;

  const std::vector<Piece> whole = cut_into_pieces(cs.realized, 1);
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].disks.size() == 30);

  const std::vector<Piece> six = cut_into_pieces(cs.realized, 6);
  std::size_t total = 0;
  for (const Piece& p : six) {
    total += p.disks.size();
    CHECK(p.box.dims.z <= length / 6 + global_extent(disks).z + 1e-9);
  }
  CHECK(total == 30);

  const RealizedStabbing single = realize_stabbing({Disk({0, 0, 1})}, {0}, UnitVec3::axis(2));
  const std::vector<Piece> lone = cut_into_pieces(single, 4);
  CHECK(lone[0].disks.size() == 1);
  for (std::size_t j = 1; j < 4; ++j) CHECK(lone[j].disks.empty());
  CHECK_THROWS_AS(cut_into_pieces(single, 0), InvalidInput);
}

TEST_CASE("pieces split at the cut points") {
  // Three flat-ish disks at offsets 0, L/2, L: the middle one opens piece 1,
  // the last one belongs to the closed final interval.
  const std::vector<Disk> disks{Disk({0, 0, 1}), tilt_xz(30), Disk({0, 0, 1})};
  RealizedStabbing r;
  r.stabbing.ordering = {0, 1, 2};
  r.stabbing.offsets = {0.0, 1.0, 2.0};
  r.stabbing.length = 2.0;
  for (std::size_t i = 0; i < 3; ++i) r.placements.push_back({disks[i], {0, 0, r.stabbing.offsets[i]}});
  const std::vector<Piece> pieces = cut_into_pieces(r, 2);
  CHECK(pieces[0].disks == std::vector<std::size_t>{0});
  CHECK(pieces[1].disks == std::vector<std::size_t>{1, 2});
}

TEST_CASE("assembly row count") {
  CHECK(assembly_rows(60.0, 2.0) == 6);
  CHECK(assembly_rows(0.0, 1.5) == 1);
  CHECK(assembly_rows(11.9, 2.0) == 1);
  CHECK(assembly_rows(12.0, 2.0) == 2);
}

TEST_CASE("packing one class equals the single class packing") {
  const std::vector<Disk> disks = gen_random_cap(15, Axis::kY, 0.5, 8).disks;
  const PackingSolution a = pack(disks);
  const PackingSolution b = pack_single_class(disks, Axis::kY);
  CHECK(a.container.dims == b.container.dims);
  for (std::size_t i = 0; i < disks.size(); ++i) CHECK(a.placements[i].center == b.placements[i].center);
  CHECK(a.stats.single_class);
}

TEST_CASE("mixed packing is sound and certified") {
  const std::vector<Disk> disks = testing::mixed_disks({20, 20, 20}, cap_angle(), 60);
  REQUIRE(disks.size() == 60);
  const PackingSolution sol = pack(disks);
  const VerificationReport report = verify_packing(sol);
  CHECK(report.pass);
  CHECK(sol.stats.certificate_holds);
  CHECK(sol.container.volume() <= kCertifiedFactor * sol.stats.lower.value);
  CHECK(report.certified_ratio == doctest::Approx(sol.stats.certified_ratio).epsilon(1e-9));
  CHECK(sol.stats.piece_count[1] == 6);
  CHECK(sol.stats.piece_count[0] == 3 * sol.stats.m);
  CHECK(sol.stats.piece_count[2] == 3 * sol.stats.m);

  // The y role belongs to a longest stabbing.
  const double ly = sol.stats.class_length[static_cast<std::size_t>(sol.permutation[1])];
  for (double l : sol.stats.class_length) CHECK(ly >= l - 1e-12);
}

TEST_CASE("container dimensions respect the assembly bounds") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::vector<Disk> disks =
        testing::mixed_disks({5 + seed % 7, 3 + seed % 11, 4 + (seed * 5) % 13}, seed % 2 ? cap_angle() : 0.4, seed);
    const PackingSolution sol = pack(disks);
    REQUIRE_FALSE(sol.stats.single_class);
    const auto& p = sol.permutation;
    const Vec3 b = to_role_frame(sol.container.dims, p);
    const Vec3 e = to_role_frame(global_extent(disks), p);
    const double ly = sol.stats.class_length[static_cast<std::size_t>(p[1])];
    CHECK(b.x <= std::max(4 * e.x, 2 * e.x + 2 * e.y) + 1e-9);
    CHECK(b.y <= ly / 6 + e.y + 1e-9);
    CHECK(b.z <= std::max(6 * e.z, 4 * e.z + 2 * e.y) + 1e-9);
    CHECK(sol.stats.m == assembly_rows(ly, e.y));
  }
}

TEST_CASE("two-class inputs use the full assembly") {
  const std::vector<Disk> disks = testing::mixed_disks({10, 0, 12}, cap_angle(), 5);
  const PackingSolution sol = pack(disks);
  CHECK_FALSE(sol.stats.single_class);
  CHECK(verify_packing(sol).pass);
  CHECK(sol.stats.certificate_holds);
}

TEST_CASE("renaming the axes renames the container") {
  const std::array<std::array<int, 3>, 5> perms{{{1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}}};
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const std::vector<Disk> disks = testing::mixed_disks({6 + seed, 4 + 2 * seed, 9}, cap_angle(), 40 + seed);
    const PackingSolution base = pack(disks);
    for (const auto& perm : perms) {
      const PackingSolution moved = pack(swap_axes(disks, perm));
      CHECK(moved.container.volume() == doctest::Approx(base.container.volume()).epsilon(1e-9));
    }
  }
}

TEST_CASE("lower bound") {
  const LowerBound single = lower_bound(std::vector<Disk>{Disk({0, 0, 1})});
  CHECK(single.extent_bound == 0.0);
  CHECK(single.stab_bound == 0.0);
  CHECK(single.value == 0.0);

  CHECK(lower_bound(std::vector<Disk>{Disk({0, 0, 1}), Disk({1, 0, 0})}).extent_bound == 8.0);

  const Instance grid = gen_sphere_grid(64, 0.5);
  const double eps = 0.5 / 8;
  CHECK(lower_bound(grid.disks).stab_bound >= 8.0 / 81.0 * (63 * eps / 2) * (1 - 1e-6));
}

TEST_CASE("shape factors") {
  CHECK(shape_packing_factor(1.0) == 284.0);
  CHECK(shape_packing_factor(std::sqrt(2.0)) == doctest::Approx(284.0 * 2.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(shape_packing_factor(std::sqrt(2.0)) == doctest::Approx(803.27).epsilon(1e-5));
  CHECK(shape_packing_factor(2.0) == 2272.0);
  CHECK_THROWS_AS(shape_packing_factor(0.99), InvalidInput);
}

TEST_CASE("congruent shapes scale with the circumradius") {
  const std::vector<Vec3> tilt{{0, 0, 1}, tilt_xz(30).normal()};
  std::vector<Disk> disks;
  for (const Vec3& n : tilt) disks.push_back(Disk(n));
  const PackingSolution unit = pack(disks);
  const PackingSolution same = pack_congruent_shapes(tilt, 1.0);
  CHECK(same.container.dims == unit.container.dims);

  const PackingSolution big = pack_congruent_shapes({{0, 0, 1}}, 2.0);
  CHECK(big.container.dims == Vec3{4, 4, 0});

  const PackingSolution half = pack_congruent_shapes(tilt, 0.5);
  for (std::size_t i = 0; i < tilt.size(); ++i) {
    CHECK(distance(half.placements[i].center, 0.5 * unit.placements[i].center) <= 1e-9);
  }
  CHECK(verify_packing(half).pass);

  const std::vector<Disk> mixed = testing::mixed_disks({8, 8, 8}, cap_angle(), 77);
  std::vector<Vec3> normals;
  for (const Disk& d : mixed) normals.push_back(d.normal());
  const PackingSolution ref = pack(mixed);
  const PackingSolution scaled = pack_congruent_shapes(normals, 3.0);
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    CHECK(distance(scaled.placements[i].center, 3.0 * ref.placements[i].center) <= 1e-9);
  }
  CHECK(scaled.stats.certified_ratio == doctest::Approx(ref.stats.certified_ratio).epsilon(1e-12));
  CHECK(verify_packing(scaled).pass);
  CHECK_THROWS_AS(pack_congruent_shapes(normals, 0.0), InvalidInput);
}

TEST_CASE("invalid packing inputs") {
  CHECK_THROWS_AS(pack({}), InvalidInput);
  try {
    pack({Disk({0, 0, 1}), Disk({0, 0, -1})});
    FAIL("duplicate disks accepted");
  } catch (const InvalidInput& e) {
    CHECK(e.code() == ErrorCode::kDuplicateDisk);
  }
  SolverConfig config;
  config.exact_threshold = 21;
  CHECK_THROWS_AS(pack({Disk({0, 0, 1})}, config), InvalidInput);
}

TEST_CASE("exact and heuristic stabbing both pack soundly") {
  const std::vector<Disk> disks = testing::mixed_disks({9, 9, 9}, cap_angle(), 12);
  for (std::size_t threshold : {0u, 12u}) {
    SolverConfig config;
    config.exact_threshold = threshold;
    const PackingSolution sol = pack(disks, config);
    CHECK(verify_packing(sol).pass);
    for (std::size_t a = 0; a < 3; ++a) {
      CHECK(sol.stats.solver[a] == (threshold == 0 ? StabSolver::kChristofides : StabSolver::kExact));
    }
  }
}

TEST_CASE("fuzzed packings verify") {
  for (std::size_t i = 0; i < 40; ++i) {
    const std::vector<Disk> disks = testing::fuzz_instance(i, 60);
    const PackingSolution sol = pack(disks);
    const VerificationReport report = verify_packing(sol);
    CHECK_MESSAGE(report.pass, "fuzz instance " << i);
    CHECK(sol.stats.certificate_holds);
    CHECK(sol.placements.size() == disks.size());
  }
}
