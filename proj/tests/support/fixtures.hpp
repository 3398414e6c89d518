#ifndef DISKPACK_TESTS_FIXTURES_HPP
#define DISKPACK_TESTS_FIXTURES_HPP

// Instance builders shared by the test suites.

#include <array>
#include <cstdint>
#include <vector>

#include "diskpack/geometry.hpp"

namespace diskpack::testing {

/// Distinct random normals: `per_axis[a]` from the cap around axis a.
std::vector<Disk> mixed_disks(const std::array<std::size_t, 3>& per_axis, double max_angle, std::uint64_t seed);

/// The fuzz corpus: instance `index` of a fixed, varied family (single cap,
/// two caps, three caps, narrow caps, sphere grids), at most `max_n` disks.
std::vector<Disk> fuzz_instance(std::size_t index, std::size_t max_n);

}  // namespace diskpack::testing

#endif  // DISKPACK_TESTS_FIXTURES_HPP
