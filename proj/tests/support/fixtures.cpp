#include "fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "diskpack/instances.hpp"

namespace diskpack::testing {

std::vector<Disk> mixed_disks(const std::array<std::size_t, 3>& per_axis, double max_angle, std::uint64_t seed) {
  std::vector<Disk> disks;
  for (int a = 0; a < 3; ++a) {
    const std::size_t n = per_axis[static_cast<std::size_t>(a)];
    if (n == 0) continue;
    const Instance inst = gen_random_cap(n, static_cast<Axis>(a), max_angle, seed * 3 + static_cast<std::uint64_t>(a));
    for (const Disk& d : inst.disks) {
      if (std::none_of(disks.begin(), disks.end(), [&](const Disk& e) { return disks_identical(d, e); })) {
        disks.push_back(d);
      }
    }
  }
  return disks;
}

std::vector<Disk> fuzz_instance(std::size_t index, std::size_t max_n) {
  const std::size_t n = 1 + (index * 37 + 11) % max_n;
  const std::uint64_t seed = 1000 + index;
  switch (index % 5) {
    case 0:
      return gen_random_cap(n, static_cast<Axis>(index % 3), cap_angle(), seed).disks;
    case 1:
      return mixed_disks({n / 2, 0, n - n / 2}, cap_angle(), seed);
    case 2:
      return mixed_disks({n / 3, n / 3, n - 2 * (n / 3)}, cap_angle(), seed);
    case 3:
      return mixed_disks({n / 3, n - 2 * (n / 3), n / 3}, 0.2, seed);
    default: {
      const auto side = static_cast<std::size_t>(std::max(1.0, std::floor(std::sqrt(static_cast<double>(n)))));
      return gen_sphere_grid(side * side, 0.3 + 0.1 * static_cast<double>(index % 4)).disks;
    }
  }
}

}  // namespace diskpack::testing
