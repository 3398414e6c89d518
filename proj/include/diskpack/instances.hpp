#ifndef DISKPACK_INSTANCES_HPP
#define DISKPACK_INSTANCES_HPP

// Instance generators and the JSON / OBJ file formats.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diskpack/geometry.hpp"
#include "diskpack/packing.hpp"
#include "json.hpp"

namespace diskpack {

struct InstanceMeta {
  std::string generator;
  nlohmann::json parameters = nlohmann::json::object();
  std::optional<std::uint64_t> seed;

  friend bool operator==(const InstanceMeta&, const InstanceMeta&) = default;
};

struct Instance {
  std::vector<Disk> disks;
  InstanceMeta meta;
};

/// Cap half-angle of an axis class: the angle between a cube diagonal and an edge.
double cap_angle();

/// sqrt(n) x sqrt(n) grid of cell centres with spacing c / sqrt(n) in the
/// square [-c/2, c/2]^2, lifted vertically onto the upper unit hemisphere.
/// Throws InvalidInput if n is not a positive square or a lifted normal
/// falls outside the cap around +z.
Instance gen_sphere_grid(std::size_t n, double c);

/// n distinct normals drawn uniformly from the cap of half-angle max_angle
/// around the axis; deterministic in seed.
Instance gen_random_cap(std::size_t n, Axis axis, double max_angle, std::uint64_t seed);

/// Parses an instance document. Errors carry kMalformedDocument,
/// kDuplicateDisk, kZeroVector or kNonFinite.
Instance parse_instance(const std::string& text);

/// Canonical form: disks sorted lexicographically by canonical normal.
std::string write_instance(const Instance& instance);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

struct SolutionDocument {
  PackingSolution solution;
  bool verified = false;
};

std::string write_solution(const PackingSolution& solution, bool verified);

SolutionDocument parse_solution(const std::string& text);

/// Wavefront OBJ: every disk as a k-gon triangle fan around its centre
/// (object disk_i), then the container's 8 corners joined by 12 line edges.
std::string export_mesh(const PackingSolution& solution, int segments = 64);

}  // namespace diskpack

#endif  // DISKPACK_INSTANCES_HPP
