#ifndef DISKPACK_GEOMETRY_HPP
#define DISKPACK_GEOMETRY_HPP

// Floating-point geometry for unit-radius disks in 3D: canonical normals,
// axis extents, distance and overlap predicates between placed disks, and
// the directional s-distance that turns disk stabbing into a metric problem.

#include <string>

#include "diskpack/vec3.hpp"

namespace diskpack {

struct ToleranceConfig {
  double predicate_eps = 1e-9;
  double overlap_eps = 1e-7;
  double convergence_eps = 1e-12;
  int max_iterations = 10000;  // cap on refinement steps in iterative searches

  /// Throws InvalidInput unless every field is positive.
  void validate() const;
};

/// A unit-radius disk up to translation, identified by its normal. The
/// normal is stored in canonical orientation: its first coordinate with
/// magnitude above 1e-12 is positive, so n and -n give the same Disk.
class Disk {
 public:
  Disk() = default;
  explicit Disk(const Vec3& normal);

  const UnitVec3& normal() const { return normal_; }

  friend bool operator==(const Disk&, const Disk&) = default;

 private:
  UnitVec3 normal_;
};

struct PlacedDisk {
  Disk disk;
  Vec3 center;
};

struct Box3 {
  Vec3 min_corner;
  Vec3 dims;

  double volume() const { return dims.x * dims.y * dims.z; }
  Vec3 max_corner() const { return min_corner + dims; }
};

Disk canonicalize_normal(const Vec3& v);

bool disks_identical(const Disk& a, const Disk& b);

/// Angle between the two disk planes, in [0, pi/2].
double angle_between(const Disk& a, const Disk& b);

/// Axis-parallel bounding-box dimensions of the disk centred at the origin.
Vec3 disk_extent(const Disk& d);

/// Support function of the disk centred at the origin: max of u·w over the disk.
double disk_support(const Disk& d, const Vec3& u);

Vec3 project_point_to_disk(const Vec3& p, const PlacedDisk& pd);

struct DistanceResult {
  double distance = 0.0;
  bool converged = true;
  int iterations = 0;
  Vec3 witness_first;
  Vec3 witness_second;
};

/// Euclidean distance between two closed disks. Intersecting and parallel
/// disks are handled in closed form; otherwise the distance from one rim to
/// the other disk is minimized over the rim angle (sampled, then refined by
/// golden section to convergence_eps in angle, at most max_iterations steps
/// per local minimum). `iterations` counts objective evaluations.
DistanceResult min_distance(const PlacedDisk& a, const PlacedDisk& b, const ToleranceConfig& tol = {});

enum class OverlapStatus { kDisjoint, kTouching, kOverlapping };

const char* to_string(OverlapStatus s);

struct OverlapReport {
  OverlapStatus status = OverlapStatus::kDisjoint;
  // Upper bound on the translation needed to separate the disks; zero unless
  // they intersect in more than a point.
  double penetration = 0.0;
  // Separation between the disks; zero when they intersect. For far-apart
  // pairs this is the lower bound |c1 c2| - 2.
  double distance = 0.0;
  // Length of the common segment of the two disks (negative: gap along the
  // plane intersection line). Meaningless for parallel planes.
  double chord_overlap = 0.0;
  bool converged = true;
};

/// Classifies a pair of placed disks. Overlapping means a penetration depth
/// above overlap_eps; Touching means no such penetration and distance at most
/// overlap_eps. With overlap_eps == 0 the test is the exact one: Overlapping
/// iff the disks share a segment of positive length.
OverlapReport assess_overlap(const PlacedDisk& a, const PlacedDisk& b, const ToleranceConfig& tol = {});

OverlapStatus overlap_status(const PlacedDisk& a, const PlacedDisk& b, const ToleranceConfig& tol = {});

/// Smallest translation separating the two disks, found by minimizing the
/// support-function gap h_a(u) + h_b(u) - u·(c_b - c_a) over unit u.
/// Returns 0 for non-intersecting disks. The search stops as soon as a value
/// at or below `stop_below` is seen.
double penetration_depth(const PlacedDisk& a, const PlacedDisk& b, double stop_below = 0.0);

enum class ContactCase {
  kIdentical,
  kFirstTangent,   // first disk tangent to the plane-intersection line
  kSecondTangent,  // second disk tangent to the plane-intersection line
  kRimToRim,       // both centres at distance 1 from the contact point
  kCollinear,      // direction parallel to both disk planes
};

const char* to_string(ContactCase c);

struct SDistanceResult {
  double value = 0.0;
  ContactCase contact = ContactCase::kIdentical;
  // Centres realizing the contact, relative to the contact point.
  Vec3 first_center;
  Vec3 second_center;
};

/// Length of the ordering (first, second) along direction s: the centre
/// distance when the second disk sits at first centre + t·s touching the first.
SDistanceResult s_distance_detailed(const Disk& first, const Disk& second, const UnitVec3& s,
                                    const ToleranceConfig& tol = {});

double s_distance(const Disk& first, const Disk& second, const UnitVec3& s, const ToleranceConfig& tol = {});

std::string describe(const Vec3& v);

}  // namespace diskpack

#endif  // DISKPACK_GEOMETRY_HPP
