#ifndef DISKPACK_PACKING_HPP
#define DISKPACK_PACKING_HPP

// Packing disks into an axis-parallel box: disks are grouped by the axis
// their normal is closest to, each group is stabbed along that axis, and the
// three stabbings are cut into pieces and assembled into one container.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "diskpack/geometry.hpp"
#include "diskpack/stabbing.hpp"

namespace diskpack {

enum class Axis { kX = 0, kY = 1, kZ = 2 };

const char* to_string(Axis a);
int index(Axis a);

/// Volume ratio the container is certified against.
constexpr double kCertifiedFactor = 284.0;

/// Axis of the largest |normal coordinate|; ties go to X, then Y.
Axis classify_disk(const Disk& d);

struct Classification {
  std::array<std::vector<std::size_t>, 3> members;  // indexed by Axis

  std::size_t nonempty_count() const;
};

Classification classify(const std::vector<Disk>& disks);

/// Componentwise maximum of the disk extents. Throws InvalidInput on empty input.
Vec3 global_extent(const std::vector<Disk>& disks);

struct SolverConfig {
  // Classes with at most this many disks are stabbed exactly.
  std::size_t exact_threshold = 12;
  unsigned threads = 0;
  ToleranceConfig tol;

  /// Throws InvalidInput for thresholds above 20 or bad tolerances.
  void validate() const;
};

enum class StabSolver { kNone, kExact, kChristofides };

const char* to_string(StabSolver s);

/// Stabbing of one class along its axis; indices are positions in `disks`.
struct ClassStabbing {
  Axis axis = Axis::kX;
  std::vector<Disk> disks;
  std::vector<std::size_t> members;  // input index of each entry of `disks`
  StabSolver solver = StabSolver::kNone;
  double mst_weight = 0.0;
  RealizedStabbing realized;
};

ClassStabbing stab_class(const std::vector<Disk>& disks, const std::vector<std::size_t>& members, Axis axis,
                         const SolverConfig& config = {});

struct LowerBound {
  double extent_bound = 0.0;  // E_x E_y E_z
  double stab_bound = 0.0;    // (8/81) * largest class MST weight
  double value = 0.0;
};

/// Lower bound on the optimal container volume. `class_mst` holds the MST
/// weight of each class along its own axis.
LowerBound lower_bound(const Vec3& extent, const std::array<double, 3>& class_mst);

/// Same, computing the classes and their spanning trees.
LowerBound lower_bound(const std::vector<Disk>& disks, const ToleranceConfig& tol = {});

/// Tight axis-parallel box around placed disks; a zero box at the origin if empty.
Box3 bounding_box(const std::vector<PlacedDisk>& placements);

struct Piece {
  Box3 box;
  std::vector<std::size_t> disks;  // indices into the realized stabbing's disks
};

/// Splits a stabbing of length L into k consecutive pieces: piece j takes
/// the disks with offset in [jL/k, (j+1)L/k), the last interval closed.
std::vector<Piece> cut_into_pieces(const RealizedStabbing& stabbing, std::size_t k);

/// Pieces per row of the x and z assemblies: floor((L_y/6 + E_y) / E_y).
std::size_t assembly_rows(double length_y, double extent_y);

struct PackingStats {
  std::array<std::size_t, 3> class_size{};     // by original axis
  std::array<double, 3> class_length{};        // stabbing length L per axis
  std::array<double, 3> class_mst{};
  std::array<StabSolver, 3> solver{StabSolver::kNone, StabSolver::kNone, StabSolver::kNone};
  Vec3 extent;
  bool single_class = false;
  std::size_t m = 0;
  std::array<std::size_t, 3> piece_count{};    // by role: x, y, z
  LowerBound lower;
  double volume = 0.0;
  double certified_ratio = 0.0;  // volume / lower bound (0 when both vanish)
  bool certificate_holds = false;
};

struct PackingSolution {
  Box3 container;
  std::vector<PlacedDisk> placements;  // one per input disk, same order
  // permutation[r] is the original axis playing role r (x, y, z); the y role
  // belongs to the class with the longest stabbing.
  std::array<int, 3> permutation{0, 1, 2};
  PackingStats stats;
  double radius = 1.0;
};

/// Maps a vector into the role frame and back.
Vec3 to_role_frame(const Vec3& v, const std::array<int, 3>& permutation);
Vec3 from_role_frame(const Vec3& v, const std::array<int, 3>& permutation);

/// Packs one class: the tight box around its stabbing along `axis`.
PackingSolution pack_single_class(const std::vector<Disk>& disks, Axis axis, const SolverConfig& config = {});

PackingSolution pack(const std::vector<Disk>& disks, const SolverConfig& config = {});

/// Approximation factor for congruent shapes whose inscribed and enclosing
/// disks have radius ratio r >= 1.
double shape_packing_factor(double r);

/// Packs the enclosing disks of circumradius R: solved at unit radius and
/// scaled back by R.
PackingSolution pack_congruent_shapes(const std::vector<Vec3>& normals, double radius, const SolverConfig& config = {});

}  // namespace diskpack

#endif  // DISKPACK_PACKING_HPP
