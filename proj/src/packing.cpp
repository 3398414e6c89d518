#include "diskpack/packing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "diskpack/errors.hpp"

namespace diskpack {

const char* to_string(Axis a) {
  switch (a) {
    case Axis::kX: return "x";
    case Axis::kY: return "y";
    case Axis::kZ: return "z";
  }
  return "?";
}

int index(Axis a) { return static_cast<int>(a); }

const char* to_string(StabSolver s) {
  switch (s) {
    case StabSolver::kNone: return "none";
    case StabSolver::kExact: return "held-karp";
    case StabSolver::kChristofides: return "christofides";
  }
  return "?";
}

Axis classify_disk(const Disk& d) {
  constexpr double kTie = 1e-12;
  const Vec3& n = d.normal();
  const double ax = std::abs(n.x), ay = std::abs(n.y), az = std::abs(n.z);
  if (ax >= ay - kTie && ax >= az - kTie) return Axis::kX;
  if (ay >= az - kTie) return Axis::kY;
  return Axis::kZ;
}

std::size_t Classification::nonempty_count() const {
  return static_cast<std::size_t>(std::count_if(members.begin(), members.end(), [](const auto& m) { return !m.empty(); }));
}

Classification classify(const std::vector<Disk>& disks) {
  Classification c;
  for (std::size_t i = 0; i < disks.size(); ++i) c.members[static_cast<std::size_t>(classify_disk(disks[i]))].push_back(i);
  return c;
}

Vec3 global_extent(const std::vector<Disk>& disks) {
  if (disks.empty()) throw InvalidInput("extent of an empty disk set");
  Vec3 e{0, 0, 0};
  for (const Disk& d : disks) {
    const Vec3 x = disk_extent(d);
    e = {std::max(e.x, x.x), std::max(e.y, x.y), std::max(e.z, x.z)};
  }
  return e;
}

void SolverConfig::validate() const {
  if (exact_threshold > 20) {
    throw InvalidInput("exact threshold " + std::to_string(exact_threshold) + " exceeds 20");
  }
  tol.validate();
}

ClassStabbing stab_class(const std::vector<Disk>& disks, const std::vector<std::size_t>& members, Axis axis,
                         const SolverConfig& config) {
  ClassStabbing out;
  out.axis = axis;
  out.members = members;
  out.disks.reserve(members.size());
  for (std::size_t i : members) out.disks.push_back(disks[i]);
  const UnitVec3 s = UnitVec3::axis(index(axis));
  if (members.empty()) {
    out.realized.stabbing.direction = s;
    return out;
  }
  const DistanceMatrix matrix = build_distance_matrix(out.disks, s, config.tol, config.threads);
  out.mst_weight = mst(matrix).weight;
  Ordering ordering;
  if (members.size() <= config.exact_threshold) {
    out.solver = StabSolver::kExact;
    ordering = held_karp_path(matrix, config.exact_threshold);
  } else {
    out.solver = StabSolver::kChristofides;
    ordering = christofides_path(matrix);
  }
  out.realized = realize_stabbing(out.disks, ordering, matrix);
  return out;
}

LowerBound lower_bound(const Vec3& extent, const std::array<double, 3>& class_mst) {
  LowerBound lb;
  lb.extent_bound = extent.x * extent.y * extent.z;
  // Any packing of a class yields a stabbing at most 81/8 times the
  // container volume, and no stabbing is shorter than the spanning tree.
  lb.stab_bound = 8.0 / 81.0 * *std::max_element(class_mst.begin(), class_mst.end());
  lb.value = std::max(lb.extent_bound, lb.stab_bound);
  return lb;
}

LowerBound lower_bound(const std::vector<Disk>& disks, const ToleranceConfig& tol) {
  const Classification c = classify(disks);
  std::array<double, 3> weights{};
  for (int a = 0; a < 3; ++a) {
    std::vector<Disk> members;
    for (std::size_t i : c.members[static_cast<std::size_t>(a)]) members.push_back(disks[i]);
    if (members.size() > 1) weights[static_cast<std::size_t>(a)] = mst(build_distance_matrix(members, UnitVec3::axis(a), tol)).weight;
  }
  return lower_bound(global_extent(disks), weights);
}

Box3 bounding_box(const std::vector<PlacedDisk>& placements) {
  if (placements.empty()) return {};
  Vec3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity()};
  Vec3 hi = -lo;
  for (const PlacedDisk& p : placements) {
    const Vec3 half = 0.5 * disk_extent(p.disk);
    const Vec3 a = p.center - half;
    const Vec3 b = p.center + half;
    lo = {std::min(lo.x, a.x), std::min(lo.y, a.y), std::min(lo.z, a.z)};
    hi = {std::max(hi.x, b.x), std::max(hi.y, b.y), std::max(hi.z, b.z)};
  }
  return {lo, hi - lo};
}

std::vector<Piece> cut_into_pieces(const RealizedStabbing& stabbing, std::size_t k) {
  if (k == 0) throw InvalidInput("piece count must be at least 1");
  const Stabbing& st = stabbing.stabbing;
  std::vector<Piece> pieces(k);
  const double length = st.length;
  for (std::size_t pos = 0; pos < st.ordering.size(); ++pos) {
    std::size_t j = 0;
    if (length > 0.0) {
      const double scaled = st.offsets[pos] * static_cast<double>(k) / length;
      j = std::min(k - 1, static_cast<std::size_t>(std::max(0.0, std::floor(scaled))));
    }
    pieces[j].disks.push_back(st.ordering[pos]);
  }
  for (Piece& p : pieces) {
    std::vector<PlacedDisk> own;
    own.reserve(p.disks.size());
    for (std::size_t d : p.disks) own.push_back(stabbing.placements[d]);
    p.box = bounding_box(own);
  }
  return pieces;
}

std::size_t assembly_rows(double length_y, double extent_y) {
  if (!(extent_y > 0.0)) throw InvalidInput("assembly needs a positive extent");
  // Six y pieces of length L_y/6 stand E_y apart at most, so m boxes of
  // depth E_y fit alongside one of them.
  return static_cast<std::size_t>(std::floor((length_y / 6.0 + extent_y) / extent_y));
}

Vec3 to_role_frame(const Vec3& v, const std::array<int, 3>& permutation) {
  return {v[static_cast<std::size_t>(permutation[0])], v[static_cast<std::size_t>(permutation[1])],
          v[static_cast<std::size_t>(permutation[2])]};
}

Vec3 from_role_frame(const Vec3& v, const std::array<int, 3>& permutation) {
  Vec3 out;
  for (std::size_t r = 0; r < 3; ++r) out[static_cast<std::size_t>(permutation[r])] = v[r];
  return out;
}

namespace {

void require_distinct(const std::vector<Disk>& disks) {
  if (disks.empty()) throw InvalidInput("no disks to pack");
  for (std::size_t i = 0; i < disks.size(); ++i) {
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      if (disks_identical(disks[i], disks[j])) {
        throw InvalidInput("disks " + std::to_string(i) + " and " + std::to_string(j) + " are identical",
                           ErrorCode::kDuplicateDisk);
      }
    }
  }
}

// Moves every placement so the tight box starts at the origin.
Box3 anchor_at_origin(std::vector<PlacedDisk>& placements) {
  const Box3 box = bounding_box(placements);
  for (PlacedDisk& p : placements) p.center -= box.min_corner;
  return {{0, 0, 0}, box.dims};
}

void finish_stats(PackingSolution& sol) {
  PackingStats& st = sol.stats;
  st.lower = lower_bound(st.extent, st.class_mst);
  st.volume = sol.container.volume();
  st.certified_ratio = st.lower.value > 0 ? st.volume / st.lower.value : 0.0;
  st.certificate_holds = st.volume <= kCertifiedFactor * st.lower.value * (1.0 + 1e-12) || st.volume == 0.0;
}

void record_class(PackingStats& st, const ClassStabbing& cs) {
  const std::size_t a = static_cast<std::size_t>(cs.axis);
  st.class_size[a] = cs.members.size();
  st.class_length[a] = cs.realized.stabbing.length;
  st.class_mst[a] = cs.mst_weight;
  st.solver[a] = cs.solver;
}

// A class stabbing expressed in the role frame, where its axis is `role`.
RealizedStabbing permuted(const ClassStabbing& cs, const std::array<int, 3>& perm) {
  RealizedStabbing r = cs.realized;
  for (PlacedDisk& p : r.placements) {
    p.disk = Disk(to_role_frame(p.disk.normal(), perm));
    p.center = to_role_frame(p.center, perm);
  }
  return r;
}

struct Assembly {
  std::vector<PlacedDisk> placements;  // role frame, indexed by input disk
  Vec3 dims;                           // analytic container of the layout
  std::size_t m = 0;
  std::array<std::size_t, 3> pieces{};
};

// Places the pieces of `source` so that piece j's box starts at slots[j].
void place_pieces(const ClassStabbing& cs, const RealizedStabbing& role, const std::vector<Piece>& pieces,
                  const std::vector<Vec3>& slots, std::vector<PlacedDisk>& out) {
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    const Vec3 shift = slots[j] - pieces[j].box.min_corner;
    for (std::size_t d : pieces[j].disks) {
      out[cs.members[d]] = {role.placements[d].disk, role.placements[d].center + shift};
    }
  }
}

Assembly assemble(const std::array<const ClassStabbing*, 3>& by_role, const std::array<int, 3>& perm,
                  const Vec3& role_extent, std::size_t n) {
  Assembly as;
  as.placements.resize(n);
  const RealizedStabbing rx = permuted(*by_role[0], perm);
  const RealizedStabbing ry = permuted(*by_role[1], perm);
  const RealizedStabbing rz = permuted(*by_role[2], perm);

  // y-role stabbing: six pieces stacked upwards at the corner.
  const std::vector<Piece> py = cut_into_pieces(ry, 6);
  std::vector<Vec3> slots;
  double width_y = 0.0, depth_y = 0.0, height_y = 0.0;
  for (const Piece& p : py) {
    slots.push_back({0, 0, height_y});
    height_y += p.box.dims.z;
    width_y = std::max(width_y, p.box.dims.x);
    depth_y = std::max(depth_y, p.box.dims.y);
  }
  place_pieces(*by_role[1], ry, py, slots, as.placements);

  as.m = assembly_rows(ry.stabbing.length, role_extent.y);
  const std::size_t m = as.m;

  // x-role stabbing: 3m pieces in three layers of m boxes along y, beside
  // the y assembly.
  const std::vector<Piece> px = cut_into_pieces(rx, 3 * m);
  slots.assign(px.size(), {});
  double width_x = 0.0, depth_x = 0.0, height_x = 0.0;
  for (std::size_t layer = 0; layer < 3; ++layer) {
    double y = 0.0, layer_height = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Piece& p = px[layer * m + i];
      slots[layer * m + i] = {width_y, y, height_x};
      y += p.box.dims.y;
      layer_height = std::max(layer_height, p.box.dims.z);
      width_x = std::max(width_x, p.box.dims.x);
    }
    depth_x = std::max(depth_x, y);
    height_x += layer_height;
  }
  place_pieces(*by_role[0], rx, px, slots, as.placements);

  // z-role stabbing: 3m pieces in three columns of m boxes along y, on top
  // of the x assembly.
  const std::vector<Piece> pz = cut_into_pieces(rz, 3 * m);
  slots.assign(pz.size(), {});
  double width_z = 0.0, depth_z = 0.0, height_z = 0.0;
  for (std::size_t column = 0; column < 3; ++column) {
    double y = 0.0, column_width = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Piece& p = pz[column * m + i];
      slots[column * m + i] = {width_y + width_z, y, height_x};
      y += p.box.dims.y;
      column_width = std::max(column_width, p.box.dims.x);
      height_z = std::max(height_z, p.box.dims.z);
    }
    depth_z = std::max(depth_z, y);
    width_z += column_width;
  }
  place_pieces(*by_role[2], rz, pz, slots, as.placements);

  as.dims = {width_y + std::max(width_x, width_z), std::max({depth_y, depth_x, depth_z}),
             std::max(height_y, height_x + height_z)};
  as.pieces = {px.size(), py.size(), pz.size()};
  return as;
}

}  // namespace

PackingSolution pack_single_class(const std::vector<Disk>& disks, Axis axis, const SolverConfig& config) {
  config.validate();
  require_distinct(disks);
  std::vector<std::size_t> all(disks.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const ClassStabbing cs = stab_class(disks, all, axis, config);

  PackingSolution sol;
  sol.placements = cs.realized.placements;
  sol.container = anchor_at_origin(sol.placements);
  // The stabbing axis plays the y role; the other two keep their order.
  const int a = index(axis);
  sol.permutation = a == 0 ? std::array<int, 3>{1, 0, 2} : a == 1 ? std::array<int, 3>{0, 1, 2} : std::array<int, 3>{0, 2, 1};
  sol.stats.single_class = true;
  sol.stats.extent = global_extent(disks);
  record_class(sol.stats, cs);
  finish_stats(sol);
  return sol;
}

PackingSolution pack(const std::vector<Disk>& disks, const SolverConfig& config) {
  config.validate();
  require_distinct(disks);
  const Classification classes = classify(disks);
  if (classes.nonempty_count() == 1) {
    for (int a = 0; a < 3; ++a) {
      if (!classes.members[static_cast<std::size_t>(a)].empty()) return pack_single_class(disks, static_cast<Axis>(a), config);
    }
  }

  std::array<ClassStabbing, 3> stabbings;
  for (int a = 0; a < 3; ++a) {
    stabbings[static_cast<std::size_t>(a)] = stab_class(disks, classes.members[static_cast<std::size_t>(a)], static_cast<Axis>(a), config);
  }
  const Vec3 extent = global_extent(disks);

  // The y role goes to a longest stabbing. Every relabeling that respects
  // this is assembled and the smallest container kept, so the outcome does
  // not depend on how the input axes are named.
  double longest = 0.0;
  for (const ClassStabbing& cs : stabbings) longest = std::max(longest, cs.realized.stabbing.length);
  const double tie = 1e-12 * (1.0 + longest);

  std::array<int, 3> perm{0, 1, 2};
  std::array<int, 3> best_perm{};
  Assembly best;
  double best_volume = std::numeric_limits<double>::infinity();
  do {
    if (stabbings[static_cast<std::size_t>(perm[1])].realized.stabbing.length < longest - tie) continue;
    const std::array<const ClassStabbing*, 3> by_role{&stabbings[static_cast<std::size_t>(perm[0])],
                                                      &stabbings[static_cast<std::size_t>(perm[1])],
                                                      &stabbings[static_cast<std::size_t>(perm[2])]};
    Assembly as = assemble(by_role, perm, to_role_frame(extent, perm), disks.size());
    const double volume = bounding_box(as.placements).volume();
    if (volume < best_volume) {
      best_volume = volume;
      best = std::move(as);
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  PackingSolution sol;
  sol.permutation = best_perm;
  sol.placements.resize(disks.size());
  for (std::size_t i = 0; i < disks.size(); ++i) {
    sol.placements[i] = {disks[i], from_role_frame(best.placements[i].center, best_perm)};
  }
  sol.container = anchor_at_origin(sol.placements);
  sol.stats.extent = extent;
  sol.stats.m = best.m;
  sol.stats.piece_count = best.pieces;
  for (const ClassStabbing& cs : stabbings) record_class(sol.stats, cs);
  finish_stats(sol);
  return sol;
}

double shape_packing_factor(double r) {
  if (!(r >= 1.0) || !std::isfinite(r)) throw InvalidInput("radius ratio must be at least 1");
  return kCertifiedFactor * r * r * r;
}

PackingSolution pack_congruent_shapes(const std::vector<Vec3>& normals, double radius, const SolverConfig& config) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidInput("circumradius must be positive");
  std::vector<Disk> disks;
  disks.reserve(normals.size());
  for (const Vec3& n : normals) disks.push_back(Disk(n));
  // Disk geometry is radius-free at unit scale, so scaling by 1/R and back
  // only touches positions and the container.
  PackingSolution sol = pack(disks, config);
  if (radius == 1.0) return sol;
  for (PlacedDisk& p : sol.placements) p.center *= radius;
  sol.container.min_corner *= radius;
  sol.container.dims *= radius;
  sol.radius = radius;
  const double cube = radius * radius * radius;
  sol.stats.extent *= radius;
  for (double& l : sol.stats.class_length) l *= radius;
  for (double& w : sol.stats.class_mst) w *= radius;
  sol.stats.lower.extent_bound *= cube;
  sol.stats.lower.stab_bound *= cube;
  sol.stats.lower.value *= cube;
  sol.stats.volume = sol.container.volume();
  return sol;
}

}  // namespace diskpack
