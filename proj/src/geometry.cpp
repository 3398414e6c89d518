#include "diskpack/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <vector>

#include "diskpack/errors.hpp"

namespace diskpack {

namespace {

constexpr double kSignThreshold = 1e-12;
constexpr double kIdenticalAngle = 1e-12;
// Planes whose normals' cross product is shorter than this are parallel.
constexpr double kParallelSine = 1e-12;
// Directions this close to parallel with a disk plane are treated as lying in it.
constexpr double kInPlane = 1e-12;

// Geometry of two placed disks relative to the line where their planes meet.
// Positions along the line are measured from the foot of the first centre.
struct ChordGeometry {
  bool parallel = false;
  // Parallel planes.
  double plane_gap = 0.0;
  double inplane_distance = 0.0;
  // Non-parallel planes.
  Vec3 line_point;  // relative to the first centre
  Vec3 line_dir;
  double lo1 = 0, hi1 = 0, lo2 = 0, hi2 = 0;
  double miss1 = 0, miss2 = 0;  // how far each disk falls short of the line
  double overlap = 0;           // min(hi) - max(lo)

  bool both_reach() const { return miss1 == 0.0 && miss2 == 0.0; }
};

double half_chord(double perp) {
  if (perp >= 1.0) return 0.0;
  return std::sqrt((1.0 - perp) * (1.0 + perp));
}

ChordGeometry chord_geometry(const PlacedDisk& a, const PlacedDisk& b) {
  ChordGeometry g;
  const Vec3 v = b.center - a.center;
  const Vec3& n1 = a.disk.normal();
  const Vec3& n2 = b.disk.normal();
  const Vec3 w = cross(n1, n2);
  const double w_len = norm(w);
  if (w_len < kParallelSine) {
    g.parallel = true;
    const double off = dot(n1, v);
    g.plane_gap = std::abs(off);
    g.inplane_distance = norm(v - off * n1);
    return g;
  }
  // First plane: n1·x = 0, second plane: n2·x = n2·v (origin at the first centre).
  const double d2 = dot(n2, v);
  const Vec3 x0 = d2 * cross(w, n1) / (w_len * w_len);
  const Vec3 e = w / w_len;
  g.line_point = x0;
  g.line_dir = e;

  const double perp1 = norm(x0);  // x0 is orthogonal to e
  const double tau2 = dot(v - x0, e);
  const double perp2 = norm(v - x0 - tau2 * e);
  const double h1 = half_chord(perp1);
  const double h2 = half_chord(perp2);
  g.miss1 = std::max(0.0, perp1 - 1.0);
  g.miss2 = std::max(0.0, perp2 - 1.0);
  g.lo1 = -h1;
  g.hi1 = h1;
  g.lo2 = tau2 - h2;
  g.hi2 = tau2 + h2;
  g.overlap = std::min(g.hi1, g.hi2) - std::max(g.lo1, g.lo2);
  return g;
}

const std::vector<Vec3>& sphere_samples() {
  static const std::vector<Vec3> samples = [] {
    constexpr int kCount = 256;
    std::vector<Vec3> out;
    out.reserve(kCount);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < kCount; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / kCount;
      const double r = std::sqrt(1.0 - z * z);
      const double phi = golden * i;
      out.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return out;
  }();
  return samples;
}

Vec3 normalized(const Vec3& v) { return v / norm(v); }

// Minimizer of a unimodal function on [lo, hi], to an interval below `width`.
// Clears `converged` if that takes more than max_steps steps.
template <typename F>
double golden_section(F&& f, double lo, double hi, double width, int max_steps, bool& converged) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - r * (hi - lo);
  double x2 = lo + r * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int iter = 0; hi - lo > width; ++iter) {
    if (iter == max_steps) {
      converged = false;
      break;
    }
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!(predicate_eps > 0) || !(overlap_eps > 0) || !(convergence_eps > 0) || max_iterations <= 0) {
    throw InvalidInput("tolerance values must be positive");
  }
}

UnitVec3::UnitVec3(const Vec3& v) {
  if (!is_finite(v)) throw InvalidInput("non-finite vector " + describe(v), ErrorCode::kNonFinite);
  const double len = norm(v);
  if (!(len > 0.0)) throw InvalidInput("zero vector", ErrorCode::kZeroVector);
  // Vectors that are already unit up to rounding are kept bit for bit, so
  // normalizing is idempotent and serialized normals read back unchanged.
  v_ = std::abs(len - 1.0) <= 4 * std::numeric_limits<double>::epsilon() ? v : v / len;
  for (std::size_t i = 0; i < 3; ++i) v_[i] += 0.0;  // -0 becomes +0
}

UnitVec3 UnitVec3::axis(int i) {
  Vec3 v;
  v[static_cast<std::size_t>(i)] = 1.0;
  return UnitVec3(v);
}

Disk::Disk(const Vec3& normal) {
  UnitVec3 u(normal);
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::abs(u[i]) > kSignThreshold) {
      if (u[i] < 0) u = UnitVec3(-u.vec());
      break;
    }
  }
  normal_ = u;
}

Disk canonicalize_normal(const Vec3& v) { return Disk(v); }

double angle_between(const Disk& a, const Disk& b) {
  const Vec3& n1 = a.normal();
  const Vec3& n2 = b.normal();
  // atan2 keeps full precision for nearly parallel normals, unlike acos.
  const double angle = std::atan2(norm(cross(n1, n2)), std::abs(dot(n1, n2)));
  return std::clamp(angle, 0.0, std::numbers::pi / 2);
}

bool disks_identical(const Disk& a, const Disk& b) { return angle_between(a, b) <= kIdenticalAngle; }

Vec3 disk_extent(const Disk& d) {
  const Vec3& n = d.normal();
  Vec3 e;
  for (std::size_t i = 0; i < 3; ++i) e[i] = 2.0 * std::sqrt(std::max(0.0, 1.0 - n[i] * n[i]));
  return e;
}

double disk_support(const Disk& d, const Vec3& u) {
  const double un = dot(u, d.normal());
  return std::sqrt(std::max(0.0, dot(u, u) - un * un));
}

Vec3 project_point_to_disk(const Vec3& p, const PlacedDisk& pd) {
  const Vec3& n = pd.disk.normal();
  const Vec3 rel = p - pd.center;
  const Vec3 in_plane = rel - dot(rel, n) * n;
  const double r = norm(in_plane);
  if (r <= 1.0) return pd.center + in_plane;
  return pd.center + in_plane / r;
}

DistanceResult min_distance(const PlacedDisk& a, const PlacedDisk& b, const ToleranceConfig& tol) {
  DistanceResult out;
  const ChordGeometry g = chord_geometry(a, b);
  if (g.parallel) {
    // Closed form: offset between planes combined with the in-plane rim gap.
    const Vec3 v = b.center - a.center;
    const Vec3& n = a.disk.normal();
    const Vec3 in_plane = v - dot(v, n) * n;
    const double rim_gap = std::max(0.0, g.inplane_distance - 2.0);
    out.distance = std::hypot(g.plane_gap, rim_gap);
    const Vec3 dir = g.inplane_distance > 0 ? in_plane / g.inplane_distance : Vec3{};
    const double reach = std::min(1.0, g.inplane_distance / 2.0);
    out.witness_first = a.center + reach * dir;
    out.witness_second = b.center - reach * dir;
    return out;
  }
  if (g.both_reach() && g.overlap >= 0.0) {
    const double mid = 0.5 * (std::max(g.lo1, g.lo2) + std::min(g.hi1, g.hi2));
    out.witness_first = out.witness_second = a.center + g.line_point + mid * g.line_dir;
    out.distance = 0.0;
    return out;
  }

  // Disjoint, non-parallel disks: if both closest points were interior, the
  // connecting segment would be normal to both planes. So one of them lies
  // on a rim, and the distance is a one-dimensional minimum over rim angles.
  int evaluations = 0;
  double best = std::numeric_limits<double>::infinity();
  for (const bool swap : {false, true}) {
    const PlacedDisk& p = swap ? b : a;
    const PlacedDisk& q = swap ? a : b;
    const Vec3 u1 = any_orthogonal(p.disk.normal());
    const Vec3 u2 = cross(p.disk.normal().vec(), u1);
    const auto rim = [&](double th) { return p.center + std::cos(th) * u1 + std::sin(th) * u2; };
    const auto gap = [&](double th) {
      ++evaluations;
      const Vec3 r = rim(th);
      return distance(r, project_point_to_disk(r, q));
    };
    constexpr int kSamples = 128;
    const double step = 2.0 * std::numbers::pi / kSamples;
    std::array<double, kSamples> f{};
    for (int k = 0; k < kSamples; ++k) f[static_cast<std::size_t>(k)] = gap(k * step);
    for (int k = 0; k < kSamples; ++k) {
      const double here = f[static_cast<std::size_t>(k)];
      if (here > f[static_cast<std::size_t>((k + kSamples - 1) % kSamples)] ||
          here > f[static_cast<std::size_t>((k + 1) % kSamples)]) {
        continue;
      }
      const double th =
          golden_section(gap, (k - 1) * step, (k + 1) * step, tol.convergence_eps, tol.max_iterations, out.converged);
      const double value = gap(th);
      if (value < best) {
        best = value;
        const Vec3 r = rim(th);
        out.witness_first = swap ? project_point_to_disk(r, q) : r;
        out.witness_second = swap ? r : project_point_to_disk(r, q);
      }
    }
  }
  out.distance = best;
  out.iterations = evaluations;
  return out;
}

double penetration_depth(const PlacedDisk& a, const PlacedDisk& b, double stop_below) {
  const Vec3 v = b.center - a.center;
  const auto gap = [&](const Vec3& u) { return disk_support(a.disk, u) + disk_support(b.disk, u) - dot(u, v); };

  struct Seed {
    double value;
    Vec3 u;
  };
  std::vector<Seed> seeds;
  seeds.reserve(sphere_samples().size() + 10);
  const auto add = [&](const Vec3& u) { seeds.push_back({gap(u), u}); };
  for (const Vec3& u : sphere_samples()) add(u);
  const Vec3& n1 = a.disk.normal();
  const Vec3& n2 = b.disk.normal();
  for (const double sign : {1.0, -1.0}) {
    add(sign * n1);
    add(sign * n2);
    if (norm(v) > 0) add(sign * normalized(v));
    const Vec3 w = cross(n1, n2);
    if (norm(w) > kParallelSine) add(sign * normalized(w));
  }

  std::sort(seeds.begin(), seeds.end(), [](const Seed& x, const Seed& y) { return x.value < y.value; });
  double best = seeds.front().value;
  if (best <= stop_below) return std::max(0.0, best);

  // Refine the most promising, mutually distinct seeds by compass search on
  // the sphere; the objective is only non-smooth at the disk normals, which
  // are themselves seeds.
  std::vector<Vec3> starts;
  for (const Seed& s : seeds) {
    if (starts.size() == 4) break;
    const bool distinct =
        std::none_of(starts.begin(), starts.end(), [&](const Vec3& u) { return dot(u, s.u) > 0.995; });
    if (distinct) starts.push_back(s.u);
  }
  for (Vec3 u : starts) {
    double f = gap(u);
    double step = 0.1;
    for (int iter = 0; iter < 4000 && step > 1e-12; ++iter) {
      const Vec3 t1 = any_orthogonal(u);
      const Vec3 t2 = cross(u, t1);
      bool improved = false;
      for (int k = 0; k < 8; ++k) {
        const double ang = k * std::numbers::pi / 4;
        const Vec3 cand = normalized(u + step * (std::cos(ang) * t1 + std::sin(ang) * t2));
        const double fc = gap(cand);
        if (fc < f) {
          u = cand;
          f = fc;
          improved = true;
          break;
        }
      }
      if (improved) {
        step *= 1.5;
      } else {
        step *= 0.5;
      }
      if (f <= stop_below) break;
    }
    best = std::min(best, f);
    if (best <= stop_below) break;
  }
  return std::max(0.0, best);
}

OverlapReport assess_overlap(const PlacedDisk& a, const PlacedDisk& b, const ToleranceConfig& tol) {
  OverlapReport r;
  const double eps = tol.overlap_eps;
  const double centre_gap = distance(a.center, b.center) - 2.0;
  if (centre_gap > eps) {
    r.status = OverlapStatus::kDisjoint;
    r.distance = centre_gap;
    return r;
  }

  const ChordGeometry g = chord_geometry(a, b);
  if (g.parallel) {
    const double coplanar_tol = std::max(eps, 1e-12);
    if (g.plane_gap <= coplanar_tol && g.inplane_distance < 2.0 - eps) {
      r.status = OverlapStatus::kOverlapping;
      r.penetration = 2.0 - g.inplane_distance;
      return r;
    }
    r.distance = std::hypot(g.plane_gap, std::max(0.0, g.inplane_distance - 2.0));
    r.status = r.distance <= eps ? OverlapStatus::kTouching : OverlapStatus::kDisjoint;
    return r;
  }

  r.chord_overlap = g.both_reach() ? g.overlap : -(g.miss1 + g.miss2 + std::max(0.0, -g.overlap));
  if (g.both_reach() && g.overlap > 0.0) {
    r.distance = 0.0;
    if (g.overlap <= eps) {
      // Sliding along the common line by the overlap length separates them.
      r.status = OverlapStatus::kTouching;
      r.penetration = g.overlap;
    } else if (eps <= 0.0) {
      r.status = OverlapStatus::kOverlapping;
      r.penetration = g.overlap;
    } else {
      r.penetration = std::min(g.overlap, penetration_depth(a, b, eps));
      r.status = r.penetration > eps ? OverlapStatus::kOverlapping : OverlapStatus::kTouching;
    }
    return r;
  }
  if (g.both_reach() && g.overlap == 0.0) {
    r.status = OverlapStatus::kTouching;
    return r;
  }

  // Points of both disks on (or nearest to) the common line bound the distance.
  const double upper = g.miss1 + g.miss2 + std::max(0.0, -g.overlap);
  if (upper <= eps) {
    r.status = OverlapStatus::kTouching;
    r.distance = upper;
    return r;
  }
  if (eps <= 0.0) {
    // Exact mode: disks that do not meet on the common line are apart.
    r.status = OverlapStatus::kDisjoint;
    r.distance = upper;
    return r;
  }
  const DistanceResult d = min_distance(a, b, tol);
  r.distance = std::min(d.distance, upper);
  r.converged = d.converged || r.distance == upper;
  r.status = r.distance <= eps ? OverlapStatus::kTouching : OverlapStatus::kDisjoint;
  return r;
}

OverlapStatus overlap_status(const PlacedDisk& a, const PlacedDisk& b, const ToleranceConfig& tol) {
  return assess_overlap(a, b, tol).status;
}

const char* to_string(OverlapStatus s) {
  switch (s) {
    case OverlapStatus::kDisjoint:
      return "disjoint";
    case OverlapStatus::kTouching:
      return "touching";
    case OverlapStatus::kOverlapping:
      return "overlapping";
  }
  return "?";
}

const char* to_string(ContactCase c) {
  switch (c) {
    case ContactCase::kIdentical:
      return "identical";
    case ContactCase::kFirstTangent:
      return "first-tangent";
    case ContactCase::kSecondTangent:
      return "second-tangent";
    case ContactCase::kRimToRim:
      return "rim-to-rim";
    case ContactCase::kCollinear:
      return "collinear";
  }
  return "?";
}

namespace {

struct Candidate {
  double t;
  Vec3 c1;
  Vec3 c2;
  ContactCase contact;
};

}  // namespace

SDistanceResult s_distance_detailed(const Disk& first, const Disk& second, const UnitVec3& s,
                                    const ToleranceConfig& tol) {
  SDistanceResult out;
  if (disks_identical(first, second)) return out;

  const Vec3& n1 = first.normal();
  const Vec3& n2 = second.normal();
  const Vec3& dir = s.vec();
  const Vec3 e = normalized(cross(n1, n2));
  const Vec3 m1 = cross(n1, e);
  const Vec3 m2 = cross(n2, e);
  const double a1 = dot(n1, dir);
  const double a2 = dot(n2, dir);

  if (std::max(std::abs(a1), std::abs(a2)) < kInPlane) {
    // The direction runs along the plane-intersection line: both centres sit
    // on it and the unit half-chords meet end to end.
    out.value = 2.0;
    out.contact = ContactCase::kCollinear;
    out.first_center = -dir;
    out.second_center = dir;
    return out;
  }

  std::vector<Candidate> candidates;
  const double reach = 1.0 + tol.predicate_eps;

  // The first disk is tangent to the line at the contact point.
  if (std::abs(a2) >= kInPlane) {
    for (const double sign : {1.0, -1.0}) {
      const Vec3 c1 = sign * m1;
      const double t = -dot(n2, c1) / a2;
      if (!(t > 0)) continue;
      const Vec3 c2 = c1 + t * dir;
      if (norm(c2) <= reach) candidates.push_back({t, c1, c2, ContactCase::kFirstTangent});
    }
  }
  // The second disk is tangent to the line.
  if (std::abs(a1) >= kInPlane) {
    for (const double sign : {1.0, -1.0}) {
      const Vec3 c2 = sign * m2;
      const double t = dot(n1, c2) / a1;
      if (!(t > 0)) continue;
      const Vec3 c1 = c2 - t * dir;
      if (norm(c1) <= reach) candidates.push_back({t, c1, c2, ContactCase::kSecondTangent});
    }
  }
  // Both rims pass through the contact point, so the second centre is the
  // first one reflected in the plane normal to s: c2 = c1 - 2(c1·s)s with
  // t = -2 c1·s. Putting c2 in the second plane leaves the linear condition
  // c1·w = 0 with w = n2 - 2(n2·s)s, and c1 also lies in the first plane.
  {
    const Vec3 w = n2 - 2.0 * a2 * dir;
    const Vec3 u = cross(n1, w);
    const double u_len = norm(u);
    const auto add = [&](const Vec3& c1) {
      const double t = -2.0 * dot(c1, dir);
      if (t > 0) candidates.push_back({t, c1, c1 + t * dir, ContactCase::kRimToRim});
    };
    if (u_len > kParallelSine) {
      add(u / u_len);
      add(-u / u_len);
    } else {
      // The disks mirror each other across the plane normal to s and every
      // rim point qualifies; a dense sample is handed to validation.
      for (int k = 0; k < 720; ++k) {
        const double phi = k * std::numbers::pi / 360;
        add(std::cos(phi) * m1 + std::sin(phi) * e);
      }
    }
  }

  // For t below d_s the offset t*s lies inside the open overlap region, so
  // a smaller candidate can never be a genuine contact. Trying candidates
  // from the largest t down and keeping the first that validates therefore
  // returns the largest validated one without classifying the rest.
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) { return x.t > y.t; });
  bool found = false;
  for (const Candidate& c : candidates) {
    if (norm(c.c1) > reach || norm(c.c2) > reach) continue;
    const PlacedDisk p1{first, c.c1};
    const PlacedDisk p2{second, c.c2};
    if (assess_overlap(p1, p2, tol).status != OverlapStatus::kTouching) continue;
    out.value = c.t;
    out.contact = c.contact;
    out.first_center = c.c1;
    out.second_center = c.c2;
    found = true;
    break;
  }
  if (!found) {
    throw GeometryError("no contact configuration validated for normals " + describe(n1) + " and " +
                            describe(n2) + " along " + describe(dir),
                        n1, n2, dir);
  }
  return out;
}

double s_distance(const Disk& first, const Disk& second, const UnitVec3& s, const ToleranceConfig& tol) {
  return s_distance_detailed(first, second, s, tol).value;
}

std::string describe(const Vec3& v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g, %.17g)", v.x, v.y, v.z);
  return buf;
}

}  // namespace diskpack
