#include "diskpack/instances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "diskpack/errors.hpp"

namespace diskpack {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

double cap_angle() { return std::acos(1.0 / std::sqrt(3.0)); }

Instance gen_sphere_grid(std::size_t n, double c) {
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (n == 0 || side * side != n) throw InvalidInput("grid size " + std::to_string(n) + " is not a positive square");
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("grid side must be positive");
  const double eps = c / static_cast<double>(side);
  const double min_z = 1.0 / std::sqrt(3.0);

  Instance inst;
  inst.meta.generator = "sphere-grid";
  inst.meta.parameters = {{"n", n}, {"c", c}, {"epsilon", eps}};
  inst.disks.reserve(n);
  for (std::size_t j = 0; j < side; ++j) {
    const double y = -c / 2 + (static_cast<double>(j) + 0.5) * eps;
    for (std::size_t i = 0; i < side; ++i) {
      const double x = -c / 2 + (static_cast<double>(i) + 0.5) * eps;
      const double r2 = x * x + y * y;
      const double z = r2 < 1.0 ? std::sqrt(1.0 - r2) : 0.0;
      if (r2 >= 1.0 || z < min_z) {
        throw InvalidInput("grid side " + std::to_string(c) + " too large: normal " + describe({x, y, z}) +
                           " is outside the cap around +z");
      }
      inst.disks.push_back(Disk({x, y, z}));
    }
  }
  return inst;
}

Instance gen_random_cap(std::size_t n, Axis axis, double max_angle, std::uint64_t seed) {
  if (n == 0) throw InvalidInput("random cap instance needs at least one disk");
  if (!(max_angle > 0.0) || max_angle > cap_angle() + 1e-12) {
    throw InvalidInput("cap angle must lie in (0, " + std::to_string(cap_angle()) + "]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Vec3 a = UnitVec3::axis(index(axis)).vec();
  const Vec3 u = any_orthogonal(a);
  const Vec3 v = cross(a, u);
  const double cos_max = std::cos(max_angle);

  Instance inst;
  inst.meta.generator = "random-cap";
  inst.meta.parameters = {{"n", n}, {"axis", to_string(axis)}, {"max_angle", max_angle}};
  inst.meta.seed = seed;
  // Uniform on the cap: cos(theta) is uniform in [cos(max_angle), 1].
  std::size_t draws = 0;
  while (inst.disks.size() < n) {
    if (++draws > 100 * n + 1000) throw InvalidInput("cap too small to draw distinct normals");
    const double ct = cos_max + (1.0 - cos_max) * unit(rng);
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    const Disk d(ct * a + st * std::cos(phi) * u + st * std::sin(phi) * v);
    const bool fresh =
        std::none_of(inst.disks.begin(), inst.disks.end(), [&](const Disk& e) { return disks_identical(d, e); });
    if (fresh) inst.disks.push_back(d);
  }
  return inst;
}

namespace {

[[noreturn]] void malformed(const std::string& what) { throw InvalidInput(what, ErrorCode::kMalformedDocument); }

Vec3 read_vec(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) malformed(where + ": expected an array of three numbers");
  Vec3 v;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number()) malformed(where + ": expected an array of three numbers");
    v[i] = j[i].get<double>();
  }
  if (!is_finite(v)) throw InvalidInput(where + ": non-finite coordinate", ErrorCode::kNonFinite);
  return v;
}

Disk read_normal(const json& j, const std::string& where) {
  const Vec3 v = read_vec(j, where);
  if (v == Vec3{0, 0, 0}) throw InvalidInput(where + ": zero normal", ErrorCode::kZeroVector);
  return Disk(v);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  } catch (const json::out_of_range& e) {
    // Number literals beyond the double range.
    throw InvalidInput(std::string("number out of range: ") + e.what(), ErrorCode::kNonFinite);
  }
}

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; })) {
      malformed(where + ": unexpected key \"" + it.key() + "\"");
    }
  }
}

ordered vec_json(const Vec3& v) { return ordered::array({v.x, v.y, v.z}); }

bool lex_less(const Disk& a, const Disk& b) {
  const Vec3& p = a.normal();
  const Vec3& q = b.normal();
  if (p.x != q.x) return p.x < q.x;
  if (p.y != q.y) return p.y < q.y;
  return p.z < q.z;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) malformed("instance must be a JSON object");
  require_keys(doc, {"disks", "meta"}, "instance");
  if (!doc.contains("disks") || !doc["disks"].is_array()) malformed("instance needs a \"disks\" array");

  Instance inst;
  const json& disks = doc["disks"];
  for (std::size_t i = 0; i < disks.size(); ++i) {
    const Disk d = read_normal(disks[i], "disk " + std::to_string(i));
    for (std::size_t j = 0; j < inst.disks.size(); ++j) {
      if (disks_identical(d, inst.disks[j])) {
        throw InvalidInput("disk " + std::to_string(i) + " duplicates disk " + std::to_string(j),
                           ErrorCode::kDuplicateDisk);
      }
    }
    inst.disks.push_back(d);
  }
  if (doc.contains("meta")) {
    const json& meta = doc["meta"];
    if (!meta.is_object()) malformed("\"meta\" must be an object");
    require_keys(meta, {"generator", "parameters", "seed"}, "meta");
    if (meta.contains("generator")) {
      if (!meta["generator"].is_string()) malformed("meta.generator must be a string");
      inst.meta.generator = meta["generator"].get<std::string>();
    }
    if (meta.contains("parameters")) {
      if (!meta["parameters"].is_object()) malformed("meta.parameters must be an object");
      inst.meta.parameters = meta["parameters"];
    }
    if (meta.contains("seed") && !meta["seed"].is_null()) {
      if (!meta["seed"].is_number_unsigned()) malformed("meta.seed must be a nonnegative integer");
      inst.meta.seed = meta["seed"].get<std::uint64_t>();
    }
  }
  return inst;
}

std::string write_instance(const Instance& instance) {
  std::vector<Disk> disks = instance.disks;
  std::stable_sort(disks.begin(), disks.end(), lex_less);
  ordered doc;
  doc["disks"] = ordered::array();
  for (const Disk& d : disks) doc["disks"].push_back(vec_json(d.normal()));
  ordered meta;
  meta["generator"] = instance.meta.generator;
  meta["parameters"] = instance.meta.parameters;
  meta["seed"] = instance.meta.seed ? ordered(*instance.meta.seed) : ordered(nullptr);
  doc["meta"] = meta;
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << content;
  if (!out) throw InvalidInput("failed writing " + path);
}

namespace {

StabSolver solver_from(const std::string& s) {
  for (StabSolver v : {StabSolver::kNone, StabSolver::kExact, StabSolver::kChristofides}) {
    if (s == to_string(v)) return v;
  }
  malformed("unknown solver \"" + s + "\"");
}

template <typename T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) malformed(where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    malformed(where + ": bad value for \"" + key + "\"");
  }
}

}  // namespace

std::string write_solution(const PackingSolution& solution, bool verified) {
  const PackingStats& st = solution.stats;
  ordered doc;
  doc["radius"] = solution.radius;
  doc["container"] = {{"min", vec_json(solution.container.min_corner)}, {"dims", vec_json(solution.container.dims)}};
  doc["permutation"] = solution.permutation;
  ordered placements = ordered::array();
  for (const PlacedDisk& p : solution.placements) {
    placements.push_back({{"normal", vec_json(p.disk.normal())}, {"center", vec_json(p.center)}});
  }
  doc["placements"] = placements;

  ordered classes = ordered::object();
  for (int a = 0; a < 3; ++a) {
    const auto i = static_cast<std::size_t>(a);
    classes[to_string(static_cast<Axis>(a))] = {{"size", st.class_size[i]},
                                                 {"length", st.class_length[i]},
                                                 {"mst", st.class_mst[i]},
                                                 {"solver", to_string(st.solver[i])}};
  }
  doc["stats"] = {{"classes", classes},
                  {"extent", vec_json(st.extent)},
                  {"single_class", st.single_class},
                  {"m", st.m},
                  {"pieces", st.piece_count},
                  {"lower_bound",
                   {{"extent_bound", st.lower.extent_bound},
                    {"stab_bound", st.lower.stab_bound},
                    {"value", st.lower.value}}},
                  {"volume", st.volume}};
  doc["certificate"] = {{"factor", kCertifiedFactor},
                        {"ratio", st.certified_ratio},
                        {"holds", st.certificate_holds}};
  doc["verified"] = verified;
  return doc.dump(2) + "\n";
}

SolutionDocument parse_solution(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) malformed("solution must be a JSON object");
  SolutionDocument out;
  PackingSolution& sol = out.solution;
  sol.radius = get<double>(doc, "radius", "solution");
  if (!(sol.radius > 0.0) || !std::isfinite(sol.radius)) malformed("solution: radius must be positive");
  const json& container = doc.contains("container") ? doc["container"] : json();
  sol.container.min_corner = read_vec(container.is_object() && container.contains("min") ? container["min"] : json(),
                                      "container.min");
  sol.container.dims = read_vec(container.is_object() && container.contains("dims") ? container["dims"] : json(),
                                "container.dims");
  sol.permutation = get<std::array<int, 3>>(doc, "permutation", "solution");
  std::array<int, 3> sorted = sol.permutation;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{0, 1, 2}) malformed("solution: permutation must reorder 0, 1, 2");

  if (!doc.contains("placements") || !doc["placements"].is_array()) malformed("solution needs a \"placements\" array");
  for (std::size_t i = 0; i < doc["placements"].size(); ++i) {
    const json& p = doc["placements"][i];
    const std::string where = "placement " + std::to_string(i);
    if (!p.is_object() || !p.contains("normal") || !p.contains("center")) malformed(where + ": needs normal and center");
    sol.placements.push_back({read_normal(p["normal"], where), read_vec(p["center"], where)});
  }

  const json& st = doc.contains("stats") ? doc["stats"] : json();
  PackingStats& s = sol.stats;
  const json& classes = st.is_object() && st.contains("classes") ? st["classes"] : json();
  for (int a = 0; a < 3; ++a) {
    const auto i = static_cast<std::size_t>(a);
    const char* name = to_string(static_cast<Axis>(a));
    const json& c = classes.is_object() && classes.contains(name) ? classes[name] : json();
    const std::string where = std::string("class ") + name;
    s.class_size[i] = get<std::size_t>(c, "size", where);
    s.class_length[i] = get<double>(c, "length", where);
    s.class_mst[i] = get<double>(c, "mst", where);
    s.solver[i] = solver_from(get<std::string>(c, "solver", where));
  }
  s.extent = read_vec(st.is_object() && st.contains("extent") ? st["extent"] : json(), "stats.extent");
  s.single_class = get<bool>(st, "single_class", "stats");
  s.m = get<std::size_t>(st, "m", "stats");
  s.piece_count = get<std::array<std::size_t, 3>>(st, "pieces", "stats");
  const json& lb = st.is_object() && st.contains("lower_bound") ? st["lower_bound"] : json();
  s.lower.extent_bound = get<double>(lb, "extent_bound", "lower_bound");
  s.lower.stab_bound = get<double>(lb, "stab_bound", "lower_bound");
  s.lower.value = get<double>(lb, "value", "lower_bound");
  s.volume = get<double>(st, "volume", "stats");
  const json& cert = doc.contains("certificate") ? doc["certificate"] : json();
  s.certified_ratio = get<double>(cert, "ratio", "certificate");
  s.certificate_holds = get<bool>(cert, "holds", "certificate");
  out.verified = get<bool>(doc, "verified", "solution");
  return out;
}

std::string export_mesh(const PackingSolution& solution, int segments) {
  if (segments < 3) throw InvalidInput("mesh needs at least 3 segments per disk");
  std::string out = "# diskpack mesh: " + std::to_string(solution.placements.size()) + " disks\n";
  char line[160];
  const auto vertex = [&](const Vec3& p) {
    std::snprintf(line, sizeof line, "v %.12g %.12g %.12g\n", p.x, p.y, p.z);
    out += line;
  };
  std::size_t next = 1;  // OBJ indices are 1-based
  for (std::size_t i = 0; i < solution.placements.size(); ++i) {
    const PlacedDisk& p = solution.placements[i];
    const Vec3& n = p.disk.normal();
    const Vec3 u = solution.radius * any_orthogonal(n);
    const Vec3 v = cross(n, u);
    out += "o disk_" + std::to_string(i) + "\n";
    const std::size_t centre = next;
    vertex(p.center);
    for (int k = 0; k < segments; ++k) {
      const double th = 2.0 * std::numbers::pi * k / segments;
      vertex(p.center + std::cos(th) * u + std::sin(th) * v);
    }
    for (int k = 0; k < segments; ++k) {
      const std::size_t a = centre + 1 + static_cast<std::size_t>(k);
      const std::size_t b = centre + 1 + static_cast<std::size_t>((k + 1) % segments);
      std::snprintf(line, sizeof line, "f %zu %zu %zu\n", centre, a, b);
      out += line;
    }
    next += static_cast<std::size_t>(segments) + 1;
  }

  out += "o container\n";
  const Vec3 lo = solution.container.min_corner;
  const Vec3 d = solution.container.dims;
  for (int c = 0; c < 8; ++c) vertex({lo.x + (c & 1 ? d.x : 0), lo.y + (c & 2 ? d.y : 0), lo.z + (c & 4 ? d.z : 0)});
  for (int a = 0; a < 8; ++a) {
    for (int bit : {1, 2, 4}) {
      if (a & bit) continue;
      std::snprintf(line, sizeof line, "l %zu %zu\n", next + static_cast<std::size_t>(a),
                    next + static_cast<std::size_t>(a | bit));
      out += line;
    }
  }
  return out;
}

}  // namespace diskpack
