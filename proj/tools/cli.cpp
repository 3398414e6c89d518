#include "cli.hpp"

#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>

#include "CLI11.hpp"
#include "diskpack/errors.hpp"
#include "diskpack/instances.hpp"
#include "diskpack/packing.hpp"
#include "diskpack/stabbing.hpp"
#include "diskpack/verification.hpp"

namespace diskpack::cli {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct ToleranceFlags {
  double predicate_eps = ToleranceConfig{}.predicate_eps;
  double overlap_eps = ToleranceConfig{}.overlap_eps;

  void attach(CLI::App* app) {
    app->add_option("--predicate-eps", predicate_eps, "contact tolerance")->capture_default_str();
    app->add_option("--overlap-eps", overlap_eps, "penetration allowed before disks count as overlapping")
        ->capture_default_str();
  }

  ToleranceConfig get() const {
    ToleranceConfig tol;
    tol.predicate_eps = predicate_eps;
    tol.overlap_eps = overlap_eps;
    tol.validate();
    return tol;
  }
};

const std::map<std::string, Axis> kAxisNames{{"x", Axis::kX}, {"y", Axis::kY}, {"z", Axis::kZ}};

Vec3 to_vec(const std::vector<double>& v) { return {v[0], v[1], v[2]}; }

// Every subcommand's settings; only the active one is read.
struct Options {
  std::string input, output, mesh, solution;
  std::size_t exact_threshold = SolverConfig{}.exact_threshold;
  unsigned threads = 0;
  std::string axis = "z";
  std::vector<double> n1, n2, s;
  std::size_t n = 0;
  double c = 0.5;
  double max_angle = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> sizes{16, 64, 256};
  ToleranceFlags tol;
};

SolverConfig solver_config(const Options& o) {
  SolverConfig config;
  config.exact_threshold = o.exact_threshold;
  config.threads = o.threads;
  config.tol = o.tol.get();
  config.validate();
  return config;
}

int do_pack(const Options& o, std::ostream& out) {
  const SolverConfig config = solver_config(o);
  const Instance inst = parse_instance(read_file(o.input));
  const PackingSolution sol = pack(inst.disks, config);
  const VerificationReport report = verify_packing(sol, config.tol);
  write_file(o.output, write_solution(sol, report.pass));
  if (!o.mesh.empty()) write_file(o.mesh, export_mesh(sol));
  out << "disks " << sol.placements.size() << "\n";
  out << "container " << num(sol.container.dims.x) << " " << num(sol.container.dims.y) << " "
      << num(sol.container.dims.z) << "\n";
  out << "volume " << num(sol.stats.volume) << "\n";
  out << "lower_bound " << num(sol.stats.lower.value) << "\n";
  out << "ratio " << num(sol.stats.certified_ratio) << "\n";
  out << "certificate " << (sol.stats.certificate_holds ? "holds" : "fails") << "\n";
  if (!report.pass) {
    throw Error(ErrorCode::kInternal, "packing failed its own verification");
  }
  return kOk;
}

int do_stab(const Options& o, std::ostream& out) {
  const SolverConfig config = solver_config(o);
  const Instance inst = parse_instance(read_file(o.input));
  if (inst.disks.empty()) throw InvalidInput("instance has no disks");
  std::vector<std::size_t> all(inst.disks.size());
  std::iota(all.begin(), all.end(), 0);
  const ClassStabbing cs = stab_class(inst.disks, all, kAxisNames.at(o.axis), config);
  out << "solver " << to_string(cs.solver) << "\n";
  out << "length " << num(cs.realized.stabbing.length) << "\n";
  out << "order";
  for (std::size_t i : cs.realized.stabbing.ordering) out << " " << i;
  out << "\n";
  return kOk;
}

int do_dist(const Options& o, std::ostream& out) {
  const ToleranceConfig tol = o.tol.get();
  const SDistanceResult r = s_distance_detailed(Disk(to_vec(o.n1)), Disk(to_vec(o.n2)), UnitVec3(to_vec(o.s)), tol);
  out << num(r.value) << "\n";
  return kOk;
}

int do_verify(const Options& o, std::ostream& out) {
  const SolutionDocument doc = parse_solution(read_file(o.solution));
  const VerificationReport report = verify_packing(doc.solution, o.tol.get());
  out << "pairs_checked " << report.pairs_checked << "\n";
  out << "worst_penetration " << num(report.worst_penetration) << "\n";
  out << "worst_containment " << num(report.worst_containment) << "\n";
  for (const OffendingPair& p : report.overlapping) {
    out << "overlap " << p.first << " " << p.second << " " << num(p.penetration) << "\n";
  }
  for (std::size_t i : report.outside) out << "outside " << i << "\n";
  out << "ratio " << num(report.certified_ratio) << "\n";
  for (const std::string& note : report.notes) out << "note " << note << "\n";
  out << (report.pass ? "PASS" : "FAIL") << "\n";
  return report.pass ? kOk : kValidationFailure;
}

int do_growth(const Options& o, std::ostream& out) {
  SolverConfig config = solver_config(o);
  const GrowthTable table = growth_experiment(o.sizes, o.c, config);
  out << "n epsilon min_ds mst stab_bound lower_bound volume ratio verified\n";
  bool all_verified = true;
  for (const GrowthRow& r : table.rows) {
    out << r.n << " " << num(r.epsilon) << " " << num(r.min_distance) << " " << num(r.mst_weight) << " "
        << num(r.stab_bound) << " " << num(r.lower_bound) << " " << num(r.packed_volume) << " "
        << num(r.certified_ratio) << " " << (r.verified ? "yes" : "no") << "\n";
    all_verified = all_verified && r.verified;
  }
  out << "slope " << num(table.slope) << "\n";
  return all_verified ? kOk : kGeometryFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Packs unit disks with fixed orientations into a small axis-parallel box.", "diskpack");
  app.require_subcommand(1);
  Options o;

  CLI::App* pack_cmd = app.add_subcommand("pack", "pack an instance and write the solution");
  pack_cmd->add_option("--input", o.input, "instance file")->required();
  pack_cmd->add_option("--output", o.output, "solution file")->required();
  pack_cmd->add_option("--mesh", o.mesh, "also write an OBJ mesh");
  pack_cmd->add_option("--exact-threshold", o.exact_threshold, "largest class stabbed exactly")
      ->check(CLI::Range(0, 20))
      ->capture_default_str();
  pack_cmd->add_option("--threads", o.threads, "distance matrix threads (0: hardware)");
  o.tol.attach(pack_cmd);

  CLI::App* stab_cmd = app.add_subcommand("stab", "stab every disk of an instance along one axis");
  stab_cmd->add_option("--input", o.input, "instance file")->required();
  stab_cmd->add_option("--axis", o.axis, "x, y or z")->required()->check(CLI::IsMember({"x", "y", "z"}));
  stab_cmd->add_option("--exact-threshold", o.exact_threshold, "largest instance stabbed exactly")
      ->check(CLI::Range(0, 20))
      ->capture_default_str();
  o.tol.attach(stab_cmd);

  CLI::App* dist_cmd = app.add_subcommand("dist", "s-distance of two disks");
  dist_cmd->add_option("--n1", o.n1, "first normal x,y,z")->required()->delimiter(',')->expected(3);
  dist_cmd->add_option("--n2", o.n2, "second normal x,y,z")->required()->delimiter(',')->expected(3);
  dist_cmd->add_option("--s", o.s, "direction x,y,z")->required()->delimiter(',')->expected(3);
  o.tol.attach(dist_cmd);

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->require_subcommand(1);
  CLI::App* grid_cmd = gen_cmd->add_subcommand("sphere-grid", "square grid lifted onto the sphere");
  grid_cmd->add_option("--n", o.n, "number of disks, a perfect square")->required();
  grid_cmd->add_option("--c", o.c, "side of the grid square")->required();
  grid_cmd->add_option("--output", o.output, "instance file")->required();
  CLI::App* cap_cmd = gen_cmd->add_subcommand("random-cap", "uniform normals in a cap around an axis");
  cap_cmd->add_option("--n", o.n, "number of disks")->required();
  cap_cmd->add_option("--axis", o.axis, "x, y or z")->required()->check(CLI::IsMember({"x", "y", "z"}));
  cap_cmd->add_option("--max-angle", o.max_angle, "cap half-angle in radians")->required();
  cap_cmd->add_option("--seed", o.seed, "generator seed")->required();
  cap_cmd->add_option("--output", o.output, "instance file")->required();

  CLI::App* verify_cmd = app.add_subcommand("verify", "re-check a solution file");
  verify_cmd->add_option("--solution", o.solution, "solution file")->required();
  o.tol.attach(verify_cmd);

  CLI::App* growth_cmd = app.add_subcommand("growth", "lower bound growth on sphere grids");
  growth_cmd->add_option("--sizes", o.sizes, "grid sizes")->delimiter(',')->capture_default_str();
  growth_cmd->add_option("--c", o.c, "side of the grid square")->capture_default_str();
  growth_cmd->add_option("--threads", o.threads, "distance matrix threads (0: hardware)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationFailure;
  }

  try {
    if (pack_cmd->parsed()) return do_pack(o, out);
    if (stab_cmd->parsed()) return do_stab(o, out);
    if (dist_cmd->parsed()) return do_dist(o, out);
    if (verify_cmd->parsed()) return do_verify(o, out);
    if (growth_cmd->parsed()) return do_growth(o, out);
    if (grid_cmd->parsed()) {
      const Instance inst = gen_sphere_grid(o.n, o.c);
      write_file(o.output, write_instance(inst));
      out << "wrote " << inst.disks.size() << " disks to " << o.output << "\n";
      return kOk;
    }
    if (cap_cmd->parsed()) {
      const Instance inst = gen_random_cap(o.n, kAxisNames.at(o.axis), o.max_angle, o.seed);
      write_file(o.output, write_instance(inst));
      out << "wrote " << inst.disks.size() << " disks to " << o.output << "\n";
      return kOk;
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kGeometryFailure;
  }
  err << "error: no command given\n";
  return kValidationFailure;
}

}  // namespace diskpack::cli
