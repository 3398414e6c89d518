#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "diskpack/instances.hpp"
#include "doctest.h"

using namespace diskpack;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Per-test scratch directory in the system temp directory, emptied on entry.
fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("diskpack_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("dist prints the tilt example") {
  const Result r = run_cli({"dist", "--n1", "0,0,1", "--n2", "0.5,0,0.8660254037844386", "--s", "0,0,1"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "0.5\n");

  CHECK(run_cli({"dist", "--n1", "0,0,1", "--n2", "1,0,0", "--s", "0,0,1"}).out == "1\n");
  CHECK(run_cli({"dist", "--n1", "1,0,0", "--n2", "0,1,0", "--s", "0,0,1"}).out == "2\n");
}

TEST_CASE("dist input errors") {
  CHECK(run_cli({"dist", "--n1", "0,0,0", "--n2", "1,0,0", "--s", "0,0,1"}).code == cli::kValidationFailure);
  CHECK(run_cli({"dist", "--n1", "0,0", "--n2", "1,0,0", "--s", "0,0,1"}).code == cli::kValidationFailure);
  CHECK(run_cli({"dist", "--n1", "0,0,1", "--n2", "1,0,0"}).code == cli::kValidationFailure);
}

TEST_CASE("generate, pack and verify") {
  const fs::path dir = scratch("pipeline");
  const std::string inst = (dir / "grid.json").string();
  const std::string sol = (dir / "solution.json").string();
  const std::string mesh = (dir / "mesh.obj").string();

  REQUIRE(run_cli({"gen", "sphere-grid", "--n", "64", "--c", "0.5", "--output", inst}).code == cli::kOk);
  const Result packed = run_cli({"pack", "--input", inst, "--output", sol, "--mesh", mesh});
  REQUIRE(packed.code == cli::kOk);
  CHECK(packed.out.find("volume ") != std::string::npos);
  CHECK(packed.out.find("lower_bound ") != std::string::npos);
  CHECK(packed.out.find("ratio ") != std::string::npos);
  CHECK(fs::exists(mesh));

  const Result verified = run_cli({"verify", "--solution", sol});
  CHECK(verified.code == cli::kOk);
  CHECK(verified.out.find("PASS") != std::string::npos);
  CHECK(parse_solution(read_file(sol)).verified);
}

TEST_CASE("identical runs give identical bytes") {
  const fs::path dir = scratch("determinism");
  const std::string inst = (dir / "cap.json").string();
  REQUIRE(run_cli({"gen", "random-cap", "--n", "40", "--axis", "y", "--max-angle", "0.9", "--seed", "17", "--output",
                   inst})
              .code == cli::kOk);
  const std::string first = read_file(inst);
  REQUIRE(run_cli({"gen", "random-cap", "--n", "40", "--axis", "y", "--max-angle", "0.9", "--seed", "17", "--output",
                   inst})
              .code == cli::kOk);
  CHECK(read_file(inst) == first);

  const std::string a = (dir / "a.json").string();
  const std::string b = (dir / "b.json").string();
  const Result ra = run_cli({"pack", "--input", inst, "--output", a, "--threads", "1"});
  const Result rb = run_cli({"pack", "--input", inst, "--output", b, "--threads", "4"});
  REQUIRE(ra.code == cli::kOk);
  CHECK(ra.out == rb.out);
  CHECK(read_file(a) == read_file(b));

  CHECK(run_cli({"stab", "--input", inst, "--axis", "y"}).out == run_cli({"stab", "--input", inst, "--axis", "y"}).out);
}

TEST_CASE("stab") {
  const fs::path dir = scratch("stab");
  const std::string one = (dir / "one.json").string();
  write_file(one, R"({"disks": [[0.2, 0.1, 1]]})");
  const Result r = run_cli({"stab", "--input", one, "--axis", "z"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("length 0\n") != std::string::npos);

  const std::string many = (dir / "many.json").string();
  REQUIRE(run_cli({"gen", "random-cap", "--n", "8", "--axis", "z", "--max-angle", "0.5", "--seed", "2", "--output", many})
              .code == cli::kOk);
  CHECK(run_cli({"stab", "--input", many, "--axis", "z"}).out.find("solver held-karp") != std::string::npos);
  CHECK(run_cli({"stab", "--input", many, "--axis", "z", "--exact-threshold", "4"}).out.find("solver christofides") !=
        std::string::npos);
  CHECK(run_cli({"stab", "--input", many, "--axis", "w"}).code == cli::kValidationFailure);
}

TEST_CASE("validation failures exit with 1") {
  const fs::path dir = scratch("errors");
  const std::string inst = (dir / "inst.json").string();
  const std::string sol = (dir / "sol.json").string();
  write_file(inst, R"({"disks": [[0, 0, 1], [0, 0, -2]]})");

  CHECK(run_cli({}).code == cli::kValidationFailure);
  CHECK(run_cli({"frobnicate"}).code == cli::kValidationFailure);
  CHECK(run_cli({"pack", "--input", inst}).code == cli::kValidationFailure);
  CHECK(run_cli({"pack", "--input", inst, "--output", sol, "--bogus"}).code == cli::kValidationFailure);
  CHECK(run_cli({"pack", "--input", (dir / "missing.json").string(), "--output", sol}).code == cli::kValidationFailure);

  const Result dup = run_cli({"pack", "--input", inst, "--output", sol});
  CHECK(dup.code == cli::kValidationFailure);
  CHECK(dup.err.find("duplicates") != std::string::npos);

  write_file(inst, R"({"disks": [[0, 0, 1]]})");
  CHECK(run_cli({"pack", "--input", inst, "--output", sol, "--exact-threshold", "21"}).code == cli::kValidationFailure);
  CHECK(run_cli({"pack", "--input", inst, "--output", sol, "--exact-threshold", "20"}).code == cli::kOk);
  CHECK(run_cli({"gen", "sphere-grid", "--n", "15", "--c", "0.5", "--output", inst}).code == cli::kValidationFailure);
  CHECK(run_cli({"gen"}).code == cli::kValidationFailure);
  CHECK(run_cli({"verify", "--solution", inst}).code == cli::kValidationFailure);
  CHECK(run_cli({"--help"}).code == cli::kOk);
}

TEST_CASE("verify rejects a tampered solution") {
  const fs::path dir = scratch("tamper");
  const std::string inst = (dir / "inst.json").string();
  const std::string sol = (dir / "sol.json").string();
  REQUIRE(run_cli({"gen", "random-cap", "--n", "10", "--axis", "z", "--max-angle", "0.5", "--seed", "4", "--output",
                   inst})
              .code == cli::kOk);
  REQUIRE(run_cli({"pack", "--input", inst, "--output", sol}).code == cli::kOk);

  SolutionDocument doc = parse_solution(read_file(sol));
  doc.solution.placements[1].center = doc.solution.placements[0].center;
  write_file(sol, write_solution(doc.solution, false));
  const Result r = run_cli({"verify", "--solution", sol});
  CHECK(r.code == cli::kValidationFailure);
  CHECK(r.out.find("overlap ") != std::string::npos);
  CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("growth table") {
  const Result r = run_cli({"growth", "--sizes", "4,16", "--c", "0.5"});
  CHECK(r.code == cli::kOk);
  std::istringstream in(r.out);
  std::string header, row4, row16, slope;
  std::getline(in, header);
  std::getline(in, row4);
  std::getline(in, row16);
  std::getline(in, slope);
  CHECK(header.rfind("n ", 0) == 0);
  CHECK(row4.rfind("4 0.25 ", 0) == 0);
  CHECK(row16.rfind("16 0.125 ", 0) == 0);
  CHECK(slope.rfind("slope ", 0) == 0);
  CHECK(run_cli({"growth", "--sizes", "5", "--c", "0.5"}).code == cli::kValidationFailure);
}
