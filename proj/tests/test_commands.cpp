#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "mocover/commands.hpp"
#include "mocover/io.hpp"

using namespace mocover;
namespace fs = std::filesystem;

namespace {

struct Sandbox {
  fs::path dir;
  explicit Sandbox(const std::string& name)
      : dir(fs::temp_directory_path() / ("mocover_test_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  fs::path write(const std::string& name, const std::string& text) const {
    write_file(dir / name, text);
    return dir / name;
  }
};

std::size_t line_count(const fs::path& path) {
  const std::string text = read_file(path);
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("run writes the artifacts and is reproducible") {
  Sandbox box("run");
  const auto cfg = box.write("a.cfg", "problem = two-paraboloids\nsteps = 8\neps = [0.1, 0.1]\nseed = 1\noutput = " +
                                          (box.dir / "runs").string() + "\n");
  std::ostringstream out, err;
  REQUIRE(cmd_run(cfg, {}, out, err) == kExitOk);
  const fs::path dir = run_directory(cfg, {});
  CHECK(dir.parent_path() == box.dir / "runs");
  CHECK(fs::exists(dir / "covering.json"));
  CHECK(fs::exists(dir / "config.cfg"));
  CHECK(fs::exists(dir / "steps" / "covering_08.json"));
  CHECK(line_count(dir / "report.csv") == 9u);
  CHECK(out.str().find("final depth: 8") != std::string::npos);

  CommandOptions copy;
  copy.out = box.dir / "copy";
  REQUIRE(cmd_run(cfg, copy, out, err) == kExitOk);
  CHECK(read_file(dir / "covering.json") == read_file(box.dir / "copy" / "covering.json"));

  CommandOptions reseeded;
  reseeded.seed = 2;
  CHECK(run_directory(cfg, reseeded) != dir);
}

TEST_CASE("invalid configs exit with status 2") {
  Sandbox box("bad");
  const auto cfg = box.write("bad.cfg", "problem = two-paraboloids\nsteps = -1\n");
  std::ostringstream out, err;
  CHECK(cmd_run(cfg, {}, out, err) == kExitInvalidInput);
  CHECK(err.str().find("bad.cfg:2:") != std::string::npos);
  CHECK(cmd_run(box.dir / "missing.cfg", {}, out, err) == kExitInvalidInput);
}

TEST_CASE("empty covering exits with status 1") {
  Sandbox box("empty");
  // a region far from the Pareto set: every image leaves it
  const auto cfg = box.write("e.cfg", "problem = two-paraboloids\nlower = [5, 5]\nupper = [6, 6]\nsteps = 4\n");
  CommandOptions opts;
  opts.out = box.dir / "run";
  std::ostringstream out, err;
  CHECK(cmd_run(cfg, opts, out, err) == kExitSolverFailure);
  CHECK(err.str().find("solver failure") != std::string::npos);
  CHECK(fs::exists(box.dir / "run" / "report.csv"));
}

TEST_CASE("compare two runs") {
  Sandbox box("compare");
  const auto exact = box.write("x.cfg", "problem = two-paraboloids\nsteps = 8\n");
  const auto noisy = box.write("n.cfg", "problem = two-paraboloids\nsteps = 8\neps = [0.1, 0.1]\nseed = 1\n");
  CommandOptions a, b;
  a.out = box.dir / "a";
  b.out = box.dir / "b";
  std::ostringstream out, err;
  REQUIRE(cmd_run(exact, a, out, err) == kExitOk);
  REQUIRE(cmd_run(noisy, b, out, err) == kExitOk);

  std::ostringstream same;
  CommandOptions self;
  self.out = box.dir / "self";
  REQUIRE(cmd_compare(box.dir / "a", box.dir / "a", self, same, err) == kExitOk);
  const std::string distances = read_file(box.dir / "self" / "hausdorff.csv");
  CHECK(distances.rfind("depth,distance\n1,0\n", 0) == 0);
  CHECK(distances.find("8,0\n") != std::string::npos);
  CHECK(read_file(box.dir / "self" / "ratio.csv").find("8,1\n") != std::string::npos);

  std::ostringstream cmp;
  REQUIRE(cmd_compare(box.dir / "a", box.dir / "b", {}, cmp, err) == kExitOk);
  CHECK(cmp.str().find("inclusion A in B: pass") != std::string::npos);
  CHECK(line_count(box.dir / "b" / "hausdorff.csv") == 9u);

  const auto shorter = box.write("s.cfg", "problem = two-paraboloids\nsteps = 5\n");
  CommandOptions c;
  c.out = box.dir / "c";
  REQUIRE(cmd_run(shorter, c, out, err) == kExitOk);
  CHECK(cmd_compare(box.dir / "a", box.dir / "c", {}, cmp, err) == kExitInvalidInput);
  CHECK(cmd_compare(box.dir / "a", box.dir / "nowhere", {}, cmp, err) == kExitInvalidInput);
}

TEST_CASE("reference runs add Hausdorff columns") {
  Sandbox box("reference");
  const auto exact = box.write("x.cfg", "problem = two-paraboloids\nsteps = 6\n");
  CommandOptions a;
  a.out = box.dir / "a";
  std::ostringstream out, err;
  REQUIRE(cmd_run(exact, a, out, err) == kExitOk);
  const auto noisy = box.write("n.cfg", "problem = two-paraboloids\nsteps = 6\neps = [0.1, 0.1]\nreference = " +
                                            (box.dir / "a").string() + "\n");
  CommandOptions b;
  b.out = box.dir / "b";
  REQUIRE(cmd_run(noisy, b, out, err) == kExitOk);
  CHECK(read_file(box.dir / "b" / "report.csv").find("hausdorff_to_reference") != std::string::npos);
  CHECK(out.str().find("box ratio to reference") != std::string::npos);
}

TEST_CASE("residual field rows and iso level") {
  Sandbox box("field");
  const auto two = box.write("t.cfg", "problem = two-paraboloids\neps = [0.1, 0.1]\n");
  const auto tri = box.write("r.cfg", "problem = tri-paraboloids\n");
  const auto prod = box.write("p.cfg", "problem = production\n");
  CommandOptions opts;
  opts.out = box.dir / "f";
  std::ostringstream out, err;

  REQUIRE(cmd_residual_field(two, 1, opts, out, err) == kExitOk);
  CHECK(line_count(box.dir / "f" / "field.csv") == 2u);
  REQUIRE(cmd_residual_field(two, 100, opts, out, err) == kExitOk);
  CHECK(line_count(box.dir / "f" / "field.csv") == 10001u);
  CHECK(read_file(box.dir / "f" / "field.csv").rfind("x1,x2,residual\n", 0) == 0);
  CHECK(out.str().find("iso-level: 0.2\n") != std::string::npos);
  REQUIRE(cmd_residual_field(tri, 40, opts, out, err) == kExitOk);
  CHECK(line_count(box.dir / "f" / "field.csv") == 64001u);

  CHECK(cmd_residual_field(prod, 10, opts, out, err) == kExitInvalidInput);
  CHECK(cmd_residual_field(two, 0, opts, out, err) == kExitInvalidInput);
}
