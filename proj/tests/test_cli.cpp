#include <doctest.h>

#include <filesystem>
#include <map>
#include <sstream>

#include "netmean/cli.hpp"
#include "netmean/io.hpp"
#include "oracles.hpp"

using namespace netmean;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "netmean");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

io::json result_of(const Outcome& o) {
  REQUIRE(o.code == cli::kExitOk);
  return io::json::parse(o.out).at("result");
}

fs::path scratch_dir() {
  const fs::path p = fs::temp_directory_path() / "netmean_cli_tests";
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("weight parsing") {
  CHECK(io::parse_weights("3,2,1") == WeightVector(3, {3, 2, 1}));
  CHECK(io::parse_weights(" 1, 2 ,3,4,5,6 ").d() == 4);
  CHECK_THROWS_AS(io::parse_weights("1,2"), InvalidDimension);
  CHECK_THROWS_AS(io::parse_weights("1,x,3"), FormatError);
  CHECK(io::parse_sizes("100,1000") == std::vector<std::size_t>{100, 1000});
  CHECK(io::digest("abc") == io::digest("abc"));
  CHECK(io::digest("abc") != io::digest("abd"));
  CHECK(io::digest("").size() == 16);
}

TEST_CASE("graph files") {
  const fs::path dir = scratch_dir();
  io::write_text(dir / "g.json", R"({"adjacency": [[0, 1, 2], [1, 0, 3], [2, 3, 0]]})");
  io::write_text(dir / "h.json", R"({"weights": [1, 2, 3]})");
  io::write_text(dir / "g.csv", "0,1,2\n1,0,3\n2,3,0\n");
  CHECK(io::read_graph(dir / "g.json") == WeightVector(3, {1, 2, 3}));
  CHECK(io::read_graph(dir / "h.json") == WeightVector(3, {1, 2, 3}));
  CHECK(io::read_graph(dir / "g.csv") == WeightVector(3, {1, 2, 3}));
  CHECK_THROWS_AS(io::read_graph(dir / "missing.json"), ValidationError);
}

TEST_CASE("sample set round trip") {
  const fs::path csv = scratch_dir() / "s.csv";
  const SampleSet s(3, {WeightVector(3, {3, 2, 1}), WeightVector(3, {0.1, 1e-17, 12345.678901234567})}, 99, true);
  io::write_sample_set(csv, s);
  const SampleSet back = io::read_sample_set(csv);
  CHECK(back.samples() == s.samples());
  CHECK(back.seed() == 99u);
  CHECK(back.aligned());
  CHECK(fs::exists(io::sidecar_path(csv)));
}

TEST_CASE("spec json round trip") {
  DistributionSpec s;
  s.kind = DistributionKind::truncated_gaussian_cone;
  s.center = {3, 2, 1};
  s.sigma = 0.1;
  s.seed = 12;
  const DistributionSpec back = io::spec_from_json(io::to_json(s));
  CHECK(back.kind == s.kind);
  CHECK(back.center == s.center);
  CHECK(back.sigma == s.sigma);
  CHECK(back.seed == s.seed);
}

TEST_CASE("domain command") {
  const io::json r = result_of(invoke({"domain", "--w", "1,2,3,4,5,6", "--reduce", "--rays"}));
  CHECK(r.at("polyhedron").at("halfspace_count") == 7);
  CHECK(r.at("raw_halfspace_count") == 29);
}

TEST_CASE("dist command on relabeled files") {
  const fs::path dir = scratch_dir();
  std::mt19937_64 rng(60);
  const WeightVector a = oracle::random_weights(5, rng);
  const WeightVector b = oracle::relabel(a, oracle::random_perm(5, rng));
  io::write_text(dir / "a.json", io::json{{"weights", a.values()}}.dump());
  io::write_text(dir / "b.json", io::json{{"weights", b.values()}}.dump());
  for (const char* method : {"exact", "bnb"}) {
    const io::json r = result_of(invoke({"dist", "--a", (dir / "a.json").string(), "--b", (dir / "b.json").string(),
                                         "--method", method}));
    CHECK(r.at("value").get<double>() == 0.0);
  }
}

TEST_CASE("example-cone command") {
  const io::json r = result_of(invoke({"example-cone", "--alpha", "15"}));
  CHECK(std::abs(r.at("r0_closed_form").get<double>() - 13.5348) < 5e-4);
}

TEST_CASE("reruns are byte-identical") {
  const fs::path dir = scratch_dir();
  io::write_text(dir / "spec.json",
                 R"({"kind": "uniform_ball_in_cone", "d": 3, "center": [3, 2, 1], "radius": 0.2, "seed": 5})");
  const std::vector<std::string> args{"simulate", "--spec", (dir / "spec.json").string(), "--experiment", "slln",
                                      "--n-grid", "50,100", "--reps", "5"};
  const Outcome first = invoke(args);
  const Outcome second = invoke(args);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);

  const Outcome sampled =
      invoke({"simulate", "--spec", (dir / "spec.json").string(), "--n", "20", "--csv", (dir / "draw.csv").string()});
  CHECK(sampled.code == 0);
  const io::json mean = result_of(invoke({"mean", "--samples", (dir / "draw.csv").string(), "--axis", "3,2,1"}));
  CHECK(mean.at("certificate").at("kind") == "cone_unique");
}

TEST_CASE("exit codes") {
  CHECK(invoke({"bogus"}).code == cli::kExitValidation);
  CHECK(invoke({"domain"}).code == cli::kExitValidation);
  CHECK(invoke({"domain", "--w", "1,1,2"}).code == cli::kExitValidation);
  CHECK(invoke({"dist", "--x", "1,2", "--y", "1,2"}).code == cli::kExitValidation);
  std::string nine;
  for (int k = 0; k < 36; ++k) nine += (k ? "," : "") + std::to_string(k + 1);
  CHECK(invoke({"dist", "--x", nine, "--y", nine}).code == cli::kExitGuard);
  const Outcome bad = invoke({"dist", "--x", "1,2,-3", "--y", "1,2,3"});
  CHECK(bad.code == cli::kExitValidation);
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("compare command reports the published construction") {
  const io::json r = result_of(invoke({"compare"}));
  std::map<std::string, bool> holds;
  for (const auto& c : r.at("cases")) {
    CHECK(c.contains("claim"));
    CHECK(c.contains("computed"));
    holds[c.at("case").get<std::string>()] = c.at("claim_holds").get<bool>();
  }
  CHECK(holds.at("near_singular_pair"));
  CHECK_FALSE(holds.at("published_construction"));
}
