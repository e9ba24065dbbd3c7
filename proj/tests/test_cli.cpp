#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "speclat/cli.hpp"
#include "speclat/errors.hpp"

using namespace speclat;
using namespace speclat::cli;
namespace fs = std::filesystem;

namespace {

const json honeycomb_doc = json::parse(R"({
  "dimension": 2,
  "points": [{"a": [1, 0], "c": 1}, {"a": [0, 1], "c": 1}, {"a": [-1, -1], "c": 1}],
  "bn": {"N": 6, "divisors": true, "evaluate": [53]},
  "moments": {"K": 8, "N": [2, 3], "congruence": {"primes": [2, 3], "k_max": 2, "alpha_max": 1},
              "recurrence": "honeycomb", "series": true},
  "walks": {"N": 2, "K": 3, "z": 10, "export_graph": true},
  "spectrum": {"N": 6, "grid": 4, "cdf": [2]},
  "mahler": {"z": [10, 4]},
  "padic": {"p": 7}
})");

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("speclat-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "speclat");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

}  // namespace

TEST_CASE("config parsing and validation") {
  const JobConfig c = parse_config(honeycomb_doc);
  CHECK(c.points.size() == 3);
  CHECK(c.block("bn").at("N") == 6);
  CHECK(c.block("missing").empty());
  CHECK_THROWS_AS(parse_config(json::parse(R"({"points": []})")), InvalidInput);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"dimension": 1, "points": [{"a": [1]}]})")), InvalidInput);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"dimension": 1, "points": [{"a": [1]}, {"a": [1, 2]}]})")), InvalidInput);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"dimension": 1, "points": [{"a": "x"}, {"a": [2]}]})")), InvalidInput);
  json with_basis = honeycomb_doc;
  with_basis["basis"] = {{2, 1}, {-1, -2}};
  CHECK(parse_config(with_basis).basis.has_value());
  with_basis["basis"] = {{1, 0}, {0, 1}};
  CHECK_THROWS_AS(parse_config(with_basis), InvalidInput);
}

TEST_CASE("overrides and hashing") {
  const JobConfig c = parse_config(honeycomb_doc);
  const JobConfig same = parse_config(json::parse(honeycomb_doc.dump()));
  CHECK(config_hash(c, "bn") == config_hash(same, "bn"));
  CHECK(config_hash(c, "bn").size() == 16);
  CHECK(config_hash(c, "bn") != config_hash(c, "moments"));
  Overrides o;
  o.N = 4;
  const JobConfig c4 = apply_overrides(c, "bn", o);
  CHECK(c4.block("bn").at("N") == 4);
  CHECK(config_hash(c4, "bn") != config_hash(c, "bn"));
  CHECK(config_hash(c4, "moments") == config_hash(c, "moments"));
  Overrides z;
  z.z = "3.5,-1";
  CHECK(apply_overrides(c, "mahler", z).block("mahler").at("z").at("im") == -1.0);
  z.z = "nope";
  CHECK_THROWS_AS(apply_overrides(c, "mahler", z), InvalidInput);
}

TEST_CASE("result records round-trip") {
  const JobConfig c = parse_config(honeycomb_doc);
  for (const auto& command : commands()) {
    const ResultRecord r = run_command(command, c);
    CHECK(r.schema == kResultSchema);
    CHECK(r.command == command);
    CHECK(ResultRecord::from_json(json::parse(r.to_json().dump())) == r);
    CHECK(run_command(command, c).to_json().dump() == r.to_json().dump());
    CHECK(r.payload.at("checks_passed") == true);
  }
  CHECK_THROWS_AS(ResultRecord::from_json(json{{"schema", "other"}}), InvalidInput);
  CHECK_THROWS_AS(run_command("nosuch", c), InvalidInput);
}

TEST_CASE("command payloads") {
  const JobConfig c = parse_config(honeycomb_doc);
  const json bn = cmd_bn(c).payload;
  CHECK(bn.at("degree") == 36);
  CHECK(bn.at("coefficients").back() == "1");
  CHECK(bn.at("coefficients")[0] == "0");
  CHECK(bn.at("integer_roots").size() == 6);
  CHECK(bn.at("integer_roots")[1] == json{{"root", "1"}, {"multiplicity", 15}});
  CHECK(bn.at("divisibility").size() == 3);

  const json m = cmd_moments(c).payload;
  CHECK(m.at("moments")[3] == "93");
  CHECK(m.at("A")[1] == "3");
  CHECK(m.at("recurrence_holds") == true);
  CHECK(m.at("congruences").size() == 8);

  const json w = cmd_walks(c).payload;
  CHECK(w.at("sums")[0].at("based_total") == "12");
  CHECK(w.at("series_check") == true);
  CHECK(w.at("graph").at("edges").size() == 12);

  const json s = cmd_spectrum(c).payload;
  CHECK(s.at("count") == 36);
  CHECK(s.at("cdf")[0].at("value") == "17/36");
  CHECK(s.at("grid").at("values").size() == 16);

  const json q = cmd_mahler(c).payload;
  CHECK(q.at("points").size() == 2);
  CHECK(q.at("points")[1].at("estimates")[0].at("status") == "spectrum_proximity");
  for (const auto& d : q.at("points")[0].at("deltas")) CHECK(d.at("delta").get<double>() < 1e-6);

  const json p = cmd_padic(c).payload;
  CHECK(p.at("rows").size() == 7);
  CHECK(p.at("rows")[1].at("count") == 15);
  CHECK(p.at("rows")[1].at("valuation") == "inf");
  CHECK(p.at("rows")[2].at("valuation") == 1);
}

TEST_CASE("missing parameters") {
  JobConfig c = parse_config(honeycomb_doc);
  c.document.erase("bn");
  CHECK_THROWS_AS(cmd_bn(c), InvalidInput);
  c.document["padic"] = {{"p", 8}};
  CHECK_THROWS_AS(cmd_padic(c), InvalidInput);
}

TEST_CASE("csv output") {
  const JobConfig c = parse_config(honeycomb_doc);
  const std::string bn = to_csv(cmd_bn(c));
  CHECK(bn.rfind("degree,coefficient\r\n0,0\r\n", 0) == 0);
  const std::string mahler = to_csv(cmd_mahler(c));
  CHECK(mahler.find("\"z lies") == std::string::npos);
  CHECK(mahler.rfind("z_re,z_im,function,method,status", 0) == 0);
  const std::string grid = to_csv(cmd_spectrum(c));
  CHECK(grid.rfind("t1,t2,value\r\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : grid) lines += ch == '\n';
  CHECK(lines == 17);
  ResultRecord r = cmd_padic(c);
  r.payload["rows"][0]["z"] = "a,\"b\"";
  CHECK(to_csv(r).find("\"a,\"\"b\"\"\"") != std::string::npos);
}

TEST_CASE("cache") {
  TempDir dir;
  const ResultCache cache(dir.path);
  const JobConfig c = parse_config(honeycomb_doc);
  const ResultRecord r = cmd_padic(c);
  CHECK_FALSE(cache.load("padic", r.config_hash).has_value());
  cache.store(r);
  REQUIRE(cache.load("padic", r.config_hash).has_value());
  CHECK(*cache.load("padic", r.config_hash) == r);
  CHECK_FALSE(cache.load("bn", r.config_hash).has_value());
  {
    std::ofstream f(cache.path_for("padic", r.config_hash));
    f << R"({"schema": "broken"})";
  }
  CHECK_FALSE(cache.load("padic", r.config_hash).has_value());
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir.path)) files += e.path().extension() == ".json";
  CHECK(files == 1);
}

TEST_CASE("command line") {
  TempDir dir;
  const fs::path cfg = dir.path / "job.json";
  std::ofstream(cfg) << honeycomb_doc.dump();
  std::string out;
  CHECK(run({"bn", "--config", cfg.string()}, &out) == kSuccess);
  CHECK(ResultRecord::from_json(json::parse(out)).payload.at("N") == 6);
  const std::string first = out;
  CHECK(run({"bn", "--config", cfg.string(), "--cache-dir", (dir.path / "cache").string()}, &out) == kSuccess);
  CHECK(out == first);
  CHECK(run({"bn", "--config", cfg.string(), "--cache-dir", (dir.path / "cache").string()}, &out) == kSuccess);
  CHECK(out == first);
  CHECK(run({"bn", "--config", cfg.string(), "--N", "3", "--format", "csv"}, &out) == kSuccess);
  CHECK(out.rfind("degree,coefficient", 0) == 0);
  const fs::path result = dir.path / "out.json";
  CHECK(run({"padic", "--config", cfg.string(), "--out", result.string()}) == kSuccess);
  CHECK(fs::exists(result));

  CHECK(run({"bn", "--config", (dir.path / "absent.json").string()}) == kConfigError);
  CHECK(run({"bn", "--config", cfg.string(), "--N", "500"}) == kResourceCap);
  CHECK(run({"bn", "--config", cfg.string(), "--format", "xml"}) == kConfigError);
  CHECK(run({"frobnicate"}) == kConfigError);
  CHECK(run({"verify", "nosuch"}) == kConfigError);
  CHECK(run({"mahler", "--config", cfg.string(), "--z", "12"}, &out) == kSuccess);

  std::ofstream(dir.path / "bad.json") << "{not json";
  CHECK(run({"bn", "--config", (dir.path / "bad.json").string()}) == kConfigError);
}
