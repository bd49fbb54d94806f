#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sixbq/campaign.hpp"
#include "sixbq/error.hpp"

using namespace sixbq;
namespace fs = std::filesystem;

namespace {

const char* kSmall = R"(
[grid]
length = 16pi
n = 64
[model]
s = 1.8, 1.9
N = 1, 2, 4, 8
[data]
family = sech
[run]
T = 0.5
snapshot_every = 10
)";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sixbq_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode parse_code(const std::string& text) {
  try {
    parse_config(text, "t.ini");
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

}  // namespace

TEST_CASE("config defaults and canonical form") {
  auto c = parse_config("[grid]\nlength = 2pi\nn = 16\n");
  CHECK(c.length == doctest::Approx(2 * 3.14159265358979323846).epsilon(1e-15));
  CHECK(c.n == 16);
  CHECK(c.beta == 1.0);
  CHECK(c.k == 2);
  CHECK(c.kind == ExperimentKind::kSimulate);
  CHECK(c.s_list == std::vector<double>{2.0});
  // the canonical text parses back to the same canonical text
  CHECK(parse_config(c.canonical()).canonical() == c.canonical());
  CHECK(parse_config("[grid]\nlength = 64 pi\nn = 16\n").length == doctest::Approx(64 * 3.14159265358979323846));
  CHECK(parse_config("[grid]\nlength = pi\nn = 16\n").length == doctest::Approx(3.14159265358979323846));
}

TEST_CASE("config errors") {
  CHECK(parse_code("[grid]\nlength = 2pi\n") == ErrorCode::kConfigSemantic);
  CHECK(parse_code("[grid]\nlength = 2pi\nn = 16\nfoo = 1\n") == ErrorCode::kConfigParse);
  CHECK(parse_code("[bogus]\n") == ErrorCode::kConfigParse);
  CHECK(parse_code("[grid]\nlength = 2pi\nlength = 3\nn = 16\n") == ErrorCode::kConfigParse);
  CHECK(parse_code("[grid]\nlength = two\nn = 16\n") == ErrorCode::kConfigParse);
  CHECK(parse_code("[grid]\nlength = 2pi\nn = 16\n[model]\nk = 1\n") == ErrorCode::kConfigSemantic);
  CHECK(parse_code("[grid]\nlength = 2pi\nn = 16\n[model]\nbeta = 2\n") == ErrorCode::kConfigSemantic);
  CHECK(parse_code("[grid]\nlength = 2pi\nn = 16\n[estimates]\nids = w-Str(10, 10)\n"
                   "[experiment]\nkind = estimate-suite\n") == ErrorCode::kConfigSemantic);
  CHECK(parse_code("[grid]\nlength = 2pi\nn = 16\n[model]\ns = 1.7\n[experiment]\nkind = growth-check\n") ==
        ErrorCode::kOk);
  CHECK(parse_code("[grid]\nlength = 2pi\nn = 16\n[model]\ns = 1.6\n[experiment]\nkind = growth-check\n") ==
        ErrorCode::kConfigSemantic);

  try {
    parse_config("[grid]\nlength = 2pi\n\nn = 16x\n", "bad.ini");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("bad.ini:4") != std::string::npos);
  }
  try {
    parse_config("[grid]\nlength = 2pi\nn = 16\n[model]\nk = 1\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("k >= 2") != std::string::npos);
  }
}

TEST_CASE("estimate list syntax") {
  auto c = parse_config(
      "[grid]\nlength = 2pi\nn = 16\n[experiment]\nkind = estimate-suite\n"
      "[estimates]\nids = Sob-X(0), w-Str(inf, 2), w-Str(8,4), prod-xst(0.1), w-K\n");
  REQUIRE(c.estimates.size() == 5);
  CHECK(c.estimates[1].id == "w-Str");
  CHECK(c.estimates[1].p >= 1e300);
  CHECK(c.estimates[1].q == 2.0);
  CHECK(c.estimates[3].s == 0.1);
  CHECK(c.estimates[2].label() != c.estimates[1].label());
}

TEST_CASE("sweep, layout and determinism") {
  auto cfg = parse_config(kSmall);
  const fs::path a = scratch("a"), b = scratch("b");
  CampaignOptions o;
  o.output_root = a;
  auto ra = run_campaign(cfg, o);
  REQUIRE(ra.size() == 8);
  o.output_root = b;
  o.workers = 3;
  auto rb = run_campaign(cfg, o);
  REQUIRE(rb.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(ra[i].hash == rb[i].hash);
    CHECK(ra[i].hash.size() == 64);
    CHECK(ra[i].status == "completed");
    CHECK(ra[i].pass);
    CHECK(ra[i].summary == rb[i].summary);
    if (i > 0) CHECK(ra[i - 1].hash < ra[i].hash);
    const fs::path da = a / "runs" / ra[i].hash, db = b / "runs" / rb[i].hash;
    CHECK(fs::exists(da / "manifest.json"));
    CHECK(slurp(da / "timeseries.csv") == slurp(db / "timeseries.csv"));
    CHECK(slurp(da / "config.ini") == slurp(db / "config.ini"));
  }
  auto index = nlohmann::json::parse(slurp(a / "index.json"));
  CHECK(index["runs"].size() == 8);

  auto loaded = load_records(a);
  REQUIRE(loaded.size() == 8);
  CHECK(loaded[0].summary == ra[0].summary);
  CHECK(emit_report(loaded, a));
  CHECK(fs::exists(a / "report.md"));
  CHECK(fs::exists(a / "summary.json"));

  // a different seed leaves deterministic families untouched but changes the hash
  o.output_root = scratch("c");
  o.seed = 99;
  auto rc = run_campaign(cfg, o);
  CHECK(rc[0].hash != ra[0].hash);
  fs::remove_all(a);
  fs::remove_all(b);
  fs::remove_all(o.output_root);
}

TEST_CASE("empty sweep") {
  auto cfg = parse_config(std::string(kSmall) + "");
  cfg.N_list.clear();
  CampaignOptions o;
  o.output_root = scratch("empty");
  auto r = run_campaign(cfg, o);
  CHECK(r.empty());
  CHECK(emit_report(r, o.output_root));
  fs::remove_all(o.output_root);
}

TEST_CASE("stale partial runs are quarantined") {
  const fs::path root = scratch("partial");
  fs::create_directories(root / "runs" / "deadbeef.partial");
  std::ofstream(root / "runs" / "deadbeef.partial" / "manifest.json") << "{";
  auto cfg = parse_config(kSmall);
  cfg.s_list = {1.8};
  cfg.N_list = {2};
  CampaignOptions o;
  o.output_root = root;
  auto r = run_campaign(cfg, o);
  CHECK(r.size() == 1);
  CHECK_FALSE(fs::exists(root / "runs" / "deadbeef.partial"));
  CHECK(fs::exists(root / "quarantine" / "deadbeef.partial" / "manifest.json"));
  for (const auto& e : fs::directory_iterator(root / "runs")) CHECK(e.path().extension() != ".partial");
  fs::remove_all(root);
}

TEST_CASE("failing runs are recorded") {
  auto cfg = parse_config(
      "[grid]\nlength = 64pi\nn = 256\n[model]\nsign = focusing\n[data]\namplitude = 4\n[run]\nT = 20\n"
      "snapshot_every = 10\n");
  CampaignOptions o;
  o.output_root = scratch("focus");
  auto r = run_campaign(cfg, o);
  REQUIRE(r.size() == 1);
  CHECK(r[0].status == "blowup_detected");
  CHECK_FALSE(r[0].pass);
  CHECK_FALSE(emit_report(r, o.output_root));
  fs::remove_all(o.output_root);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("output root resolution") {
  CampaignConfig c;
  CampaignOptions o;
  ::setenv("SIXBQ_OUTPUT_ROOT", "/tmp/from_env", 1);
  CHECK(resolve_output_root(c, o) == "/tmp/from_env");
  c.output = "from_config";
  CHECK(resolve_output_root(c, o) == "from_config");
  o.output_root = "from_flag";
  CHECK(resolve_output_root(c, o) == "from_flag");
  ::unsetenv("SIXBQ_OUTPUT_ROOT");
  CHECK(resolve_output_root(CampaignConfig{}, CampaignOptions{}) == "sixbq_runs");
}
