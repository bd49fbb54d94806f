// sixbq command line. Exit status: 0 every run passed, 1 some run failed or
// the campaign could not complete, 2 configuration error.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "sixbq/sixbq.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Flags {
  std::string config;
  std::string out;
  uint64_t seed = 0;
  bool have_seed = false;
  size_t workers = 1;
  bool quiet = false;
};

int report_and_exit(sixbq_campaign* c, const char* root, bool quiet) {
  int all = 0;
  if (sixbq_campaign_report(c, root, &all) != SIXBQ_OK) {
    std::fprintf(stderr, "sixbq: report failed: %s\n", sixbq_last_error());
    sixbq_campaign_destroy(c);
    return kExitFail;
  }
  if (!quiet) {
    const size_t n = sixbq_campaign_run_count(c);
    size_t passed = 0;
    for (size_t i = 0; i < n; ++i) passed += sixbq_campaign_run_passed(c, i) ? 1 : 0;
    std::printf("%zu/%zu runs passed\n", passed, n);
  }
  sixbq_campaign_destroy(c);
  return all ? kExitPass : kExitFail;
}

int run_kind(const char* kind, const Flags& f) {
  sixbq_config* cfg = nullptr;
  sixbq_status st = sixbq_config_load(f.config.c_str(), &cfg);
  if (st == SIXBQ_OK) st = sixbq_config_set_kind(cfg, kind);
  if (st != SIXBQ_OK) {
    std::fprintf(stderr, "sixbq: %s\n", sixbq_last_error());
    sixbq_config_destroy(cfg);
    return st == SIXBQ_IO || st == SIXBQ_CONFIG_PARSE || st == SIXBQ_CONFIG_SEMANTIC ? kExitConfig : kExitFail;
  }
  sixbq_campaign* c = nullptr;
  st = sixbq_campaign_run(cfg, f.out.empty() ? nullptr : f.out.c_str(), f.have_seed ? &f.seed : nullptr,
                          f.workers, f.quiet ? 1 : 0, &c);
  sixbq_config_destroy(cfg);
  if (st != SIXBQ_OK) {
    std::fprintf(stderr, "sixbq: %s\n", sixbq_last_error());
    return st == SIXBQ_CONFIG_SEMANTIC ? kExitConfig : kExitFail;
  }
  return report_and_exit(c, nullptr, f.quiet);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sixbq: sixth-order Boussinesq simulation and verification campaigns"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sixbq_version()));
  Flags f;

  auto common = [&](CLI::App* sub, bool need_config) {
    auto* opt = sub->add_option("--config", f.config, "campaign config file");
    if (need_config) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", f.out, "output root (default: config, $SIXBQ_OUTPUT_ROOT, ./sixbq_runs)");
    sub->add_option_function<uint64_t>("--seed", [&](const uint64_t& s) { f.seed = s; f.have_seed = true; },
                                       "override the data and ensemble seed");
    sub->add_option("--workers", f.workers, "concurrent runs")->check(CLI::PositiveNumber);
    sub->add_flag("--quiet", f.quiet, "print nothing on success");
  };

  struct Cmd {
    const char* name;
    const char* kind;
    const char* help;
  };
  const Cmd cmds[] = {
      {"simulate", "simulate", "evolve each (s, N, data) combination and check energy drift"},
      {"scan-almost-conservation", "almost-conservation-scan", "fit the decay of the E(Iu) increment in N"},
      {"verify-estimates", "estimate-suite", "resolution study of the space-time estimates"},
      {"growth-check", "growth-check", "long runs against the polynomial growth bound"},
  };
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    common(sub, true);
    sub->callback([&f, kind = c.kind] { throw CLI::RuntimeError(run_kind(kind, f)); });
  }
  auto* rep = app.add_subcommand("report", "rewrite report.md and summary.json from an output root");
  common(rep, false);
  rep->callback([&f] {
    std::string root = f.out;
    if (root.empty())
      if (const char* env = std::getenv("SIXBQ_OUTPUT_ROOT")) root = env;
    if (root.empty()) root = "sixbq_runs";
    sixbq_campaign* c = nullptr;
    if (sixbq_campaign_load(root.c_str(), &c) != SIXBQ_OK) {
      std::fprintf(stderr, "sixbq: %s\n", sixbq_last_error());
      throw CLI::RuntimeError(kExitFail);
    }
    throw CLI::RuntimeError(report_and_exit(c, root.c_str(), f.quiet));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::RuntimeError& e) {
    return e.get_exit_code();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  return kExitPass;
}
