#pragma once

// Configuration, sweeps and persistence.
//
// Config files are INI-style: [section] headers, `key = value` lines, '#' or
// ';' comments, comma-separated lists. Numbers accept a `pi` suffix
// ("2pi", "64 pi", "pi"). Every key has a default except grid.n and
// grid.length; unknown keys are errors. See docs/example.ini.
//
// Output layout under the output root:
//
//     runs/<hash>/manifest.json       canonical config, hash, version, status, summary
//     runs/<hash>/timeseries.csv      per-snapshot scalars (simulate, growth-check)
//     runs/<hash>.partial/            a run still being written
//     quarantine/                     partial runs found by a later invocation
//     index.json                      all runs of the campaign, sorted by hash
//     report.md, summary.json         written by emit_report

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sixbq/params.hpp"

namespace sixbq {

enum class ExperimentKind { kSimulate, kAlmostConservationScan, kEstimateSuite, kGrowthCheck };
const char* to_string(ExperimentKind k);
/// Accepts simulate, almost-conservation-scan, estimate-suite, growth-check.
ExperimentKind parse_experiment_kind(const std::string& s);

enum class DataFamily { kSech, kGaussian, kTwoMode, kSingleMode, kRough };
const char* to_string(DataFamily f);
DataFamily parse_data_family(const std::string& s);

struct EstimateSpec {
  std::string id;   // catalogue name
  double p = 0.0;   // w-Str only; 0 when unused, 1e300 for infinity
  double q = 0.0;
  double s = 0.0;   // Sob-X and prod-xst
  std::string label() const;
};

struct CampaignConfig {
  // [grid]
  double length = 0.0;
  std::size_t n = 0;
  // [model]
  double beta = 1.0;
  int k = 2;
  Nonlinearity sign = Nonlinearity::kDefocusing;
  std::vector<double> s_list{2.0};
  std::vector<double> N_list{1.0};
  // [data]
  std::vector<DataFamily> families{DataFamily::kSech};
  double amplitude = 1.0;
  double width = 1.0;
  double velocity_ratio = 0.5;  // h = ratio * g for the deterministic families
  double decay = 3.0;           // spectral decay exponent of the rough family
  std::uint64_t seed = 1;
  // [run]
  double T = 10.0;
  double dt = 0.0;              // 0 selects the default step
  std::size_t snapshot_every = 1;
  std::optional<double> fixed_delta;  // unset: delta from the local existence heuristic
  double lwp_constant = 1.0;
  double epsilon = 0.01;
  // [experiment]
  ExperimentKind kind = ExperimentKind::kSimulate;
  std::string output;           // empty: --out, SIXBQ_OUTPUT_ROOT, then ./sixbq_runs
  double energy_tolerance = 1e-6;
  double slope_target = -3.5;
  double growth_slack = 0.1;
  double calibration_fraction = 0.1;
  // [estimates]
  std::vector<EstimateSpec> estimates;
  std::size_t ensemble_count = 200;
  std::size_t ensemble_nt = 64;
  double ensemble_delta = 0.25;
  double ensemble_length = 0.0;  // 0: 8 pi
  std::size_t ensemble_n = 128;
  double xi_cap = 2.0;
  double theta = 0.51;

  /// Every field with its materialized value, one `key = value` per line.
  std::string canonical() const;
  /// Field-level semantic checks; throws kConfigSemantic naming the rule.
  void validate() const;
};

/// Parses the text form; throws kConfigParse with line context and
/// kConfigSemantic for rule violations.
CampaignConfig parse_config(const std::string& text, const std::string& origin = "<string>");
CampaignConfig load_config(const std::filesystem::path& path);

struct RunRecord {
  std::string hash;
  std::string kind;
  std::string label;
  std::string code_version;
  std::string started;
  std::string finished;
  std::string status;   // completed, blowup_detected, step_failure, error
  std::string message;
  bool pass = false;
  std::map<std::string, double> summary;  // finite values only
  std::string canonical_config;
  std::filesystem::path directory;
};

struct CampaignOptions {
  std::filesystem::path output_root;  // empty: resolve as documented above
  std::optional<std::uint64_t> seed;  // overrides data.seed
  std::size_t workers = 1;
  bool quiet = true;
};

std::filesystem::path resolve_output_root(const CampaignConfig& cfg, const CampaignOptions& opts);

/// Executes every run of the sweep and returns the records sorted by hash.
/// A failing run is recorded, not thrown. Also writes index.json.
std::vector<RunRecord> run_campaign(const CampaignConfig& cfg, const CampaignOptions& opts = {});

/// Loads the records listed in <root>/index.json.
std::vector<RunRecord> load_records(const std::filesystem::path& root);

/// Writes report.md and summary.json under root; returns true when every
/// record passed (vacuously for an empty list).
bool emit_report(const std::vector<RunRecord>& records, const std::filesystem::path& root);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

const char* code_version() noexcept;

}  // namespace sixbq
