#include "sixbq/campaign.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sixbq/almost_conservation.hpp"
#include "sixbq/bourgain.hpp"
#include "sixbq/error.hpp"
#include "sixbq/evolution.hpp"
#include "sixbq/linear.hpp"

#ifndef SIXBQ_VERSION
#define SIXBQ_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace sixbq {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f << content;
  f.close();
  if (!f) fail(ErrorCode::kIo, "cannot write '" + p.string() + "'");
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) fail(ErrorCode::kIo, "cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Job {
  CampaignConfig cfg;  // sweep lists narrowed to this run
  std::string label;
  std::string hash;
  std::optional<EstimateSpec> estimate;
};

std::pair<RealField, RealField> make_data(const CampaignConfig& c, DataFamily family) {
  const Grid grid(c.length, c.n);
  const double A = c.amplitude, r = c.velocity_ratio;
  const double x0 = 0.5 * c.length, dk = grid.spacing();
  switch (family) {
    case DataFamily::kSech: {
      auto f = [&](double x) { return A / std::cosh((x - x0) / c.width); };
      return {RealField::sample(grid, f), RealField::sample(grid, [&](double x) { return r * f(x); })};
    }
    case DataFamily::kGaussian: {
      auto f = [&](double x) { const double y = (x - x0) / c.width; return A * std::exp(-y * y); };
      return {RealField::sample(grid, f), RealField::sample(grid, [&](double x) { return r * f(x); })};
    }
    case DataFamily::kTwoMode:
      return {RealField::sample(grid, [&](double x) {
                return A * (std::cos(dk * x) + 0.6 * std::cos(3.0 * dk * x + 0.4));
              }),
              RealField::sample(grid, [&](double x) { return r * A * std::sin(2.0 * dk * x); })};
    case DataFamily::kSingleMode:
      return {RealField::sample(grid, [&](double x) { return A * std::cos(dk * x); }),
              RealField::sample(grid, [&](double x) { return r * A * std::sin(dk * x); })};
    case DataFamily::kRough: {
      // Power-law spectrum with seeded Gaussian amplitudes and uniform phases.
      std::mt19937_64 rng(c.seed);
      std::normal_distribution<double> normal(0.0, 1.0);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
      const std::size_t top = c.n / 3;
      std::vector<double> ag(top), pg(top), ah(top), ph(top);
      for (std::size_t j = 1; j < top; ++j) {
        const double jj = static_cast<double>(j);
        ag[j] = std::pow(jj, -c.decay) * normal(rng);
        pg[j] = phase(rng);
        ah[j] = std::pow(jj, -c.decay - 2.0) * normal(rng);
        ph[j] = phase(rng);
      }
      auto sum = [&](const std::vector<double>& a, const std::vector<double>& p, double x) {
        double s = 0.0;
        for (std::size_t j = 1; j < top; ++j) s += a[j] * std::cos(dk * static_cast<double>(j) * x + p[j]);
        return A * s;
      };
      return {RealField::sample(grid, [&](double x) { return sum(ag, pg, x); }),
              RealField::sample(grid, [&](double x) { return sum(ah, ph, x); })};
    }
  }
  fail(ErrorCode::kInternal, "make_data: unknown family");
}

ModelParams model_of(const CampaignConfig& c) {
  ModelParams p;
  p.beta = c.beta;
  p.k = c.k;
  p.sign = c.sign;
  p.s = c.s_list.front();
  p.N = c.N_list.empty() ? 1.0 : c.N_list.front();
  return p;
}

std::string fmt_short(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::vector<Job> expand(const CampaignConfig& cfg) {
  std::vector<Job> jobs;
  auto add = [&](CampaignConfig c, std::string label, std::optional<EstimateSpec> e = {}) {
    c.output.clear();
    Job j{c, std::move(label), sha256_hex(c.canonical()), std::move(e)};
    jobs.push_back(std::move(j));
  };
  switch (cfg.kind) {
    case ExperimentKind::kSimulate:
    case ExperimentKind::kGrowthCheck:
      for (double s : cfg.s_list)
        for (double N : cfg.N_list)
          for (DataFamily f : cfg.families) {
            CampaignConfig c = cfg;
            c.s_list = {s};
            c.N_list = {N};
            c.families = {f};
            add(c, std::string(to_string(f)) + " s=" + fmt_short(s) + " N=" + fmt_short(N));
          }
      break;
    case ExperimentKind::kAlmostConservationScan:
      if (cfg.N_list.empty()) break;
      for (double s : cfg.s_list)
        for (DataFamily f : cfg.families) {
          CampaignConfig c = cfg;
          c.s_list = {s};
          c.families = {f};
          add(c, std::string(to_string(f)) + " s=" + fmt_short(s));
        }
      break;
    case ExperimentKind::kEstimateSuite:
      for (const auto& e : cfg.estimates) {
        CampaignConfig c = cfg;
        c.estimates = {e};
        c.s_list = {};
        c.N_list = {};
        c.families = {};
        add(c, e.label(), e);
      }
      break;
  }
  // Identical runs share a hash and a directory; keep one.
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.hash < b.hash; });
  jobs.erase(std::unique(jobs.begin(), jobs.end(),
                         [](const Job& a, const Job& b) { return a.hash == b.hash; }),
             jobs.end());
  return jobs;
}

void put(RunRecord& r, const std::string& key, double v) {
  if (std::isfinite(v)) r.summary[key] = v;
}

std::string timeseries_csv(const Trajectory& traj) {
  std::ostringstream o;
  o << "t,E_total,E_uxx,E_ux,E_u,E_kin,E_pot,EI_total,Hs_norm_sq,theorem_quantity,Linf_u\n";
  char buf[512];
  for (const auto& s : traj.snapshots) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  s.t(), s.energy.total, s.energy.uxx_term, s.energy.ux_term, s.energy.u_term,
                  s.energy.kinetic_term, s.energy.potential_term, s.modified.total, s.hs_norm_sq,
                  s.theorem_quantity, s.linf);
    o << buf;
  }
  return o.str();
}

SimulationOptions sim_options(const CampaignConfig& c) {
  SimulationOptions so;
  so.T = c.T;
  so.dt = c.dt;
  so.snapshot_every = c.snapshot_every;
  return so;
}

// Fills the record; returns the time series to persist, if any.
std::string execute(const Job& job, RunRecord& rec) {
  const CampaignConfig& c = job.cfg;
  switch (c.kind) {
    case ExperimentKind::kSimulate: {
      const auto [g, h] = make_data(c, c.families.front());
      const Trajectory traj = simulate(g, h, model_of(c), sim_options(c));
      rec.status = to_string(traj.status);
      rec.message = traj.message;
      const auto& first = traj.snapshots.front();
      const auto& last = traj.snapshots.back();
      const double e0 = first.energy.total;
      const double drift = std::abs(last.energy.total - e0) / std::max(std::abs(e0), 1e-300);
      double qmax = 0.0, linf = 0.0;
      for (const auto& s : traj.snapshots) {
        qmax = std::max(qmax, s.theorem_quantity);
        linf = std::max(linf, s.linf);
      }
      put(rec, "final_time", last.t());
      put(rec, "dt", traj.dt);
      put(rec, "energy_initial", e0);
      put(rec, "energy_final", last.energy.total);
      put(rec, "energy_drift_rel", drift);
      put(rec, "modified_energy_increment", last.modified.total - first.modified.total);
      put(rec, "theorem_quantity_max", qmax);
      put(rec, "linf_max", linf);
      put(rec, "energy_tolerance", c.energy_tolerance);
      rec.pass = traj.status == Termination::kCompleted && drift < c.energy_tolerance;
      return timeseries_csv(traj);
    }
    case ExperimentKind::kGrowthCheck: {
      const auto [g, h] = make_data(c, c.families.front());
      const Trajectory traj = simulate(g, h, model_of(c), sim_options(c));
      rec.status = to_string(traj.status);
      rec.message = traj.message;
      put(rec, "final_time", traj.snapshots.back().t());
      put(rec, "growth_exponent", growth_exponent(c.k, c.s_list.front()));
      if (traj.status == Termination::kCompleted) {
        const GrowthCheck gc = growth_bound_check(traj, c.growth_slack, c.calibration_fraction);
        double qmax = 0.0;
        for (const auto& s : traj.snapshots) qmax = std::max(qmax, s.theorem_quantity);
        put(rec, "fitted_exponent", gc.fitted_exponent);
        put(rec, "bound_exponent", gc.bound_exponent);
        put(rec, "calibration_constant", gc.calibration_constant);
        put(rec, "worst_ratio", gc.worst_ratio);
        put(rec, "bound_satisfied", gc.bound_satisfied ? 1.0 : 0.0);
        put(rec, "theorem_quantity_max", qmax);
        rec.pass = gc.bound_satisfied;
      }
      return timeseries_csv(traj);
    }
    case ExperimentKind::kAlmostConservationScan: {
      const auto [g, h] = make_data(c, c.families.front());
      ScanOptions so;
      so.delta_from_lwp = !c.fixed_delta.has_value();
      if (c.fixed_delta) so.fixed_delta = *c.fixed_delta;
      so.lwp.constant = c.lwp_constant;
      so.lwp.epsilon = c.epsilon;
      if (c.dt > 0.0) so.dt = c.dt;
      const ScanResult r = almost_conservation_scan(build_state(g, h), model_of(c), c.N_list, so);
      rec.status = to_string(r.outcome);
      for (const auto& w : r.warnings) rec.message += (rec.message.empty() ? "" : "; ") + w;
      for (const auto& pt : r.points) {
        const std::string n = fmt_short(pt.N);
        put(rec, "delta_N" + n, pt.delta);
        put(rec, "raw_increment_N" + n, pt.raw_increment);
        put(rec, "norm_product_N" + n, pt.norm_product);
        put(rec, "normalized_N" + n, pt.normalized);
      }
      put(rec, "target_slope", -4.0 + c.epsilon);
      put(rec, "slope_threshold", c.slope_target);
      if (r.outcome == ScanOutcome::kFitted) {
        put(rec, "slope", r.slope);
        put(rec, "raw_slope", r.raw_slope);
        put(rec, "r_squared", r.r_squared);
        rec.pass = r.slope <= c.slope_target;
      } else {
        rec.pass = r.outcome == ScanOutcome::kIdenticallyConserved;
      }
      return {};
    }
    case ExperimentKind::kEstimateSuite: {
      const EstimateSpec& e = *job.estimate;
      EstimateConfig ec;
      ec.ensemble.length = c.ensemble_length > 0.0 ? c.ensemble_length : 8.0 * kPi;
      ec.ensemble.n = c.ensemble_n;
      ec.ensemble.nt = c.ensemble_nt;
      ec.ensemble.delta = c.ensemble_delta;
      ec.ensemble.beta = c.beta;
      ec.ensemble.xi_cap = c.xi_cap;
      ec.ensemble.s = e.s;
      ec.ensemble.theta = c.theta;
      ec.ensemble.count = c.ensemble_count;
      ec.ensemble.seed = c.seed;
      ec.p = e.p;
      ec.q = e.q;
      ec.k = c.k;
      const EstimateReport r = verify_estimate(parse_estimate_id(e.id), ec);
      rec.status = "completed";
      put(rec, "max_ratio", r.max_ratio);
      put(rec, "max_ratio_doubled", r.max_ratio_doubled);
      put(rec, "growth", r.growth);
      put(rec, "ensemble_size", static_cast<double>(r.ensemble_size));
      rec.pass = r.pass;
      rec.message = "X^{s,theta} norms use the eta_delta extension, an upper bound for the truncated norm";
      return {};
    }
  }
  fail(ErrorCode::kInternal, "execute: unknown experiment kind");
}

json record_json(const RunRecord& r) {
  json summary = json::object();
  for (const auto& [k, v] : r.summary) summary[k] = v;
  return json{{"config_hash", r.hash},
              {"kind", r.kind},
              {"label", r.label},
              {"code_version", r.code_version},
              {"started", r.started},
              {"finished", r.finished},
              {"status", r.status},
              {"message", r.message},
              {"pass", r.pass},
              {"summary", summary},
              {"config", r.canonical_config}};
}

RunRecord record_from_json(const json& j) {
  RunRecord r;
  r.hash = j.at("config_hash").get<std::string>();
  r.kind = j.at("kind").get<std::string>();
  r.label = j.at("label").get<std::string>();
  r.code_version = j.at("code_version").get<std::string>();
  r.started = j.at("started").get<std::string>();
  r.finished = j.at("finished").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.message = j.at("message").get<std::string>();
  r.pass = j.at("pass").get<bool>();
  for (const auto& [k, v] : j.at("summary").items()) r.summary[k] = v.get<double>();
  r.canonical_config = j.at("config").get<std::string>();
  return r;
}

RunRecord run_job(const Job& job, const fs::path& runs) {
  RunRecord rec;
  rec.hash = job.hash;
  rec.kind = to_string(job.cfg.kind);
  rec.label = job.label;
  rec.code_version = code_version();
  rec.canonical_config = job.cfg.canonical();
  rec.started = utc_now();
  const fs::path partial = runs / (job.hash + ".partial");
  const fs::path final_dir = runs / job.hash;
  fs::create_directories(partial);
  std::string series;
  try {
    series = execute(job, rec);
  } catch (const std::exception& e) {
    rec.status = "error";
    rec.message = e.what();
    rec.pass = false;
  }
  rec.finished = utc_now();
  write_file(partial / "config.ini", rec.canonical_config);
  if (!series.empty()) write_file(partial / "timeseries.csv", series);
  write_file(partial / "manifest.json", record_json(rec).dump(2) + "\n");
  std::error_code ec;
  fs::remove_all(final_dir, ec);
  fs::rename(partial, final_dir);
  rec.directory = final_dir;
  return rec;
}

void quarantine_partials(const fs::path& root, const fs::path& runs) {
  if (!fs::exists(runs)) return;
  std::vector<fs::path> stale;
  for (const auto& e : fs::directory_iterator(runs))
    if (e.path().extension() == ".partial") stale.push_back(e.path());
  if (stale.empty()) return;
  const fs::path q = root / "quarantine";
  fs::create_directories(q);
  for (const auto& p : stale) {
    fs::path dst = q / p.filename();
    for (int i = 1; fs::exists(dst); ++i) dst = q / (p.filename().string() + "." + std::to_string(i));
    fs::rename(p, dst);
  }
}

}  // namespace

const char* code_version() noexcept { return SIXBQ_VERSION; }

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorCode::kInternal, "sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

fs::path resolve_output_root(const CampaignConfig& cfg, const CampaignOptions& opts) {
  if (!opts.output_root.empty()) return opts.output_root;
  if (!cfg.output.empty()) return cfg.output;
  if (const char* env = std::getenv("SIXBQ_OUTPUT_ROOT"); env && *env) return env;
  return "sixbq_runs";
}

std::vector<RunRecord> run_campaign(const CampaignConfig& base, const CampaignOptions& opts) {
  CampaignConfig cfg = base;
  if (opts.seed) cfg.seed = *opts.seed;
  cfg.validate();
  const fs::path root = resolve_output_root(cfg, opts);
  const fs::path runs = root / "runs";
  fs::create_directories(runs);
  quarantine_partials(root, runs);

  const std::vector<Job> jobs = expand(cfg);
  std::vector<RunRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      records[i] = run_job(jobs[i], runs);
      if (!opts.quiet) {
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << (records[i].pass ? "PASS " : "FAIL ") << jobs[i].label << "  ["
                  << records[i].status << "] " << jobs[i].hash.substr(0, 12) << "\n";
      }
    }
  };
  const std::size_t nw = std::clamp<std::size_t>(opts.workers, 1, std::max<std::size_t>(1, jobs.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < nw; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // jobs are already sorted by hash.
  json index = {{"code_version", code_version()},
                {"campaign_hash", sha256_hex(cfg.canonical())},
                {"kind", to_string(cfg.kind)},
                {"runs", json::array()}};
  for (const auto& r : records)
    index["runs"].push_back({{"config_hash", r.hash}, {"label", r.label}, {"status", r.status},
                             {"pass", r.pass}, {"directory", "runs/" + r.hash}});
  write_file(root / "index.json", index.dump(2) + "\n");
  return records;
}

std::vector<RunRecord> load_records(const fs::path& root) {
  json index;
  try {
    index = json::parse(read_file(root / "index.json"));
  } catch (const json::exception& e) {
    fail(ErrorCode::kIo, "malformed index.json under '" + root.string() + "': " + e.what());
  }
  std::vector<RunRecord> out;
  for (const auto& entry : index.at("runs")) {
    const fs::path dir = root / entry.at("directory").get<std::string>();
    try {
      RunRecord r = record_from_json(json::parse(read_file(dir / "manifest.json")));
      r.directory = dir;
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      fail(ErrorCode::kIo, "malformed manifest in '" + dir.string() + "': " + e.what());
    }
  }
  return out;
}

bool emit_report(const std::vector<RunRecord>& records, const fs::path& root) {
  bool all = true;
  for (const auto& r : records) all = all && r.pass;
  std::ostringstream md;
  md << "# sixbq campaign report\n\n"
     << "code version " << code_version() << ", " << records.size() << " run(s), overall "
     << (all ? "PASS" : "FAIL") << "\n";
  auto num = [](const RunRecord& r, const std::string& k) {
    const auto it = r.summary.find(k);
    return it == r.summary.end() ? std::string("n/a") : fmt_short(it->second);
  };
  std::set<std::string> kinds;
  for (const auto& r : records) kinds.insert(r.kind);
  for (const auto& kind : kinds) {
    md << "\n## " << kind << "\n\n";
    if (kind == "simulate") {
      md << "| run | status | \\|dE\\|/E | tolerance | result |\n|---|---|---|---|---|\n";
      for (const auto& r : records)
        if (r.kind == kind)
          md << "| " << r.label << " | " << r.status << " | " << num(r, "energy_drift_rel") << " | "
             << num(r, "energy_tolerance") << " | " << (r.pass ? "PASS" : "FAIL") << " |\n";
    } else if (kind == "almost-conservation-scan") {
      for (const auto& r : records) {
        if (r.kind != kind) continue;
        md << "### " << r.label << " (" << r.status << ")\n\n| N | delta | raw increment | normalized |\n"
           << "|---|---|---|---|\n";
        for (const auto& [k, v] : r.summary) {
          if (k.rfind("raw_increment_N", 0) != 0) continue;
          const std::string n = k.substr(15);
          md << "| " << n << " | " << num(r, "delta_N" + n) << " | " << fmt_short(v) << " | "
             << num(r, "normalized_N" + n) << " |\n";
        }
        md << "\nfitted slope " << num(r, "slope") << " (raw " << num(r, "raw_slope") << ", r^2 "
           << num(r, "r_squared") << "); target -4+eps = " << num(r, "target_slope")
           << ", pass threshold " << num(r, "slope_threshold") << ": " << (r.pass ? "PASS" : "FAIL")
           << "\n\n";
      }
    } else if (kind == "growth-check") {
      md << "| run | status | fitted exponent | ceiling (4-2s)/(6ks-12k+4) | with slack | worst ratio | result |\n"
         << "|---|---|---|---|---|---|---|\n";
      for (const auto& r : records)
        if (r.kind == kind)
          md << "| " << r.label << " | " << r.status << " | " << num(r, "fitted_exponent") << " | "
             << num(r, "growth_exponent") << " | " << num(r, "bound_exponent") << " | "
             << num(r, "worst_ratio") << " | " << (r.pass ? "PASS" : "FAIL") << " |\n";
    } else if (kind == "estimate-suite") {
      md << "X^{s,theta} norms are evaluated on one eta_delta extension and bound the truncated norm "
            "from above.\n\n| estimate | max LHS/RHS | doubled resolution | growth | result |\n"
         << "|---|---|---|---|---|\n";
      for (const auto& r : records)
        if (r.kind == kind)
          md << "| " << r.label << " | " << num(r, "max_ratio") << " | " << num(r, "max_ratio_doubled")
             << " | " << num(r, "growth") << " | " << (r.pass ? "PASS" : "FAIL") << " |\n";
    }
    for (const auto& r : records)
      if (r.kind == kind && !r.message.empty() && r.status != "completed")
        md << "\n- " << r.label << ": " << r.message << "\n";
  }
  md << "\nPer-run data: runs/<hash>/manifest.json and timeseries.csv.\n";

  json summary = {{"code_version", code_version()}, {"all_pass", all}, {"runs", json::array()}};
  for (const auto& r : records) {
    json s = json::object();
    for (const auto& [k, v] : r.summary) s[k] = v;
    summary["runs"].push_back({{"config_hash", r.hash}, {"kind", r.kind}, {"label", r.label},
                               {"status", r.status}, {"pass", r.pass}, {"summary", s}});
  }
  fs::create_directories(root);
  write_file(root / "report.md", md.str());
  write_file(root / "summary.json", summary.dump(2) + "\n");
  return all;
}

}  // namespace sixbq
