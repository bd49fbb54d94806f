#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "sixbq/bourgain.hpp"
#include "sixbq/campaign.hpp"
#include "sixbq/error.hpp"
#include "sixbq/evolution.hpp"

namespace sixbq {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = 1e300;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Splits at commas outside parentheses.
std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : v) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

std::string fmt(double x) {
  if (x >= kInf) return "inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

}  // namespace

// Shared with campaign.cpp.
double parse_number(const std::string& raw, const std::string& ctx) {
  std::string s = lower(trim(raw));
  if (s == "inf" || s == "infinity") return kInf;
  double factor = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = kPi;
    s = trim(s.substr(0, s.size() - 2));
    if (!s.empty() && s.back() == '*') s = trim(s.substr(0, s.size() - 1));
    if (s.empty()) return kPi;
  }
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (!s.empty() && *b == '+') ++b;
  const auto r = std::from_chars(b, e, v);
  if (s.empty() || r.ec != std::errc() || r.ptr != e || !std::isfinite(v))
    fail(ErrorCode::kConfigParse, ctx + ": expected a number, got '" + trim(raw) + "'");
  return v * factor;
}

namespace {

std::size_t parse_count(const std::string& raw, const std::string& ctx) {
  const double v = parse_number(raw, ctx);
  if (v < 0.0 || v != std::floor(v) || v > 1e15)
    fail(ErrorCode::kConfigParse, ctx + ": expected a nonnegative integer, got '" + trim(raw) + "'");
  return static_cast<std::size_t>(v);
}

EstimateSpec parse_estimate(const std::string& raw, const std::string& ctx) {
  EstimateSpec e;
  const auto open = raw.find('(');
  e.id = trim(raw.substr(0, open));
  std::vector<std::string> args;
  if (open != std::string::npos) {
    const auto close = raw.rfind(')');
    if (close == std::string::npos || close < open || !trim(raw.substr(close + 1)).empty())
      fail(ErrorCode::kConfigParse, ctx + ": malformed estimate '" + raw + "'");
    args = split_list(raw.substr(open + 1, close - open - 1));
  }
  EstimateId id{};
  try {
    id = parse_estimate_id(e.id);
  } catch (const Error&) {
    fail(ErrorCode::kConfigParse, ctx + ": unknown estimate '" + e.id +
                                      "' (Sob-X, w-Str, w-K, w-mf, w-infty, prod-xst)");
  }
  switch (id) {
    case EstimateId::kStrichartz:
      if (args.size() != 2) fail(ErrorCode::kConfigParse, ctx + ": w-Str needs (p, q)");
      e.p = parse_number(args[0], ctx);
      e.q = parse_number(args[1], ctx);
      break;
    case EstimateId::kSobX:
    case EstimateId::kProduct:
      if (args.size() > 1) fail(ErrorCode::kConfigParse, ctx + ": " + e.id + " takes at most (s)");
      e.s = args.empty() ? (id == EstimateId::kProduct ? 0.5 : 0.0) : parse_number(args[0], ctx);
      break;
    default:
      if (!args.empty()) fail(ErrorCode::kConfigParse, ctx + ": " + e.id + " takes no arguments");
  }
  return e;
}

using Setter = std::function<void(CampaignConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"grid.length", [](auto& c, auto& v, auto& x) { c.length = parse_number(v, x); }},
      {"grid.n", [](auto& c, auto& v, auto& x) { c.n = parse_count(v, x); }},
      {"model.beta", [](auto& c, auto& v, auto& x) { c.beta = parse_number(v, x); }},
      {"model.k",
       [](auto& c, auto& v, auto& x) {
         const double k = parse_number(v, x);
         if (k != std::floor(k) || std::abs(k) > 1e6)
           fail(ErrorCode::kConfigParse, x + ": k must be an integer");
         c.k = static_cast<int>(k);
       }},
      {"model.sign",
       [](auto& c, auto& v, auto& x) {
         const auto s = lower(trim(v));
         if (s == "defocusing" || s == "+1" || s == "1") c.sign = Nonlinearity::kDefocusing;
         else if (s == "focusing" || s == "-1") c.sign = Nonlinearity::kFocusing;
         else fail(ErrorCode::kConfigParse, x + ": expected defocusing or focusing, got '" + trim(v) + "'");
       }},
      {"model.s",
       [](auto& c, auto& v, auto& x) {
         c.s_list.clear();
         for (const auto& t : split_list(v)) c.s_list.push_back(parse_number(t, x));
       }},
      {"model.n",
       [](auto& c, auto& v, auto& x) {
         c.N_list.clear();
         for (const auto& t : split_list(v)) c.N_list.push_back(parse_number(t, x));
       }},
      {"data.family",
       [](auto& c, auto& v, auto& x) {
         c.families.clear();
         for (const auto& t : split_list(v)) {
           try {
             c.families.push_back(parse_data_family(t));
           } catch (const Error& e) {
             fail(ErrorCode::kConfigParse, x + ": " + e.what());
           }
         }
       }},
      {"data.amplitude", [](auto& c, auto& v, auto& x) { c.amplitude = parse_number(v, x); }},
      {"data.width", [](auto& c, auto& v, auto& x) { c.width = parse_number(v, x); }},
      {"data.velocity_ratio", [](auto& c, auto& v, auto& x) { c.velocity_ratio = parse_number(v, x); }},
      {"data.decay", [](auto& c, auto& v, auto& x) { c.decay = parse_number(v, x); }},
      {"data.seed",
       [](auto& c, auto& v, auto& x) {
         std::uint64_t s = 0;
         const auto t = trim(v);
         const auto r = std::from_chars(t.data(), t.data() + t.size(), s);
         if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size())
           fail(ErrorCode::kConfigParse, x + ": expected an unsigned 64-bit seed, got '" + t + "'");
         c.seed = s;
       }},
      {"run.t", [](auto& c, auto& v, auto& x) { c.T = parse_number(v, x); }},
      {"run.dt", [](auto& c, auto& v, auto& x) { c.dt = parse_number(v, x); }},
      {"run.snapshot_every", [](auto& c, auto& v, auto& x) { c.snapshot_every = parse_count(v, x); }},
      {"run.delta",
       [](auto& c, auto& v, auto& x) {
         if (lower(trim(v)) == "lwp") c.fixed_delta.reset();
         else c.fixed_delta = parse_number(v, x);
       }},
      {"run.lwp_constant", [](auto& c, auto& v, auto& x) { c.lwp_constant = parse_number(v, x); }},
      {"run.epsilon", [](auto& c, auto& v, auto& x) { c.epsilon = parse_number(v, x); }},
      {"experiment.kind",
       [](auto& c, auto& v, auto& x) {
         try {
           c.kind = parse_experiment_kind(trim(v));
         } catch (const Error& e) {
           fail(ErrorCode::kConfigParse, x + ": " + e.what());
         }
       }},
      {"experiment.output", [](auto& c, auto& v, auto&) { c.output = trim(v); }},
      {"experiment.energy_tolerance", [](auto& c, auto& v, auto& x) { c.energy_tolerance = parse_number(v, x); }},
      {"experiment.slope_target", [](auto& c, auto& v, auto& x) { c.slope_target = parse_number(v, x); }},
      {"experiment.growth_slack", [](auto& c, auto& v, auto& x) { c.growth_slack = parse_number(v, x); }},
      {"experiment.calibration_fraction",
       [](auto& c, auto& v, auto& x) { c.calibration_fraction = parse_number(v, x); }},
      {"estimates.ids",
       [](auto& c, auto& v, auto& x) {
         c.estimates.clear();
         for (const auto& t : split_list(v)) c.estimates.push_back(parse_estimate(t, x));
       }},
      {"estimates.count", [](auto& c, auto& v, auto& x) { c.ensemble_count = parse_count(v, x); }},
      {"estimates.nt", [](auto& c, auto& v, auto& x) { c.ensemble_nt = parse_count(v, x); }},
      {"estimates.delta", [](auto& c, auto& v, auto& x) { c.ensemble_delta = parse_number(v, x); }},
      {"estimates.length", [](auto& c, auto& v, auto& x) { c.ensemble_length = parse_number(v, x); }},
      {"estimates.n", [](auto& c, auto& v, auto& x) { c.ensemble_n = parse_count(v, x); }},
      {"estimates.xi_cap", [](auto& c, auto& v, auto& x) { c.xi_cap = parse_number(v, x); }},
      {"estimates.theta", [](auto& c, auto& v, auto& x) { c.theta = parse_number(v, x); }},
  };
  return table;
}

[[noreturn]] void semantic(const std::string& field, const std::string& rule) {
  fail(ErrorCode::kConfigSemantic, field + ": " + rule);
}

}  // namespace

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kSimulate: return "simulate";
    case ExperimentKind::kAlmostConservationScan: return "almost-conservation-scan";
    case ExperimentKind::kEstimateSuite: return "estimate-suite";
    case ExperimentKind::kGrowthCheck: return "growth-check";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& s) {
  for (auto k : {ExperimentKind::kSimulate, ExperimentKind::kAlmostConservationScan,
                 ExperimentKind::kEstimateSuite, ExperimentKind::kGrowthCheck})
    if (lower(s) == to_string(k)) return k;
  fail(ErrorCode::kInvalidArgument, "unknown experiment kind '" + s + "'");
}

const char* to_string(DataFamily f) {
  switch (f) {
    case DataFamily::kSech: return "sech";
    case DataFamily::kGaussian: return "gaussian";
    case DataFamily::kTwoMode: return "two_mode";
    case DataFamily::kSingleMode: return "single_mode";
    case DataFamily::kRough: return "rough";
  }
  return "unknown";
}

DataFamily parse_data_family(const std::string& s) {
  for (auto f : {DataFamily::kSech, DataFamily::kGaussian, DataFamily::kTwoMode,
                 DataFamily::kSingleMode, DataFamily::kRough})
    if (lower(trim(s)) == to_string(f)) return f;
  fail(ErrorCode::kInvalidArgument,
       "unknown data family '" + trim(s) + "' (sech, gaussian, two_mode, single_mode, rough)");
}

std::string EstimateSpec::label() const {
  if (id == "w-Str") return id + "(" + fmt(p) + "," + fmt(q) + ")";
  if (id == "Sob-X" || id == "prod-xst") return id + "(" + fmt(s) + ")";
  return id;
}

std::string CampaignConfig::canonical() const {
  auto list = [](const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
    return out;
  };
  std::ostringstream o;
  o << "[grid]\n"
    << "length = " << fmt(length) << "\n"
    << "n = " << n << "\n"
    << "[model]\n"
    << "beta = " << fmt(beta) << "\n"
    << "k = " << k << "\n"
    << "sign = " << (sign == Nonlinearity::kDefocusing ? "defocusing" : "focusing") << "\n"
    << "s = " << list(s_list) << "\n"
    << "N = " << list(N_list) << "\n"
    << "[data]\n"
    << "family = ";
  for (std::size_t i = 0; i < families.size(); ++i) o << (i ? ", " : "") << to_string(families[i]);
  o << "\n"
    << "amplitude = " << fmt(amplitude) << "\n"
    << "width = " << fmt(width) << "\n"
    << "velocity_ratio = " << fmt(velocity_ratio) << "\n"
    << "decay = " << fmt(decay) << "\n"
    << "seed = " << seed << "\n"
    << "[run]\n"
    << "T = " << fmt(T) << "\n"
    << "dt = " << fmt(dt) << "\n"
    << "snapshot_every = " << snapshot_every << "\n"
    << "delta = " << (fixed_delta ? fmt(*fixed_delta) : std::string("lwp")) << "\n"
    << "lwp_constant = " << fmt(lwp_constant) << "\n"
    << "epsilon = " << fmt(epsilon) << "\n"
    << "[experiment]\n"
    << "kind = " << to_string(kind) << "\n"
    << "energy_tolerance = " << fmt(energy_tolerance) << "\n"
    << "slope_target = " << fmt(slope_target) << "\n"
    << "growth_slack = " << fmt(growth_slack) << "\n"
    << "calibration_fraction = " << fmt(calibration_fraction) << "\n"
    << "[estimates]\n"
    << "ids = ";
  for (std::size_t i = 0; i < estimates.size(); ++i) o << (i ? ", " : "") << estimates[i].label();
  o << "\n"
    << "count = " << ensemble_count << "\n"
    << "nt = " << ensemble_nt << "\n"
    << "delta = " << fmt(ensemble_delta) << "\n"
    << "length = " << fmt(ensemble_length) << "\n"
    << "n = " << ensemble_n << "\n"
    << "xi_cap = " << fmt(xi_cap) << "\n"
    << "theta = " << fmt(theta) << "\n";
  return o.str();
}

void CampaignConfig::validate() const {
  if (!(length > 0.0)) semantic("grid.length", "required and must be positive");
  if (n < 8 || n % 2 != 0) semantic("grid.n", "required, even and at least 8");
  if (k < 2) semantic("model.k", "k = " + std::to_string(k) + " violates the hypothesis k >= 2");
  if (!(std::abs(beta) < 2.0))
    semantic("model.beta", "|beta| < 2 is required for a real dispersion relation");
  for (double s : s_list)
    if (!(s <= 2.0)) semantic("model.s", "s = " + fmt(s) + " exceeds 2");
  for (double N : N_list)
    if (!(N >= 1.0)) semantic("model.N", "cutoff N = " + fmt(N) + " below 1");
  if (!(width > 0.0)) semantic("data.width", "must be positive");
  if (!(decay > 0.5)) semantic("data.decay", "must exceed 1/2 for a square-summable spectrum");
  if (!(T > 0.0)) semantic("run.T", "must be positive");
  if (!(dt >= 0.0)) semantic("run.dt", "must be >= 0 (0 selects the default)");
  if (snapshot_every < 1) semantic("run.snapshot_every", "must be >= 1");
  if (fixed_delta && !(*fixed_delta > 0.0)) semantic("run.delta", "must be positive or 'lwp'");
  if (!(lwp_constant > 0.0)) semantic("run.lwp_constant", "must be positive");
  if (!(epsilon > 0.0 && epsilon < 0.5)) semantic("run.epsilon", "must lie in (0, 1/2)");
  if (!(energy_tolerance > 0.0)) semantic("experiment.energy_tolerance", "must be positive");
  if (!(calibration_fraction > 0.0 && calibration_fraction <= 1.0))
    semantic("experiment.calibration_fraction", "must lie in (0, 1]");

  if (kind == ExperimentKind::kGrowthCheck) {
    const SRange r = admissible_s_range(k);
    for (double s : s_list)
      if (!(s > r.lower && s <= 2.0))
        semantic("model.s", "growth-check needs " + fmt(r.lower) + " < s <= 2 for k = " +
                                std::to_string(k) + ", got s = " + fmt(s));
    if (sign != Nonlinearity::kDefocusing)
      semantic("model.sign", "growth-check applies to the defocusing equation only");
  }
  if (kind == ExperimentKind::kAlmostConservationScan && !N_list.empty()) {
    if (N_list.size() < 4) semantic("model.N", "almost-conservation-scan needs at least 4 cutoffs");
    for (std::size_t i = 1; i < N_list.size(); ++i)
      if (!(N_list[i] > N_list[i - 1])) semantic("model.N", "cutoffs must increase strictly");
  }
  if (kind == ExperimentKind::kEstimateSuite) {
    if (ensemble_count < 1) semantic("estimates.count", "must be >= 1");
    if (ensemble_nt < 8 || ensemble_nt % 4 != 0) semantic("estimates.nt", "must be a multiple of 4, at least 8");
    if (ensemble_n < 8 || ensemble_n % 2 != 0) semantic("estimates.n", "must be even and at least 8");
    if (!(ensemble_delta > 0.0)) semantic("estimates.delta", "must be positive");
    if (!(ensemble_length >= 0.0)) semantic("estimates.length", "must be >= 0 (0 selects 8 pi)");
    if (!(xi_cap > 0.0)) semantic("estimates.xi_cap", "must be positive");
    if (!(theta > 0.5)) semantic("estimates.theta", "must exceed 1/2");
    for (const auto& e : estimates) {
      if (e.id == "w-Str") {
        const double l = (e.p >= kInf ? 0.0 : 3.0 / e.p) + (e.q >= kInf ? 0.0 : 1.0 / e.q);
        if (!(e.q >= 2.0 && e.p >= 1.0 && l >= 0.5 - 1e-12))
          semantic("estimates.ids", e.label() + " violates q >= 2, p >= 1, 3/p + 1/q >= 1/2");
      }
      if (e.id == "prod-xst" && !(e.s >= 0.5 - 2.0 / (2.0 * k + 1.0) - 1e-12))
        semantic("estimates.ids", e.label() + " needs s >= 1/2 - 2/(2k+1)");
    }
  }
}

CampaignConfig parse_config(const std::string& text, const std::string& origin) {
  CampaignConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  std::size_t lineno = 0;
  bool have_length = false, have_n = false;
  std::map<std::string, std::size_t> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    auto body = line.substr(0, line.find_first_of("#;"));
    body = trim(body);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') fail(ErrorCode::kConfigParse, where + ": unterminated section header");
      section = lower(trim(body.substr(1, body.size() - 2)));
      static const char* known[] = {"grid", "model", "data", "run", "experiment", "estimates"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known))
        fail(ErrorCode::kConfigParse, where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(ErrorCode::kConfigParse, where + ": expected key = value");
    if (section.empty()) fail(ErrorCode::kConfigParse, where + ": key outside any section");
    const std::string key = section + "." + lower(trim(body.substr(0, eq)));
    const std::string value = trim(body.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) fail(ErrorCode::kConfigParse, where + ": unknown key '" + key + "'");
    if (auto s = seen.find(key); s != seen.end())
      fail(ErrorCode::kConfigParse, where + ": duplicate key '" + key + "' (first on line " +
                                        std::to_string(s->second) + ")");
    seen[key] = lineno;
    it->second(cfg, value, where + " (" + key + ")");
    have_length = have_length || key == "grid.length";
    have_n = have_n || key == "grid.n";
  }
  if (!have_length) fail(ErrorCode::kConfigSemantic, "grid.length: required");
  if (!have_n) fail(ErrorCode::kConfigSemantic, "grid.n: required");
  cfg.validate();
  return cfg;
}

CampaignConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::kIo, "cannot read config '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path.string());
}

}  // namespace sixbq
