#include "sixbq/sixbq.h"

#include <cstring>
#include <new>
#include <string>

#include "sixbq/almost_conservation.hpp"
#include "sixbq/campaign.hpp"
#include "sixbq/energy.hpp"
#include "sixbq/error.hpp"
#include "sixbq/evolution.hpp"
#include "sixbq/imethod.hpp"
#include "sixbq/linear.hpp"

struct sixbq_grid {
  sixbq::Grid grid;
};
struct sixbq_state {
  sixbq::State state;
};
struct sixbq_trajectory {
  sixbq::Trajectory traj;
};
struct sixbq_config {
  sixbq::CampaignConfig cfg;
  std::string canonical;
};
struct sixbq_campaign {
  std::vector<sixbq::RunRecord> records;
  std::filesystem::path root;
};

namespace {

thread_local std::string g_last_error;

template <class F>
sixbq_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return SIXBQ_OK;
  } catch (const sixbq::Error& e) {
    g_last_error = e.what();
    return static_cast<sixbq_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown exception";
  }
  return SIXBQ_INTERNAL;
}

void need(const void* p, const char* what) {
  if (!p) sixbq::fail(sixbq::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

sixbq::ModelParams to_params(const sixbq_params* p) {
  need(p, "params");
  if (p->sign != 1 && p->sign != -1)
    sixbq::fail(sixbq::ErrorCode::kInvalidArgument, "params.sign must be +1 or -1");
  sixbq::ModelParams m;
  m.beta = p->beta;
  m.k = p->k;
  m.sign = p->sign > 0 ? sixbq::Nonlinearity::kDefocusing : sixbq::Nonlinearity::kFocusing;
  m.s = p->s;
  m.N = p->N;
  m.validate();
  return m;
}

const sixbq::RunRecord& record(const sixbq_campaign* c, size_t i) {
  need(c, "campaign");
  if (i >= c->records.size()) sixbq::fail(sixbq::ErrorCode::kInvalidArgument, "run index out of range");
  return c->records[i];
}

}  // namespace

extern "C" {

const char* sixbq_version(void) { return sixbq::code_version(); }

const char* sixbq_last_error(void) { return g_last_error.c_str(); }

const char* sixbq_status_name(sixbq_status s) {
  switch (s) {
    case SIXBQ_OK: return "ok";
    case SIXBQ_INVALID_ARGUMENT: return "invalid_argument";
    case SIXBQ_GRID_MISMATCH: return "grid_mismatch";
    case SIXBQ_NON_FINITE: return "non_finite";
    case SIXBQ_INVALID_BETA: return "invalid_beta";
    case SIXBQ_ZERO_MODE_VIOLATION: return "zero_mode_violation";
    case SIXBQ_DIVERGENCE: return "divergence";
    case SIXBQ_EMPTY_TRAJECTORY: return "empty_trajectory";
    case SIXBQ_GRID_TOO_LARGE: return "grid_too_large";
    case SIXBQ_UNDERSAMPLED: return "undersampled";
    case SIXBQ_CONFIG_PARSE: return "config_parse";
    case SIXBQ_CONFIG_SEMANTIC: return "config_semantic";
    case SIXBQ_IO: return "io";
    case SIXBQ_FIT_FAILURE: return "fit_failure";
    case SIXBQ_INTERNAL: return "internal";
  }
  return "unknown";
}

sixbq_params sixbq_default_params(void) { return sixbq_params{1.0, 2, 1, 2.0, 1.0}; }

sixbq_status sixbq_grid_create(double length, size_t n, sixbq_grid** out) {
  return guarded([&] {
    need(out, "out");
    *out = new sixbq_grid{sixbq::Grid(length, n)};
  });
}

void sixbq_grid_destroy(sixbq_grid* grid) { delete grid; }

size_t sixbq_grid_size(const sixbq_grid* grid) { return grid ? grid->grid.size() : 0; }

double sixbq_grid_length(const sixbq_grid* grid) { return grid ? grid->grid.length() : 0.0; }

sixbq_status sixbq_grid_points(const sixbq_grid* grid, double* out, size_t n) {
  return guarded([&] {
    need(grid, "grid");
    need(out, "out");
    if (n != grid->grid.size()) sixbq::fail(sixbq::ErrorCode::kGridMismatch, "buffer size differs from grid size");
    const auto xs = grid->grid.points();
    std::copy(xs.begin(), xs.end(), out);
  });
}

sixbq_status sixbq_state_create(const sixbq_grid* grid, const double* g, const double* h, size_t n,
                                sixbq_state** out) {
  return guarded([&] {
    need(grid, "grid");
    need(g, "g");
    need(h, "h");
    need(out, "out");
    if (n != grid->grid.size()) sixbq::fail(sixbq::ErrorCode::kGridMismatch, "sample count differs from grid size");
    sixbq::RealField gf(grid->grid, std::vector<double>(g, g + n));
    sixbq::RealField hf(grid->grid, std::vector<double>(h, h + n));
    *out = new sixbq_state{sixbq::build_state(gf, hf)};
  });
}

void sixbq_state_destroy(sixbq_state* state) { delete state; }

double sixbq_state_time(const sixbq_state* state) { return state ? state->state.t : 0.0; }

sixbq_status sixbq_state_samples(const sixbq_state* state, double* out, size_t n) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    if (n != state->state.grid().size()) sixbq::fail(sixbq::ErrorCode::kGridMismatch, "buffer size differs from grid size");
    const auto f = sixbq::from_spectral(state->state.u);
    std::copy(f.samples.begin(), f.samples.end(), out);
  });
}

sixbq_status sixbq_state_energy(const sixbq_state* state, const sixbq_params* params, double out[6]) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    const auto e = sixbq::energy(state->state, to_params(params));
    const double v[6] = {e.uxx_term, e.ux_term, e.u_term, e.kinetic_term, e.potential_term, e.total};
    std::memcpy(out, v, sizeof v);
  });
}

sixbq_status sixbq_propagate_linear(const sixbq_state* state, double beta, double dt, sixbq_state** out) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    const sixbq::Dispersion disp(state->state.grid(), beta);
    *out = new sixbq_state{sixbq::propagate_linear(state->state, dt, disp)};
  });
}

sixbq_status sixbq_simulate(const sixbq_state* initial, const sixbq_params* params, double T, double dt,
                            size_t snapshot_every, sixbq_trajectory** out) {
  return guarded([&] {
    need(initial, "initial");
    need(out, "out");
    sixbq::SimulationOptions o;
    o.T = T;
    o.dt = dt;
    o.snapshot_every = snapshot_every;
    *out = new sixbq_trajectory{sixbq::simulate(initial->state, to_params(params), o)};
  });
}

void sixbq_trajectory_destroy(sixbq_trajectory* traj) { delete traj; }

size_t sixbq_trajectory_length(const sixbq_trajectory* traj) {
  return traj ? traj->traj.snapshots.size() : 0;
}

const char* sixbq_trajectory_status(const sixbq_trajectory* traj) {
  return traj ? sixbq::to_string(traj->traj.status) : "";
}

sixbq_status sixbq_trajectory_row(const sixbq_trajectory* traj, size_t i, double out[SIXBQ_SNAPSHOT_COLUMNS]) {
  return guarded([&] {
    need(traj, "trajectory");
    need(out, "out");
    if (i >= traj->traj.snapshots.size()) sixbq::fail(sixbq::ErrorCode::kInvalidArgument, "snapshot index out of range");
    const auto& s = traj->traj.snapshots[i];
    const double v[SIXBQ_SNAPSHOT_COLUMNS] = {
        s.t(), s.energy.total, s.energy.uxx_term, s.energy.ux_term, s.energy.u_term, s.energy.kinetic_term,
        s.energy.potential_term, s.modified.total, s.hs_norm_sq, s.theorem_quantity, s.linf};
    std::memcpy(out, v, sizeof v);
  });
}

sixbq_status sixbq_trajectory_state(const sixbq_trajectory* traj, size_t i, sixbq_state** out) {
  return guarded([&] {
    need(traj, "trajectory");
    need(out, "out");
    if (i >= traj->traj.snapshots.size()) sixbq::fail(sixbq::ErrorCode::kInvalidArgument, "snapshot index out of range");
    *out = new sixbq_state{traj->traj.snapshots[i].state};
  });
}

sixbq_status sixbq_increment_direct(const sixbq_trajectory* traj, double* out) {
  return guarded([&] {
    need(traj, "trajectory");
    need(out, "out");
    const auto& t = traj->traj;
    *out = sixbq::increment_direct(t, t.params, sixbq::IMultiplier(t.grid, t.params.s, t.params.N));
  });
}

sixbq_status sixbq_increment_oracle(const sixbq_trajectory* traj, double* out) {
  return guarded([&] {
    need(traj, "trajectory");
    need(out, "out");
    const auto& t = traj->traj;
    *out = sixbq::increment_oracle(t, t.params, sixbq::IMultiplier(t.grid, t.params.s, t.params.N));
  });
}

sixbq_status sixbq_admissible_s_range(int k, double* lower, double* upper) {
  return guarded([&] {
    need(lower, "lower");
    need(upper, "upper");
    const auto r = sixbq::admissible_s_range(k);
    *lower = r.lower;
    *upper = r.upper;
  });
}

sixbq_status sixbq_growth_exponent(int k, double s, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = sixbq::growth_exponent(k, s);
  });
}

double sixbq_m_multiplier(double x) { return sixbq::m_multiplier(x); }

sixbq_status sixbq_config_load(const char* path, sixbq_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto cfg = sixbq::load_config(path);
    *out = new sixbq_config{cfg, cfg.canonical()};
  });
}

sixbq_status sixbq_config_parse(const char* text, sixbq_config** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    auto cfg = sixbq::parse_config(text);
    *out = new sixbq_config{cfg, cfg.canonical()};
  });
}

void sixbq_config_destroy(sixbq_config* cfg) { delete cfg; }

sixbq_status sixbq_config_set_kind(sixbq_config* cfg, const char* kind) {
  return guarded([&] {
    need(cfg, "config");
    need(kind, "kind");
    sixbq::CampaignConfig c = cfg->cfg;
    c.kind = sixbq::parse_experiment_kind(kind);
    c.validate();
    cfg->cfg = c;
    cfg->canonical = c.canonical();
  });
}

const char* sixbq_config_kind(const sixbq_config* cfg) { return cfg ? sixbq::to_string(cfg->cfg.kind) : ""; }

const char* sixbq_config_canonical(const sixbq_config* cfg) { return cfg ? cfg->canonical.c_str() : ""; }

sixbq_status sixbq_campaign_run(const sixbq_config* cfg, const char* output_root, const uint64_t* seed,
                                size_t workers, int quiet, sixbq_campaign** out) {
  return guarded([&] {
    need(cfg, "config");
    need(out, "out");
    sixbq::CampaignOptions o;
    if (output_root) o.output_root = output_root;
    if (seed) o.seed = *seed;
    o.workers = workers;
    o.quiet = quiet != 0;
    sixbq::CampaignConfig c = cfg->cfg;
    if (o.seed) c.seed = *o.seed;
    auto root = sixbq::resolve_output_root(c, o);
    o.output_root = root;
    *out = new sixbq_campaign{sixbq::run_campaign(c, o), root};
  });
}

sixbq_status sixbq_campaign_load(const char* output_root, sixbq_campaign** out) {
  return guarded([&] {
    need(output_root, "output_root");
    need(out, "out");
    *out = new sixbq_campaign{sixbq::load_records(output_root), output_root};
  });
}

void sixbq_campaign_destroy(sixbq_campaign* c) { delete c; }

size_t sixbq_campaign_run_count(const sixbq_campaign* c) { return c ? c->records.size() : 0; }

const char* sixbq_campaign_run_label(const sixbq_campaign* c, size_t i) {
  return c && i < c->records.size() ? c->records[i].label.c_str() : "";
}

const char* sixbq_campaign_run_hash(const sixbq_campaign* c, size_t i) {
  return c && i < c->records.size() ? c->records[i].hash.c_str() : "";
}

const char* sixbq_campaign_run_status(const sixbq_campaign* c, size_t i) {
  return c && i < c->records.size() ? c->records[i].status.c_str() : "";
}

int sixbq_campaign_run_passed(const sixbq_campaign* c, size_t i) {
  return c && i < c->records.size() && c->records[i].pass ? 1 : 0;
}

sixbq_status sixbq_campaign_run_summary(const sixbq_campaign* c, size_t i, const char* key, double* out) {
  return guarded([&] {
    need(key, "key");
    need(out, "out");
    const auto& r = record(c, i);
    const auto it = r.summary.find(key);
    if (it == r.summary.end())
      sixbq::fail(sixbq::ErrorCode::kInvalidArgument, std::string("no summary value '") + key + "'");
    *out = it->second;
  });
}

sixbq_status sixbq_campaign_report(const sixbq_campaign* c, const char* output_root, int* all_pass) {
  return guarded([&] {
    need(c, "campaign");
    need(all_pass, "all_pass");
    *all_pass = sixbq::emit_report(c->records, output_root ? std::filesystem::path(output_root) : c->root) ? 1 : 0;
  });
}

}  // extern "C"
