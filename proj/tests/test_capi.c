/* Exercises the C interface from plain C, linked against the shared library only. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "sixbq/sixbq.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  const double pi = 3.14159265358979323846;
  sixbq_grid* g = NULL;
  sixbq_state* s = NULL;
  sixbq_state* moved = NULL;
  sixbq_trajectory* traj = NULL;
  double x[16], u[16], h[16], e[6], row[SIXBQ_SNAPSHOT_COLUMNS];
  double lo = 0, hi = 0, p = 0, inc = 0, orc = 0;
  size_t i;

  EXPECT(strlen(sixbq_version()) > 0);
  EXPECT(sixbq_grid_create(2 * pi, 7, &g) == SIXBQ_INVALID_ARGUMENT);
  EXPECT(strlen(sixbq_last_error()) > 0);
  EXPECT(strcmp(sixbq_status_name(SIXBQ_UNDERSAMPLED), "undersampled") == 0);

  EXPECT(sixbq_grid_create(2 * pi, 16, &g) == SIXBQ_OK);
  EXPECT(sixbq_grid_size(g) == 16);
  EXPECT(sixbq_grid_points(g, x, 16) == SIXBQ_OK);
  for (i = 0; i < 16; ++i) {
    u[i] = cos(x[i]);
    h[i] = 0.0;
  }
  EXPECT(sixbq_state_create(g, u, h, 16, &s) == SIXBQ_OK);
  sixbq_params prm = sixbq_default_params();
  EXPECT(sixbq_state_energy(s, &prm, e) == SIXBQ_OK);
  EXPECT(fabs(e[5] - 29 * pi / 48) < 1e-10);

  EXPECT(sixbq_propagate_linear(s, 1.0, 0.7, &moved) == SIXBQ_OK);
  EXPECT(sixbq_state_samples(moved, u, 16) == SIXBQ_OK);
  for (i = 0; i < 16; ++i) EXPECT(fabs(u[i] - cos(0.7) * cos(x[i])) < 1e-13);
  EXPECT(fabs(sixbq_state_time(moved) - 0.7) < 1e-15);

  prm.s = 1.8;
  prm.N = 2;
  EXPECT(sixbq_simulate(s, &prm, 0.05, 1e-3, 1, &traj) == SIXBQ_OK);
  EXPECT(sixbq_trajectory_length(traj) == 51);
  EXPECT(strcmp(sixbq_trajectory_status(traj), "completed") == 0);
  EXPECT(sixbq_trajectory_row(traj, 50, row) == SIXBQ_OK);
  EXPECT(fabs(row[0] - 0.05) < 1e-14);
  EXPECT(sixbq_trajectory_row(traj, 51, row) == SIXBQ_INVALID_ARGUMENT);
  EXPECT(sixbq_increment_direct(traj, &inc) == SIXBQ_OK);
  EXPECT(sixbq_increment_oracle(traj, &orc) == SIXBQ_OK);
  EXPECT(fabs(inc - orc) < 1e-6);

  EXPECT(sixbq_admissible_s_range(2, &lo, &hi) == SIXBQ_OK);
  EXPECT(fabs(lo - 5.0 / 3) < 1e-15 && hi == 2.0);
  EXPECT(sixbq_admissible_s_range(1, &lo, &hi) == SIXBQ_INVALID_ARGUMENT);
  EXPECT(sixbq_growth_exponent(2, 2.0, &p) == SIXBQ_OK && p == 0.0);
  EXPECT(sixbq_m_multiplier(4.0) == 0.25);

  sixbq_config* cfg = NULL;
  EXPECT(sixbq_config_parse("[grid]\nlength = 2pi\nn = 16\n[model]\nk = 1\n", &cfg) == SIXBQ_CONFIG_SEMANTIC);
  EXPECT(sixbq_config_parse("[grid]\nlength = 16pi\nn = 64\n[run]\nT = 0.5\n", &cfg) == SIXBQ_OK);
  EXPECT(strcmp(sixbq_config_kind(cfg), "simulate") == 0);
  EXPECT(sixbq_config_set_kind(cfg, "growth-check") == SIXBQ_OK);
  EXPECT(strcmp(sixbq_config_kind(cfg), "growth-check") == 0);
  /* a scan needs four cutoffs; the failed change leaves the config alone */
  EXPECT(sixbq_config_set_kind(cfg, "almost-conservation-scan") == SIXBQ_CONFIG_SEMANTIC);
  EXPECT(strcmp(sixbq_config_kind(cfg), "growth-check") == 0);
  EXPECT(sixbq_config_set_kind(cfg, "nonsense") != SIXBQ_OK);
  EXPECT(sixbq_config_set_kind(cfg, "simulate") == SIXBQ_OK);
  EXPECT(strstr(sixbq_config_canonical(cfg), "length") != NULL);

  sixbq_campaign* c = NULL;
  int all = 0;
  char root[] = "/tmp/sixbq_capi_XXXXXX";
  EXPECT(mkdtemp(root) != NULL);
  EXPECT(sixbq_campaign_run(cfg, root, NULL, 1, 1, &c) == SIXBQ_OK);
  EXPECT(sixbq_campaign_run_count(c) == 1);
  EXPECT(strlen(sixbq_campaign_run_hash(c, 0)) == 64);
  EXPECT(sixbq_campaign_run_passed(c, 0) == 1);
  EXPECT(sixbq_campaign_run_summary(c, 0, "energy_drift_rel", &p) == SIXBQ_OK && p < 1e-6);
  EXPECT(sixbq_campaign_run_summary(c, 0, "no_such_key", &p) == SIXBQ_INVALID_ARGUMENT);
  EXPECT(sixbq_campaign_report(c, NULL, &all) == SIXBQ_OK && all == 1);
  sixbq_campaign_destroy(c);
  c = NULL;
  EXPECT(sixbq_campaign_load(root, &c) == SIXBQ_OK);
  EXPECT(sixbq_campaign_run_count(c) == 1);

  sixbq_campaign_destroy(c);
  sixbq_config_destroy(cfg);
  sixbq_trajectory_destroy(traj);
  sixbq_state_destroy(moved);
  sixbq_state_destroy(s);
  sixbq_grid_destroy(g);
  sixbq_grid_destroy(NULL);

  {
    char cmd[128];
    snprintf(cmd, sizeof cmd, "rm -rf %s", root);
    if (system(cmd) != 0) ++failures;
  }
  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("C API: all checks passed\n");
  return failures ? 1 : 0;
}
