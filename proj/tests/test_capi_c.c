/* The public header must work from plain C. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "beamlab.h"

static int failures = 0;

#define C_CHECK(cond)                                            \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "FAILED: %s (line %d)\n", #cond, __LINE__); \
      ++failures;                                                \
    }                                                            \
  } while (0)

int main(void) {
  double tau = 0.0;
  C_CHECK(blab_version() != NULL);
  C_CHECK(blab_tau(1.0, &tau) == BLAB_OK);
  C_CHECK(fabs(tau - 2.0) < 1e-12);
  C_CHECK(blab_tau(6.0, &tau) == BLAB_ERR_ARGUMENT);
  C_CHECK(strlen(blab_last_error()) > 0);

  {
    blab_config* cfg = NULL;
    char msg[128];
    C_CHECK(blab_config_create(&cfg) == BLAB_OK);
    C_CHECK(blab_config_set(cfg, "alpha", "0.5") == BLAB_OK);
    C_CHECK(blab_config_validate(cfg, msg, sizeof msg) == 0);
    C_CHECK(blab_config_set(cfg, "dt", "100") == BLAB_OK);
    C_CHECK(blab_config_validate(cfg, msg, sizeof msg) == 1);
    blab_config_free(cfg);
  }

  {
    double k = 0.0;
    C_CHECK(blab_hardy_constant(0.0, 1.0, 1.0, &k) == BLAB_OK);
    C_CHECK(fabs(k - 2.0 / 27.0) < 1e-7);
  }

  if (failures == 0) printf("c api smoke test passed\n");
  return failures == 0 ? 0 : 1;
}
