#include <math.h>
#include <stdio.h>
#include <string.h>

#include "ratioci/ratioci.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  const double xs[] = {6.34, 4.02, 2.88};
  const double ys[] = {4.87, 8.30, 11.66};
  ratioci_sample* sample = NULL;
  EXPECT(ratioci_sample_create(xs, ys, 3, &sample) == RATIOCI_OK);
  EXPECT(ratioci_sample_size(sample) == 3);

  ratioci_ci_options opts;
  ratioci_ci_options_init(&opts);
  EXPECT(opts.level == 0.95);

  ratioci_interval iv;
  EXPECT(ratioci_compute(sample, RATIOCI_METHOD_FIELLER, &opts, &iv) == RATIOCI_OK);
  EXPECT(iv.set_case == RATIOCI_SET_BOUNDED);
  EXPECT(fabs(iv.lower + 0.02) < 0.01);
  EXPECT(iv.upper > 490 && iv.upper < 510);
  EXPECT(iv.has_diagnostics);

  EXPECT(ratioci_compute(sample, RATIOCI_METHOD_TAYLOR, &opts, &iv) == RATIOCI_OK);
  EXPECT(fabs(iv.upper - 5.64) < 0.02);

  ratioci_text* text = NULL;
  const ratioci_method methods[] = {RATIOCI_METHOD_FIELLER, RATIOCI_METHOD_INDEX};
  EXPECT(ratioci_ci_report(sample, methods, 2, &opts, RATIOCI_FORMAT_CSV, &text) == RATIOCI_OK);
  EXPECT(text != NULL && strstr(ratioci_text_data(text), "index,") != NULL);
  EXPECT(ratioci_text_size(text) == strlen(ratioci_text_data(text)));
  ratioci_text_destroy(text);

  ratioci_sample* bad = NULL;
  EXPECT(ratioci_sample_create(xs, ys, 1, &bad) == RATIOCI_ERR_TOO_FEW_OBSERVATIONS);
  EXPECT(bad == NULL);
  EXPECT(strlen(ratioci_last_error()) > 0);
  EXPECT(ratioci_status_is_input_error(RATIOCI_ERR_TOO_FEW_OBSERVATIONS));
  EXPECT(!ratioci_status_is_input_error(RATIOCI_ERR_ZERO_DENOMINATOR));
  EXPECT(ratioci_compute(NULL, RATIOCI_METHOD_FIELLER, &opts, &iv) == RATIOCI_ERR_INVALID_ARGUMENT);

  ratioci_method m;
  EXPECT(ratioci_method_from_name("hwang", &m) == RATIOCI_OK && m == RATIOCI_METHOD_HWANG);
  EXPECT(ratioci_method_from_name("nope", &m) != RATIOCI_OK);
  EXPECT(strcmp(ratioci_method_name(RATIOCI_METHOD_ZERO_VARIANCE), "zero-variance") == 0);

  double q = 0;
  EXPECT(ratioci_t_quantile(0.975, 2, &q) == RATIOCI_OK && fabs(q - 4.3027) < 5e-4);
  EXPECT(ratioci_t_quantile(1.5, 2, &q) == RATIOCI_ERR_DOMAIN);

  ratioci_sample_destroy(sample);
  ratioci_sample_destroy(NULL);
  ratioci_text_destroy(NULL);

  if (failures == 0) printf("capi smoke: ok\n");
  return failures == 0 ? 0 : 1;
}
