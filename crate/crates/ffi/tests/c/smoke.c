#include <stdio.h>
#include <string.h>

#include "macwilliams.h"

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      return 1;                                                      \
    }                                                                \
  } while (0)

int main(void) {
  mw_code *c1 = NULL, *c2 = NULL;
  CHECK(mw_code_named("C1", &c1) == MW_STATUS_OK);
  CHECK(mw_code_named("C2", &c2) == MW_STATUS_OK);
  CHECK(mw_code_size(c1) == 8 && mw_code_length(c1) == 6);

  const mw_code *pair[2] = {c1, c2};
  mw_poly *w = NULL;
  CHECK(mw_enumerate("hamming", pair, 2, &w) == MW_STATUS_OK);
  char *text = NULL;
  CHECK(mw_poly_render(w, &text) == MW_STATUS_OK);
  CHECK(strcmp(text, "X^6 + 3*X^4*Y^2 + 5*X^3*Y^3 + 6*X^2*Y^4 + 3*X*Y^5 + 14*Y^6") == 0);
  mw_string_free(text);

  CHECK(mw_verify("hamw", pair, 2, NULL) == MW_STATUS_OK);

  mw_code *bad = NULL;
  CHECK(mw_code_named("C9", &bad) == MW_STATUS_INVALID_INPUT);
  CHECK(bad == NULL && mw_last_error_message() != NULL);

  mw_poly_free(w);
  mw_code_free(c1);
  mw_code_free(c2);
  puts("ok");
  return 0;
}
