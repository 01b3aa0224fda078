#include <stdio.h>
#include <string.h>

#include "tklwb.h"

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      return 1;                                                  \
    }                                                            \
  } while (0)

int main(void) {
  TklwbSystem *sys = NULL;
  char *out = NULL;
  char *plus = NULL;
  char *minus = NULL;

  CHECK(tklwb_system_new(3, "id", &sys) == TKLWB_STATUS_OK);
  CHECK(tklwb_kl(sys, "b", "aba", &out) == TKLWB_STATUS_OK);
  CHECK(strcmp(out, "1") == 0);
  tklwb_string_free(out);

  CHECK(tklwb_tkl(sys, "e", "abcba", &out) == TKLWB_STATUS_OK);
  CHECK(strcmp(out, "1+q") == 0);
  tklwb_string_free(out);

  CHECK(tklwb_pm(sys, "e", "a", &plus, &minus) == TKLWB_STATUS_OK);
  CHECK(strcmp(plus, "1") == 0 && strcmp(minus, "0") == 0);
  tklwb_string_free(plus);
  tklwb_string_free(minus);

  CHECK(tklwb_mult(sys, "a", "b", &out) == TKLWB_STATUS_OK);
  CHECK(strcmp(out, "aba\t1\na\t1\n") == 0);
  tklwb_string_free(out);

  CHECK(tklwb_tkl(sys, "e", "ab", &out) == TKLWB_STATUS_INVALID_ARGUMENT);
  CHECK(strlen(tklwb_last_error()) > 0);
  CHECK(tklwb_kl(NULL, "e", "a", &out) == TKLWB_STATUS_NULL_POINTER);

  tklwb_system_free(sys);
  puts("ok");
  return 0;
}
