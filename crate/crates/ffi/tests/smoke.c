#include <stdio.h>
#include <string.h>

#include "treeset.h"

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond, ts_last_error()); \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  TsFactorSet *set = NULL;
  CHECK(ts_factor_set_from_preset("fibonacci", 10, &set) == TS_STATUS_OK);
  size_t p = 0;
  CHECK(ts_factor_set_complexity(set, 9, &p) == TS_STATUS_OK && p == 10);
  bool tree = false;
  CHECK(ts_factor_set_is_tree(set, 8, &tree) == TS_STATUS_OK && tree);
  char *json = NULL;
  CHECK(ts_return_words_json(set, "aba", &json) == TS_STATUS_OK);
  CHECK(strstr(json, "\"word\":\"aba\"") != NULL);
  ts_string_free(json);
  ts_factor_set_free(set);

  CHECK(ts_factor_set_from_preset("none", 4, &set) == TS_STATUS_PARSE);
  CHECK(strlen(ts_last_error()) > 0);

  size_t index = 0;
  CHECK(ts_fg_index("aa,ab,ba", NULL, &index) == TS_STATUS_OK && index == 2);
  CHECK(ts_tame_decompose_json("ba,cba,cca", NULL, &json) == TS_STATUS_OK);
  ts_string_free(json);
  printf("ok %s\n", ts_version());
  return 0;
}
