#include <stdio.h>
#include <string.h>

#include "ckr.h"

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      const char *err = ckr_last_error_message();                     \
      fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond,           \
              err ? err : "no error message");                        \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  CkrDataset *d = NULL;
  EXPECT(ckr_dataset_propagation(5, 2, 4, false, &d) == CKR_STATUS_OK);

  CkrClosure *c = NULL;
  EXPECT(ckr_closure_compute(d, "ckr-owl-local", 60000, &c) == CKR_STATUS_OK);
  EXPECT(ckr_closure_inferred_count(c) >= 5 * 2 * 4);

  bool holds = false;
  EXPECT(ckr_closure_entails(c, ":c0", ":x_1_0 a :D1", &holds) == CKR_STATUS_OK);
  EXPECT(holds);

  char *trig = NULL;
  EXPECT(ckr_closure_to_trig(c, &trig) == CKR_STATUS_OK);
  EXPECT(strstr(trig, "c0-inf") != NULL);
  ckr_string_free(trig);

  CkrClosure *bad = NULL;
  EXPECT(ckr_closure_compute(d, "nope", 1000, &bad) == CKR_STATUS_UNKNOWN_REGIME);
  EXPECT(bad == NULL && ckr_last_error_message() != NULL);

  ckr_closure_free(c);
  ckr_dataset_free(d);
  printf("ok %s\n", ckr_version());
  return 0;
}
