#ifndef CKR_H
#define CKR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum CkrStatus {
  CKR_STATUS_OK = 0,
  CKR_STATUS_NULL_ARGUMENT = 1,
  CKR_STATUS_INVALID_UTF8 = 2,
  CKR_STATUS_IO = 3,
  CKR_STATUS_PARSE = 4,
  CKR_STATUS_INVALID_REPOSITORY = 5,
  CKR_STATUS_UNKNOWN_REGIME = 6,
  CKR_STATUS_INVALID_ARGUMENT = 7,
  CKR_STATUS_TIMED_OUT = 8,
  CKR_STATUS_PANIC = 9,
} CkrStatus;

/*
 The materialized closure of a dataset under one regime.
 */
typedef struct CkrClosure CkrClosure;

/*
 A parsed dataset together with its repository structure.
 */
typedef struct CkrDataset CkrDataset;

/*
 Message of the last failed call on this thread, or null. The pointer stays
 valid until the next failing call on the same thread.
 */
const char *ckr_last_error_message(void);

/*
 Library version as a static nul-terminated string.
 */
const char *ckr_version(void);

/*
 Parses `len` bytes of TriG from `text`.

 # Safety
 `text` must point to `len` readable bytes and `out` must be writable.
 */
enum CkrStatus ckr_dataset_from_trig(const uint8_t *text, size_t len, struct CkrDataset **out);

/*
 Reads a TriG or Turtle file, chosen by extension.

 # Safety
 `path` must be a nul-terminated string and `out` must be writable.
 */
enum CkrStatus ckr_dataset_from_path(const char *path, struct CkrDataset **out);

/*
 Builds the propagation fixture with `n` contexts, `k` connections per
 context and `m` individuals. `replicated` selects the variant that copies
 facts instead of using eval axioms.

 # Safety
 `out` must be writable.
 */
enum CkrStatus ckr_dataset_propagation(size_t n,
                                       size_t k,
                                       size_t m,
                                       bool replicated,
                                       struct CkrDataset **out);

/*
 Number of quads in the dataset, or 0 for null.

 # Safety
 `dataset` must be null or a live handle.
 */
size_t ckr_dataset_quad_count(const struct CkrDataset *dataset);

/*
 Number of knowledge modules in the dataset, or 0 for null.

 # Safety
 `dataset` must be null or a live handle.
 */
size_t ckr_dataset_module_count(const struct CkrDataset *dataset);

/*
 # Safety
 `dataset` must be null or a handle not yet freed.
 */
void ckr_dataset_free(struct CkrDataset *dataset);

/*
 Materializes the closure of `dataset` under `regime` (one of
 `ckr-rdfs-global`, `ckr-rdfs-local`, `ckr-owl-global`, `ckr-owl-local`)
 within `timeout_ms`. Returns `TimedOut` without a handle when the budget
 runs out.

 # Safety
 `dataset` must be a live handle, `regime` a nul-terminated string and
 `out` writable.
 */
enum CkrStatus ckr_closure_compute(const struct CkrDataset *dataset,
                                   const char *regime,
                                   uint64_t timeout_ms,
                                   struct CkrClosure **out);

/*
 Facts added by the closure, or 0 for null.

 # Safety
 `closure` must be null or a live handle.
 */
size_t ckr_closure_inferred_count(const struct CkrClosure *closure);

/*
 Facts obtained from the asserted input, or 0 for null.

 # Safety
 `closure` must be null or a live handle.
 */
size_t ckr_closure_asserted_count(const struct CkrClosure *closure);

/*
 Quads that the closure adds to the inference graphs, or 0 for null.

 # Safety
 `closure` must be null or a live handle.
 */
size_t ckr_closure_inferred_quad_count(const struct CkrClosure *closure);

/*
 Wall time of the closure in milliseconds, or 0 for null.

 # Safety
 `closure` must be null or a live handle.
 */
double ckr_closure_millis(const struct CkrClosure *closure);

/*
 Number of contexts (including the global one) found inconsistent.

 # Safety
 `closure` must be null or a live handle.
 */
size_t ckr_closure_inconsistent_count(const struct CkrClosure *closure);

/*
 Writes the input dataset plus its inference graphs as TriG into a new
 string that the caller releases with [`ckr_string_free`].

 # Safety
 `closure` must be a live handle and `out` writable.
 */
enum CkrStatus ckr_closure_to_trig(const struct CkrClosure *closure, char **out);

/*
 Decides whether `assertion`, one Turtle triple such as `:x a :D1`, holds
 in `context`, given as `<iri>` or a prefixed name such as `:c0`.

 # Safety
 `closure` must be a live handle, `context` and `assertion` nul-terminated
 strings and `holds` writable.
 */
enum CkrStatus ckr_closure_entails(const struct CkrClosure *closure,
                                   const char *context,
                                   const char *assertion,
                                   bool *holds);

/*
 # Safety
 `closure` must be null or a handle not yet freed.
 */
void ckr_closure_free(struct CkrClosure *closure);

/*
 # Safety
 `s` must be null or a string returned by this library and not yet freed.
 */
void ckr_string_free(char *s);

#endif  /* CKR_H */
