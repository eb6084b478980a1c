#ifndef SCSORT_H
#define SCSORT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ScEventKind {
  SC_EVENT_KIND_PUSH = 0,
  SC_EVENT_KIND_SIGMA_POP = 1,
  SC_EVENT_KIND_DRAIN_POP = 2,
} ScEventKind;

typedef enum ScStatus {
  SC_STATUS_OK = 0,
  SC_STATUS_NULL_POINTER = 1,
  SC_STATUS_INVALID_INPUT = 2,
  SC_STATUS_RESOURCE_LIMIT = 3,
  SC_STATUS_BUFFER_TOO_SMALL = 4,
  SC_STATUS_OUT_OF_RANGE = 5,
  SC_STATUS_PANIC = 99,
} ScStatus;

// Opaque permutation handle.
typedef struct ScPermutation ScPermutation;

// Opaque sorted list of permutations.
typedef struct ScPermutationList ScPermutationList;

// Opaque fertility table over all of `S_n`.
typedef struct ScSpectrum ScSpectrum;

// Opaque machine trace.
typedef struct ScTrace ScTrace;

typedef struct ScEvent {
  enum ScEventKind kind;
  uint32_t value;
  uintptr_t step;
} ScEvent;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until
// the next call into this library on the same thread.
const char *sc_last_error_message(void);

void sc_string_free(char *s);

// Parses the text format: compact digits (`"52413"`) or entries separated
// by spaces or commas (`"10 3 1 2 4 5 6 7 8 9"`).
enum ScStatus sc_perm_parse(const char *text, struct ScPermutation **out);

enum ScStatus sc_perm_from_entries(const uint32_t *entries,
                                   uintptr_t len,
                                   struct ScPermutation **out);

// Length of the permutation, or 0 for a null handle.
uintptr_t sc_perm_len(const struct ScPermutation *perm);

// Copies the entries into `buf`, which must hold at least
// `sc_perm_len(perm)` values.
enum ScStatus sc_perm_entries(const struct ScPermutation *perm, uint32_t *buf, uintptr_t capacity);

// Text form of the permutation; free with [`sc_string_free`]. Null on a
// null handle.
char *sc_perm_to_string(const struct ScPermutation *perm);

void sc_perm_free(struct ScPermutation *perm);

enum ScStatus sc_map(uint32_t sigma, const struct ScPermutation *tau, struct ScPermutation **out);

enum ScStatus sc_cro(uint32_t sigma, const struct ScPermutation *tau, uintptr_t *out);

enum ScStatus sc_trace_new(uint32_t sigma, const struct ScPermutation *tau, struct ScTrace **out);

uintptr_t sc_trace_event_count(const struct ScTrace *trace);

enum ScStatus sc_trace_event(const struct ScTrace *trace, uintptr_t index, struct ScEvent *out);

// Number of pattern pops in the trace; 0 for a null handle.
uintptr_t sc_trace_cro(const struct ScTrace *trace);

// `PUSH v` / `POP_SIGMA v` / `POP_DRAIN v` lines, then `OUTPUT` and `CRO`.
char *sc_trace_to_string(const struct ScTrace *trace);

void sc_trace_free(struct ScTrace *trace);

enum ScStatus sc_fertility(uint32_t sigma,
                           const struct ScPermutation *pi,
                           bool prune,
                           bool force,
                           uint64_t *out);

enum ScStatus sc_preimages(uint32_t sigma,
                           const struct ScPermutation *pi,
                           bool prune,
                           bool force,
                           struct ScPermutationList **out);

uintptr_t sc_list_len(const struct ScPermutationList *list);

// Borrowed element; valid while the list lives. Null when out of range.
const struct ScPermutation *sc_list_get(const struct ScPermutationList *list, uintptr_t index);

void sc_list_free(struct ScPermutationList *list);

enum ScStatus sc_construct(uint32_t sigma, uintptr_t n, struct ScPermutation **out);

enum ScStatus sc_construct_preimages(uint32_t sigma, uintptr_t n, struct ScPermutationList **out);

enum ScStatus sc_small_witness(uint32_t sigma, uintptr_t fertility, struct ScPermutation **out);

enum ScStatus sc_spectrum_new(uint32_t sigma, uintptr_t n, bool force, struct ScSpectrum **out);

enum ScStatus sc_spectrum_fertility_of(const struct ScSpectrum *table,
                                       const struct ScPermutation *pi,
                                       uint64_t *out);

// Number of distinct fertility values in the histogram.
uintptr_t sc_spectrum_histogram_len(const struct ScSpectrum *table);

// The `index`-th histogram row in ascending fertility order.
enum ScStatus sc_spectrum_histogram_entry(const struct ScSpectrum *table,
                                          uintptr_t index,
                                          uint64_t *fertility,
                                          uint64_t *count);

// `{sigma, n, counts, histogram}` JSON; free with [`sc_string_free`].
char *sc_spectrum_to_json(const struct ScSpectrum *table);

// `permutation,fertility` CSV; free with [`sc_string_free`].
char *sc_spectrum_counts_csv(const struct ScSpectrum *table);

// `fertility,count` CSV; free with [`sc_string_free`].
char *sc_spectrum_histogram_csv(const struct ScSpectrum *table);

void sc_spectrum_free(struct ScSpectrum *table);

// Runs the selected claims (`"all"` or comma-separated identifiers).
// Writes the JSON report to `report_json` (free with [`sc_string_free`])
// and whether every claim passed to `all_passed`.
enum ScStatus sc_verify(uintptr_t max_n, const char *claims, char **report_json, bool *all_passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCSORT_H */
