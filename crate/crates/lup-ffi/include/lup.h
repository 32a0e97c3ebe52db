#ifndef LUP_H
#define LUP_H

/* This file is generated by cbindgen from the lup-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a call into this library.
typedef enum LupStatus {
  // The call succeeded.
  LUP_STATUS_OK = 0,
  // A required pointer argument was null.
  LUP_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  LUP_STATUS_INVALID_UTF8 = 2,
  // Textual input (sequence file, family, algorithm or advice) did not
  // parse.
  LUP_STATUS_PARSE = 3,
  // The list is longer than the factorial-state limit of the exact
  // optimum.
  LUP_STATUS_CAPACITY = 4,
  // A binary payload (compressed stream) did not decode.
  LUP_STATUS_FORMAT = 5,
  // A numeric argument was outside its documented domain, or an
  // operation defined only for two-item lists was given another size.
  LUP_STATUS_DOMAIN = 6,
  // An invariant inside the library failed; not expected to be
  // reachable through this interface.
  LUP_STATUS_INTERNAL = 7,
} LupStatus;

// Whether an access to position `i` costs `i` (full) or `i - 1` (partial).
typedef enum LupCostModel {
  LUP_COST_MODEL_FULL = 0,
  LUP_COST_MODEL_PARTIAL = 1,
} LupCostModel;

// A request sequence together with its initial list and token names.
// Opaque: create with [`lup_sequence_parse`] or
// [`lup_sequence_from_family`], release with [`lup_sequence_free`].
typedef struct LupSequence LupSequence;

// Access cost and paid-exchange cost accumulated by a run. The total cost
// is the sum of the two fields.
typedef struct LupCost {
  uint64_t access;
  uint64_t paid_exchanges;
} LupCost;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on the calling thread, or
// null if the most recent fallible call succeeded. The pointer stays valid
// until the next call into this library on the same thread; do not free
// it.
const char *lup_last_error_message(void);

// Parses a sequence file: an optional `#list:` header naming the initial
// list followed by whitespace-separated request tokens. On success stores
// a new handle in `*out`.
//
// # Safety
//
// `text` must point to a NUL-terminated string and `out` must be a valid,
// writable pointer.
enum LupStatus lup_sequence_parse(const char *text, struct LupSequence **out);

// Generates one of the built-in request families from its compact form,
// e.g. `"alpha:3"`, `"beta:40,5"`, `"bitstring:0110"` or `"random:3,8,7"`.
// On success stores a new handle in `*out`.
//
// # Safety
//
// `family` must point to a NUL-terminated string and `out` must be a
// valid, writable pointer.
enum LupStatus lup_sequence_from_family(const char *family, struct LupSequence **out);

// Releases a sequence handle. Passing null is a no-op.
//
// # Safety
//
// `seq` must be null or a handle obtained from this library that has not
// been freed yet; it must not be used afterwards.
void lup_sequence_free(struct LupSequence *seq);

// Number of items in the sequence's initial list, or 0 if `seq` is null.
//
// # Safety
//
// `seq` must be null or a live handle obtained from this library.
size_t lup_sequence_items(const struct LupSequence *seq);

// Number of requests in the sequence, or 0 if `seq` is null.
//
// # Safety
//
// `seq` must be null or a live handle obtained from this library.
size_t lup_sequence_requests(const struct LupSequence *seq);

// Renders a sequence back to its file form. On success stores a
// NUL-terminated string in `*out`; release it with [`lup_string_free`].
//
// # Safety
//
// `seq` must be a live handle obtained from this library and `out` must
// be a valid, writable pointer.
enum LupStatus lup_sequence_render(const struct LupSequence *seq, char **out);

// Serves the whole sequence with an online algorithm and stores its cost
// in `*out`. Algorithm names: `"mtf"`, `"ts"`, `"mtfo"`, `"mtfe"`,
// `"mtf2:<bits>"` with one `0`/`1` per item, or `"bit:<seed>"`.
//
// # Safety
//
// `seq` must be a live handle obtained from this library, `algorithm`
// must point to a NUL-terminated string, and `out` must be a valid,
// writable pointer.
enum LupStatus lup_run(const struct LupSequence *seq,
                       const char *algorithm,
                       enum LupCostModel model,
                       struct LupCost *out);

// Exact optimal offline cost of the sequence, by dynamic programming over
// all permutations of the list. `max_items` caps the list length the
// search will accept; pass 0 for the built-in default of 6. Fails with
// [`LupStatus::Capacity`] when the list is longer than the cap.
//
// # Safety
//
// `seq` must be a live handle obtained from this library and `out` must
// be a valid, writable pointer.
enum LupStatus lup_opt_cost(const struct LupSequence *seq,
                            enum LupCostModel model,
                            size_t max_items,
                            uint64_t *out);

// Optimal offline cost of a two-item sequence, computed directly. Fails
// with [`LupStatus::Domain`] when the list does not hold exactly two
// items.
//
// # Safety
//
// `seq` must be a live handle obtained from this library and `out` must
// be a valid, writable pointer.
enum LupStatus lup_pair_opt_cost(const struct LupSequence *seq,
                                 enum LupCostModel model,
                                 uint64_t *out);

// Cost of the one-step-lookahead offline strategy, which moves the
// requested item to the front exactly when the next request repeats it.
//
// # Safety
//
// `seq` must be a live handle obtained from this library and `out` must
// be a valid, writable pointer.
enum LupStatus lup_strategy_cost(const struct LupSequence *seq,
                                 enum LupCostModel model,
                                 struct LupCost *out);

// Per-request advice lower bound: the minimum advice density (bits per
// request) below which no online algorithm can be `gamma`-competitive on
// two-item lists, evaluated for sequences of length `n`. Requires
// `1 < gamma < 15/14` and `n >= 1`; the result is in bits per request.
//
// # Safety
//
// `out` must be a valid, writable pointer.
enum LupStatus lup_advice_lower_bound(double gamma, uint64_t n, double *out);

// Compresses a byte string with a list-update compressor. Algorithm
// names: `"mtf"`, `"ts"`, `"mtfo"`, `"mtfe"`, or `"best3"` to pick the
// cheapest of `ts`/`mtfo`/`mtfe` and record the choice in the stream. On
// success stores a buffer in `*out_data`/`*out_len`; release it with
// [`lup_buffer_free`]. `out_payload_bits`, if non-null, receives the
// number of payload bits before byte padding, which equals the
// algorithm's full-model access cost on the text.
//
// # Safety
//
// `data` must point to `len` readable bytes (null is allowed when `len`
// is 0), `algorithm` must point to a NUL-terminated string, and
// `out_data`/`out_len` must be valid, writable pointers.
enum LupStatus lup_compress(const uint8_t *data,
                            size_t len,
                            const char *algorithm,
                            uint8_t **out_data,
                            size_t *out_len,
                            uint64_t *out_payload_bits);

// Decompresses a stream produced by [`lup_compress`]. On success stores
// the recovered text in `*out_data`/`*out_len`; release it with
// [`lup_buffer_free`].
//
// # Safety
//
// `data` must point to `len` readable bytes (null is allowed when `len`
// is 0) and `out_data`/`out_len` must be valid, writable pointers.
enum LupStatus lup_decompress(const uint8_t *data, size_t len, uint8_t **out_data, size_t *out_len);

// Releases a buffer returned through an out-pointer of this library.
// `len` must be the length that was stored next to the pointer. Passing
// null is a no-op.
//
// # Safety
//
// `data` must be null or a buffer obtained from this library that has
// not been freed yet, paired with its original length.
void lup_buffer_free(uint8_t *data, size_t len);

// Releases a string returned through an out-pointer of this library.
// Passing null is a no-op.
//
// # Safety
//
// `text` must be null or a string obtained from this library that has
// not been freed yet.
void lup_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LUP_H */
