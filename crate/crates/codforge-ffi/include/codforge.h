/* C interface for the codforge orthogonal-design library. */

#ifndef CODFORGE_H
#define CODFORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Serialization formats accepted by `codforge_matrix_render`.
 */
typedef enum CodforgeFormat {
  /**
   * One row per line, entries like `-z2*` separated by spaces.
   */
  CODFORGE_FORMAT_TEXT = 0,
  /**
   * Self-describing JSON object (also accepted by the parser).
   */
  CODFORGE_FORMAT_JSON = 1,
  /**
   * One row per line, comma-separated entries.
   */
  CODFORGE_FORMAT_CSV = 2,
  /**
   * LaTeX `pmatrix` body.
   */
  CODFORGE_FORMAT_LATEX = 3,
} CodforgeFormat;

/**
 * Result of every call. Values other than OK leave out-parameters
 * unwritten; the error text is available from
 * `codforge_last_error_message`.
 */
typedef enum CodforgeStatus {
  /**
   * Success.
   */
  CODFORGE_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  CODFORGE_STATUS_NULL_POINTER = 1,
  /**
   * An argument was outside the documented domain.
   */
  CODFORGE_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Malformed matrix text.
   */
  CODFORGE_STATUS_PARSE_ERROR = 3,
  /**
   * The matrix fails the orthogonality identity.
   */
  CODFORGE_STATUS_NOT_A_COD = 4,
  /**
   * No atomic class matches the design's parameters.
   */
  CODFORGE_STATUS_UNCLASSIFIABLE = 5,
  /**
   * Canonicalization could not reach the canonical form.
   */
  CODFORGE_STATUS_NOT_EQUIVALENT = 6,
  /**
   * The operation is not defined for this input.
   */
  CODFORGE_STATUS_UNSUPPORTED = 7,
  /**
   * A built-in size cap was exceeded.
   */
  CODFORGE_STATUS_RESOURCE_LIMIT = 8,
  /**
   * An unexpected internal failure (caught panic).
   */
  CODFORGE_STATUS_INTERNAL = 9,
} CodforgeStatus;

/**
 * Opaque handle to an immutable design matrix.
 */
typedef struct CodforgeMatrix CodforgeMatrix;

/**
 * Opaque handle to a decomposition into atomic parts.
 */
typedef struct CodforgeParts CodforgeParts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the most recent error message on this thread (empty string if
 * none) into a caller-owned string.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_last_error_message(char **out);

/**
 * Releases a string returned by this library. NULL is ignored.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
void codforge_string_free(char *s);

/**
 * Releases a matrix handle. NULL is ignored.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
void codforge_matrix_free(struct CodforgeMatrix *m);

/**
 * Releases a parts handle. NULL is ignored.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
void codforge_parts_free(struct CodforgeParts *parts);

/**
 * Builds the full basic design on `n` columns: [2^(n+1), n, 2^n].
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_gen_g(size_t n, struct CodforgeMatrix **out);

/**
 * Builds the weight-`w` basic slice on `n` columns, −1 ≤ w ≤ n+1:
 * [C(n,w−1)+C(n,w+1), n, C(n,w)].
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_gen_gw(size_t n, int64_t w, struct CodforgeMatrix **out);

/**
 * Builds the full padded design on `n` columns (n ≡ 0 mod 4):
 * [2^n, n, 2^(n−1)].
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_gen_h(size_t n, struct CodforgeMatrix **out);

/**
 * Builds the middle padded slice on `n` columns (n ≡ 0 mod 4):
 * [C(n,n/2+1), n, C(n−1,n/2)].
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_gen_hm(size_t n, struct CodforgeMatrix **out);

/**
 * Parses a matrix from NUL-terminated text (text or JSON format,
 * auto-detected).
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_matrix_parse(const char *text, struct CodforgeMatrix **out);

/**
 * Serializes a matrix in the chosen format.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_matrix_render(const struct CodforgeMatrix *m,
                                           enum CodforgeFormat format,
                                           char **out);

/**
 * Number of rows (the decoding delay p).
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_matrix_rows(const struct CodforgeMatrix *m, size_t *out);

/**
 * Number of columns (antennas n).
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_matrix_cols(const struct CodforgeMatrix *m, size_t *out);

/**
 * Number of variables (symbols k).
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_matrix_vars(const struct CodforgeMatrix *m, size_t *out);

/**
 * Reads one cell. `row` and `col` are 1-based. A zero entry reports
 * id 0; a variable entry reports its 1-based id plus sign and
 * conjugation flags.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_matrix_entry(const struct CodforgeMatrix *m,
                                          size_t row,
                                          size_t col,
                                          uint32_t *out_id,
                                          bool *out_negative,
                                          bool *out_conjugated);

/**
 * Checks the orthogonality identity by exact symbolic expansion.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_matrix_is_cod(const struct CodforgeMatrix *m, bool *out);

/**
 * Checks the once-per-column occupancy discipline. Fails with
 * NOT_A_COD if the matrix is not orthogonal in the first place.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_matrix_is_first_type(const struct CodforgeMatrix *m, bool *out);

/**
 * True when no row mixes conjugated and unconjugated variables.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_matrix_is_conjugation_separated(const struct CodforgeMatrix *m,
                                                             bool *out);

/**
 * Tests equivalence of two first-type designs under the standard
 * operation group (row/column permutations, negations, conjugations,
 * variable renaming).
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_equivalent(const struct CodforgeMatrix *a,
                                        const struct CodforgeMatrix *b,
                                        bool *out);

/**
 * Applies `count` seeded random equivalence operations and returns the
 * scrambled matrix.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_scramble(const struct CodforgeMatrix *m,
                                      uint64_t seed,
                                      size_t count,
                                      struct CodforgeMatrix **out);

/**
 * Canonicalizes an atomic design. On success writes the canonical
 * matrix and, if `out_ops` is non-NULL, a comma-separated list of the
 * applied operations (empty string when none were needed).
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_canonicalize(const struct CodforgeMatrix *m,
                                          struct CodforgeMatrix **out,
                                          char **out_ops);

/**
 * Splits a design into its atomic parts (maximal variable-connected
 * row groups).
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_decompose(const struct CodforgeMatrix *m, struct CodforgeParts **out);

/**
 * Number of atomic parts in a decomposition.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_parts_len(const struct CodforgeParts *parts, size_t *out);

/**
 * Copies part `index` (0-based) out as a standalone matrix.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_parts_matrix(const struct CodforgeParts *parts,
                                          size_t index,
                                          struct CodforgeMatrix **out);

/**
 * Class label of part `index` (0-based): `G<w>`, `H`, or `?`.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_parts_class(const struct CodforgeParts *parts,
                                         size_t index,
                                         char **out);

/**
 * Computes the design's atomic signature as a JSON object
 * `{"n":…,"t":{…}}` (plus `"t_h"` when defined).
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_signature_json(const struct CodforgeMatrix *m, char **out);

/**
 * Enumerates the atomic multisets realizing delay `p`, `n` columns, and
 * `k` variables, as JSON `{"solutions":[…]}` (empty array when
 * infeasible).
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_feasible_json(uint64_t p, size_t n, uint64_t k, char **out);

/**
 * Maximum achievable rate for `n` columns, as a reduced fraction.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_max_rate(size_t n, uint64_t *out_num, uint64_t *out_den);

/**
 * Minimum decoding delay at the maximum rate for `n` columns.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_min_delay(size_t n, uint64_t *out);

/**
 * Rate/delay trade-off table for `n` columns as CSV with header
 * `w,p,k,rate_num,rate_den,rate_decimal`.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_tradeoff_csv(size_t n, char **out);

/**
 * Rate/delay trade-off table for `n` columns as a JSON array of row
 * objects.
 * # Safety
 * Pointers must satisfy the crate-level pointer contract (module docs).
 */
enum CodforgeStatus codforge_tradeoff_json(size_t n, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CODFORGE_H */
