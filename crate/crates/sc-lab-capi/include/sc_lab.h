/* C interface of the sc-lab state-complexity library. Generated by cbindgen. */

#ifndef SC_LAB_H
#define SC_LAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum ScStatus {
  SC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SC_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  SC_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed input text: DFA JSON, expression tree, connective name,
   * shape name, or role codes.
   */
  SC_STATUS_PARSE_ERROR = 3,
  /**
   * A structurally invalid automaton, or a state or letter out of range.
   */
  SC_STATUS_INVALID_AUTOMATON = 4,
  /**
   * Operands over different alphabets were combined.
   */
  SC_STATUS_ALPHABET_MISMATCH = 5,
  /**
   * Invalid witness sizes, role assignment, or bound query.
   */
  SC_STATUS_INVALID_QUERY = 6,
  /**
   * The construction exceeded the requested state cap.
   */
  SC_STATUS_STATE_CAP = 7,
  /**
   * A value did not fit its C representation.
   */
  SC_STATUS_OVERFLOW = 8,
  /**
   * A file could not be read or written.
   */
  SC_STATUS_IO_ERROR = 9,
} ScStatus;

/**
 * Kind of a closed-form prediction.
 */
typedef enum ScBoundKind {
  /**
   * The formula is exact and attained by the witness family.
   */
  SC_BOUND_KIND_EXACT = 0,
  /**
   * The formula only bounds the complexity from above.
   */
  SC_BOUND_KIND_UPPER_ONLY = 1,
  /**
   * No closed form is provided; `value` is meaningless.
   */
  SC_BOUND_KIND_NO_CLOSED_FORM = 2,
} ScBoundKind;

/**
 * Opaque handle to a complete DFA.
 */
typedef struct ScDfa ScDfa;

/**
 * A closed-form prediction for one combination.
 */
typedef struct ScBound {
  enum ScBoundKind kind;
  uint64_t value;
} ScBound;

/**
 * Outcome of measuring one witness instance against its prediction.
 */
typedef struct ScVerifyResult {
  /**
   * False when the combination has no closed form.
   */
  bool has_predicted;
  uint64_t predicted;
  /**
   * States of the minimized construction.
   */
  uint64_t measured;
  /**
   * States of the construction before minimization.
   */
  uint64_t reachable;
  /**
   * True when `measured` equals the prediction (vacuously true without
   * one).
   */
  bool matched;
  uint64_t wall_ms;
} ScVerifyResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the library as a static string; never freed.
 */
const char *sc_version(void);

/**
 * Message of the most recent failure on this thread, or null if none
 * occurred yet. Owned by the library; valid until the next failing call on
 * the same thread.
 */
const char *sc_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void sc_string_free(char *text);

/**
 * Releases an automaton handle. Null is ignored.
 */
void sc_dfa_free(struct ScDfa *dfa);

/**
 * Parses an automaton from its JSON representation.
 */
enum ScStatus sc_dfa_from_json(const char *text, struct ScDfa **out);

/**
 * Serializes an automaton to JSON. The string is released with
 * `sc_string_free`.
 */
enum ScStatus sc_dfa_to_json(const struct ScDfa *dfa, char **out);

/**
 * Reads an automaton from a JSON file.
 */
enum ScStatus sc_dfa_read_file(const char *path, struct ScDfa **out);

/**
 * Writes an automaton to a JSON file.
 */
enum ScStatus sc_dfa_write_file(const struct ScDfa *dfa, const char *path);

/**
 * Number of states, or 0 for a null handle.
 */
size_t sc_dfa_state_count(const struct ScDfa *dfa);

/**
 * Number of letters, or 0 for a null handle.
 */
size_t sc_dfa_alphabet_size(const struct ScDfa *dfa);

/**
 * The minimal automaton of the same language, canonically numbered.
 */
enum ScStatus sc_dfa_minimize(const struct ScDfa *dfa, struct ScDfa **out);

/**
 * Number of states of the minimal automaton.
 */
enum ScStatus sc_dfa_state_complexity(const struct ScDfa *dfa, size_t *out);

/**
 * Whether two automata are identical up to state renumbering.
 */
enum ScStatus sc_dfa_is_isomorphic(const struct ScDfa *a, const struct ScDfa *b, bool *out);

/**
 * Whether two automata over the same alphabet accept the same language.
 */
enum ScStatus sc_dfa_equivalent(const struct ScDfa *a, const struct ScDfa *b, bool *out);

/**
 * A Brzozowski automaton with `n` states. `roles` assigns one letter per
 * character, `C` cycle, `T` transposition of 0 and 1, `K` contraction of 1
 * to 0, `.` identity; letters are named a, b, c, ... in order.
 */
enum ScStatus sc_brzozowski(size_t n, const char *roles, struct ScDfa **out);

/**
 * The three witness components of a shape at sizes (m,n,p). All three out
 * pointers receive new handles.
 */
enum ScStatus sc_witness(const char *shape,
                         size_t m,
                         size_t n,
                         size_t p,
                         struct ScDfa **out_a,
                         struct ScDfa **out_b,
                         struct ScDfa **out_c);

/**
 * The catenation product of two automata over the same alphabet.
 */
enum ScStatus sc_cat(const struct ScDfa *a, const struct ScDfa *b, struct ScDfa **out);

/**
 * The boolean product of two automata under a connective: "or", "and",
 * "xor", or a four-bit truth table such as "0110".
 */
enum ScStatus sc_bool(const char *op,
                      const struct ScDfa *a,
                      const struct ScDfa *b,
                      struct ScDfa **out);

/**
 * Builds a combined automaton from an expression tree such as
 * "cat(0,and(1,2))"; leaves index `operands`. Fails with `SC_STATUS_STATE_CAP`
 * when the construction would exceed `max_states` states.
 */
enum ScStatus sc_build_tree(const char *tree,
                            const struct ScDfa *const *operands,
                            size_t count,
                            size_t max_states,
                            struct ScDfa **out);

/**
 * The closed-form prediction for a shape, connectives (comma-separated)
 * and sizes.
 */
enum ScStatus sc_bound(const char *shape,
                       const char *ops,
                       size_t m,
                       size_t n,
                       size_t p,
                       struct ScBound *out);

/**
 * Builds the witness instance of a shape at sizes (m,n,p), minimizes it,
 * and compares the measured complexity against the prediction.
 */
enum ScStatus sc_verify(const char *shape,
                        const char *ops,
                        size_t m,
                        size_t n,
                        size_t p,
                        size_t max_states,
                        struct ScVerifyResult *out);

/**
 * Saturates a rows x cols tableau under "union" or "xor". `cells` and
 * `out_cells` are row-major arrays of rows*cols bytes, nonzero meaning
 * marked; they may alias. At most 128 columns are supported.
 */
enum ScStatus sc_saturate(const char *op,
                          size_t rows,
                          size_t cols,
                          const uint8_t *cells,
                          uint8_t *out_cells);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SC_LAB_H */
