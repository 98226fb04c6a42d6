#ifndef GDOM_H
#define GDOM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Relation decisions. `Unknown` means an enumeration limit was hit.
 */
typedef enum GdomDecision {
  GDOM_DECISION_NO = 0,
  GDOM_DECISION_YES = 1,
  GDOM_DECISION_UNKNOWN = 2,
} GdomDecision;

typedef enum GdomStatus {
  GDOM_STATUS_OK = 0,
  GDOM_STATUS_NULL_POINTER = 1,
  GDOM_STATUS_INVALID_UTF8 = 2,
  GDOM_STATUS_PARSE = 3,
  GDOM_STATUS_INVALID_GRAPH = 4,
  GDOM_STATUS_BOUND_EXCEEDED = 5,
  GDOM_STATUS_UNKNOWN_ID = 6,
  GDOM_STATUS_INVALID_PARAMETER = 7,
  GDOM_STATUS_NUMERICAL = 8,
  GDOM_STATUS_PANIC = 9,
} GdomStatus;

typedef enum GdomVerdict {
  GDOM_VERDICT_HOLDS = 0,
  GDOM_VERDICT_HOLDS_WITH_EQUALITY = 1,
  GDOM_VERDICT_VIOLATED = 2,
  GDOM_VERDICT_HYPOTHESIS_FAILED = 3,
  GDOM_VERDICT_INCONCLUSIVE = 4,
} GdomVerdict;

/**
 * Opaque graph handle.
 */
typedef struct GdomGraph GdomGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread (empty after success).
 * The pointer stays valid until the next call on the same thread.
 */
const char *gdom_last_error(void);

/**
 * Library version, static storage.
 */
const char *gdom_version(void);

/**
 * Parses `text` in `format` (`edge_list`, `graph6`, `json`; null means
 * edge list).
 *
 * # Safety
 * `text` and `format` must be null or NUL-terminated; `out` must be valid
 * for writes.
 */
enum GdomStatus gdom_graph_parse(const char *text, const char *format, struct GdomGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from `gdom_graph_parse` not yet freed.
 */
void gdom_graph_free(struct GdomGraph *g);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void gdom_string_free(char *s);

/**
 * # Safety
 * `g` must be a live handle; `out` valid for writes.
 */
enum GdomStatus gdom_graph_vertex_count(const struct GdomGraph *g, size_t *out);

/**
 * Number of edges counted with multiplicity.
 *
 * # Safety
 * `g` must be a live handle; `out` valid for writes.
 */
enum GdomStatus gdom_graph_edge_units(const struct GdomGraph *g, size_t *out);

/**
 * Spanning-tree count as a decimal string (free with `gdom_string_free`).
 *
 * # Safety
 * `g` must be a live handle; `out` valid for writes.
 */
enum GdomStatus gdom_spanning_trees(const struct GdomGraph *g, char **out);

/**
 * Normalised heat-kernel trace at time `t >= 0`.
 *
 * # Safety
 * `g` must be a live handle; `out` valid for writes.
 */
enum GdomStatus gdom_heat_trace(const struct GdomGraph *g, double t, double *out);

/**
 * Whether `g` dominates `h`.
 *
 * # Safety
 * `g`, `h` must be live handles; `out` valid for writes.
 */
enum GdomStatus gdom_dominates(const struct GdomGraph *g,
                               const struct GdomGraph *h,
                               enum GdomDecision *out);

/**
 * Whether `h` fractionally tiles `g`. When it does and `coverage` is not
 * null, the cover multiplicity `m` is written there as a decimal string.
 *
 * # Safety
 * `g`, `h` must be live handles; `out` valid for writes; `coverage` null or
 * valid for writes.
 */
enum GdomStatus gdom_fractionally_tiles(const struct GdomGraph *g,
                                        const struct GdomGraph *h,
                                        enum GdomDecision *out,
                                        char **coverage);

/**
 * Evaluates inequality `id` on `(g, h)`; `h` may be null for ids that
 * take vertex sets instead. `params_json` is null or a JSON object with
 * keys `t_grid`, `xy_grid`, `functional`, `family`, `sets`, `hypothesis`,
 * `piece_weight_scale`. When `report_json` is not null it receives the full
 * report.
 *
 * # Safety
 * Pointers must be null (where allowed) or valid as described above.
 */
enum GdomStatus gdom_check(const char *id,
                           const struct GdomGraph *g,
                           const struct GdomGraph *h,
                           const char *params_json,
                           enum GdomVerdict *verdict,
                           char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GDOM_H */
