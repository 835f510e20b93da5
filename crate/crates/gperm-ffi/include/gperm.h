#ifndef GPERM_H
#define GPERM_H

/* Reference header for libgperm_ffi.  The build script regenerates a copy
   under OUT_DIR when cbindgen is available; keep this file in sync with
   the #[no_mangle] exports in src/lib.rs. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of an FFI call; mirrors the CLI exit codes.
typedef enum GpStatus {
  // The call succeeded and out-parameters are valid.
  GP_STATUS_OK = 0,
  // The input text could not be parsed.
  GP_STATUS_PARSE = 1,
  // The graph violates a precondition of the operation.
  GP_STATUS_PRECONDITION = 2,
  // The library contradicted itself or panicked.
  GP_STATUS_INTERNAL = 3,
  // An exhaustive search proved the requested object absent.
  GP_STATUS_ABSENT = 4,
  // A resource bound was reached before an answer.
  GP_STATUS_BOUND = 5,
  // A required pointer argument was null.
  GP_STATUS_NULL_ARGUMENT = 6,
} GpStatus;

// Opaque graph handle.
typedef struct GpGraph GpGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parse an edge-list description ("n m" header, one edge per line).
//
// # Safety
// `text` must be NUL-terminated; `out_graph` must be a valid pointer.
enum GpStatus gp_graph_parse_edgelist(const char *text, struct GpGraph **out_graph);

// Parse a graph6 line.
//
// # Safety
// `text` must be NUL-terminated; `out_graph` must be a valid pointer.
enum GpStatus gp_graph_parse_graph6(const char *text, struct GpGraph **out_graph);

// Release a graph handle.  Null is ignored.
//
// # Safety
// `graph` must come from a parse function and not be freed twice.
void gp_graph_free(struct GpGraph *graph);

// Number of vertices; 0 for a null handle.
//
// # Safety
// `graph` must be a live handle or null.
size_t gp_graph_vertex_count(const struct GpGraph *graph);

// Number of edges; 0 for a null handle.
//
// # Safety
// `graph` must be a live handle or null.
size_t gp_graph_edge_count(const struct GpGraph *graph);

// Compute the invariant with the default conventions.
//
// # Safety
// `graph` must be a live handle; out-pointers must be valid or null
// (null out-pointers are skipped).
enum GpStatus gp_graph_permanent(const struct GpGraph *graph,
                                 uint64_t *out_k,
                                 uint64_t *out_modulus,
                                 uint64_t *out_raw,
                                 uint64_t *out_canonical);

// Canonical graph6 form of a simple graph (isomorphism invariant).
//
// # Safety
// `graph` must be a live handle; `out_string` must be valid.  The
// result must be released with [`gp_string_free`].
enum GpStatus gp_canonical_form(const struct GpGraph *graph, char **out_string);

// 1 if an orientation with all vertex boundaries divisible by
// `modulus` exists, 0 if exhaustion proved there is none.
//
// # Safety
// `graph` must be a live handle; `out_exists` must be valid.
enum GpStatus gp_modulo_orientation_exists(const struct GpGraph *graph,
                                           uint64_t modulus,
                                           int32_t *out_exists);

// JSON description of a spanning-subgraph certificate for orientations
// mod `modulus`.  Returns `Absent` when exhaustion proves none exists.
//
// # Safety
// `graph` must be a live handle; `out_json` must be valid.  The result
// must be released with [`gp_string_free`].
enum GpStatus gp_certificate_json(const struct GpGraph *graph, uint64_t modulus, char **out_json);

// Release a string returned by this library.  Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void gp_string_free(char *s);

// Static description of a status code.
const char *gp_status_message(enum GpStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GPERM_H */
