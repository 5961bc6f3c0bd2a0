#ifndef XNUM_H
#define XNUM_H

#pragma once

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum XnumStatus {
  XNUM_STATUS_OK = 0,
  XNUM_STATUS_NULL_POINTER = 1,
  XNUM_STATUS_INVALID_UTF8 = 2,
  XNUM_STATUS_PARSE = 3,
  XNUM_STATUS_INVALID = 4,
  XNUM_STATUS_LIMIT = 5,
  /**
   * The solver stopped without proving optimality.
   */
  XNUM_STATUS_UNSOLVED = 6,
  XNUM_STATUS_PANIC = 7,
} XnumStatus;

/**
 * Graph document: graph, anchors, parts and annotations.
 */
typedef struct XnumGraph XnumGraph;

/**
 * Exact polynomial in ω.
 */
typedef struct XnumPoly XnumPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *xnum_last_error_message(void);

/**
 * Parses a graph document in the JSON format.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum XnumStatus xnum_graph_from_json(const char *json, struct XnumGraph **out);

/**
 * Builds the frame gadget F_k with symbolic weights.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum XnumStatus xnum_frame_new(size_t k, struct XnumGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library that was not freed.
 */
void xnum_graph_free(struct XnumGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t xnum_graph_vertex_count(const struct XnumGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t xnum_graph_edge_count(const struct XnumGraph *g);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum XnumStatus xnum_graph_is_planar(const struct XnumGraph *g, bool *out);

/**
 * Serializes the document; free the result with `xnum_string_free`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum XnumStatus xnum_graph_to_json(const struct XnumGraph *g, char **out);

/**
 * Exact weighted crossing number, ignoring anchors. `node_limit` 0 means
 * unlimited.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum XnumStatus xnum_solve_exact(const struct XnumGraph *g,
                                 uint64_t node_limit,
                                 struct XnumPoly **out);

/**
 * Exact anchored crossing number. `node_limit` 0 means unlimited.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum XnumStatus xnum_solve_anchored(const struct XnumGraph *g,
                                    uint64_t node_limit,
                                    struct XnumPoly **out);

/**
 * The closed form γ(k).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum XnumStatus xnum_gamma(size_t k, struct XnumPoly **out);

/**
 * Text form, e.g. `2*w^90 - w^89`; free with `xnum_string_free`.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum XnumStatus xnum_poly_to_string(const struct XnumPoly *p, char **out);

/**
 * Exact value at ω as a decimal fraction string; free with
 * `xnum_string_free`.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum XnumStatus xnum_poly_eval(const struct XnumPoly *p, uint64_t omega, char **out);

/**
 * # Safety
 * `p` must be null or a handle from this library that was not freed.
 */
void xnum_poly_free(struct XnumPoly *p);

/**
 * # Safety
 * `s` must be null or a string returned by this library that was not
 * freed.
 */
void xnum_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* XNUM_H */
