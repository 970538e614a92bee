#ifndef FOLCOH_H
#define FOLCOH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FolCommand {
  FOL_COMMAND_VALIDATE = 0,
  FOL_COMMAND_COHOMOLOGY = 1,
  FOL_COMMAND_DDBAR = 2,
  FOL_COMMAND_FROELICHER = 3,
  FOL_COMMAND_HODGE = 4,
  FOL_COMMAND_DUALITY = 5,
  FOL_COMMAND_KAEHLER = 6,
  FOL_COMMAND_SWEEP = 7,
  FOL_COMMAND_ORIENT = 8,
} FolCommand;

typedef enum FolFormat {
  FOL_FORMAT_TEXT = 0,
  FOL_FORMAT_JSON = 1,
  FOL_FORMAT_CSV = 2,
} FolFormat;

/**
 * Status codes returned by every fallible function.
 */
typedef enum FolStatus {
  FOL_STATUS_OK = 0,
  /**
   * The command ran and its check failed; the report is still produced.
   */
  FOL_STATUS_CHECK_FAILED = 1,
  FOL_STATUS_USAGE = 2,
  FOL_STATUS_PARSE = 3,
  FOL_STATUS_IO = 4,
  FOL_STATUS_INVALID_MODEL = 5,
  FOL_STATUS_UNSUPPORTED = 6,
  FOL_STATUS_NULL_POINTER = 7,
  FOL_STATUS_INVALID_UTF8 = 8,
  FOL_STATUS_INTERNAL = 9,
  FOL_STATUS_PANIC = 10,
} FolStatus;

typedef enum FolTheory {
  FOL_THEORY_ALL = 0,
  FOL_THEORY_DE_RHAM = 1,
  FOL_THEORY_DOLBEAULT = 2,
  FOL_THEORY_BOTT_CHERN = 3,
  FOL_THEORY_AEPPLI = 4,
} FolTheory;

/**
 * Opaque parsed model.
 */
typedef struct FolModel FolModel;

/**
 * Opaque command result.
 */
typedef struct FolReport FolReport;

/**
 * Command options. Null string pointers mean "not given".
 */
typedef struct FolOptions {
  /**
   * `s=<rational>`
   */
  const char *at;
  /**
   * Comma-separated rational grid.
   */
  const char *grid;
  /**
   * Grid value used as the semicontinuity reference.
   */
  const char *reference;
  uint32_t trials;
  uint64_t seed;
  enum FolTheory theory;
} FolOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Default options: no parameter value, no grid, 200 trials, seed 0, all theories.
 */
struct FolOptions fol_options_default(void);

/**
 * Parses model text.
 *
 * # Safety
 * `text` is a NUL-terminated UTF-8 string; `out` points to writable storage.
 */
enum FolStatus fol_model_parse(const char *text, struct FolModel **out);

/**
 * Loads a bundled model by name (`s6`, `hopf-family`, `torus1`, `torus2`, `s6-real`).
 *
 * # Safety
 * `name` is a NUL-terminated UTF-8 string; `out` points to writable storage.
 */
enum FolStatus fol_model_load_bundled(const char *name, struct FolModel **out);

/**
 * Name of the model; release with `fol_string_free`. Null if `model` is null.
 *
 * # Safety
 * `model` is null or a live handle.
 */
char *fol_model_name(const struct FolModel *model);

/**
 * Number of generators, or 0 if `model` is null.
 *
 * # Safety
 * `model` is null or a live handle.
 */
size_t fol_model_generator_count(const struct FolModel *model);

/**
 * # Safety
 * `model` is null or a handle returned by this library and not yet freed.
 */
void fol_model_free(struct FolModel *model);

/**
 * Runs a command on a model. Returns `FolStatus::Ok` or `FolStatus::CheckFailed`
 * with a report in `*out`, or an error status with `*out` null.
 *
 * # Safety
 * `model` is a live handle; `options` is null or points to valid options whose
 * strings are null or NUL-terminated; `out` points to writable storage.
 */
enum FolStatus fol_run(const struct FolModel *model,
                       enum FolCommand command,
                       const struct FolOptions *options,
                       struct FolReport **out);

/**
 * The CLI exit code the command would have produced (0 or 1), or -1 if `report` is null.
 *
 * # Safety
 * `report` is null or a live handle.
 */
int32_t fol_report_exit_code(const struct FolReport *report);

/**
 * Warnings emitted while running the command, one per line; release with
 * `fol_string_free`. Null if `report` is null.
 *
 * # Safety
 * `report` is null or a live handle.
 */
char *fol_report_warnings(const struct FolReport *report);

/**
 * Serializes a report. `*out` receives a string to release with `fol_string_free`.
 *
 * # Safety
 * `report` is a live handle; `out` points to writable storage.
 */
enum FolStatus fol_report_render(const struct FolReport *report, enum FolFormat format, char **out);

/**
 * # Safety
 * `report` is null or a handle returned by this library and not yet freed.
 */
void fol_report_free(struct FolReport *report);

/**
 * # Safety
 * `s` is null or a string returned by this library and not yet freed.
 */
void fol_string_free(char *s);

/**
 * Message for the most recent failure on this thread. The pointer stays valid until
 * the next failing call on the same thread; do not free it.
 */
const char *fol_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FOLCOH_H */
