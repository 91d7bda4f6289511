#ifndef LLAB_H
#define LLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every call. The numeric values of the first three match the
// command-line exit codes.
typedef enum LlabStatus {
  // Everything passed.
  LLAB_STATUS_OK = 0,
  // The run completed and a report was produced, but a check failed.
  LLAB_STATUS_CHECK_FAILED = 1,
  // Malformed input: bad JSON, unknown command or parameter, shape errors.
  LLAB_STATUS_INVALID_INPUT = 2,
  // A required pointer argument was null.
  LLAB_STATUS_NULL_ARGUMENT = 3,
  // The input was mathematically out of scope (no report produced).
  LLAB_STATUS_OUT_OF_SCOPE = 4,
  // An internal panic was caught at the boundary.
  LLAB_STATUS_INTERNAL = 5,
} LlabStatus;

// Opaque parsed instance file.
typedef struct LlabInstance LlabInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses an instance from a JSON string. On success `*out` receives a
// handle to release with [`llab_instance_free`].
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a valid pointer.
enum LlabStatus llab_instance_from_json(const char *json, struct LlabInstance **out);

// Reads and parses an instance file.
//
// # Safety
// `path` must be a valid NUL-terminated string and `out` a valid pointer.
enum LlabStatus llab_instance_load(const char *path, struct LlabInstance **out);

// Releases a handle; null is ignored.
//
// # Safety
// `inst` must be null or a handle not yet freed.
void llab_instance_free(struct LlabInstance *inst);

// Canonical JSON of the instance; release with [`llab_string_free`].
//
// # Safety
// `inst` must be a live handle and `out` a valid pointer.
enum LlabStatus llab_instance_canonical(const struct LlabInstance *inst, char **out);

// Runs `command` (`check`, `frame`, `forms`, `assoc`, `minimal`, `fuzz` or
// `report`) with optional parameter overrides such as `"lambda1=1,mu=2/3"`
// (`params` may be null). `fuzz` uses the default seed and count. On
// `LLAB_STATUS_OK` and `LLAB_STATUS_CHECK_FAILED`, `*out_json` receives the
// JSON report.
//
// # Safety
// `inst` must be a live handle, `command` a valid string, `params` null or
// a valid string and `out_json` a valid pointer.
enum LlabStatus llab_run(const struct LlabInstance *inst,
                         const char *command,
                         const char *params,
                         char **out_json);

// Seeded randomized campaign over the instance's parameters.
//
// # Safety
// As for [`llab_run`].
enum LlabStatus llab_fuzz(const struct LlabInstance *inst,
                          uint64_t seed,
                          size_t count,
                          const char *params,
                          char **out_json);

// Releases a string returned by this library; null is ignored.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void llab_string_free(char *s);

// Message for the last failed call on this thread, or null. Valid until the
// next call into the library on the same thread.
const char *llab_last_error_message(void);

// Library version, statically allocated.
const char *llab_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LLAB_H */
