/* Copyright 2026 The Loftgen Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the loftgen scene generator.
 *
 * All entry points are thread-safe as long as each lg_config object is used
 * from one thread at a time. Functions that can fail either return NULL (for
 * constructors) or an lg_status; the message for the most recent failure on
 * the calling thread is available via lg_last_error().
 */

#ifndef LOFTGEN_LOFTGEN_H_
#define LOFTGEN_LOFTGEN_H_

#include <stdint.h>

#if defined(_WIN32)
#define LOFTGEN_API __declspec(dllexport)
#else
#define LOFTGEN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lg_status {
  LG_OK = 0,
  LG_ERROR_CONFIG = 1,  /* malformed document, unknown key, bad value */
  LG_ERROR_PARTIAL = 2, /* generation finished but some scenes were skipped */
  LG_ERROR_RUNTIME = 3  /* I/O or internal failure */
} lg_status;

/* Opaque generator configuration. */
typedef struct lg_config lg_config;

typedef struct lg_generate_stats {
  int32_t n_scenes;
  int32_t n_ok;
  int32_t n_skipped;
} lg_generate_stats;

/* Called once per finished scene: its index, 1 when written / 0 when
 * skipped, and the user pointer passed to lg_generate. Must not throw. */
typedef void (*lg_progress_fn)(int32_t scene_index, int32_t ok, void* user);

/* Library version as "major.minor.patch". Static storage; do not free. */
LOFTGEN_API const char* lg_version(void);

/* Message of the most recent failure on the calling thread ("" if none).
 * Valid until the next failing lg_* call on the same thread. */
LOFTGEN_API const char* lg_last_error(void);

/* Constructors return NULL on failure (see lg_last_error). Destroy with
 * lg_config_destroy; destroying NULL is a no-op. */
LOFTGEN_API lg_config* lg_config_create(void); /* built-in default recipe */
LOFTGEN_API lg_config* lg_config_from_json(const char* json_text);
LOFTGEN_API lg_config* lg_config_from_file(const char* path);
LOFTGEN_API lg_config* lg_config_variant(const char* label);
LOFTGEN_API void lg_config_destroy(lg_config* cfg);

/* Canonical JSON of the full configuration; free with lg_string_free. */
LOFTGEN_API char* lg_config_to_json(const lg_config* cfg);

/* Newline-separated list of variant labels; free with lg_string_free. */
LOFTGEN_API char* lg_variant_labels(void);

LOFTGEN_API void lg_string_free(char* text);

/* Range and consistency checks; LG_OK or LG_ERROR_CONFIG. */
LOFTGEN_API lg_status lg_config_validate(const lg_config* cfg);

/* Stable 64-bit hash of the canonical configuration. */
LOFTGEN_API uint64_t lg_config_hash(const lg_config* cfg);

/* Command-line style overrides. */
LOFTGEN_API lg_status lg_config_set_seed(lg_config* cfg, uint64_t seed);
LOFTGEN_API lg_status lg_config_set_scenes(lg_config* cfg, int32_t n_scenes);

/* Builds and renders every scene of cfg under out_dir (created if needed)
 * with `workers` threads; output bytes are independent of the worker count.
 * Fills *stats when non-NULL. Returns LG_OK, LG_ERROR_PARTIAL when some
 * scenes were skipped, LG_ERROR_CONFIG, or LG_ERROR_RUNTIME. */
LOFTGEN_API lg_status lg_generate(const lg_config* cfg, const char* out_dir, int32_t workers,
                                  lg_progress_fn progress, void* user, lg_generate_stats* stats);

/* Writes one scene directory's 8 views as a horizontal contact sheet. */
LOFTGEN_API lg_status lg_preview_scene(const char* scene_dir, const char* out_png);

/* Stacks the sheets of n scene directories into one grid, one row each. */
LOFTGEN_API lg_status lg_preview_grid(const char* const* scene_dirs, int32_t n,
                                      const char* out_png);

/* Generates the single shape of `seed` under cfg (NULL for the default
 * recipe) and writes it as a Wavefront OBJ with normals. */
LOFTGEN_API lg_status lg_export_mesh(const lg_config* cfg, uint64_t seed, const char* out_obj);

#ifdef __cplusplus
}
#endif

#endif /* LOFTGEN_LOFTGEN_H_ */
