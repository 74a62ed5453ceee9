#ifndef CONFORMAL_CONFORMAL_H
#define CONFORMAL_CONFORMAL_H

/* C interface to the conformal operator library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function.  Every fallible call returns a conf_status;
 * conf_last_error() describes the most recent failure on the calling
 * thread.  Strings returned by accessors stay valid until the owning
 * handle is freed. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CONF_API __declspec(dllexport)
#else
#define CONF_API __attribute__((visibility("default")))
#endif

typedef enum conf_status {
  CONF_OK = 0,
  CONF_CHECK_FAILED = 1, /* the run finished and some check failed */
  CONF_USAGE = 2,        /* invalid argument, unknown name, malformed input */
  CONF_RANGE = 3,        /* parameter outside the supported range */
  CONF_IO = 4,           /* file could not be read or written */
  CONF_INTERNAL = 5
} conf_status;

typedef enum conf_format { CONF_FORMAT_JSON = 0, CONF_FORMAT_TEXT = 1 } conf_format;

typedef struct conf_config conf_config;
typedef struct conf_result conf_result;

CONF_API const char* conf_version(void);
CONF_API const char* conf_last_error(void);
/* Exit code of the command-line contract for a status: 0, 1, 2 or 3. */
CONF_API int conf_exit_code(conf_status status);

/* ---- run configuration ---- */
CONF_API conf_status conf_config_new(conf_config** out);
CONF_API void conf_config_free(conf_config* cfg);
/* n must be even; 4 and 6 are supported, 8 only after allow_large. */
CONF_API conf_status conf_config_set_n(conf_config* cfg, int n);
CONF_API conf_status conf_config_allow_large(conf_config* cfg, int allow);
CONF_API conf_status conf_config_set_seed(conf_config* cfg, uint64_t seed);
/* tables, tangential, domino, key-lemma, tractor-laws, factory,
 * continuation, algebra or all */
CONF_API conf_status conf_config_set_suite(conf_config* cfg, const char* suite);
/* JSON text {"omega": expr} or {"exp_omega": expr}; NULL clears it */
CONF_API conf_status conf_config_set_scale_json(conf_config* cfg, const char* json_text);
CONF_API conf_status conf_config_set_threads(conf_config* cfg, unsigned threads);

/* Number of suite names and the i-th name. */
CONF_API size_t conf_suite_count(void);
CONF_API const char* conf_suite_name(size_t i);

/* ---- operations ---- */
/* Runs the configured suite.  Returns CONF_OK when every check passed,
 * CONF_CHECK_FAILED when some failed; *out is set in both cases. */
CONF_API conf_status conf_verify(const conf_config* cfg, conf_result** out);
/* Operator dump: name is L, Q, G, M or K; l < 0 selects the default. */
CONF_API conf_status conf_build(const conf_config* cfg, const char* name, int k, int l, conf_result** out);
/* Normal form of a word in the operator algebra, with the rule trace. */
CONF_API conf_status conf_rewrite(const char* word, conf_result** out);

/* ---- results ---- */
CONF_API void conf_result_free(conf_result* r);
CONF_API int conf_result_passed(const conf_result* r);
CONF_API size_t conf_result_check_count(const conf_result* r);
/* id and witness of the first failing check, NULL when all passed */
CONF_API const char* conf_result_first_failure_id(const conf_result* r);
CONF_API const char* conf_result_first_failure_witness(const conf_result* r);
CONF_API const char* conf_result_render(conf_result* r, conf_format format);

#ifdef __cplusplus
}
#endif

#endif
