/*
 * chainrta - response-time analysis and simulation of callback chains on
 * multi-threaded, non-preemptive, work-conserving executors.
 *
 * C API of the shared library. Systems are held behind opaque handles; all
 * structured data crosses the boundary as JSON text (see README for the
 * schemas). Every function returning chainrta_status sets a thread-local
 * error message retrievable via chainrta_last_error() on failure. Strings
 * returned through char** out-parameters are heap-allocated and must be
 * released with chainrta_string_destroy().
 */

#ifndef CHAINRTA_H
#define CHAINRTA_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum chainrta_status {
  CHAINRTA_OK = 0,
  CHAINRTA_ERROR_INVALID_ARGUMENT = 1,
  CHAINRTA_ERROR_PARSE = 2,
  CHAINRTA_ERROR_VALIDATION = 3,
  CHAINRTA_ERROR_INTERNAL = 4
} chainrta_status;

typedef struct chainrta_system chainrta_system;

const char* chainrta_version(void);

/* Message describing the most recent failure on this thread. */
const char* chainrta_last_error(void);

chainrta_status chainrta_system_parse(const char* json_text,
                                      chainrta_system** out_system);
void chainrta_system_destroy(chainrta_system* system);
chainrta_status chainrta_system_to_json(const chainrta_system* system,
                                        char** out_json);

/* Structural validation. Returns CHAINRTA_OK even for invalid systems;
 * out_json is {"valid": bool, "violations": [...]} naming each offender. */
chainrta_status chainrta_system_validate(const chainrta_system* system,
                                         char** out_json);

/* Worst-case response-time analysis. method is one of PWA_CD, PPWA_CD,
 * PWA_AD, PPWA_AD. Priority-driven methods apply the chain-aware callback
 * priority assignment before analyzing. out_all_schedulable may be NULL. */
chainrta_status chainrta_analyze(const chainrta_system* system, const char* method,
                                 char** out_json, int* out_all_schedulable);

/* Discrete-event simulation. config_json holds {"horizon": n, "seed": n,
 * "offsets": "synchronous"|"randomized", "scheme": optional override, ...}.
 * Pass a non-NULL out_trace_text to also receive the line-delimited trace
 * (one "time thread event callback instance" record per line). */
chainrta_status chainrta_simulate(const chainrta_system* system,
                                  const char* config_json, char** out_json,
                                  char** out_trace_text);

/* Random chain-set generation. params_json holds the generator parameters;
 * the result is a complete system JSON with one executor of `threads`
 * dedicated worker threads running `scheme`. */
chainrta_status chainrta_generate(const char* params_json, int threads,
                                  const char* scheme, char** out_system_json);

/* Schedulability-ratio sweep. sweep_json describes the swept variable,
 * range, methods and generator template; out_csv columns are
 * sweep_variable,value,method,schedulable,total,ratio. */
chainrta_status chainrta_sweep(const char* sweep_json, char** out_csv);

void chainrta_string_destroy(char* text);

#ifdef __cplusplus
}
#endif

#endif /* CHAINRTA_H */
