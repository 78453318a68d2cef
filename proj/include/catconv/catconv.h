/* C interface to the catalytic-converter solver.
 *
 * Handles are opaque and owned by the caller once returned; release them with the matching
 * *_free function. Every call that can fail returns a catconv_status and leaves a message for
 * catconv_last_error() (per thread). Status values double as CLI exit codes.
 */
#ifndef CATCONV_H
#define CATCONV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CATCONV_BUILDING)
#    define CATCONV_API __declspec(dllexport)
#  else
#    define CATCONV_API __declspec(dllimport)
#  endif
#else
#  define CATCONV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum catconv_status {
  CATCONV_OK = 0,
  CATCONV_ERR_CONFIG = 2,
  CATCONV_ERR_NON_CONVERGED = 3,
  CATCONV_ERR_QUALCHECK = 4,
  CATCONV_ERR_IO = 5,
  CATCONV_ERR_INVALID_ARGUMENT = 6,
  CATCONV_ERR_NUMERICAL = 7,
  CATCONV_ERR_INTERNAL = 8
} catconv_status;

typedef struct catconv_config catconv_config;
typedef struct catconv_run catconv_run;
typedef struct catconv_text catconv_text;

CATCONV_API const char* catconv_version(void);

/* Message of the last failed call on this thread; empty string if none. */
CATCONV_API const char* catconv_last_error(void);

/* Owned text buffer, NUL terminated. */
CATCONV_API const char* catconv_text_data(const catconv_text* text);
CATCONV_API size_t catconv_text_size(const catconv_text* text);
CATCONV_API void catconv_text_free(catconv_text* text);

/* Configuration ---------------------------------------------------------- */

CATCONV_API catconv_status catconv_config_load(const char* path, catconv_config** out);
/* base_dir resolves file: profiles; may be NULL (current directory). */
CATCONV_API catconv_status catconv_config_parse(const char* text, const char* base_dir, catconv_config** out);
CATCONV_API void catconv_config_free(catconv_config* cfg);

CATCONV_API size_t catconv_config_species_count(const catconv_config* cfg);
/* NULL when index is out of range. The pointer lives as long as cfg. */
CATCONV_API const char* catconv_config_species_name(const catconv_config* cfg, size_t index);

CATCONV_API catconv_status catconv_config_serialize(const catconv_config* cfg, catconv_text** out);

/* One line per issue ("ERROR CODE species.field: message"); *error_count receives the number of errors. */
CATCONV_API catconv_status catconv_config_validate(const catconv_config* cfg, catconv_text** out, size_t* error_count);

typedef struct catconv_contraction {
  double mu;
  double threshold;
  double margin;
  double alpha_opt;
  int satisfied;
  int degenerate;
} catconv_contraction;

CATCONV_API catconv_status catconv_config_contraction(const catconv_config* cfg, catconv_contraction* out);

typedef struct catconv_hypotheses {
  int h1_pass;
  int h2_pass;
  int h3_pass;
  double worst_h1;
  double worst_h2;
  double worst_h3;
  size_t samples_used;
} catconv_hypotheses;

/* Samples H1-H3 for the configured kinetics. report (may be NULL) receives a readable summary. */
CATCONV_API catconv_status catconv_check_hypotheses(const catconv_config* cfg, uint64_t seed, size_t samples,
                                                    catconv_hypotheses* out, catconv_text** report);

/* Simulation ------------------------------------------------------------- */

typedef struct catconv_sim_options {
  uint64_t seed;          /* hypothesis and Lipschitz sampling */
  size_t probe_every;     /* probe row every n steps (>= 1) */
  size_t snapshot_every;  /* snapshot CSV every n steps; 0 = initial and final only */
} catconv_sim_options;

CATCONV_API void catconv_sim_options_init(catconv_sim_options* options);

/* Runs the whole horizon. When out_dir is not NULL it is created and receives probe.csv,
 * snapshots/snapshot_<step>.csv, report.txt and report.json. Returns CATCONV_OK when the run
 * completes, whatever the property checks say; query catconv_run_all_checks_passed for those. */
CATCONV_API catconv_status catconv_simulate(const catconv_config* cfg, const catconv_sim_options* options,
                                            const char* out_dir, catconv_run** out);
CATCONV_API void catconv_run_free(catconv_run* run);

CATCONV_API int catconv_run_all_checks_passed(const catconv_run* run);
CATCONV_API catconv_status catconv_run_contraction(const catconv_run* run, catconv_contraction* out);
/* Returns 1 and stores the time when the reaction ended, 0 otherwise. */
CATCONV_API int catconv_run_reaction_ended(const catconv_run* run, double* time);
CATCONV_API size_t catconv_run_step_count(const catconv_run* run);
/* Picard iterations of step index (0-based); -1 when out of range. */
CATCONV_API int catconv_run_iterations(const catconv_run* run, size_t step);
CATCONV_API size_t catconv_run_probe_count(const catconv_run* run);
/* values must hold catconv_run_species_count entries. */
CATCONV_API catconv_status catconv_run_probe(const catconv_run* run, size_t index, double* time, double* values);
CATCONV_API size_t catconv_run_species_count(const catconv_run* run);

CATCONV_API catconv_status catconv_run_report_text(const catconv_run* run, catconv_text** out);
CATCONV_API catconv_status catconv_run_report_json(const catconv_run* run, catconv_text** out);
CATCONV_API catconv_status catconv_run_write_report(const catconv_run* run, const char* path);

/* Grid refinement study on the Graetz problem; readable table with observed orders. */
CATCONV_API catconv_status catconv_convergence_study(int levels, catconv_text** out);

#ifdef __cplusplus
}
#endif

#endif /* CATCONV_H */
