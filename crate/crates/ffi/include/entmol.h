#ifndef ENTMOL_H
#define ENTMOL_H

/* Generated by cbindgen from the entmol-ffi sources. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  ENTMOL_STATUS_OK = 0,
  ENTMOL_STATUS_NULL_POINTER = 1,
  ENTMOL_STATUS_INVALID_ARGUMENT = 2,
  ENTMOL_STATUS_INVALID_STATE = 3,
  ENTMOL_STATUS_DOMAIN = 4,
  ENTMOL_STATUS_CAPACITY = 5,
  ENTMOL_STATUS_PARSE = 6,
  ENTMOL_STATUS_NUMERICAL = 7,
  ENTMOL_STATUS_BUFFER_TOO_SMALL = 8,
  ENTMOL_STATUS_PANIC = 9,
} EntmolStatus;

/**
 * A validated density operator.
 */
typedef struct EntmolDensity EntmolDensity;

/**
 * A molecule spec together with its family state.
 */
typedef struct EntmolMolecule EntmolMolecule;

/**
 * A normalized pure state.
 */
typedef struct EntmolPureState EntmolPureState;

typedef struct {
  double concurrence;
  double eof;
  double fef;
  double teleport_fidelity;
  bool ppt;
  double min_pt_eigenvalue;
} EntmolPairMeasures;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *entmol_version(void);

/**
 * Message for the last failed call on this thread, or NULL. Valid until the next failing
 * call on the same thread.
 */
const char *entmol_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from an `entmol_*` out-parameter and not have been freed.
 */
void entmol_string_free(char *s);

/**
 * # Safety
 * `out` must be valid for writes.
 */
EntmolStatus entmol_pure_ghz(size_t n, EntmolPureState **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
EntmolStatus entmol_pure_w(size_t n, EntmolPureState **out);

/**
 * Star state `a|1>|0..0> + b|0>|N-2,1>`; requires `a^2 + (n-1) b^2 = 1`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
EntmolStatus entmol_pure_star(size_t n, double a, double b, EntmolPureState **out);

/**
 * Bell pair on qubits `i`, `j` (1-based) of `n`, others in `|0>`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
EntmolStatus entmol_pure_bell(size_t n, size_t i, size_t j, EntmolPureState **out);

/**
 * Haar-random pure state, reproducible from `seed`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
EntmolStatus entmol_pure_random(size_t n, uint64_t seed, EntmolPureState **out);

/**
 * Builds a state from `2 * 2^n` interleaved `(re, im)` doubles; the norm must be 1.
 *
 * # Safety
 * `data` must point to `len` readable doubles; `out` must be valid for writes.
 */
EntmolStatus entmol_pure_from_amplitudes(size_t n,
                                         const double *data,
                                         size_t len,
                                         EntmolPureState **out);

/**
 * # Safety
 * `state` must be NULL or a live handle; it is invalid afterwards.
 */
void entmol_pure_free(EntmolPureState *state);

/**
 * Qubit count, or 0 for NULL.
 *
 * # Safety
 * `state` must be NULL or a live handle.
 */
size_t entmol_pure_n_qubits(const EntmolPureState *state);

/**
 * Copies the amplitudes as interleaved `(re, im)` doubles into `out`, which must hold
 * `2 * 2^n` values.
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid for `len` writes.
 */
EntmolStatus entmol_pure_amplitudes(const EntmolPureState *state, double *out, size_t len);

/**
 * Serializes to the JSON state format.
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
EntmolStatus entmol_pure_to_json(const EntmolPureState *state, char **out);

/**
 * Density operator `|psi><psi|`.
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
EntmolStatus entmol_pure_to_density(const EntmolPureState *state, EntmolDensity **out);

/**
 * Two-qubit reduction onto qubits `i`, `j` (1-based, `i` first).
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
EntmolStatus entmol_pure_reduced_pair(const EntmolPureState *state,
                                      size_t i,
                                      size_t j,
                                      EntmolDensity **out);

/**
 * Parses a JSON state file; pure states are converted to `|psi><psi|`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
EntmolStatus entmol_density_from_json(const char *json, EntmolDensity **out);

/**
 * # Safety
 * `rho` must be NULL or a live handle; it is invalid afterwards.
 */
void entmol_density_free(EntmolDensity *rho);

/**
 * Qubit count, or 0 for NULL.
 *
 * # Safety
 * `rho` must be NULL or a live handle.
 */
size_t entmol_density_n_qubits(const EntmolDensity *rho);

/**
 * # Safety
 * `rho` must be a live handle; `out` must be valid for writes.
 */
EntmolStatus entmol_density_to_json(const EntmolDensity *rho, char **out);

/**
 * Reduced operator on the `len` 1-based qubits in `keep`, in listed order.
 *
 * # Safety
 * `rho` must be a live handle, `keep` must point to `len` values, `out` must be valid
 * for writes.
 */
EntmolStatus entmol_density_partial_trace(const EntmolDensity *rho,
                                          const size_t *keep,
                                          size_t len,
                                          EntmolDensity **out);

/**
 * Concurrence of a two-qubit operator.
 *
 * # Safety
 * `rho` must be a live handle; `out` must be valid for writes.
 */
EntmolStatus entmol_concurrence(const EntmolDensity *rho, double *out);

/**
 * Fully entangled fraction of a two-qubit operator.
 *
 * # Safety
 * `rho` must be a live handle; `out` must be valid for writes.
 */
EntmolStatus entmol_fef(const EntmolDensity *rho, double *out);

/**
 * Entanglement of formation as a function of concurrence `c` in `[0, 1]`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
EntmolStatus entmol_eof(double c, double *out);

/**
 * PPT test: `ppt` is true when the smallest partial-transpose eigenvalue (written to
 * `min_eigenvalue` when non-NULL) is at least `-tol`.
 *
 * # Safety
 * `rho` must be a live handle; `ppt` must be valid for writes; `min_eigenvalue` may be
 * NULL.
 */
EntmolStatus entmol_is_ppt(const EntmolDensity *rho, double tol, bool *ppt, double *min_eigenvalue);

/**
 * All pair measures of a two-qubit operator.
 *
 * # Safety
 * `rho` must be a live handle; `out` must be valid for writes.
 */
EntmolStatus entmol_pair_measures(const EntmolDensity *rho, double tol, EntmolPairMeasures *out);

/**
 * Parses the molecule text format. Diagnostics carry line and column.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be valid for writes.
 */
EntmolStatus entmol_molecule_parse(const char *text, EntmolMolecule **out);

/**
 * Generates a `kind` graph (`ring`, `star`, `complete`, `even_odd`, `chain`) on `n`
 * qubits. `strong = weak = 0` gives uniform weights, otherwise edges alternate between
 * the two.
 *
 * # Safety
 * `kind` must be a NUL-terminated string; `out` must be valid for writes.
 */
EntmolStatus entmol_molecule_generate(const char *kind,
                                      size_t n,
                                      uint32_t strong,
                                      uint32_t weak,
                                      EntmolMolecule **out);

/**
 * # Safety
 * `mol` must be NULL or a live handle; it is invalid afterwards.
 */
void entmol_molecule_free(EntmolMolecule *mol);

/**
 * Qubit count, or 0 for NULL.
 *
 * # Safety
 * `mol` must be NULL or a live handle.
 */
size_t entmol_molecule_n_qubits(const EntmolMolecule *mol);

/**
 * Canonical text form of the molecule spec.
 *
 * # Safety
 * `mol` must be a live handle; `out` must be valid for writes.
 */
EntmolStatus entmol_molecule_to_text(const EntmolMolecule *mol, char **out);

/**
 * Two-qubit reduction of the family state onto `k`, `l` (1-based, `k` first).
 *
 * # Safety
 * `mol` must be a live handle; `out` must be valid for writes.
 */
EntmolStatus entmol_molecule_pair_reduction(const EntmolMolecule *mol,
                                            size_t k,
                                            size_t l,
                                            EntmolDensity **out);

/**
 * Concurrence of the family state's `(k, l)` reduction.
 *
 * # Safety
 * `mol` must be a live handle; `out` must be valid for writes.
 */
EntmolStatus entmol_molecule_pair_concurrence(const EntmolMolecule *mol,
                                              size_t k,
                                              size_t l,
                                              double *out);

/**
 * Full analysis report of the family state as JSON; `tol` is the entanglement threshold.
 *
 * # Safety
 * `mol` must be a live handle; `out` must be valid for writes.
 */
EntmolStatus entmol_molecule_analyze_json(const EntmolMolecule *mol, double tol, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENTMOL_H */
