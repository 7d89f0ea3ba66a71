/* C ABI for the qtheight library: Mahler measures, Weil heights, the adelic height on Q(T), torsion tests, and scanning. */

#ifndef QTHEIGHT_H
#define QTHEIGHT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum QthStatus {
  // Success.
  QTH_OK = 0,
  // A required pointer argument was null.
  QTH_NULL_ARGUMENT = 1,
  // Expression syntax error; see qth_last_error().
  QTH_PARSE_ERROR = 2,
  // Input outside the mathematical domain of the operation.
  QTH_DOMAIN_ERROR = 3,
  // Evaluation at a pole.
  QTH_POLE_ERROR = 4,
  // A numeric routine did not reach the requested accuracy.
  QTH_NONCONVERGENCE = 5,
  // A configured size bound was exceeded.
  QTH_CAPACITY_EXCEEDED = 6,
  // An internal invariant failed; the operation was aborted safely.
  QTH_INTERNAL_PANIC = 7,
} QthStatus;

// Torsion verdicts for qth_cyclotomic_test.
typedef enum QthTorsion {
  // All roots are roots of unity (certified exactly).
  QTH_TORSION = 0,
  // Some root lies off the unit circle (measure exceeds 3x its bound).
  QTH_NOT_TORSION = 1,
  // Neither certificate could be established.
  QTH_TORSION_INCONCLUSIVE = 2,
} QthTorsion;

// A univariate integer polynomial (opaque).
typedef struct QthPoly QthPoly;

// A computed measure: value with a rigorous error bound.
typedef struct QthMeasure {
  // The computed value (a natural logarithm).
  double value;
  // Absolute error bound on `value`.
  double error_bound;
  // Number of integrand or root evaluations spent.
  uint64_t evals;
  // True when the requested tolerance was not met; `error_bound` stays honest.
  bool warning;
} QthMeasure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the message for the most recent failure on this thread.
// The pointer is valid until the next failing call on the same thread.
// Never null; empty string when no failure has occurred.
const char *qth_last_error(void);

// Parses a univariate integer polynomial (variable `x` or `T`) into a handle.
// On success writes a handle to `*out`; release it with qth_poly_free.
//
// # Safety
// `text` must be a valid NUL-terminated string; `out` must be valid to write.
enum QthStatus qth_poly_parse(const char *text, struct QthPoly **out);

// Releases a polynomial handle. Null is ignored.
//
// # Safety
// `p` must be null or a handle obtained from this library, released once.
void qth_poly_free(struct QthPoly *p);

// Degree of the polynomial (0 for constants, including the zero polynomial).
//
// # Safety
// `p` must be a valid handle.
uint64_t qth_poly_degree(const struct QthPoly *p);

// Renders the polynomial in the expression syntax (variable `x`).
// Release the string with qth_string_free.
//
// # Safety
// `p` must be a valid handle; `out` must be valid to write.
enum QthStatus qth_poly_render(const struct QthPoly *p, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string obtained from this library, released once.
void qth_string_free(char *s);

// Mahler measure of the polynomial via certified root isolation at the given
// working precision (pass 0 for the default of 128 bits).
//
// # Safety
// `f` must be a valid handle; `out` must be valid to write.
enum QthStatus qth_mahler(const struct QthPoly *f, uint32_t precision_bits, struct QthMeasure *out);

// Classical Weil height of a root of the (irreducible) polynomial:
// the Mahler measure divided by the degree.
//
// # Safety
// `f` must be a valid handle; `out` must be valid to write.
enum QthStatus qth_weil_height(const struct QthPoly *f, struct QthMeasure *out);

// Exact test whether every root of the polynomial is a root of unity
// (equivalently, the polynomial is a signed monomial times a product of
// cyclotomic polynomials). Writes the verdict and the numeric measure used
// for the negative direction.
//
// # Safety
// `f` must be a valid handle; `verdict` and `measure` must be valid to write.
enum QthStatus qth_cyclotomic_test(const struct QthPoly *f,
                                   enum QthTorsion *verdict,
                                   struct QthMeasure *measure);

// Sum of log|phi| over all places of the adelic structure on Q(T); vanishes
// within the error bound. `phi_text` is a rational function of `T`;
// `tol` <= 0 selects the default quadrature tolerance of 1e-8.
//
// # Safety
// `phi_text` must be a valid NUL-terminated string; `out` valid to write.
enum QthStatus qth_product_formula_defect(const char *phi_text, double tol, struct QthMeasure *out);

// Height of a projective point over Q(T). `coords_text` holds comma-separated
// coordinates, each a rational function of `T` (at least two);
// `tol` <= 0 selects the default tolerance.
//
// # Safety
// `coords_text` must be a valid NUL-terminated string; `out` valid to write.
enum QthStatus qth_point_height(const char *coords_text, double tol, struct QthMeasure *out);

// Exhaustive scan of primitive irreducible integer polynomials of degree at
// most `deg_max` with |coefficients| <= `coeff_bound`: measure, height, and
// margin against the bound (c/d)(log log 3d / log 3d)^3 with c = 1/4.
// Writes the full report as JSON lines; release with qth_string_free.
// Output is byte-identical across runs for identical arguments.
//
// # Safety
// `jsonl_out` must be valid to write.
enum QthStatus qth_scan_exhaustive(uint64_t deg_max, int64_t coeff_bound, char **jsonl_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QTHEIGHT_H */
