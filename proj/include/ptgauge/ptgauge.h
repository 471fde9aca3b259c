#ifndef PTGAUGE_PTGAUGE_H
#define PTGAUGE_PTGAUGE_H

/* C interface to the ptgauge library.
 *
 * Every function returns a ptg_status; on failure ptg_last_error() returns a
 * thread-local diagnostic for the most recent failing call on that thread.
 * Models are immutable after creation and may be shared between threads. */

#include <stddef.h>

#if defined(_WIN32)
#define PTG_API __declspec(dllexport)
#elif defined(PTGAUGE_BUILDING)
#define PTG_API __attribute__((visibility("default")))
#else
#define PTG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ptg_status {
  PTG_OK = 0,
  PTG_ERR_INVALID_ARGUMENT = 1,
  PTG_ERR_DIMENSION_MISMATCH = 2,
  PTG_ERR_DEGENERATE_PARAMETERS = 3,
  PTG_ERR_EXPONENTIAL = 4,
  PTG_ERR_CUTOFF_NOT_CONVERGED = 5,
  PTG_ERR_QUADRATURE = 6,
  PTG_ERR_STEP_UNDERFLOW = 7,
  PTG_ERR_NON_NORMALIZABLE = 8,
  PTG_ERR_COEFFICIENT_MISMATCH = 9,
  PTG_ERR_INTERNAL = 10
} ptg_status;

typedef struct ptg_params {
  double omega_cap; /* Omega */
  double coupling;  /* G */
  double drive;     /* omega > 0 */
  int branch;       /* +1 or -1 */
} ptg_params;

typedef struct ptg_settings {
  int cutoff;          /* 0: certify automatically */
  int max_cutoff;      /* hard maximum for automatic certification */
  double tol_ode;      /* relative tolerance of the propagator integration */
  double tol_quad;     /* absolute tolerance of phase quadratures */
  double tol_assert;   /* tolerance certified states are asserted at */
} ptg_settings;

typedef struct ptg_model ptg_model;

PTG_API const char* ptg_version(void);
PTG_API const char* ptg_status_name(ptg_status status);
PTG_API const char* ptg_last_error(void);

PTG_API void ptg_settings_default(ptg_settings* settings);

/* Validates the parameters and solves the auxiliary equation.
 * PTG_ERR_DEGENERATE_PARAMETERS when omega + Omega = 0 and G = 0. */
PTG_API ptg_status ptg_model_create(const ptg_params* params, const ptg_settings* settings,
                                    ptg_model** out);
PTG_API void ptg_model_destroy(ptg_model* model);

typedef struct ptg_gauge_info {
  double delta;
  double eta;
  double eta_classical;
  double gamma;
  double period;
  double auxiliary_residual;
  int branch;
  int normalizable; /* R^{-1}|n> has finite norm */
} ptg_gauge_info;

PTG_API ptg_status ptg_gauge_info_get(const ptg_model* model, ptg_gauge_info* out);

/* E_n = (n + 1/2) Gamma for n < nmax. */
PTG_API ptg_status ptg_spectrum(const ptg_model* model, int nmax, double* energies);

typedef struct ptg_gauge_transform {
  double t;
  double sz_re, sz_im;         /* H' = sz Sz + splus S+ + sminus S- */
  double splus_re, splus_im;
  double sminus_re, sminus_im;
  double diagonal_deviation;   /* max |H'_nn - Gamma (n + 1/2)|, n < block */
  double off_diagonal;         /* max |H'_mn|, m != n < block */
  int block;
  int cutoff;
  int tolerance_met;           /* deviations below tol_assert * max(1, |Gamma|) */
} ptg_gauge_transform;

/* route 0: defining representation (both branches);
 * route 1: Fock similarity transform on a certified cutoff. */
PTG_API ptg_status ptg_gauge_transform_at(const ptg_model* model, double t, int route,
                                          int block, ptg_gauge_transform* out);

typedef struct ptg_berry {
  int n;
  int branch;
  int cutoff;                  /* 0 when the algebraic route was used */
  double gamma_closed;
  double gamma_quadrature;
  double quadrature_imag;
  double quadrature_error;
  int quadrature_ok;
  int evolution_available;     /* 0 on a non-normalizable branch */
  double gamma_evolution;
  double gamma_evolution_wrapped;
  int evolution_shift;
  double total_phase;
  double dynamical_phase;
  int evolution_ok;
} ptg_berry;

PTG_API ptg_status ptg_berry_phase(const ptg_model* model, int n, ptg_berry* out);

typedef struct ptg_hannay {
  double dtheta_closed;
  double dtheta_quadrature;
  double imag_residual;
  double linearity_residual;
  int ok;
} ptg_hannay;

PTG_API ptg_status ptg_hannay_angle(const ptg_model* model, ptg_hannay* out);

typedef struct ptg_correspondence {
  int n;
  int branch;
  int cutoff;
  double gamma_n;
  double dtheta_closed;
  double dtheta_quadrature;
  double residual;            /* gamma_n + (n + 1/2) dtheta */
  double magnitude_residual;  /* ||gamma_n| - (n + 1/2)|dtheta|| */
  int realized_sign;
  int ok;
} ptg_correspondence;

PTG_API ptg_status ptg_correspondence_check(const ptg_model* model, int n,
                                            ptg_correspondence* out);

typedef struct ptg_check {
  char name[48];
  double residual;
  double tolerance;
  int status; /* 0 failed, 1 passed, 2 skipped */
  char note[160];
} ptg_check;

/* Runs the invariant suite. Writes at most `capacity` checks and the total
 * number to *count. fault_injection flips a sign in the connection closed form. */
PTG_API ptg_status ptg_verify(const ptg_model* model, int fault_injection, ptg_check* checks,
                              int capacity, int* count);

/* Evolves psi0 (length len, split into real and imaginary parts) under H(t)
 * from t0 and samples it at `samples` equally spaced times ending at t1.
 * Outputs (each of length `samples`) may be NULL. */
PTG_API ptg_status ptg_evolve(const ptg_model* model, const double* psi_re, const double* psi_im,
                              int len, double t0, double t1, int samples, double* times,
                              double* norms, double* overlap_re, double* overlap_im);

/* Equal-weight normalised superposition of the basis states `indices`
 * (count >= 1, each < len), written to re/im of length len. */
PTG_API ptg_status ptg_basis_superposition(const int* indices, int count, int len, double* re,
                                           double* im);

/* `steps` equally spaced values from lo to hi inclusive (steps >= 2). */
PTG_API ptg_status ptg_linspace(double lo, double hi, int steps, double* out);

#ifdef __cplusplus
}
#endif

#endif /* PTGAUGE_PTGAUGE_H */
