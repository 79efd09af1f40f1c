/* Copyright 2026 The wqed Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the wqed engine. Handles are opaque and owned by the
 * caller; every fallible call returns a wqed_status and leaves a message
 * retrievable with wqed_last_error() on the calling thread. */

#ifndef WQED_WQED_H_
#define WQED_WQED_H_

#include <stddef.h>

#if defined(_WIN32)
#define WQED_API __declspec(dllexport)
#else
#define WQED_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  WQED_OK = 0,
  WQED_ERR_INVALID_ARGUMENT = 1,
  WQED_ERR_GEOMETRY = 2,
  WQED_ERR_HORIZON_TOO_LARGE = 3,
  WQED_ERR_REAL_AXIS_POLE = 4,
  WQED_ERR_NOT_STRICTLY_PROPER = 5,
  WQED_ERR_ILL_CONDITIONED = 6,
  WQED_ERR_CAUSALITY_VIOLATION = 7,
  WQED_ERR_STEP_TOO_LARGE = 8,
  WQED_ERR_MESH_MISMATCH = 9,
  WQED_ERR_OUT_OF_RANGE = 10,
  WQED_ERR_INTERNAL = 99
} wqed_status;

typedef struct {
  double re;
  double im;
} wqed_complex;

typedef enum { WQED_RIGHT = 0, WQED_LEFT = 1 } wqed_direction;
typedef enum { WQED_EXCITED_QUBIT = 0, WQED_PULSE = 1 } wqed_initial_kind;

typedef struct {
  wqed_initial_kind kind;
  int qubit;
  double sigma;
  double x0;
  wqed_direction direction;
} wqed_initial;

typedef struct {
  double re_min;
  double re_max;
  double im_min;
  double im_max;
} wqed_window;

typedef struct {
  int pass;
  double worst_im;
  int uhp_zero_count;
  size_t num_poles;
} wqed_no_uhp_result;

typedef struct wqed_chain wqed_chain;
typedef struct wqed_solution wqed_solution;
typedef struct wqed_history wqed_history;

WQED_API const char* wqed_last_error(void);
WQED_API const char* wqed_status_name(wqed_status status);
WQED_API size_t wqed_default_diagram_cap(void);

/* Chain geometry. */
WQED_API wqed_status wqed_chain_new_uniform(int num_qubits, double omega, double j0,
                                            double separation, wqed_chain** out);
WQED_API wqed_status wqed_chain_new_positions(const double* positions, int num_qubits,
                                              double omega, double j0, wqed_chain** out);
WQED_API void wqed_chain_free(wqed_chain* chain);
WQED_API int wqed_chain_num_qubits(const wqed_chain* chain);
WQED_API double wqed_chain_position(const wqed_chain* chain, int qubit);
WQED_API int wqed_chain_weak_separation(const wqed_chain* chain);

/* Diagram solution, exact for t below the horizon. cap = 0 selects the
 * default enumeration cap. */
WQED_API wqed_status wqed_solution_new(const wqed_chain* chain, const wqed_initial* init,
                                       double horizon, size_t cap, wqed_solution** out);
WQED_API void wqed_solution_free(wqed_solution* solution);
WQED_API size_t wqed_solution_diagram_count(const wqed_solution* solution);
WQED_API wqed_status wqed_solution_excitation(const wqed_solution* solution, int qubit,
                                              double t, wqed_complex* out);
WQED_API wqed_status wqed_solution_field(const wqed_solution* solution, double x, double t,
                                         wqed_complex* psi_r, wqed_complex* psi_l);
WQED_API wqed_status wqed_solution_norm(const wqed_solution* solution, double t,
                                        double* out);
WQED_API wqed_status wqed_causality_probe(const wqed_chain* chain, const wqed_initial* init,
                                          int qubit, double* out);

/* Delay-differential reference integrator. */
WQED_API wqed_status wqed_history_new(const wqed_chain* chain, const wqed_initial* init,
                                      double horizon, double dt, wqed_history** out);
WQED_API void wqed_history_free(wqed_history* history);
WQED_API double wqed_history_dt(const wqed_history* history);
WQED_API wqed_status wqed_history_excitation(const wqed_history* history, int qubit,
                                             double t, wqed_complex* out);
WQED_API wqed_status wqed_history_field(const wqed_history* history, double x, double t,
                                        wqed_complex* psi_r, wqed_complex* psi_l);
WQED_API wqed_status wqed_history_norm(const wqed_history* history, double t, double* out);

/* Two-qubit closed forms, qubits at -L/2 (initially excited) and +L/2. */
WQED_API wqed_complex wqed_fermi_e1(double t, double j0, double omega, double separation);
WQED_API wqed_complex wqed_fermi_e_m1(double t, double j0, double omega, double separation);
WQED_API wqed_complex wqed_markovian_e1(double t, double gamma0, double theta, double omega);

/* Poles of the two-qubit transmission; window NULL selects the default
 * rectangle. Writes at most `capacity` poles and the total to *count. */
WQED_API wqed_status wqed_fabry_perot_poles(double j0, double omega, double separation,
                                            const wqed_window* window, wqed_complex* poles,
                                            size_t capacity, size_t* count);
WQED_API wqed_status wqed_check_no_uhp_fabry_perot(double j0, double omega,
                                                   double separation,
                                                   const wqed_window* window, double margin,
                                                   wqed_no_uhp_result* out);
/* prefactor * prod (D - zeros[i]) / prod (D - poles[j])^multiplicities[j]. */
WQED_API wqed_status wqed_check_no_uhp_rational(wqed_complex prefactor,
                                                const wqed_complex* zeros, size_t num_zeros,
                                                const wqed_complex* poles,
                                                const int* multiplicities, size_t num_poles,
                                                const wqed_window* window, double margin,
                                                wqed_no_uhp_result* out);

#ifdef __cplusplus
}
#endif

#endif /* WQED_WQED_H_ */
