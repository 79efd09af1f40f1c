// Copyright 2026 The wqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wqed/wqed.h"

#include <memory>
#include <new>
#include <string>

#include "wqed/evaluator.hpp"
#include "wqed/fermi.hpp"
#include "wqed/oracle.hpp"
#include "wqed/scattering.hpp"

struct wqed_chain {
  wqed::ChainConfig cfg;
};

struct wqed_solution {
  wqed::Solution solution;
};

struct wqed_history {
  wqed::oracle::DDEHistory history;
};

namespace {

thread_local std::string g_last_error;

wqed_status to_status(wqed::ErrorCode code) {
  using wqed::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return WQED_ERR_INVALID_ARGUMENT;
    case ErrorCode::Geometry: return WQED_ERR_GEOMETRY;
    case ErrorCode::HorizonTooLarge: return WQED_ERR_HORIZON_TOO_LARGE;
    case ErrorCode::RealAxisPole: return WQED_ERR_REAL_AXIS_POLE;
    case ErrorCode::NotStrictlyProper: return WQED_ERR_NOT_STRICTLY_PROPER;
    case ErrorCode::IllConditioned: return WQED_ERR_ILL_CONDITIONED;
    case ErrorCode::CausalityViolation: return WQED_ERR_CAUSALITY_VIOLATION;
    case ErrorCode::StepTooLarge: return WQED_ERR_STEP_TOO_LARGE;
    case ErrorCode::MeshMismatch: return WQED_ERR_MESH_MISMATCH;
    case ErrorCode::OutOfRange: return WQED_ERR_OUT_OF_RANGE;
  }
  return WQED_ERR_INTERNAL;
}

template <class F>
wqed_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return WQED_OK;
  } catch (const wqed::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return WQED_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WQED_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw wqed::Error(wqed::ErrorCode::InvalidArgument, what);
}

wqed_complex to_c(wqed::cplx z) { return wqed_complex{z.real(), z.imag()}; }
wqed::cplx from_c(wqed_complex z) { return {z.re, z.im}; }

wqed::InitialCondition to_initial(const wqed_initial* init) {
  require(init != nullptr, "initial condition is null");
  if (init->kind == WQED_EXCITED_QUBIT) return wqed::ExcitedQubit{init->qubit};
  require(init->kind == WQED_PULSE, "unknown initial-condition kind");
  wqed::PulseSpec p;
  p.sigma = init->sigma;
  p.x0 = init->x0;
  p.direction = init->direction == WQED_LEFT ? wqed::Direction::Left : wqed::Direction::Right;
  return p;
}

wqed::SearchWindow to_window(const wqed_window* w, double j0) {
  if (!w) return wqed::SearchWindow::scaled(j0);
  require(w->re_min < w->re_max && w->im_min < w->im_max, "empty search window");
  return wqed::SearchWindow{w->re_min, w->re_max, w->im_min, w->im_max};
}

void fill(const wqed::NoUhpReport& r, wqed_no_uhp_result* out) {
  out->pass = r.pass ? 1 : 0;
  out->worst_im = r.worst_im;
  out->uhp_zero_count = r.uhp_zero_count;
  out->num_poles = r.poles.size();
}

}  // namespace

extern "C" {

const char* wqed_last_error(void) { return g_last_error.c_str(); }

const char* wqed_status_name(wqed_status status) {
  switch (status) {
    case WQED_OK: return "OK";
    case WQED_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case WQED_ERR_GEOMETRY: return "GeometryError";
    case WQED_ERR_HORIZON_TOO_LARGE: return "HorizonTooLarge";
    case WQED_ERR_REAL_AXIS_POLE: return "RealAxisPole";
    case WQED_ERR_NOT_STRICTLY_PROPER: return "NotStrictlyProper";
    case WQED_ERR_ILL_CONDITIONED: return "IllConditioned";
    case WQED_ERR_CAUSALITY_VIOLATION: return "CausalityViolation";
    case WQED_ERR_STEP_TOO_LARGE: return "StepTooLarge";
    case WQED_ERR_MESH_MISMATCH: return "MeshMismatch";
    case WQED_ERR_OUT_OF_RANGE: return "OutOfRange";
    case WQED_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

size_t wqed_default_diagram_cap(void) { return wqed::kDefaultDiagramCap; }

wqed_status wqed_chain_new_uniform(int num_qubits, double omega, double j0,
                                   double separation, wqed_chain** out) {
  return guarded([&] {
    require(out != nullptr, "output handle is null");
    *out = new wqed_chain{wqed::ChainConfig::uniform(num_qubits, omega, j0, separation)};
  });
}

wqed_status wqed_chain_new_positions(const double* positions, int num_qubits,
                                     double omega, double j0, wqed_chain** out) {
  return guarded([&] {
    require(out != nullptr, "output handle is null");
    require(positions != nullptr && num_qubits > 0, "positions missing");
    std::vector<double> xs(positions, positions + num_qubits);
    *out = new wqed_chain{wqed::ChainConfig::with_positions(std::move(xs), omega, j0)};
  });
}

void wqed_chain_free(wqed_chain* chain) { delete chain; }

int wqed_chain_num_qubits(const wqed_chain* chain) {
  return chain ? chain->cfg.num_qubits() : 0;
}

double wqed_chain_position(const wqed_chain* chain, int qubit) {
  if (!chain || qubit < 0 || qubit >= chain->cfg.num_qubits()) return 0.0;
  return chain->cfg.position(qubit);
}

int wqed_chain_weak_separation(const wqed_chain* chain) {
  return chain && chain->cfg.weak_separation_of_scales() ? 1 : 0;
}

wqed_status wqed_solution_new(const wqed_chain* chain, const wqed_initial* init,
                              double horizon, size_t cap, wqed_solution** out) {
  return guarded([&] {
    require(chain != nullptr && out != nullptr, "null handle");
    const size_t use_cap = cap == 0 ? wqed::kDefaultDiagramCap : cap;
    *out = new wqed_solution{wqed::Solution(chain->cfg, to_initial(init), horizon, use_cap)};
  });
}

void wqed_solution_free(wqed_solution* solution) { delete solution; }

size_t wqed_solution_diagram_count(const wqed_solution* solution) {
  return solution ? solution->solution.diagram_count() : 0;
}

wqed_status wqed_solution_excitation(const wqed_solution* solution, int qubit, double t,
                                     wqed_complex* out) {
  return guarded([&] {
    require(solution != nullptr && out != nullptr, "null handle");
    *out = to_c(solution->solution.excitation(qubit, t));
  });
}

wqed_status wqed_solution_field(const wqed_solution* solution, double x, double t,
                                wqed_complex* psi_r, wqed_complex* psi_l) {
  return guarded([&] {
    require(solution != nullptr && psi_r != nullptr && psi_l != nullptr, "null handle");
    *psi_r = to_c(solution->solution.psi_r(x, t));
    *psi_l = to_c(solution->solution.psi_l(x, t));
  });
}

wqed_status wqed_solution_norm(const wqed_solution* solution, double t, double* out) {
  return guarded([&] {
    require(solution != nullptr && out != nullptr, "null handle");
    *out = solution->solution.total_norm(t);
  });
}

wqed_status wqed_causality_probe(const wqed_chain* chain, const wqed_initial* init,
                                 int qubit, double* out) {
  return guarded([&] {
    require(chain != nullptr && out != nullptr, "null handle");
    *out = wqed::causality_probe(chain->cfg, to_initial(init), qubit);
  });
}

wqed_status wqed_history_new(const wqed_chain* chain, const wqed_initial* init,
                             double horizon, double dt, wqed_history** out) {
  return guarded([&] {
    require(chain != nullptr && out != nullptr, "null handle");
    *out = new wqed_history{
        wqed::oracle::integrate_chain(chain->cfg, to_initial(init), horizon, dt)};
  });
}

void wqed_history_free(wqed_history* history) { delete history; }

double wqed_history_dt(const wqed_history* history) {
  return history ? history->history.dt() : 0.0;
}

wqed_status wqed_history_excitation(const wqed_history* history, int qubit, double t,
                                    wqed_complex* out) {
  return guarded([&] {
    require(history != nullptr && out != nullptr, "null handle");
    *out = to_c(history->history.excitation(qubit, t));
  });
}

wqed_status wqed_history_field(const wqed_history* history, double x, double t,
                               wqed_complex* psi_r, wqed_complex* psi_l) {
  return guarded([&] {
    require(history != nullptr && psi_r != nullptr && psi_l != nullptr, "null handle");
    auto [r, l] = wqed::oracle::reconstruct_field(history->history, x, t);
    *psi_r = to_c(r);
    *psi_l = to_c(l);
  });
}

wqed_status wqed_history_norm(const wqed_history* history, double t, double* out) {
  return guarded([&] {
    require(history != nullptr && out != nullptr, "null handle");
    *out = wqed::oracle::oracle_norm(history->history, t);
  });
}

wqed_complex wqed_fermi_e1(double t, double j0, double omega, double separation) {
  wqed_complex out{0.0, 0.0};
  guarded([&] { out = to_c(wqed::fermi::e1(t, j0, omega, separation)); });
  return out;
}

wqed_complex wqed_fermi_e_m1(double t, double j0, double omega, double separation) {
  wqed_complex out{0.0, 0.0};
  guarded([&] { out = to_c(wqed::fermi::e_m1(t, j0, omega, separation)); });
  return out;
}

wqed_complex wqed_markovian_e1(double t, double gamma0, double theta, double omega) {
  return to_c(wqed::fermi::markovian_e1(t, gamma0, theta, omega));
}

wqed_status wqed_fabry_perot_poles(double j0, double omega, double separation,
                                   const wqed_window* window, wqed_complex* poles,
                                   size_t capacity, size_t* count) {
  return guarded([&] {
    require(count != nullptr, "count pointer is null");
    require(capacity == 0 || poles != nullptr, "pole buffer is null");
    const auto f = wqed::chain_transmission(j0, omega, separation);
    const auto found = wqed::find_poles(f, to_window(window, j0));
    *count = found.size();
    for (size_t i = 0; i < found.size() && i < capacity; ++i) poles[i] = to_c(found[i]);
  });
}

wqed_status wqed_check_no_uhp_fabry_perot(double j0, double omega, double separation,
                                          const wqed_window* window, double margin,
                                          wqed_no_uhp_result* out) {
  return guarded([&] {
    require(out != nullptr, "output is null");
    const auto f = wqed::chain_transmission(j0, omega, separation);
    fill(wqed::check_no_uhp(f, to_window(window, j0), margin), out);
  });
}

wqed_status wqed_check_no_uhp_rational(wqed_complex prefactor, const wqed_complex* zeros,
                                       size_t num_zeros, const wqed_complex* poles,
                                       const int* multiplicities, size_t num_poles,
                                       const wqed_window* window, double margin,
                                       wqed_no_uhp_result* out) {
  return guarded([&] {
    require(out != nullptr, "output is null");
    require(num_zeros == 0 || zeros != nullptr, "zeros missing");
    require(num_poles == 0 || (poles != nullptr && multiplicities != nullptr),
            "poles missing");
    std::vector<wqed::cplx> zs;
    for (size_t i = 0; i < num_zeros; ++i) zs.push_back(from_c(zeros[i]));
    std::vector<wqed::Pole> ps;
    for (size_t i = 0; i < num_poles; ++i) ps.push_back(wqed::Pole{from_c(poles[i]), multiplicities[i]});
    const wqed::TransferFn f(wqed::RationalFn(from_c(prefactor), std::move(zs), std::move(ps)));
    fill(wqed::check_no_uhp(f, to_window(window, 1.0), margin), out);
  });
}

}  // extern "C"
