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

// Delay-differential reference integrator, independent of the diagram
// engine. Works with slowly varying amplitudes alpha_Q, e_Q = alpha_Q e^{-i Omega t}:
//
//   d alpha_j / dt = drive_j(t)
//       - J0 [ alpha_j(t) + sum_{n != j} alpha_n(t - D_nj) e^{i Omega D_nj} H(t - D_nj) ]
//
// with D_nj = |x_n - x_j|. Classic RK4 on a mesh that contains every delay
// and every pulse arrival time, so delayed reads at whole steps are exact
// mesh values and half-step reads use cubic Hermite interpolation.

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "wqed/core.hpp"

namespace wqed::oracle {

class DDEHistory {
 public:
  DDEHistory(ChainConfig cfg, InitialCondition init, double dt, int steps);

  const ChainConfig& config() const { return cfg_; }
  const InitialCondition& initial() const { return init_; }
  double dt() const { return dt_; }
  int steps() const { return steps_; }
  double horizon() const { return dt_ * steps_; }

  /// Slowly varying amplitude; 0 for t < 0, Hermite between mesh points.
  cplx alpha(int qubit, double t) const;
  /// Lab-frame amplitude alpha e^{-i Omega t}.
  cplx excitation(int qubit, double t) const;

  cplx& sample(int qubit, int k) { return alpha_[idx(qubit, k)]; }
  cplx sample(int qubit, int k) const { return alpha_[idx(qubit, k)]; }
  cplx& slope_left(int qubit, int k) { return left_[idx(qubit, k)]; }
  cplx& slope_right(int qubit, int k) { return right_[idx(qubit, k)]; }
  cplx slope_left(int qubit, int k) const { return left_[idx(qubit, k)]; }
  cplx slope_right(int qubit, int k) const { return right_[idx(qubit, k)]; }

  /// Hermite value on mesh interval [k, k+1] at fraction s in [0, 1].
  cplx interpolate(int qubit, int k, double s) const;

 private:
  size_t idx(int qubit, int k) const {
    return static_cast<size_t>(qubit) * static_cast<size_t>(steps_ + 1) +
           static_cast<size_t>(k);
  }

  ChainConfig cfg_;
  InitialCondition init_;
  double dt_;
  int steps_;
  std::vector<cplx> alpha_;
  std::vector<cplx> left_;
  std::vector<cplx> right_;
};

/// Integrates to t_f (rounded up to whole steps). Every qubit distance and,
/// for pulses, every arrival time must be a whole number of steps
/// (MeshMismatch). StepTooLarge if dt exceeds L/8 or 0.05/gamma0, L being
/// the smallest qubit spacing.
DDEHistory integrate_chain(const ChainConfig& cfg, const InitialCondition& init,
                           double t_f, double dt);

/// Free incident field at (x, t): right- and left-moving parts.
std::pair<cplx, cplx> incident_field(const ChainConfig& cfg,
                                     const InitialCondition& init, double x,
                                     double t);

/// Field rebuilt from the qubit histories; OutOfRange when a needed
/// retarded time lies beyond the stored horizon.
std::pair<cplx, cplx> reconstruct_field(const DDEHistory& history, double x,
                                        double t);

/// Qubit populations plus the trapezoid-rule field norm of the rebuilt
/// field, with breakpoints at every kink.
double oracle_norm(const DDEHistory& history, double t);

/// Closed form e^{-gamma0 |t| / 2}.
double single_qubit_alpha(double t, double gamma0);
/// RK4 solution of d alpha / dt = -(gamma0 / 2) sign(t) alpha from
/// alpha(0) = 1, marching forward for t > 0 and backward for t < 0.
double single_qubit_alpha_ode(double t, double gamma0, double dt);

/// Delay-free limit: alpha(t) = exp(-J0 M t) alpha(0) with
/// M_jl = exp(i Omega |x_j - x_l|). Returns lab-frame amplitudes.
std::vector<cplx> markov_reference(const ChainConfig& cfg, int excited_qubit,
                                   double t);

using Reference = std::function<cplx(int qubit, double t)>;

struct ConvergenceReport {
  std::vector<double> dts;
  std::vector<double> errors;
  double order = 0.0;
};

/// Max error over qubits and `times` for each step size, and the
/// least-squares slope of log error against log dt.
ConvergenceReport convergence_study(const ChainConfig& cfg,
                                    const InitialCondition& init, double t_f,
                                    const std::vector<double>& dts,
                                    const Reference& reference,
                                    const std::vector<double>& times);

}  // namespace wqed::oracle
