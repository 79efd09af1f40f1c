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

// Scattering parameters in the complex detuning plane and a pole-location
// check for the upper half-plane.

#pragma once

#include <variant>
#include <vector>

#include "wqed/momentum.hpp"

namespace wqed {

struct SearchWindow {
  double re_min = -20.0;
  double re_max = 20.0;
  double im_min = -20.0;
  double im_max = 2.0;

  /// Default rectangle scaled by j0.
  static SearchWindow scaled(double j0) {
    return SearchWindow{-20.0 * j0, 20.0 * j0, -20.0 * j0, 2.0 * j0};
  }
  bool contains(cplx z, double slack = 0.0) const {
    return z.real() >= re_min - slack && z.real() <= re_max + slack &&
           z.imag() >= im_min - slack && z.imag() <= im_max + slack;
  }
};

/// Two identical qubits a distance L apart, transmission through both.
struct FabryPerot {
  double j0 = 1.0;
  double omega = 1.0;
  double separation = 1.0;
};

class TransferFn {
 public:
  explicit TransferFn(RationalFn f) : kind_(std::move(f)) {}
  explicit TransferFn(FabryPerot fp);

  cplx operator()(cplx delta) const;
  /// Function whose zeros are the poles: prod (Delta - p)^m for a
  /// rational input, 1 - r^2 e^{2ikL} for the two-qubit chain.
  cplx denominator(cplx delta) const;

  bool is_rational() const { return std::holds_alternative<RationalFn>(kind_); }
  const RationalFn& rational() const { return std::get<RationalFn>(kind_); }
  const FabryPerot& fabry_perot() const { return std::get<FabryPerot>(kind_); }

 private:
  std::variant<RationalFn, FabryPerot> kind_;
};

/// T(Delta) = t^2 e^{ikL} / (1 - r^2 e^{2ikL}), k = Omega + Delta.
TransferFn chain_transmission(double j0, double omega, double separation);

/// Sum over n <= n_max of t^2 (r^2 e^{2ikL})^n e^{ikL}: the transmitted
/// paths with n internal round trips.
cplx transmission_partial_sum(double j0, double omega, double separation,
                              cplx delta, int n_max);

struct PoleSearch {
  int grid = 40;
  int max_iterations = 50;
  double dedupe = 1e-8;
  double residual = 1e-10;
};

/// Poles inside the window, sorted by (real, imag). Seeds that fail to
/// converge are skipped.
std::vector<cplx> find_poles(const TransferFn& f, const SearchWindow& window,
                             const PoleSearch& opts = {});

/// Zeros of the denominator inside the window's part above Im = floor,
/// counted by the argument principle. Two-qubit kind only.
int count_zeros_above(const TransferFn& f, const SearchWindow& window,
                      double floor);

struct NoUhpReport {
  bool pass = false;
  std::vector<cplx> poles;
  /// Largest imaginary part among the poles; -inf when none.
  double worst_im = 0.0;
  /// Argument-principle count above the real axis (two-qubit kind), else -1.
  int uhp_zero_count = -1;
};

NoUhpReport check_no_uhp(const TransferFn& f, const SearchWindow& window,
                         double margin = 1e-9);

}  // namespace wqed
