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

// Closed forms for two qubits at x = -L/2 (initially excited) and x = +L/2.
// Sums are truncated exactly where the Heaviside factors switch off.

#pragma once

#include "wqed/core.hpp"

namespace wqed::fermi {

/// The two-qubit configuration these formulas describe; qubit 0 sits at
/// -L/2 and starts excited, qubit 1 sits at +L/2.
ChainConfig config(double j0, double omega, double separation);

/// Amplitude of the initially ground-state qubit.
cplx e1(double t, double j0, double omega, double separation);
/// Amplitude of the initially excited qubit.
cplx e_m1(double t, double j0, double omega, double separation);

struct FullState {
  cplx e_m1;
  cplx e_p1;
  cplx psi_r_internal;
  cplx psi_r_external;
  cplx psi_l_internal;
  cplx psi_l_external;
};

/// All six components at (x, t). Field windows use Theta(0) = 1/2.
FullState full_state(double t, double x, double j0, double omega,
                     double separation);

/// Same series in term form, for term-by-term comparison; every delay is
/// below t_f.
TimeSeriesAmplitude e1_terms(double j0, double omega, double separation,
                             double t_f);
TimeSeriesAmplitude e_m1_terms(double j0, double omega, double separation,
                               double t_f);

struct CollectiveRates {
  cplx gamma1;
  cplx gamma2;
  double theta = 0.0;
};

CollectiveRates collective_rates(double gamma0, double theta);

/// Instantaneous-feedback limit of e1.
cplx markovian_e1(double t, double gamma0, double theta, double omega);

/// Delay-free resummation -exp(-(J0 + i Omega) t) sinh(t J0 e^{i theta}).
cplx markovian_e1_sinh(double t, double j0, double theta, double omega);

}  // namespace wqed::fermi
