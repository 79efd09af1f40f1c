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

// Rational functions of the detuned momentum Delta = E_k - Omega and the
// residue-calculus inverse transform that maps them to DelayedTerms.
//
// Numerators are stored factored (prefactor times linear factors). Every
// product the diagram rules form is then exact: zeros and poles are
// concatenated, never re-expanded, and partial fractions are built from
// local Taylor series at each pole.

#pragma once

#include <vector>

#include "wqed/core.hpp"

namespace wqed {

struct Pole {
  cplx location;
  int multiplicity = 1;
};

class RationalFn {
 public:
  /// prefactor * prod_i (Delta - zeros[i]) / prod_j (Delta - poles[j])^m_j.
  /// Coincident poles merge, zeros cancel against poles, and both lists are
  /// kept sorted by (real, imag).
  RationalFn(cplx prefactor, std::vector<cplx> zeros, std::vector<Pole> poles);

  static RationalFn constant(cplx value);

  cplx operator()(cplx delta) const;

  cplx prefactor() const { return prefactor_; }
  const std::vector<cplx>& zeros() const { return zeros_; }
  const std::vector<Pole>& poles() const { return poles_; }

  /// Expanded numerator coefficients in ascending powers, prefactor included.
  std::vector<cplx> numerator() const;
  int numerator_degree() const;
  int denominator_degree() const;
  bool is_strictly_proper() const;

  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  RationalFn& operator*=(const RationalFn& other);
  friend RationalFn operator*(cplx scale, const RationalFn& f);

 private:
  void canonicalize();

  cplx prefactor_;
  std::vector<cplx> zeros_;
  std::vector<Pole> poles_;
};

/// Two points closer than this (relative) are the same pole.
inline constexpr double kPoleMergeTolerance = 1e-12;
/// Distinct, unmerged poles closer than this make partial fractions
/// ill-conditioned.
inline constexpr double kPoleSeparationFloor = 1e-9;

RationalFn mul(const RationalFn& a, const RationalFn& b);

/// Single-qubit transmission t_k = Delta / (Delta + i J0).
RationalFn coeff_t(double j0);
/// Single-qubit reflection r_k = -i J0 / (Delta + i J0).
RationalFn coeff_r(double j0);
/// Single-qubit excitation e_k = sqrt(J0) / (Delta + i J0).
RationalFn coeff_e(double j0);

struct PartialFraction {
  cplx pole;
  int order = 1;
  cplx coefficient;
};

/// f = sum coefficient / (Delta - pole)^order. Requires strict properness.
/// Reconstruction is verified at 16 deterministic real sample points; a
/// relative mismatch above 1e-10 raises IllConditioned.
std::vector<PartialFraction> partial_fractions(const RationalFn& f);

/// (1 / 2 pi) Int dDelta f(Delta) exp(-i Delta tau) exp(-i carrier tau),
/// tau = t - delay, as one DelayedTerm per distinct pole. Lower half-plane
/// poles give causal terms; upper half-plane poles give anti-causal terms
/// (support tau < 0). Poles on the real axis raise RealAxisPole.
std::vector<DelayedTerm> inverse_transform(const RationalFn& f, double delay,
                                           double carrier);

struct PulseSpectrum {
  RationalFn spectrum;
  /// Time for the front to reach the first qubit; absorbs the pure phase
  /// exp(i Delta x0) of the spectrum taken about that qubit.
  double arrival_delay;
};

/// Momentum representation of the decaying-exponential pulse,
/// i sqrt(2 sigma) / (Delta + i sigma).
PulseSpectrum pulse_spectrum(const PulseSpec& pulse);

}  // namespace wqed
