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

// Shared domain types for single-excitation dynamics of a qubit chain coupled
// to a one-dimensional waveguide, plus evaluation of closed-form
// time-domain terms.
//
// Units: hbar = v_g = 1. Rates are measured in units of the coupling J0
// (single-emitter decay rate gamma0 = 2 J0), lengths and times in 1/J0.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace wqed {

using cplx = std::complex<double>;

enum class ErrorCode {
  InvalidArgument,
  Geometry,
  HorizonTooLarge,
  RealAxisPole,
  NotStrictlyProper,
  IllConditioned,
  CausalityViolation,
  StepTooLarge,
  MeshMismatch,
  OutOfRange,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class Direction { Right, Left };

inline Direction flipped(Direction d) {
  return d == Direction::Right ? Direction::Left : Direction::Right;
}

/// Heaviside step with the midpoint convention Theta(0) = 0.5.
inline double heaviside(double x) {
  if (x > 0.0) return 1.0;
  if (x < 0.0) return 0.0;
  return 0.5;
}

/// Geometry and physical constants of an identical-qubit chain.
class ChainConfig {
 public:
  /// Equally spaced chain with x_m = m * separation.
  static ChainConfig uniform(int num_qubits, double omega, double j0,
                             double separation);
  /// Arbitrary strictly increasing positions.
  static ChainConfig with_positions(std::vector<double> positions,
                                    double omega, double j0);

  int num_qubits() const { return static_cast<int>(positions_.size()); }
  double omega() const { return omega_; }
  double j0() const { return j0_; }
  double gamma0() const { return 2.0 * j0_; }
  /// Nominal spacing; 0 for a single qubit or a user-supplied position list
  /// that is not equally spaced.
  double separation() const { return separation_; }
  const std::vector<double>& positions() const { return positions_; }
  double position(int q) const { return positions_.at(static_cast<size_t>(q)); }

  /// Set when omega < 10 j0; the formalism stays valid but the physical
  /// rotating-wave regime is questionable.
  bool weak_separation_of_scales() const { return omega_ < 10.0 * j0_; }

 private:
  ChainConfig(std::vector<double> positions, double omega, double j0,
              double separation);

  std::vector<double> positions_;
  double omega_;
  double j0_;
  double separation_;
};

/// Incident right- or left-moving single photon with a one-sided decaying
/// exponential envelope sqrt(2 sigma) exp(-sigma |x - front|), supported
/// behind the front. The front sits x0 away from the first qubit it reaches
/// and the carrier is exp(+-i omega (x - front)).
struct PulseSpec {
  double sigma = 1.0;
  double x0 = 1.0;
  Direction direction = Direction::Right;
};

struct ExcitedQubit {
  int index = 0;
};

using InitialCondition = std::variant<ExcitedQubit, PulseSpec>;

void validate(const ChainConfig& cfg, const InitialCondition& init);

/// Position of the incident pulse front at t = 0.
double pulse_front(const ChainConfig& cfg, const PulseSpec& pulse);

enum class Support { Causal, AntiCausal };

/// Theta(tau) * sum_m poly[m] tau^m * exp(-i pole tau) * exp(-i carrier tau)
/// with tau = t - delay. Anti-causal terms carry Theta(-tau) instead.
struct DelayedTerm {
  double delay = 0.0;
  cplx pole{0.0, 0.0};
  std::vector<cplx> poly;
  double carrier = 0.0;
  Support support = Support::Causal;
};

cplx eval_term(const DelayedTerm& term, double t);

/// Term value without the Heaviside factor (analytic continuation of the
/// closed form to any tau).
cplx eval_term_smooth(const DelayedTerm& term, double t);

struct TimeSeriesAmplitude {
  std::vector<DelayedTerm> terms;
  std::string label;
};

cplx eval_series(const TimeSeriesAmplitude& series, double t);

/// Earliest time at which any causal term of the series switches on;
/// +infinity for an empty series.
double earliest_support(const TimeSeriesAmplitude& series);

}  // namespace wqed
