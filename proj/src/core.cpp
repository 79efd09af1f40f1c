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

#include "wqed/core.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace wqed {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Geometry: return "GeometryError";
    case ErrorCode::HorizonTooLarge: return "HorizonTooLarge";
    case ErrorCode::RealAxisPole: return "RealAxisPole";
    case ErrorCode::NotStrictlyProper: return "NotStrictlyProper";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::CausalityViolation: return "CausalityViolation";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::MeshMismatch: return "MeshMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
  }
  return "Unknown";
}

ChainConfig::ChainConfig(std::vector<double> positions, double omega,
                         double j0, double separation)
    : positions_(std::move(positions)),
      omega_(omega),
      j0_(j0),
      separation_(separation) {
  if (positions_.empty())
    throw Error(ErrorCode::InvalidArgument, "chain needs at least one qubit");
  if (!(std::isfinite(omega_) && omega_ > 0.0))
    throw Error(ErrorCode::InvalidArgument, "omega must be finite and > 0");
  if (!(std::isfinite(j0_) && j0_ > 0.0))
    throw Error(ErrorCode::InvalidArgument, "j0 must be finite and > 0");
  for (size_t i = 0; i < positions_.size(); ++i) {
    if (!std::isfinite(positions_[i]))
      throw Error(ErrorCode::InvalidArgument, "qubit positions must be finite");
    if (i > 0 && !(positions_[i] > positions_[i - 1]))
      throw Error(ErrorCode::InvalidArgument,
                  "qubit positions must be strictly increasing");
  }
}

ChainConfig ChainConfig::uniform(int num_qubits, double omega, double j0,
                                 double separation) {
  if (num_qubits < 1)
    throw Error(ErrorCode::InvalidArgument, "num_qubits must be positive");
  if (!(std::isfinite(separation) && separation >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "separation must be >= 0");
  if (num_qubits > 1 && separation == 0.0)
    throw Error(ErrorCode::InvalidArgument,
                "separation must be > 0 for more than one qubit");
  std::vector<double> xs(static_cast<size_t>(num_qubits));
  for (int m = 0; m < num_qubits; ++m) xs[static_cast<size_t>(m)] = m * separation;
  return ChainConfig(std::move(xs), omega, j0, separation);
}

ChainConfig ChainConfig::with_positions(std::vector<double> positions,
                                        double omega, double j0) {
  double sep = 0.0;
  if (positions.size() > 1) {
    sep = positions[1] - positions[0];
    for (size_t i = 2; i < positions.size(); ++i) {
      double gap = positions[i] - positions[i - 1];
      if (std::abs(gap - sep) > 1e-12 * (1.0 + std::abs(sep))) {
        sep = 0.0;
        break;
      }
    }
  }
  return ChainConfig(std::move(positions), omega, j0, sep);
}

void validate(const ChainConfig& cfg, const InitialCondition& init) {
  if (const auto* ex = std::get_if<ExcitedQubit>(&init)) {
    if (ex->index < 0 || ex->index >= cfg.num_qubits()) {
      std::ostringstream msg;
      msg << "excited qubit index " << ex->index << " outside [0, "
          << cfg.num_qubits() << ")";
      throw Error(ErrorCode::InvalidArgument, msg.str());
    }
    return;
  }
  const auto& p = std::get<PulseSpec>(init);
  if (!(std::isfinite(p.sigma) && p.sigma > 0.0))
    throw Error(ErrorCode::InvalidArgument, "pulse sigma must be > 0");
  if (!(std::isfinite(p.x0) && p.x0 > 0.0))
    throw Error(ErrorCode::InvalidArgument, "pulse x0 must be > 0");
}

double pulse_front(const ChainConfig& cfg, const PulseSpec& pulse) {
  return pulse.direction == Direction::Right
             ? cfg.positions().front() - pulse.x0
             : cfg.positions().back() + pulse.x0;
}

cplx eval_term_smooth(const DelayedTerm& term, double t) {
  const double tau = t - term.delay;
  cplx acc{0.0, 0.0};
  for (auto it = term.poly.rbegin(); it != term.poly.rend(); ++it)
    acc = acc * tau + *it;
  const cplx phase = std::exp(cplx(0.0, -1.0) * (term.pole + term.carrier) * tau);
  return acc * phase;
}

cplx eval_term(const DelayedTerm& term, double t) {
  const double tau = t - term.delay;
  const double weight =
      term.support == Support::Causal ? heaviside(tau) : heaviside(-tau);
  if (weight == 0.0) return {0.0, 0.0};
  return weight * eval_term_smooth(term, t);
}

cplx eval_series(const TimeSeriesAmplitude& series, double t) {
  cplx sum{0.0, 0.0};
  for (const auto& term : series.terms) sum += eval_term(term, t);
  return sum;
}

double earliest_support(const TimeSeriesAmplitude& series) {
  double earliest = std::numeric_limits<double>::infinity();
  for (const auto& term : series.terms)
    if (term.support == Support::Causal) earliest = std::min(earliest, term.delay);
  return earliest;
}

}  // namespace wqed
