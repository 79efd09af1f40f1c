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

// Observables assembled from the enumerated diagrams.
//
// The chain splits the line into N + 1 segments; segment k lies between
// qubits k-1 and k. Right-moving light in segment k comes from qubit k-1
// (or from a right-moving pulse when k = 0), left-moving light from qubit k
// (or a left-moving pulse when k = N). Each (branch, segment) pair holds one
// merged series referenced to its source position.

#pragma once

#include <cstddef>
#include <vector>

#include "wqed/diagrams.hpp"

namespace wqed {

struct FieldSample {
  double x = 0.0;
  cplx psi_r{0.0, 0.0};
  cplx psi_l{0.0, 0.0};
};

struct FieldProfile {
  double t = 0.0;
  std::vector<FieldSample> samples;
};

struct SegmentSeries {
  /// Open interval (lo, hi); infinite ends allowed.
  double lo = 0.0;
  double hi = 0.0;
  double source_position = 0.0;
  TimeSeriesAmplitude series;
};

class Solution {
 public:
  /// Enumerates once; the result is exact for every t < t_f.
  Solution(const ChainConfig& cfg, const InitialCondition& init, double t_f,
           std::size_t cap = kDefaultDiagramCap);

  const ChainConfig& config() const { return cfg_; }
  const InitialCondition& initial() const { return init_; }
  double horizon() const { return t_f_; }
  std::size_t diagram_count() const { return diagram_count_; }
  const EnumerationStats& stats() const { return stats_; }

  const TimeSeriesAmplitude& excitation(int qubit) const;
  cplx excitation(int qubit, double t) const;

  const SegmentSeries& segment(Direction branch, int k) const;
  cplx psi_r(double x, double t) const;
  cplx psi_l(double x, double t) const;
  FieldProfile field_profile(double t, const std::vector<double>& xs) const;

  /// Qubit populations plus the field norm integrated in closed form.
  double total_norm(double t) const;

 private:
  void check_time(double t) const;
  cplx segment_value(const SegmentSeries& s, Direction branch, double x,
                     double t) const;
  cplx branch_value(Direction branch, double x, double t) const;

  ChainConfig cfg_;
  InitialCondition init_;
  double t_f_;
  std::size_t diagram_count_ = 0;
  EnumerationStats stats_;
  std::vector<TimeSeriesAmplitude> qubits_;
  std::vector<SegmentSeries> right_;
  std::vector<SegmentSeries> left_;
};

TimeSeriesAmplitude excitation_amplitude(const ChainConfig& cfg,
                                         const InitialCondition& init,
                                         int qubit, double t_f);

/// Enumerates up to just past t.
FieldProfile field_profile(const ChainConfig& cfg, const InitialCondition& init,
                           double t, const std::vector<double>& xs);

double total_norm(const ChainConfig& cfg, const InitialCondition& init, double t);

/// Largest |e_qubit(t)| on a 2000-point grid over (0, d], d being the light
/// travel time from the initial excitation to the qubit.
double causality_probe(const ChainConfig& cfg, const InitialCondition& init,
                       int qubit);

/// Light travel time from the initial excitation to `qubit`.
double light_distance(const ChainConfig& cfg, const InitialCondition& init,
                      int qubit);

/// Integral over u in [u_lo, u_hi] of conj(a(t - u)) * b(t - u), each term
/// evaluated with its causal window. u_lo may be -infinity.
cplx overlap_integral(const DelayedTerm& a, const DelayedTerm& b, double t,
                      double u_lo, double u_hi);

}  // namespace wqed
