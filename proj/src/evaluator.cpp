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

#include "wqed/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wqed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Terms with the same pole and carrier and (nearly) the same delay are added.
void merge_terms(std::vector<DelayedTerm>& terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const DelayedTerm& a, const DelayedTerm& b) {
                     return a.delay < b.delay;
                   });
  std::vector<DelayedTerm> out;
  for (auto& term : terms) {
    DelayedTerm* hit = nullptr;
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
      if (term.delay - it->delay > 1e-12 * (1.0 + std::abs(term.delay))) break;
      if (it->pole == term.pole && it->carrier == term.carrier &&
          it->support == term.support) {
        hit = &*it;
        break;
      }
    }
    if (!hit) {
      out.push_back(std::move(term));
      continue;
    }
    if (hit->poly.size() < term.poly.size()) hit->poly.resize(term.poly.size());
    for (size_t m = 0; m < term.poly.size(); ++m) hit->poly[m] += term.poly[m];
  }
  terms = std::move(out);
}

// m! * Int_A^inf tau^m exp(-c tau) d tau, Re c > 0, A >= 0.
cplx upper_moment(int m, cplx c, double a) {
  if (std::isinf(a)) return {0.0, 0.0};
  const cplx log_c = std::log(c);
  const double lg_m = std::lgamma(m + 1.0);
  cplx sum{0.0, 0.0};
  for (int k = 0; k <= m; ++k) {
    if (k > 0 && a == 0.0) break;
    const double log_ak = k == 0 ? 0.0 : k * std::log(a);
    sum += std::exp(lg_m - std::lgamma(k + 1.0) + log_ak -
                    static_cast<double>(m - k + 1) * log_c - c * a);
  }
  return sum;
}

// Coefficients of p(tau + delta) in powers of tau.
std::vector<cplx> shifted(const std::vector<cplx>& p, double delta) {
  std::vector<cplx> out(p.size(), cplx{0.0, 0.0});
  for (size_t m = 0; m < p.size(); ++m) {
    double binom = 1.0;
    double dpow = 1.0;
    // Walk k = m, m-1, ..., 0; contributes p[m] C(m,k) delta^(m-k).
    for (size_t j = 0; j <= m; ++j) {
      const size_t k = m - j;
      out[k] += p[m] * binom * dpow;
      binom = binom * static_cast<double>(k) / static_cast<double>(j + 1);
      dpow *= delta;
    }
  }
  return out;
}

}  // namespace

cplx overlap_integral(const DelayedTerm& a, const DelayedTerm& b, double t,
                      double u_lo, double u_hi) {
  if (a.support != Support::Causal || b.support != Support::Causal)
    throw Error(ErrorCode::CausalityViolation, "overlap of anti-causal terms");
  const double ta = t - a.delay;
  const double tb = t - b.delay;
  if (ta > tb) return std::conj(overlap_integral(b, a, t, u_lo, u_hi));
  const double lo = std::max(0.0, ta - u_hi);
  const double hi = std::isinf(u_lo) ? kInf : ta - u_lo;
  if (!(hi > lo) || a.poly.empty() || b.poly.empty()) return {0.0, 0.0};
  const double delta = tb - ta;
  const cplx qa = a.pole + a.carrier;
  const cplx qb = b.pole + b.carrier;
  const cplx c = cplx{0.0, 1.0} * (qb - std::conj(qa));

  const std::vector<cplx> pb = shifted(b.poly, delta);
  std::vector<cplx> q(a.poly.size() + pb.size() - 1, cplx{0.0, 0.0});
  for (size_t i = 0; i < a.poly.size(); ++i)
    for (size_t j = 0; j < pb.size(); ++j) q[i + j] += std::conj(a.poly[i]) * pb[j];

  cplx sum{0.0, 0.0};
  for (size_t m = 0; m < q.size(); ++m) {
    if (q[m] == cplx{0.0, 0.0}) continue;
    const int mi = static_cast<int>(m);
    sum += q[m] * (upper_moment(mi, c, lo) - upper_moment(mi, c, hi));
  }
  return sum * std::exp(cplx{0.0, -1.0} * qb * delta);
}

Solution::Solution(const ChainConfig& cfg, const InitialCondition& init,
                   double t_f, std::size_t cap)
    : cfg_(cfg), init_(init), t_f_(t_f) {
  const auto diagrams = enumerate_diagrams(cfg, init, FinisherSpec{}, t_f, cap, &stats_);
  diagram_count_ = diagrams.size();
  const int n = cfg.num_qubits();
  qubits_.resize(static_cast<size_t>(n));
  for (int q = 0; q < n; ++q) qubits_[static_cast<size_t>(q)].label = "e:" + std::to_string(q);

  right_.resize(static_cast<size_t>(n + 1));
  left_.resize(static_cast<size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    const double lo = k == 0 ? -kInf : cfg.position(k - 1);
    const double hi = k == n ? kInf : cfg.position(k);
    auto& r = right_[static_cast<size_t>(k)];
    auto& l = left_[static_cast<size_t>(k)];
    r.lo = l.lo = lo;
    r.hi = l.hi = hi;
    r.series.label = "psi_r";
    l.series.label = "psi_l";
    r.source_position = lo;
    l.source_position = hi;
  }
  if (const auto* pulse = std::get_if<PulseSpec>(&init)) {
    const double front = pulse_front(cfg, *pulse);
    right_.front().source_position = front;
    left_.back().source_position = front;
  }

  for (const auto& d : diagrams) {
    const UnitCell& last = d.cells.back();
    if (const auto* fq = std::get_if<FinishQubit>(&last)) {
      auto series = finish_excitation(cfg, d);
      auto& dst = qubits_[static_cast<size_t>(fq->qubit)].terms;
      dst.insert(dst.end(), series.terms.begin(), series.terms.end());
    } else {
      FieldSeries fs = field_series(cfg, d);
      int k;
      if (fs.branch == Direction::Right)
        k = fs.from_qubit == kPulseSource ? 0 : fs.from_qubit + 1;
      else
        k = fs.from_qubit == kPulseSource ? n : fs.from_qubit;
      auto& seg = fs.branch == Direction::Right ? right_[static_cast<size_t>(k)]
                                                : left_[static_cast<size_t>(k)];
      seg.series.terms.insert(seg.series.terms.end(), fs.series.terms.begin(),
                              fs.series.terms.end());
    }
  }
  for (auto& q : qubits_) merge_terms(q.terms);
  for (auto& s : right_) merge_terms(s.series.terms);
  for (auto& s : left_) merge_terms(s.series.terms);
}

void Solution::check_time(double t) const {
  if (!(t < t_f_) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << "t=" << t << " is not below the enumeration horizon " << t_f_;
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
}

const TimeSeriesAmplitude& Solution::excitation(int qubit) const {
  if (qubit < 0 || qubit >= cfg_.num_qubits())
    throw Error(ErrorCode::InvalidArgument, "qubit index out of range");
  return qubits_[static_cast<size_t>(qubit)];
}

cplx Solution::excitation(int qubit, double t) const {
  check_time(t);
  return eval_series(excitation(qubit), t);
}

const SegmentSeries& Solution::segment(Direction branch, int k) const {
  if (k < 0 || k > cfg_.num_qubits())
    throw Error(ErrorCode::InvalidArgument, "segment index out of range");
  return branch == Direction::Right ? right_[static_cast<size_t>(k)]
                                    : left_[static_cast<size_t>(k)];
}

cplx Solution::segment_value(const SegmentSeries& s, Direction branch, double x,
                             double t) const {
  const double u = branch == Direction::Right ? x - s.source_position
                                              : s.source_position - x;
  return eval_series(s.series, t - u);
}

cplx Solution::branch_value(Direction branch, double x, double t) const {
  check_time(t);
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "x must be finite");
  const auto& xs = cfg_.positions();
  const auto it = std::lower_bound(xs.begin(), xs.end(), x);
  const int k = static_cast<int>(it - xs.begin());
  const auto& segs = branch == Direction::Right ? right_ : left_;
  if (it != xs.end() && *it == x) {
    // On a qubit: the two windows each weigh in with one half.
    return 0.5 * (segment_value(segs[static_cast<size_t>(k)], branch, x, t) +
                  segment_value(segs[static_cast<size_t>(k + 1)], branch, x, t));
  }
  return segment_value(segs[static_cast<size_t>(k)], branch, x, t);
}

cplx Solution::psi_r(double x, double t) const {
  return branch_value(Direction::Right, x, t);
}

cplx Solution::psi_l(double x, double t) const {
  return branch_value(Direction::Left, x, t);
}

FieldProfile Solution::field_profile(double t, const std::vector<double>& xs) const {
  FieldProfile out;
  out.t = t;
  out.samples.reserve(xs.size());
  for (double x : xs) out.samples.push_back(FieldSample{x, psi_r(x, t), psi_l(x, t)});
  return out;
}

double Solution::total_norm(double t) const {
  check_time(t);
  double norm = 0.0;
  for (const auto& q : qubits_) norm += std::norm(eval_series(q, t));
  for (Direction branch : {Direction::Right, Direction::Left}) {
    const auto& segs = branch == Direction::Right ? right_ : left_;
    for (const auto& s : segs) {
      // u = signed distance travelled from the source.
      double u_lo;
      double u_hi;
      if (branch == Direction::Right) {
        u_lo = s.lo - s.source_position;
        u_hi = s.hi - s.source_position;
      } else {
        u_lo = s.source_position - s.hi;
        u_hi = s.source_position - s.lo;
      }
      const auto& terms = s.series.terms;
      double seg = 0.0;
      for (size_t i = 0; i < terms.size(); ++i) {
        seg += overlap_integral(terms[i], terms[i], t, u_lo, u_hi).real();
        for (size_t j = i + 1; j < terms.size(); ++j)
          seg += 2.0 * overlap_integral(terms[i], terms[j], t, u_lo, u_hi).real();
      }
      norm += seg;
    }
  }
  return norm;
}

TimeSeriesAmplitude excitation_amplitude(const ChainConfig& cfg,
                                         const InitialCondition& init,
                                         int qubit, double t_f) {
  if (qubit < 0 || qubit >= cfg.num_qubits())
    throw Error(ErrorCode::InvalidArgument, "qubit index out of range");
  FinisherSpec spec;
  spec.fields = false;
  spec.qubit = qubit;
  TimeSeriesAmplitude out;
  out.label = "e:" + std::to_string(qubit);
  for (const auto& d : enumerate_diagrams(cfg, init, spec, t_f)) {
    auto series = finish_excitation(cfg, d);
    out.terms.insert(out.terms.end(), series.terms.begin(), series.terms.end());
  }
  return out;
}

namespace {
double just_past(double t) { return t + 1e-9 * (1.0 + std::abs(t)); }
}  // namespace

FieldProfile field_profile(const ChainConfig& cfg, const InitialCondition& init,
                           double t, const std::vector<double>& xs) {
  return Solution(cfg, init, just_past(t)).field_profile(t, xs);
}

double total_norm(const ChainConfig& cfg, const InitialCondition& init, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "t must be >= 0");
  return Solution(cfg, init, just_past(t)).total_norm(t);
}

double light_distance(const ChainConfig& cfg, const InitialCondition& init,
                      int qubit) {
  validate(cfg, init);
  const double xq = cfg.position(qubit);
  if (const auto* ex = std::get_if<ExcitedQubit>(&init))
    return std::abs(xq - cfg.position(ex->index));
  return std::abs(xq - pulse_front(cfg, std::get<PulseSpec>(init)));
}

double causality_probe(const ChainConfig& cfg, const InitialCondition& init,
                       int qubit) {
  const double d = light_distance(cfg, init, qubit);
  if (!(d > 0.0))
    throw Error(ErrorCode::InvalidArgument,
                "causality probe needs a qubit away from the initial excitation");
  const Solution sol(cfg, init, just_past(d));
  constexpr int kPoints = 2000;
  double worst = 0.0;
  for (int i = 1; i <= kPoints; ++i) {
    const double t = d * i / kPoints;
    worst = std::max(worst, std::abs(sol.excitation(qubit, t)));
  }
  return worst;
}

}  // namespace wqed
