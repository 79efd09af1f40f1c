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

#include "wqed/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace wqed {

namespace {

bool less_complex(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

bool coincident(cplx a, cplx b) {
  return std::abs(a - b) < kPoleMergeTolerance * (1.0 + std::abs(a));
}

// Multiply a truncated power series in h by (c0 + h).
void mul_linear(std::vector<cplx>& series, cplx c0) {
  for (size_t k = series.size(); k-- > 0;) {
    series[k] *= c0;
    if (k > 0) series[k] += series[k - 1];
  }
}

// Multiply a truncated power series in h by (a + h)^(-m).
void mul_inverse_power(std::vector<cplx>& series, cplx a, int m) {
  const size_t n = series.size();
  std::vector<cplx> factor(n);
  // (a + h)^(-m) = a^(-m) sum_k (-1)^k C(m+k-1, k) (h/a)^k
  cplx c = std::pow(a, -m);
  for (size_t k = 0; k < n; ++k) {
    factor[k] = c;
    c *= -static_cast<double>(m + static_cast<int>(k)) /
         static_cast<double>(k + 1) / a;
  }
  std::vector<cplx> out(n, cplx{0.0, 0.0});
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; i + j < n; ++j) out[i + j] += series[i] * factor[j];
  series = std::move(out);
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

RationalFn::RationalFn(cplx prefactor, std::vector<cplx> zeros,
                       std::vector<Pole> poles)
    : prefactor_(prefactor), zeros_(std::move(zeros)), poles_(std::move(poles)) {
  canonicalize();
}

RationalFn RationalFn::constant(cplx value) { return RationalFn(value, {}, {}); }

void RationalFn::canonicalize() {
  for (const auto& p : poles_)
    if (p.multiplicity < 1)
      throw Error(ErrorCode::InvalidArgument, "pole multiplicity must be >= 1");
  if (prefactor_ == cplx{0.0, 0.0}) {
    zeros_.clear();
    poles_.clear();
    return;
  }
  std::sort(poles_.begin(), poles_.end(),
            [](const Pole& a, const Pole& b) { return less_complex(a.location, b.location); });
  std::vector<Pole> merged;
  for (const auto& p : poles_) {
    auto hit = std::find_if(merged.begin(), merged.end(),
                            [&](const Pole& q) { return coincident(q.location, p.location); });
    if (hit != merged.end())
      hit->multiplicity += p.multiplicity;
    else
      merged.push_back(p);
  }
  std::vector<cplx> kept;
  for (cplx z : zeros_) {
    auto hit = std::find_if(merged.begin(), merged.end(),
                            [&](const Pole& q) { return coincident(q.location, z); });
    if (hit != merged.end() && hit->multiplicity > 0)
      --hit->multiplicity;
    else
      kept.push_back(z);
  }
  std::erase_if(merged, [](const Pole& p) { return p.multiplicity == 0; });
  std::sort(kept.begin(), kept.end(), less_complex);
  zeros_ = std::move(kept);
  poles_ = std::move(merged);
}

cplx RationalFn::operator()(cplx delta) const {
  cplx value = prefactor_;
  for (cplx z : zeros_) value *= (delta - z);
  for (const auto& p : poles_) value /= std::pow(delta - p.location, p.multiplicity);
  return value;
}

std::vector<cplx> RationalFn::numerator() const {
  std::vector<cplx> coeffs{prefactor_};
  for (cplx z : zeros_) {
    coeffs.push_back(cplx{0.0, 0.0});
    for (size_t k = coeffs.size() - 1; k > 0; --k)
      coeffs[k] = coeffs[k - 1] - z * coeffs[k];
    coeffs[0] *= -z;
  }
  return coeffs;
}

int RationalFn::numerator_degree() const {
  return prefactor_ == cplx{0.0, 0.0} ? -1 : static_cast<int>(zeros_.size());
}

int RationalFn::denominator_degree() const {
  int deg = 0;
  for (const auto& p : poles_) deg += p.multiplicity;
  return deg;
}

bool RationalFn::is_strictly_proper() const {
  return numerator_degree() < denominator_degree();
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  std::vector<cplx> zeros = a.zeros_;
  zeros.insert(zeros.end(), b.zeros_.begin(), b.zeros_.end());
  std::vector<Pole> poles = a.poles_;
  poles.insert(poles.end(), b.poles_.begin(), b.poles_.end());
  return RationalFn(a.prefactor_ * b.prefactor_, std::move(zeros), std::move(poles));
}

RationalFn& RationalFn::operator*=(const RationalFn& other) {
  *this = *this * other;
  return *this;
}

RationalFn operator*(cplx scale, const RationalFn& f) {
  return RationalFn(scale * f.prefactor_, f.zeros_, f.poles_);
}

RationalFn mul(const RationalFn& a, const RationalFn& b) { return a * b; }

RationalFn coeff_t(double j0) {
  return RationalFn(1.0, {cplx{0.0, 0.0}}, {Pole{cplx{0.0, -j0}, 1}});
}

RationalFn coeff_r(double j0) {
  return RationalFn(cplx{0.0, -j0}, {}, {Pole{cplx{0.0, -j0}, 1}});
}

RationalFn coeff_e(double j0) {
  return RationalFn(std::sqrt(j0), {}, {Pole{cplx{0.0, -j0}, 1}});
}

std::vector<PartialFraction> partial_fractions(const RationalFn& f) {
  if (!f.is_strictly_proper())
    throw Error(ErrorCode::NotStrictlyProper,
                "partial fractions need a strictly proper function; split off "
                "the polynomial part first");
  const auto& poles = f.poles();
  for (size_t i = 0; i < poles.size(); ++i)
    for (size_t j = i + 1; j < poles.size(); ++j)
      if (std::abs(poles[i].location - poles[j].location) < kPoleSeparationFloor) {
        std::ostringstream msg;
        msg << "distinct poles " << poles[i].location << " and "
            << poles[j].location << " are closer than " << kPoleSeparationFloor;
        throw Error(ErrorCode::IllConditioned, msg.str());
      }

  std::vector<PartialFraction> out;
  for (size_t i = 0; i < poles.size(); ++i) {
    const cplx p = poles[i].location;
    const int m = poles[i].multiplicity;
    // Taylor series of (Delta - p)^m f(Delta) about p, up to h^(m-1).
    std::vector<cplx> series(static_cast<size_t>(m), cplx{0.0, 0.0});
    series[0] = f.prefactor();
    for (cplx z : f.zeros()) mul_linear(series, p - z);
    for (size_t j = 0; j < poles.size(); ++j)
      if (j != i) mul_inverse_power(series, p - poles[j].location, poles[j].multiplicity);
    for (int k = 0; k < m; ++k)
      out.push_back(PartialFraction{p, m - k, series[static_cast<size_t>(k)]});
  }

  // Reconstruction self-check on real sample points spread over the pole scale.
  double scale = 1.0;
  for (const auto& p : poles) scale = std::max(scale, std::abs(p.location));
  double max_value = 0.0;
  double max_error = 0.0;
  constexpr int kSamples = 16;
  for (int s = 0; s < kSamples; ++s) {
    const double angle = std::numbers::pi * ((s + 0.5) / kSamples - 0.5);
    const cplx delta{scale * std::tan(angle), 0.0};
    const cplx direct = f(delta);
    if (!std::isfinite(direct.real()) || !std::isfinite(direct.imag())) continue;
    cplx recon{0.0, 0.0};
    for (const auto& pf : out) recon += pf.coefficient / std::pow(delta - pf.pole, pf.order);
    max_value = std::max(max_value, std::abs(direct));
    max_error = std::max(max_error, std::abs(recon - direct));
  }
  if (max_error > 1e-10 * max_value + 1e-300) {
    std::ostringstream msg;
    msg << "partial-fraction reconstruction error " << max_error
        << " exceeds 1e-10 relative (scale " << max_value << ")";
    throw Error(ErrorCode::IllConditioned, msg.str());
  }
  return out;
}

std::vector<DelayedTerm> inverse_transform(const RationalFn& f, double delay,
                                           double carrier) {
  for (const auto& p : f.poles())
    if (std::abs(p.location.imag()) <= 1e-13 * (1.0 + std::abs(p.location))) {
      std::ostringstream msg;
      msg << "pole " << p.location << " lies on the real axis";
      throw Error(ErrorCode::RealAxisPole, msg.str());
    }
  const auto pieces = partial_fractions(f);
  const cplx minus_i{0.0, -1.0};
  std::vector<DelayedTerm> terms;
  for (const auto& p : f.poles()) {
    DelayedTerm term;
    term.delay = delay;
    term.pole = p.location;
    term.carrier = carrier;
    const bool causal = p.location.imag() < 0.0;
    term.support = causal ? Support::Causal : Support::AntiCausal;
    term.poly.assign(static_cast<size_t>(p.multiplicity), cplx{0.0, 0.0});
    const cplx sign = causal ? minus_i : -minus_i;
    for (const auto& piece : pieces) {
      if (piece.pole != p.location) continue;
      const int k = piece.order - 1;
      term.poly[static_cast<size_t>(k)] +=
          sign * piece.coefficient * std::pow(minus_i, k) / factorial(k);
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

PulseSpectrum pulse_spectrum(const PulseSpec& pulse) {
  if (!(pulse.sigma > 0.0) || !(pulse.x0 > 0.0))
    throw Error(ErrorCode::InvalidArgument, "pulse needs sigma > 0 and x0 > 0");
  const double amp = std::sqrt(2.0 * pulse.sigma);
  return PulseSpectrum{
      RationalFn(cplx{0.0, amp}, {}, {Pole{cplx{0.0, -pulse.sigma}, 1}}),
      pulse.x0};
}

}  // namespace wqed
