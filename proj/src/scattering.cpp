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

#include "wqed/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace wqed {

namespace {

constexpr cplx kI{0.0, 1.0};

// Entire function with the same zeros as 1 - r^2 e^{2ikL}:
// (Delta + i J0)^2 + J0^2 e^{2i Omega L} e^{2i Delta L}.
cplx entire_denominator(const FabryPerot& fp, cplx delta) {
  const cplx shifted = delta + kI * fp.j0;
  return shifted * shifted + fp.j0 * fp.j0 *
                                 std::exp(2.0 * kI * fp.omega * fp.separation) *
                                 std::exp(2.0 * kI * delta * fp.separation);
}

cplx reflection(double j0, cplx delta) { return -kI * j0 / (delta + kI * j0); }
cplx transmission(double j0, cplx delta) { return delta / (delta + kI * j0); }

bool less_complex(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

double winding_segment(const std::function<cplx(cplx)>& g, cplx z0, cplx z1,
                       cplx g0, cplx g1, int depth) {
  const double dphi = std::arg(g1 / g0);
  if (std::abs(dphi) < std::numbers::pi / 8.0 || depth > 60) return dphi;
  const cplx zm = 0.5 * (z0 + z1);
  const cplx gm = g(zm);
  return winding_segment(g, z0, zm, g0, gm, depth + 1) +
         winding_segment(g, zm, z1, gm, g1, depth + 1);
}

}  // namespace

TransferFn::TransferFn(FabryPerot fp) : kind_(fp) {
  if (!(fp.j0 > 0.0) || !(fp.separation > 0.0) || !std::isfinite(fp.omega))
    throw Error(ErrorCode::InvalidArgument, "two-qubit chain needs j0 > 0 and L > 0");
}

cplx TransferFn::operator()(cplx delta) const {
  if (const auto* f = std::get_if<RationalFn>(&kind_)) return (*f)(delta);
  const auto& fp = std::get<FabryPerot>(kind_);
  const cplx k = fp.omega + delta;
  const cplx t = transmission(fp.j0, delta);
  const cplx r = reflection(fp.j0, delta);
  return t * t * std::exp(kI * k * fp.separation) /
         (1.0 - r * r * std::exp(2.0 * kI * k * fp.separation));
}

cplx TransferFn::denominator(cplx delta) const {
  if (const auto* f = std::get_if<RationalFn>(&kind_)) {
    cplx d{1.0, 0.0};
    for (const auto& p : f->poles()) d *= std::pow(delta - p.location, p.multiplicity);
    return d;
  }
  const auto& fp = std::get<FabryPerot>(kind_);
  const cplx r = reflection(fp.j0, delta);
  return 1.0 - r * r * std::exp(2.0 * kI * (fp.omega + delta) * fp.separation);
}

TransferFn chain_transmission(double j0, double omega, double separation) {
  return TransferFn(FabryPerot{j0, omega, separation});
}

cplx transmission_partial_sum(double j0, double omega, double separation,
                              cplx delta, int n_max) {
  const cplx k = omega + delta;
  const cplx t = transmission(j0, delta);
  const cplx r = reflection(j0, delta);
  const cplx round_trip = r * r * std::exp(2.0 * kI * k * separation);
  cplx term = t * t * std::exp(kI * k * separation);
  cplx sum{0.0, 0.0};
  for (int n = 0; n <= n_max; ++n) {
    sum += term;
    term *= round_trip;
  }
  return sum;
}

std::vector<cplx> find_poles(const TransferFn& f, const SearchWindow& window,
                             const PoleSearch& opts) {
  std::vector<cplx> poles;
  if (f.is_rational()) {
    for (const auto& p : f.rational().poles())
      if (window.contains(p.location)) poles.push_back(p.location);
    std::sort(poles.begin(), poles.end(), less_complex);
    return poles;
  }
  const auto& fp = f.fabry_perot();
  auto g = [&](cplx z) { return entire_denominator(fp, z); };
  const double scale = std::max({std::abs(window.re_min), std::abs(window.re_max),
                                 std::abs(window.im_min), std::abs(window.im_max)});
  std::vector<cplx> found;
  for (int a = 0; a < opts.grid; ++a) {
    for (int b = 0; b < opts.grid; ++b) {
      cplx z{window.re_min + (a + 0.5) * (window.re_max - window.re_min) / opts.grid,
             window.im_min + (b + 0.5) * (window.im_max - window.im_min) / opts.grid};
      bool converged = false;
      for (int it = 0; it < opts.max_iterations; ++it) {
        const double h = 1e-7 * (1.0 + std::abs(z));
        const cplx deriv = (g(z + h) - g(z - h)) / (2.0 * h);
        if (deriv == cplx{0.0, 0.0} || !std::isfinite(std::abs(deriv))) break;
        const cplx step = g(z) / deriv;
        z -= step;
        if (!std::isfinite(std::abs(z)) || std::abs(z) > 10.0 * scale + 10.0) break;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(z))) {
          converged = true;
          break;
        }
      }
      if (!converged) continue;
      if (!window.contains(z, 1e-12 * scale)) continue;
      if (!(std::abs(f.denominator(z)) < opts.residual)) continue;
      found.push_back(z);
    }
  }
  std::sort(found.begin(), found.end(), less_complex);
  for (cplx z : found) {
    const bool dup = std::any_of(poles.begin(), poles.end(), [&](cplx p) {
      return std::abs(p - z) < opts.dedupe;
    });
    if (!dup) poles.push_back(z);
  }
  return poles;
}

int count_zeros_above(const TransferFn& f, const SearchWindow& window, double floor) {
  if (f.is_rational()) return -1;
  const auto& fp = f.fabry_perot();
  const std::function<cplx(cplx)> g = [&](cplx z) { return entire_denominator(fp, z); };
  const cplx corners[4] = {{window.re_min, floor},
                           {window.re_max, floor},
                           {window.re_max, window.im_max},
                           {window.re_min, window.im_max}};
  constexpr int kPerEdge = 400;
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const cplx z0 = corners[e];
    const cplx z1 = corners[(e + 1) % 4];
    cplx prev_z = z0;
    cplx prev_g = g(z0);
    for (int s = 1; s <= kPerEdge; ++s) {
      const cplx z = z0 + (z1 - z0) * (static_cast<double>(s) / kPerEdge);
      const cplx gz = g(z);
      total += winding_segment(g, prev_z, z, prev_g, gz, 0);
      prev_z = z;
      prev_g = gz;
    }
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

NoUhpReport check_no_uhp(const TransferFn& f, const SearchWindow& window,
                         double margin) {
  NoUhpReport report;
  report.poles = find_poles(f, window);
  report.worst_im = -std::numeric_limits<double>::infinity();
  for (cplx p : report.poles) report.worst_im = std::max(report.worst_im, p.imag());
  report.pass = report.worst_im <= margin;
  if (!f.is_rational()) {
    const double floor = std::max(margin, 1e-6 * f.fabry_perot().j0);
    if (window.im_max > floor) {
      report.uhp_zero_count = count_zeros_above(f, window, floor);
      report.pass = report.pass && report.uhp_zero_count == 0;
    } else {
      report.uhp_zero_count = 0;
    }
  }
  return report;
}

}  // namespace wqed
