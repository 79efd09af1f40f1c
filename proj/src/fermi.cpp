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

#include "wqed/fermi.hpp"

#include <cmath>

namespace wqed::fermi {

namespace {

void check(double j0, double separation) {
  if (!(j0 > 0.0) || !(separation > 0.0))
    throw Error(ErrorCode::InvalidArgument, "j0 and separation must be > 0");
}

// a^k / k_fact_arg! evaluated in log space; a >= 0.
double power_over_factorial(double a, int k, int fact_arg) {
  if (a == 0.0) return k == 0 ? 1.0 / std::tgamma(fact_arg + 1.0) : 0.0;
  return std::exp(k * std::log(a) - std::lgamma(fact_arg + 1.0));
}

cplx decay(double tau, double j0, double omega) {
  return std::exp(-cplx{j0, omega} * tau);
}

// Theta(0) = 1/2 window on the delay variable.
double window(double tau) { return heaviside(tau); }

}  // namespace

ChainConfig config(double j0, double omega, double separation) {
  check(j0, separation);
  return ChainConfig::with_positions({-separation / 2.0, separation / 2.0}, omega, j0);
}

cplx e1(double t, double j0, double omega, double separation) {
  check(j0, separation);
  cplx sum{0.0, 0.0};
  for (int n = 0;; ++n) {
    const double tau = t - (2 * n + 1) * separation;
    if (tau < 0.0) break;
    sum -= window(tau) * power_over_factorial(tau * j0, 2 * n + 1, 2 * n + 1) *
           decay(tau, j0, omega);
  }
  return sum;
}

cplx e_m1(double t, double j0, double omega, double separation) {
  check(j0, separation);
  cplx sum{0.0, 0.0};
  for (int n = 0;; ++n) {
    const double tau = t - 2 * n * separation;
    if (tau < 0.0) break;
    sum += window(tau) * power_over_factorial(tau * j0, 2 * n, 2 * n) *
           decay(tau, j0, omega);
  }
  return sum;
}

FullState full_state(double t, double x, double j0, double omega,
                     double separation) {
  check(j0, separation);
  const double half = separation / 2.0;
  const double sj = std::sqrt(j0);
  const cplx i{0.0, 1.0};
  const double inside = heaviside(x + half) - heaviside(x - half);
  const double right_of = heaviside(x - half);
  const double left_of = heaviside(-(x + half));

  FullState s{};
  s.e_m1 = e_m1(t, j0, omega, separation);
  s.e_p1 = e1(t, j0, omega, separation);

  for (int n = 0; inside != 0.0; ++n) {
    const double tau = (t - 2 * n * separation) - (x + half);
    if (tau < 0.0) break;
    s.psi_r_internal += -i * sj * inside * window(tau) *
                        power_over_factorial(j0 * tau, 2 * n, 2 * n) *
                        decay(tau, j0, omega);
  }
  for (int n = 0; right_of != 0.0; ++n) {
    const double tau = (t - (2 * n + 1) * separation) - (x - half);
    if (tau < 0.0) break;
    const double a = tau * j0;
    s.psi_r_external += i * sj * right_of * window(tau) *
                        power_over_factorial(a, 2 * n, 2 * n + 1) *
                        (a - (2 * n + 1)) * decay(tau, j0, omega);
  }
  for (int n = 0; inside != 0.0; ++n) {
    const double tau = (t - (2 * n + 1) * separation) + (x - half);
    if (tau < 0.0) break;
    s.psi_l_internal += i * sj * inside * window(tau) *
                        power_over_factorial(tau * j0, 2 * n + 1, 2 * n + 1) *
                        decay(tau, j0, omega);
  }
  for (int n = 0; left_of != 0.0; ++n) {
    const double tau = (t - 2 * n * separation) + (x + half);
    if (tau < 0.0) break;
    const double a = tau * j0;
    // (a^(2n-1) / (2n)!) (a - 2n); the n = 0 polynomial is identically 1.
    const double poly = n == 0 ? 1.0
                               : power_over_factorial(a, 2 * n - 1, 2 * n) * (a - 2 * n);
    s.psi_l_external += -i * sj * left_of * window(tau) * poly * decay(tau, j0, omega);
  }
  return s;
}

namespace {

TimeSeriesAmplitude power_terms(double j0, double omega, double separation,
                                double t_f, int odd, double sign,
                                const char* label) {
  check(j0, separation);
  TimeSeriesAmplitude out;
  out.label = label;
  for (int n = 0;; ++n) {
    const int k = 2 * n + odd;
    const double delay = k * separation;
    if (!(delay < t_f)) break;
    DelayedTerm term;
    term.delay = delay;
    term.pole = cplx{0.0, -j0};
    term.carrier = omega;
    term.poly.assign(static_cast<size_t>(k + 1), cplx{0.0, 0.0});
    term.poly[static_cast<size_t>(k)] =
        sign * std::exp(k * std::log(j0) - std::lgamma(k + 1.0));
    out.terms.push_back(std::move(term));
  }
  return out;
}

}  // namespace

TimeSeriesAmplitude e1_terms(double j0, double omega, double separation, double t_f) {
  return power_terms(j0, omega, separation, t_f, 1, -1.0, "e:1");
}

TimeSeriesAmplitude e_m1_terms(double j0, double omega, double separation,
                               double t_f) {
  return power_terms(j0, omega, separation, t_f, 0, 1.0, "e:0");
}

CollectiveRates collective_rates(double gamma0, double theta) {
  const cplx phase = std::exp(cplx{0.0, theta});
  return CollectiveRates{gamma0 * (1.0 + phase), gamma0 * (1.0 - phase), theta};
}

cplx markovian_e1(double t, double gamma0, double theta, double omega) {
  const auto rates = collective_rates(gamma0, theta);
  return 0.5 * std::exp(cplx{0.0, -omega * t}) *
         (std::exp(-rates.gamma1 * t / 2.0) - std::exp(-rates.gamma2 * t / 2.0));
}

cplx markovian_e1_sinh(double t, double j0, double theta, double omega) {
  return -std::exp(-cplx{j0, omega} * t) *
         std::sinh(t * j0 * std::exp(cplx{0.0, theta}));
}

}  // namespace wqed::fermi
