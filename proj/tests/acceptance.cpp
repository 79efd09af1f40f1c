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

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "wqed/diagrams.hpp"
#include "wqed/evaluator.hpp"
#include "wqed/fermi.hpp"
#include "wqed/oracle.hpp"
#include "wqed/scattering.hpp"

using namespace wqed;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

struct Outcome {
  bool pass = true;
  std::string detail;
};

void note(Outcome& o, bool ok, const std::string& what) {
  if (!ok) o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += what + (ok ? "" : " [miss]");
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt2(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::map<long long, std::vector<cplx>> collapse(const TimeSeriesAmplitude& s, bool& uniform,
                                                cplx pole, double carrier) {
  std::map<long long, std::vector<cplx>> out;
  for (const auto& t : s.terms) {
    if (std::abs(t.pole - pole) > 1e-12 || std::abs(t.carrier - carrier) > 1e-12 ||
        t.support != Support::Causal)
      uniform = false;
    auto& p = out[std::llround(t.delay * 1e9)];
    if (p.size() < t.poly.size()) p.resize(t.poly.size(), cplx{0.0, 0.0});
    for (size_t k = 0; k < t.poly.size(); ++k) p[k] += t.poly[k];
  }
  return out;
}

// Largest coefficient mismatch between two series after grouping by delay;
// infinity when the delay sets differ.
double term_mismatch(const TimeSeriesAmplitude& a, const TimeSeriesAmplitude& b, cplx pole,
                     double carrier) {
  bool uniform = true;
  const auto ca = collapse(a, uniform, pole, carrier);
  const auto cb = collapse(b, uniform, pole, carrier);
  if (!uniform || ca.size() != cb.size()) return INFINITY;
  double worst = 0.0;
  for (auto ia = ca.begin(), ib = cb.begin(); ia != ca.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return INFINITY;
    const size_t n = std::max(ia->second.size(), ib->second.size());
    for (size_t k = 0; k < n; ++k) {
      const cplx x = k < ia->second.size() ? ia->second[k] : cplx{0.0, 0.0};
      const cplx y = k < ib->second.size() ? ib->second[k] : cplx{0.0, 0.0};
      worst = std::max(worst, std::abs(x - y) / (1.0 + std::abs(y)));
    }
  }
  return worst;
}

Outcome worked_diagram() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const double j0 = 1.0, omega = 200.0, sep = 1.0;
  const auto cfg = fermi::config(j0, omega, sep);
  Diagram d;
  d.cells = {StarterExcited{0, Direction::Right}, FreeProp{sep}, FinishQubit{1}};
  d.total_delay = sep;
  const auto s = finish_excitation(cfg, d);
  bool symbolic = s.terms.size() == 1;
  if (symbolic) {
    const auto& t = s.terms[0];
    symbolic = std::abs(t.delay - sep) < 1e-15 && std::abs(t.pole - cplx{0.0, -j0}) < 1e-15 &&
               t.carrier == omega && t.support == Support::Causal && t.poly.size() == 2 &&
               std::abs(t.poly[0]) < 1e-15 && std::abs(t.poly[1] - cplx{-j0, 0.0}) < 1e-15;
  }
  note(o, symbolic, "term fields {delay L, pole -iJ0, carrier Omega, poly [0, -J0]}");
  double worst = 0.0;
  for (int i = 1; i <= 4000; ++i) {
    const double t = sep + 4.0 * sep * i / 4000;
    const double tau = t - sep;
    const cplx expect = -j0 * tau * std::exp(-cplx{j0, omega} * tau);
    worst = std::max(worst, std::abs(eval_series(s, t) - expect));
  }
  note(o, worst < 1e-12, fmt("max |err| on (L,5L] = %.2e (< 1e-12)", worst));
  const double rt = seconds_since(t0);
  note(o, rt < 1.0, fmt("runtime %.3f s (< 1 s)", rt));
  return o;
}

Outcome fermi_series() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const double j0 = 1.0, omega = 200.0, sep = 1.0, t_f = 20.0 * sep;
  const auto cfg = fermi::config(j0, omega, sep);
  const Solution sol(cfg, ExcitedQubit{0}, t_f);
  const double m1 = term_mismatch(sol.excitation(1), fermi::e1_terms(j0, omega, sep, t_f),
                                  cplx{0.0, -j0}, omega);
  const double m0 = term_mismatch(sol.excitation(0), fermi::e_m1_terms(j0, omega, sep, t_f),
                                  cplx{0.0, -j0}, omega);
  note(o, m1 < 1e-12 && m0 < 1e-12,
       fmt2("term-by-term coefficient mismatch e1 %.1e, e-1 %.1e", m1, m0));

  // Qubit components on 2001 times, field components on 2001 positions at
  // several times.
  double worst = 0.0;
  for (int i = 1; i <= 2001; ++i) {
    const double t = t_f * i / 2002.0;
    const auto fs = fermi::full_state(t, 0.0, j0, omega, sep);
    worst = std::max(worst, std::abs(sol.excitation(0, t) - fs.e_m1));
    worst = std::max(worst, std::abs(sol.excitation(1, t) - fs.e_p1));
  }
  for (double t : {0.7, 1.5, 3.3, 7.9, 12.2, 19.4}) {
    for (int i = 0; i < 2001; ++i) {
      const double x = -10.0 + 20.0 * i / 2000.0;
      if (std::abs(std::abs(x) - sep / 2) < 1e-12) continue;
      const auto fs = fermi::full_state(t, x, j0, omega, sep);
      const bool inside = std::abs(x) < sep / 2;
      worst = std::max(worst, std::abs(sol.psi_r(x, t) -
                                       (inside ? fs.psi_r_internal : fs.psi_r_external)));
      worst = std::max(worst, std::abs(sol.psi_l(x, t) -
                                       (inside ? fs.psi_l_internal : fs.psi_l_external)));
    }
  }
  note(o, worst < 1e-10, fmt("six components max |err| = %.2e (< 1e-10)", worst));
  const double rt = seconds_since(t0);
  note(o, rt < 10.0, fmt("runtime %.3f s (< 10 s)", rt));
  return o;
}

Outcome causality() {
  Outcome o;
  const double j0 = 1.0, omega = 200.0, sep = 0.75;
  const auto cfg = fermi::config(j0, omega, sep);
  const Solution sol(cfg, ExcitedQubit{0}, 12.0 * sep);
  double earliest = INFINITY;
  for (const auto& t : sol.excitation(1).terms)
    earliest = std::min(earliest, t.support == Support::Causal ? t.delay : -INFINITY);
  note(o, earliest >= sep, fmt("earliest e1 term support %.6f >= L", earliest));
  double engine_before = 0.0;
  for (int i = 0; i <= 5000; ++i)
    engine_before = std::max(engine_before, std::abs(sol.excitation(1, sep * i / 5000.0)));
  note(o, engine_before == 0.0, fmt("engine max |e1(t<=L)| = %.1e (exactly 0)", engine_before));
  const auto h = oracle::integrate_chain(cfg, ExcitedQubit{0}, 2.0 * sep, sep / 256);
  double oracle_before = 0.0;
  for (int k = 0; k < 256; ++k) oracle_before = std::max(oracle_before, std::abs(h.alpha(1, k * sep / 256)));
  for (double t = 0.0; t < sep; t += sep / 1999)
    oracle_before = std::max(oracle_before, std::abs(h.alpha(1, t)));
  note(o, oracle_before < 1e-7, fmt("oracle max |alpha1(t<L)| = %.1e (< 1e-7)", oracle_before));
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const double sep = 0.75, j0 = 1.0, omega = 200.0, dt = sep / 256, t_f = 8.0 * sep;
  double worst = 0.0;
  int runs = 0;
  for (int n = 1; n <= 3; ++n) {
    const auto cfg = ChainConfig::uniform(n, omega, j0, n == 1 ? 0.0 : sep);
    std::vector<InitialCondition> inits;
    for (int q = 0; q < n; ++q) inits.push_back(ExcitedQubit{q});
    for (double sigma : {0.5, 1.0, 2.0}) {
      inits.push_back(PulseSpec{sigma, sep, Direction::Right});
      inits.push_back(PulseSpec{sigma, sep, Direction::Left});
    }
    for (const auto& init : inits) {
      const Solution sol(cfg, init, t_f);
      const auto h = oracle::integrate_chain(cfg, init, t_f, dt);
      for (int i = 0; i < 1200; ++i) {
        const double t = t_f * (i + 0.5) / 1200.0;
        for (int q = 0; q < n; ++q)
          worst = std::max(worst, std::abs(sol.excitation(q, t) - h.excitation(q, t)));
      }
      ++runs;
    }
  }
  note(o, worst < 1e-5, fmt("max |engine - oracle| = %.2e (< 1e-5)", worst) +
                            fmt(" over %.0f runs", runs));

  const std::vector<double> dts{sep / 32, sep / 64, sep / 128, sep / 256};
  std::vector<double> times;
  for (double t = 0.05; t < 6.0 * sep; t += 0.05) times.push_back(t);
  const auto fcfg = fermi::config(j0, omega, sep);
  const auto fermi_rep = oracle::convergence_study(
      fcfg, ExcitedQubit{0}, 6.0 * sep, dts,
      [&](int q, double t) {
        return q == 1 ? fermi::e1(t, j0, omega, sep) : fermi::e_m1(t, j0, omega, sep);
      },
      times);
  const auto single = ChainConfig::uniform(1, omega, j0, 0.0);
  const auto single_rep = oracle::convergence_study(
      single, ExcitedQubit{0}, 6.0 * sep, dts,
      [&](int, double t) { return std::exp(-cplx{j0, omega} * t); }, times);
  note(o, fermi_rep.order >= 3.5 && single_rep.order >= 3.5,
       fmt2("RK4 order two-qubit %.2f, single %.2f (>= 3.5)", fermi_rep.order, single_rep.order));
  const double rt = seconds_since(t0);
  note(o, rt < 60.0, fmt("runtime %.2f s (< 60 s)", rt));
  return o;
}

Outcome markov_limit() {
  Outcome o;
  const double j0 = 1.0, g = 2.0 * j0, sep = 1e-3 / j0;
  double worst_amp = 0.0, worst_pole = 0.0;
  for (double theta : {0.0, kPi / 2, kPi}) {
    const double omega = (theta + 2.0 * kPi) / sep;
    for (int i = 0; i <= 2000; ++i) {
      const double t = 5.0 / g * i / 2000.0;
      worst_amp = std::max(worst_amp, std::abs(fermi::e1(t, j0, omega, sep) -
                                               fermi::markovian_e1(t, g, theta, omega)));
    }
    const auto poles = find_poles(chain_transmission(j0, omega, sep), SearchWindow::scaled(j0));
    for (double s : {+1.0, -1.0}) {
      const cplx target = -kI * g * (1.0 + s * std::exp(kI * theta)) / 2.0;
      double best = INFINITY;
      for (const auto& p : poles) best = std::min(best, std::abs(p - target));
      worst_pole = std::max(worst_pole, best);
    }
  }
  note(o, worst_amp < 5e-3, fmt("max |fermi - markov| = %.2e (< 5e-3)", worst_amp));
  note(o, worst_pole < 5e-3 * g, fmt("max pole offset = %.2e gamma0 (< 5e-3)", worst_pole / g));
  return o;
}

Outcome single_qubit() {
  Outcome o;
  const double g = 2.0;
  double worst = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = -5.0 / g + 10.0 / g * i / 200.0;
    worst = std::max(worst, std::abs(oracle::single_qubit_alpha_ode(t, g, 1e-3) -
                                     std::exp(-g * std::abs(t) / 2.0)));
  }
  note(o, worst < 1e-8, fmt("ODE mode max |err| on [-5,5]/gamma0 = %.2e (< 1e-8)", worst));
  const double j0 = g / 2.0;
  const RationalFn two_sided(2.0 * j0, {}, {Pole{cplx{0.0, -j0}, 1}, Pole{cplx{0.0, j0}, 1}});
  const auto terms = inverse_transform(two_sided, 0.0, 0.0);
  double anti_err = 0.0;
  int anti = 0;
  for (const auto& term : terms) {
    if (term.support != Support::AntiCausal) continue;
    ++anti;
    for (int i = 1; i <= 200; ++i) {
      const double t = -5.0 / g * i / 200.0;
      anti_err = std::max(anti_err, std::abs(eval_term(term, t) - std::exp(g * t / 2.0)));
      anti_err = std::max(anti_err, std::abs(eval_term(term, -t)));
    }
  }
  note(o, anti == 1 && anti_err < 1e-12,
       fmt("anti-causal residue piece vs exp(gamma0 t/2)Theta(-t): %.1e", anti_err));
  return o;
}

Outcome unitarity() {
  Outcome o;
  const double sep = 0.75, j0 = 1.0, omega = 200.0, t_f = 8.0 * sep;
  double worst = 0.0;
  int configs = 0;
  for (int n = 1; n <= 3; ++n) {
    const auto cfg = ChainConfig::uniform(n, omega, j0, n == 1 ? 0.0 : sep);
    std::vector<InitialCondition> inits{ExcitedQubit{0}, ExcitedQubit{n - 1}};
    for (double sigma : {0.5, 1.0, 2.0}) inits.push_back(PulseSpec{sigma, sep, Direction::Right});
    for (const auto& init : inits) {
      const Solution sol(cfg, init, t_f);
      for (int i = 1; i <= 50; ++i) {
        const double t = t_f * i / 51.0;
        worst = std::max(worst, std::abs(sol.total_norm(t) - 1.0));
      }
      ++configs;
    }
  }
  note(o, worst <= 1e-6, fmt("max |norm - 1| = %.2e", worst) + fmt(" over %.0f configs x 50 t", configs));
  return o;
}

Outcome no_uhp() {
  Outcome o;
  const SearchWindow w = SearchWindow::scaled(1.0);
  bool coeffs = true;
  for (const auto& f : {coeff_t(1.0), coeff_r(1.0), coeff_e(1.0)}) coeffs &= check_no_uhp(TransferFn(f), w).pass;
  note(o, coeffs, "single-qubit t, r, e pass");
  int passed = 0;
  double worst_im = -INFINITY;
  for (double sep : {0.1, 1.0, 5.0}) {
    for (int k = 0; k <= 4; ++k) {
      const double theta = k * kPi / 4;
      const auto rep = check_no_uhp(chain_transmission(1.0, (theta + 2 * kPi) / sep, sep), w);
      passed += rep.pass;
      worst_im = std::max(worst_im, rep.worst_im);
    }
  }
  note(o, passed == 15, fmt("two-qubit sweep %.0f/15 pass", passed) + fmt(", worst Im pole %.1e", worst_im));
  const RationalFn bad(1.0, {}, {Pole{cplx{0.0, 1.0}, 1}});
  note(o, !check_no_uhp(TransferFn(bad), w).pass, "negative control 1/(D - iJ0) fails");
  return o;
}

Outcome fig6() {
  Outcome o;
  const double j0 = 1.0, omega = 200.0;
  {
    const double sep = 5.0 / j0;
    const double dt = 1e-3;
    std::vector<double> ts, ps;
    for (double t = 0.0; t <= 7.0 * sep; t += dt) {
      ts.push_back(t);
      ps.push_back(std::norm(fermi::e1(t, j0, omega, sep)));
    }
    std::vector<double> maxima;
    for (size_t i = 1; i + 1 < ps.size(); ++i)
      if (ps[i] > ps[i - 1] && ps[i] >= ps[i + 1] && ps[i] > 1e-6) maxima.push_back(ts[i]);
    std::string where;
    bool all = true;
    for (double target : {sep, 3.0 * sep, 5.0 * sep}) {
      bool hit = false;
      double nearest = INFINITY;
      for (double m : maxima) {
        if (m >= target && m <= target + 0.2 / j0) hit = true;
        if (m >= target) nearest = std::min(nearest, m - target);
      }
      all &= hit;
      where += fmt(" +%.3f", nearest);
    }
    note(o, all, "L=5 maxima of |e1|^2 after L,3L,5L at" + where + " (each <= 0.2)");
  }
  {
    const double sep = 0.3 / j0, g = 2.0 * j0;
    const double theta = omega * sep;
    double worst = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const double t = 20.0 / j0 * i / 4000.0;
      worst = std::max(worst, std::abs(std::norm(fermi::e1(t, j0, omega, sep)) -
                                       std::norm(fermi::markovian_e1(t, g, theta, omega))));
    }
    note(o, worst < 2e-2, fmt("L=0.3 max ||e1|^2 - markov| = %.4f (< 2e-2)", worst));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"worked diagram", worked_diagram},
      {"two-qubit exact series", fermi_series},
      {"causality", causality},
      {"oracle equivalence", oracle_equivalence},
      {"markovian limit", markov_limit},
      {"single-qubit two-sided decay", single_qubit},
      {"unitarity", unitarity},
      {"no upper-half-plane poles", no_uhp},
      {"retardation peaks and short-separation curve", fig6},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("criterion %zu (%s): %s | %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
