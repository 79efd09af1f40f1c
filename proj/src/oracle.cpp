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

#include "wqed/oracle.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wqed::oracle {

namespace {

// Whole number of steps in `span`, or MeshMismatch.
int mesh_steps(double span, double dt, const char* what) {
  const double ratio = span / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream msg;
    msg << what << " " << span << " is not a whole number of steps dt=" << dt;
    throw Error(ErrorCode::MeshMismatch, msg.str());
  }
  return static_cast<int>(rounded);
}

struct Pulse {
  double front;
  double sigma;
  Direction direction;
};

}  // namespace

DDEHistory::DDEHistory(ChainConfig cfg, InitialCondition init, double dt, int steps)
    : cfg_(std::move(cfg)), init_(std::move(init)), dt_(dt), steps_(steps) {
  const size_t size = static_cast<size_t>(cfg_.num_qubits()) * static_cast<size_t>(steps + 1);
  alpha_.assign(size, cplx{0.0, 0.0});
  left_.assign(size, cplx{0.0, 0.0});
  right_.assign(size, cplx{0.0, 0.0});
}

cplx DDEHistory::interpolate(int qubit, int k, double s) const {
  const cplx y0 = sample(qubit, k);
  if (s == 0.0) return y0;
  const cplx y1 = sample(qubit, k + 1);
  if (s == 1.0) return y1;
  const cplx m0 = slope_right(qubit, k) * dt_;
  const cplx m1 = slope_left(qubit, k + 1) * dt_;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 +
         (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1;
}

cplx DDEHistory::alpha(int qubit, double t) const {
  if (qubit < 0 || qubit >= cfg_.num_qubits())
    throw Error(ErrorCode::InvalidArgument, "qubit index out of range");
  if (t < 0.0) return {0.0, 0.0};
  const double pos = t / dt_;
  if (pos > steps_ * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "t=" << t << " beyond the integrated horizon " << horizon();
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
  int k = static_cast<int>(std::floor(pos));
  if (k >= steps_) return sample(qubit, steps_);
  return interpolate(qubit, k, pos - k);
}

cplx DDEHistory::excitation(int qubit, double t) const {
  return alpha(qubit, t) * std::exp(cplx{0.0, -cfg_.omega() * t});
}

DDEHistory integrate_chain(const ChainConfig& cfg, const InitialCondition& init,
                           double t_f, double dt) {
  validate(cfg, init);
  if (!(dt > 0.0) || !(t_f > 0.0))
    throw Error(ErrorCode::InvalidArgument, "dt and t_f must be > 0");
  const int n = cfg.num_qubits();
  const double j0 = cfg.j0();
  const double omega = cfg.omega();
  if (dt > 0.05 / cfg.gamma0() * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "dt=" << dt << " exceeds 0.05/gamma0=" << 0.05 / cfg.gamma0();
    throw Error(ErrorCode::StepTooLarge, msg.str());
  }
  double min_gap = INFINITY;
  for (int q = 1; q < n; ++q) min_gap = std::min(min_gap, cfg.position(q) - cfg.position(q - 1));
  if (n > 1 && dt > min_gap / 8.0 * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "dt=" << dt << " exceeds L/8=" << min_gap / 8.0;
    throw Error(ErrorCode::StepTooLarge, msg.str());
  }

  // Delay table in steps, with the accumulated carrier phase.
  std::vector<int> lag(static_cast<size_t>(n * n), 0);
  std::vector<cplx> phase(static_cast<size_t>(n * n), cplx{0.0, 0.0});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const double d = std::abs(cfg.position(a) - cfg.position(b));
      lag[static_cast<size_t>(a * n + b)] = mesh_steps(d, dt, "qubit distance");
      phase[static_cast<size_t>(a * n + b)] = std::exp(cplx{0.0, omega * d});
    }

  std::vector<int> arrival(static_cast<size_t>(n), 0);
  std::vector<cplx> drive_amp(static_cast<size_t>(n), cplx{0.0, 0.0});
  double sigma = 0.0;
  const auto* pulse = std::get_if<PulseSpec>(&init);
  if (pulse) {
    sigma = pulse->sigma;
    const double front = pulse_front(cfg, *pulse);
    for (int q = 0; q < n; ++q) {
      const double ta = std::abs(cfg.position(q) - front);
      arrival[static_cast<size_t>(q)] = mesh_steps(ta, dt, "pulse arrival time");
      drive_amp[static_cast<size_t>(q)] = cplx{0.0, -1.0} * std::sqrt(j0) *
                                          std::sqrt(2.0 * sigma) *
                                          std::exp(cplx{0.0, omega * ta});
    }
  }

  const int steps = static_cast<int>(std::ceil(t_f / dt - 1e-9));
  DDEHistory h(cfg, init, dt, steps);
  if (const auto* ex = std::get_if<ExcitedQubit>(&init)) h.sample(ex->index, 0) = 1.0;

  // Right-hand side for step `k` at offset s in {0, 1/2, 1} with state y.
  // Switches (delays, pulse arrival) use the step index, so each step sees
  // a smooth right-hand side.
  auto rhs = [&](int k, double s, const std::vector<cplx>& y, std::vector<cplx>& out) {
    const double t = (k + s) * dt;
    for (int j = 0; j < n; ++j) {
      cplx acc = y[static_cast<size_t>(j)];
      for (int m = 0; m < n; ++m) {
        if (m == j) continue;
        const int d = lag[static_cast<size_t>(m * n + j)];
        if (k < d) continue;
        const int base = k - d;
        cplx delayed;
        if (s == 0.0)
          delayed = h.sample(m, base);
        else if (s == 1.0)
          delayed = h.sample(m, base + 1);
        else
          delayed = h.interpolate(m, base, s);
        acc += delayed * phase[static_cast<size_t>(m * n + j)];
      }
      cplx value = -j0 * acc;
      if (pulse && k >= arrival[static_cast<size_t>(j)]) {
        const double since = t - arrival[static_cast<size_t>(j)] * dt;
        value += drive_amp[static_cast<size_t>(j)] * std::exp(-sigma * since);
      }
      out[static_cast<size_t>(j)] = value;
    }
  };

  std::vector<cplx> y(static_cast<size_t>(n)), k1(y), k2(y), k3(y), k4(y), tmp(y);
  for (int k = 0; k < steps; ++k) {
    for (int j = 0; j < n; ++j) y[static_cast<size_t>(j)] = h.sample(j, k);
    rhs(k, 0.0, y, k1);
    for (int j = 0; j < n; ++j) h.slope_right(j, k) = k1[static_cast<size_t>(j)];
    if (k == 0)
      for (int j = 0; j < n; ++j) h.slope_left(j, 0) = k1[static_cast<size_t>(j)];
    for (int j = 0; j < n; ++j)
      tmp[static_cast<size_t>(j)] = y[static_cast<size_t>(j)] + 0.5 * dt * k1[static_cast<size_t>(j)];
    rhs(k, 0.5, tmp, k2);
    for (int j = 0; j < n; ++j)
      tmp[static_cast<size_t>(j)] = y[static_cast<size_t>(j)] + 0.5 * dt * k2[static_cast<size_t>(j)];
    rhs(k, 0.5, tmp, k3);
    for (int j = 0; j < n; ++j)
      tmp[static_cast<size_t>(j)] = y[static_cast<size_t>(j)] + dt * k3[static_cast<size_t>(j)];
    rhs(k, 1.0, tmp, k4);
    for (int j = 0; j < n; ++j) {
      const size_t u = static_cast<size_t>(j);
      h.sample(j, k + 1) = y[u] + dt / 6.0 * (k1[u] + 2.0 * k2[u] + 2.0 * k3[u] + k4[u]);
    }
    for (int j = 0; j < n; ++j) y[static_cast<size_t>(j)] = h.sample(j, k + 1);
    rhs(k, 1.0, y, tmp);
    for (int j = 0; j < n; ++j) h.slope_left(j, k + 1) = tmp[static_cast<size_t>(j)];
  }
  // Right slope at the final sample for completeness.
  if (steps > 0) {
    for (int j = 0; j < n; ++j) y[static_cast<size_t>(j)] = h.sample(j, steps);
    for (int j = 0; j < n; ++j) h.slope_right(j, steps) = h.slope_left(j, steps);
  }
  return h;
}

std::pair<cplx, cplx> incident_field(const ChainConfig& cfg,
                                     const InitialCondition& init, double x,
                                     double t) {
  const auto* pulse = std::get_if<PulseSpec>(&init);
  if (!pulse) return {cplx{0.0, 0.0}, cplx{0.0, 0.0}};
  const double front = pulse_front(cfg, *pulse);
  const double amp = std::sqrt(2.0 * pulse->sigma);
  const double omega = cfg.omega();
  if (pulse->direction == Direction::Right) {
    const double x0 = x - t;  // initial position of this piece of the wave
    if (x0 > front) return {cplx{0.0, 0.0}, cplx{0.0, 0.0}};
    const double w = x0 == front ? 0.5 : 1.0;
    return {w * amp * std::exp(-pulse->sigma * (front - x0)) *
                std::exp(cplx{0.0, omega * (x0 - front)}),
            cplx{0.0, 0.0}};
  }
  const double x0 = x + t;
  if (x0 < front) return {cplx{0.0, 0.0}, cplx{0.0, 0.0}};
  const double w = x0 == front ? 0.5 : 1.0;
  return {cplx{0.0, 0.0}, w * amp * std::exp(-pulse->sigma * (x0 - front)) *
                              std::exp(cplx{0.0, -omega * (x0 - front)})};
}

std::pair<cplx, cplx> reconstruct_field(const DDEHistory& history, double x,
                                        double t) {
  const auto& cfg = history.config();
  auto [psi_r, psi_l] = incident_field(cfg, history.initial(), x, t);
  const cplx k = cplx{0.0, -1.0} * std::sqrt(cfg.j0());
  for (int q = 0; q < cfg.num_qubits(); ++q) {
    const double xq = cfg.position(q);
    const double d = std::abs(x - xq);
    const double retarded = t - d;
    if (retarded < 0.0) continue;
    const double w = retarded == 0.0 ? 0.5 : 1.0;
    const cplx e = w * history.excitation(q, retarded);
    if (x > xq) psi_r += k * e;
    else if (x < xq) psi_l += k * e;
    else {
      psi_r += 0.5 * k * e;
      psi_l += 0.5 * k * e;
    }
  }
  return {psi_r, psi_l};
}

double oracle_norm(const DDEHistory& history, double t) {
  const auto& cfg = history.config();
  double norm = 0.0;
  for (int q = 0; q < cfg.num_qubits(); ++q) norm += std::norm(history.excitation(q, t));

  std::vector<double> breaks;
  for (double xq : cfg.positions()) {
    breaks.push_back(xq);
    breaks.push_back(xq - t);
    breaks.push_back(xq + t);
  }
  if (const auto* pulse = std::get_if<PulseSpec>(&history.initial())) {
    const double front = pulse_front(cfg, *pulse);
    // The pulse tail decays as exp(-2 sigma |x - front|) in density.
    const double tail = 40.0 / pulse->sigma;
    breaks.push_back(front - t);
    breaks.push_back(front + t);
    breaks.push_back(front + t + tail);
    breaks.push_back(front - t - tail);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  constexpr double kTargetDx = 1e-3;
  auto density = [&](double x) {
    auto [r, l] = reconstruct_field(history, x, t);
    return std::norm(r) + std::norm(l);
  };
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    const int pieces = std::max(2, static_cast<int>(std::ceil((b - a) / kTargetDx)));
    const double dx = (b - a) / pieces;
    // Stay a hair inside each piece so jumps at the break points are
    // sampled from the correct side.
    const double eps = 1e-12 * (1.0 + std::abs(a) + std::abs(b));
    double sum = 0.5 * (density(a + eps) + density(b - eps));
    for (int p = 1; p < pieces; ++p) sum += density(a + p * dx);
    norm += sum * dx;
  }
  return norm;
}

double single_qubit_alpha(double t, double gamma0) {
  return std::exp(-gamma0 * std::abs(t) / 2.0);
}

double single_qubit_alpha_ode(double t, double gamma0, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be > 0");
  if (t == 0.0) return 1.0;
  // Along the marching direction s = |t| the equation reads
  // d alpha / ds = -(gamma0 / 2) alpha on either side of t = 0.
  const double span = std::abs(t);
  const int steps = std::max(1, static_cast<int>(std::ceil(span / dt)));
  const double h = span / steps;
  auto f = [&](double a) { return -0.5 * gamma0 * a; };
  double a = 1.0;
  for (int k = 0; k < steps; ++k) {
    const double k1 = f(a);
    const double k2 = f(a + 0.5 * h * k1);
    const double k3 = f(a + 0.5 * h * k2);
    const double k4 = f(a + h * k3);
    a += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return a;
}

std::vector<cplx> markov_reference(const ChainConfig& cfg, int excited_qubit,
                                   double t) {
  validate(cfg, ExcitedQubit{excited_qubit});
  const int n = cfg.num_qubits();
  Eigen::MatrixXcd m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      m(a, b) = std::exp(cplx{0.0, cfg.omega() * std::abs(cfg.position(a) - cfg.position(b))});
  const Eigen::MatrixXcd prop = (-cfg.j0() * t * m).exp();
  std::vector<cplx> out(static_cast<size_t>(n));
  const cplx carrier = std::exp(cplx{0.0, -cfg.omega() * t});
  for (int a = 0; a < n; ++a) out[static_cast<size_t>(a)] = prop(a, excited_qubit) * carrier;
  return out;
}

ConvergenceReport convergence_study(const ChainConfig& cfg,
                                    const InitialCondition& init, double t_f,
                                    const std::vector<double>& dts,
                                    const Reference& reference,
                                    const std::vector<double>& times) {
  ConvergenceReport report;
  for (double dt : dts) {
    const auto h = integrate_chain(cfg, init, t_f, dt);
    double worst = 0.0;
    for (double t : times)
      for (int q = 0; q < cfg.num_qubits(); ++q)
        worst = std::max(worst, std::abs(h.excitation(q, t) - reference(q, t)));
    report.dts.push_back(dt);
    report.errors.push_back(worst);
  }
  // Least-squares slope in log-log space.
  const size_t m = report.dts.size();
  if (m >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
      const double lx = std::log(report.dts[i]);
      const double ly = std::log(std::max(report.errors[i], 1e-300));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    report.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return report;
}

}  // namespace wqed::oracle
