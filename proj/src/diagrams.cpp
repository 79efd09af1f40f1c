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

#include "wqed/diagrams.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <tuple>

namespace wqed {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void geometry_error(const std::string& what) {
  throw Error(ErrorCode::Geometry, what);
}

// Next qubit hit by a photon leaving `from` in `dir`; -1 when it exits.
int next_qubit(const ChainConfig& cfg, int from, Direction dir) {
  const int n = cfg.num_qubits();
  int next;
  if (from == kPulseSource)
    next = dir == Direction::Right ? 0 : n - 1;
  else
    next = dir == Direction::Right ? from + 1 : from - 1;
  return (next >= 0 && next < n) ? next : -1;
}

double sign_of(Direction d) { return d == Direction::Right ? 1.0 : -1.0; }

void require_leaving(const DiagramState& s, const char* cell) {
  if (!s.f) geometry_error(std::string(cell) + " before a starter");
  if (s.finished) geometry_error(std::string(cell) + " after a finisher");
  if (s.incident)
    geometry_error(std::string(cell) + " needs a photon leaving a qubit");
}

void require_incident(const DiagramState& s, int qubit, const char* cell) {
  if (!s.f) geometry_error(std::string(cell) + " before a starter");
  if (s.finished) geometry_error(std::string(cell) + " after a finisher");
  if (!s.incident || s.qubit != qubit) {
    std::ostringstream msg;
    msg << cell << " at qubit " << qubit << " but the photon is not incident on it";
    geometry_error(msg.str());
  }
}

std::tuple<int, int, int, double> cell_key(const UnitCell& c) {
  return std::visit(
      overloaded{
          [](const StarterExcited& s) {
            return std::tuple{0, s.qubit, static_cast<int>(s.direction), 0.0};
          },
          [](const StarterPulse& s) {
            return std::tuple{1, static_cast<int>(s.spec.direction), 0, s.spec.x0};
          },
          [](const FreeProp& s) { return std::tuple{2, 0, 0, s.length}; },
          [](const Transmit& s) { return std::tuple{3, s.qubit, 0, 0.0}; },
          [](const Reflect& s) { return std::tuple{4, s.qubit, 0, 0.0}; },
          [](const FinishQubit& s) { return std::tuple{5, s.qubit, 0, 0.0}; },
          [](const FinishField& s) {
            return std::tuple{6, s.from_qubit, static_cast<int>(s.branch), 0.0};
          },
      },
      c);
}

void check_causal(const std::vector<DelayedTerm>& terms) {
  for (const auto& term : terms)
    if (term.support != Support::Causal) {
      std::ostringstream msg;
      msg << "diagram produced an upper half-plane pole at " << term.pole;
      throw Error(ErrorCode::CausalityViolation, msg.str());
    }
}

}  // namespace

bool cell_less(const UnitCell& a, const UnitCell& b) {
  return cell_key(a) < cell_key(b);
}

DiagramState apply_cell(const ChainConfig& cfg, const DiagramState& state,
                        const UnitCell& cell) {
  const double j0 = cfg.j0();
  DiagramState out = state;
  std::visit(
      overloaded{
          [&](const StarterExcited& c) {
            if (state.f) geometry_error("a diagram has exactly one starter");
            if (c.qubit < 0 || c.qubit >= cfg.num_qubits())
              throw Error(ErrorCode::InvalidArgument, "starter qubit out of range");
            out.f = coeff_e(j0);
            out.delay = 0.0;
            out.position = cfg.position(c.qubit);
            out.direction = c.direction;
            out.qubit = c.qubit;
            out.incident = false;
            out.fresh_emitter = true;
          },
          [&](const StarterPulse& c) {
            if (state.f) geometry_error("a diagram has exactly one starter");
            const auto spec = pulse_spectrum(c.spec);
            out.f = spec.spectrum;
            out.delay = 0.0;
            out.position = pulse_front(cfg, c.spec);
            out.direction = c.spec.direction;
            out.qubit = kPulseSource;
            out.incident = false;
          },
          [&](const FreeProp& c) {
            require_leaving(state, "FreeProp");
            const int next = next_qubit(cfg, state.qubit, state.direction);
            if (next < 0) geometry_error("FreeProp leaves the chain");
            const double target = cfg.position(next);
            const double reached = state.position + sign_of(state.direction) * c.length;
            if (!(c.length > 0.0) ||
                std::abs(reached - target) > 1e-9 * (1.0 + std::abs(target))) {
              std::ostringstream msg;
              msg << "FreeProp of length " << c.length << " from x=" << state.position
                  << " does not reach the next qubit at x=" << target;
              geometry_error(msg.str());
            }
            out.delay += c.length;
            out.position = target;
            out.qubit = next;
            out.incident = true;
            out.fresh_emitter = false;
          },
          [&](const Transmit& c) {
            require_incident(state, c.qubit, "Transmit");
            *out.f *= coeff_t(j0);
            out.incident = false;
          },
          [&](const Reflect& c) {
            require_incident(state, c.qubit, "Reflect");
            *out.f *= coeff_r(j0);
            out.direction = flipped(state.direction);
            out.incident = false;
          },
          [&](const FinishQubit& c) {
            if (state.fresh_emitter && !state.finished && state.qubit == c.qubit) {
              out.finished = true;
              return;
            }
            require_incident(state, c.qubit, "FinishQubit");
            out.finished = true;
          },
          [&](const FinishField& c) {
            require_leaving(state, "FinishField");
            if (c.branch != state.direction || c.from_qubit != state.qubit)
              geometry_error("FinishField branch or source does not match the photon");
            out.finished = true;
          },
      },
      cell);
  return out;
}

DiagramState fold(const ChainConfig& cfg, const Diagram& d) {
  DiagramState state;
  for (const auto& cell : d.cells) state = apply_cell(cfg, state, cell);
  return state;
}

namespace {

// State just before the finisher, plus the finisher itself.
std::pair<DiagramState, UnitCell> split_finisher(const ChainConfig& cfg,
                                                 const Diagram& d) {
  if (d.cells.empty()) geometry_error("empty diagram");
  DiagramState state;
  for (size_t i = 0; i + 1 < d.cells.size(); ++i)
    state = apply_cell(cfg, state, d.cells[i]);
  const UnitCell& last = d.cells.back();
  apply_cell(cfg, state, last);
  return {state, last};
}

}  // namespace

TimeSeriesAmplitude finish_excitation(const ChainConfig& cfg, const Diagram& d) {
  auto [state, last] = split_finisher(cfg, d);
  const auto* fin = std::get_if<FinishQubit>(&last);
  if (!fin) geometry_error("diagram does not end in FinishQubit");
  TimeSeriesAmplitude out;
  out.label = "e:" + std::to_string(fin->qubit);
  const double j0 = cfg.j0();
  if (state.fresh_emitter) {
    // Emission and reabsorption at the same qubit, summed over both
    // propagation directions; only the t > 0 part is the physical decay.
    RationalFn self(2.0 * j0, {},
                    {Pole{cplx{0.0, -j0}, 1}, Pole{cplx{0.0, j0}, 1}});
    for (auto& term : inverse_transform(self, 0.0, cfg.omega()))
      if (term.support == Support::Causal) out.terms.push_back(std::move(term));
    return out;
  }
  out.terms = inverse_transform(*state.f * coeff_e(j0), state.delay, cfg.omega());
  check_causal(out.terms);
  return out;
}

FieldSeries field_series(const ChainConfig& cfg, const Diagram& d) {
  auto [state, last] = split_finisher(cfg, d);
  const auto* fin = std::get_if<FinishField>(&last);
  if (!fin) geometry_error("diagram does not end in FinishField");
  FieldSeries out;
  out.branch = fin->branch;
  out.from_qubit = fin->from_qubit;
  out.source_position = state.position;
  out.series.label = std::string(fin->branch == Direction::Right ? "psi_r" : "psi_l");
  out.series.terms = inverse_transform(*state.f, state.delay, cfg.omega());
  check_causal(out.series.terms);
  return out;
}

TimeSeriesAmplitude finish_field(const ChainConfig& cfg, const Diagram& d,
                                 double x) {
  FieldSeries fs = field_series(cfg, d);
  const double s = sign_of(fs.branch);
  // Segment the branch leaves into.
  const int next = next_qubit(cfg, fs.from_qubit, fs.branch);
  const double near = fs.from_qubit == kPulseSource ? -s * INFINITY : fs.source_position;
  const double far = next < 0 ? s * INFINITY : cfg.position(next);
  const double lo = std::min(near, far);
  const double hi = std::max(near, far);
  if (fs.from_qubit == kPulseSource) {
    // The free pulse occupies everything up to the first qubit it meets.
    if (!(x <= hi && x >= lo)) geometry_error("x outside the pulse's segment");
  } else if (!(x >= lo && x <= hi)) {
    std::ostringstream msg;
    msg << "x=" << x << " outside the segment [" << lo << ", " << hi
        << "] fed by qubit " << fs.from_qubit;
    geometry_error(msg.str());
  }
  const double shift = s * (x - fs.source_position);
  for (auto& term : fs.series.terms) term.delay += shift;
  return fs.series;
}

std::vector<Diagram> enumerate_diagrams(const ChainConfig& cfg,
                                        const InitialCondition& init,
                                        const FinisherSpec& target, double t_f,
                                        std::size_t cap, EnumerationStats* stats) {
  if (!(t_f > 0.0) || !std::isfinite(t_f))
    throw Error(ErrorCode::InvalidArgument, "horizon t_f must be finite and > 0");
  validate(cfg, init);

  std::vector<Diagram> out;
  EnumerationStats local;
  std::vector<UnitCell> path;

  auto emit = [&](const UnitCell& finisher, double delay) {
    if (out.size() >= cap) {
      std::ostringstream msg;
      msg << "more than " << cap << " diagrams below horizon " << t_f
          << "; lower the horizon or raise the cap";
      throw Error(ErrorCode::HorizonTooLarge, msg.str());
    }
    Diagram d;
    d.cells = path;
    d.cells.push_back(finisher);
    d.total_delay = delay;
    out.push_back(std::move(d));
  };
  auto bump = [](std::vector<std::size_t>& v, std::size_t gen) {
    if (v.size() <= gen) v.resize(gen + 1, 0);
    ++v[gen];
  };

  // Positions and delays are tracked directly; the RationalFn fold is left
  // to the finishers.
  struct Walk {
    int qubit;
    Direction dir;
    double delay;
    std::size_t generation;
  };

  std::function<void(const Walk&)> leave;
  std::function<void(const Walk&)> arrive;

  leave = [&](const Walk& w) {
    bump(local.branches, w.generation);
    if (target.fields) emit(FinishField{w.dir, w.qubit}, w.delay);
    const int next = next_qubit(cfg, w.qubit, w.dir);
    if (next < 0) {
      bump(local.exits, w.generation);
      return;
    }
    const double here = w.qubit == kPulseSource
                            ? pulse_front(cfg, std::get<PulseSpec>(init))
                            : cfg.position(w.qubit);
    const double length = std::abs(cfg.position(next) - here);
    const double delay = w.delay + length;
    if (!(delay < t_f)) return;
    path.push_back(FreeProp{length});
    arrive(Walk{next, w.dir, delay, w.generation});
    path.pop_back();
  };

  arrive = [&](const Walk& w) {
    if (target.qubits && (target.qubit < 0 || target.qubit == w.qubit))
      emit(FinishQubit{w.qubit}, w.delay);
    path.push_back(Transmit{w.qubit});
    leave(Walk{w.qubit, w.dir, w.delay, w.generation + 1});
    path.back() = Reflect{w.qubit};
    leave(Walk{w.qubit, flipped(w.dir), w.delay, w.generation + 1});
    path.pop_back();
  };

  if (const auto* ex = std::get_if<ExcitedQubit>(&init)) {
    path.push_back(StarterExcited{ex->index, Direction::Right});
    if (target.qubits && (target.qubit < 0 || target.qubit == ex->index))
      emit(FinishQubit{ex->index}, 0.0);
    for (Direction dir : {Direction::Right, Direction::Left}) {
      path.back() = StarterExcited{ex->index, dir};
      leave(Walk{ex->index, dir, 0.0, 0});
    }
    path.pop_back();
  } else {
    const auto& pulse = std::get<PulseSpec>(init);
    path.push_back(StarterPulse{pulse});
    leave(Walk{kPulseSource, pulse.direction, 0.0, 0});
    path.pop_back();
  }

  std::stable_sort(out.begin(), out.end(), [](const Diagram& a, const Diagram& b) {
    if (a.total_delay != b.total_delay) return a.total_delay < b.total_delay;
    return std::lexicographical_compare(a.cells.begin(), a.cells.end(),
                                        b.cells.begin(), b.cells.end(), cell_less);
  });
  if (stats) *stats = std::move(local);
  return out;
}

}  // namespace wqed
