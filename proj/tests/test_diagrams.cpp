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

#include <cmath>
#include <optional>
#include <set>

#include "doctest.h"
#include "wqed/diagrams.hpp"
#include "wqed/fermi.hpp"

using namespace wqed;

namespace {

constexpr cplx kI{0.0, 1.0};

Diagram make(std::vector<UnitCell> cells, double delay) {
  Diagram d;
  d.cells = std::move(cells);
  d.total_delay = delay;
  return d;
}

// Independent count of photon paths: sequences of unit hops on the chain
// 0..n-1 starting at `start`, k hops taking k * sep, kept while k * sep < t_f.
// Every such path ends in one qubit arrival.
size_t count_arrivals(int n, int start, double sep, double t_f, double offset) {
  size_t total = 0;
  std::vector<std::pair<int, int>> frontier;  // (position, hops)
  frontier.push_back({start, 0});
  while (!frontier.empty()) {
    auto [pos, hops] = frontier.back();
    frontier.pop_back();
    for (int step : {-1, +1}) {
      const int next = pos + step;
      if (next < 0 || next >= n) continue;
      if (!(offset + (hops + 1) * sep < t_f)) continue;
      ++total;
      frontier.push_back({next, hops + 1});
    }
  }
  return total;
}

}  // namespace

TEST_CASE("cascade of the worked single-link diagram") {
  const auto cfg = ChainConfig::uniform(2, 10.0, 1.0, 1.0);
  DiagramState s;
  s = apply_cell(cfg, s, StarterExcited{0, Direction::Right});
  REQUIRE(s.f.has_value());
  CHECK(s.delay == 0.0);
  CHECK(std::abs((*s.f)(0.0) - 1.0 / kI) < 1e-15);
  s = apply_cell(cfg, s, FreeProp{1.0});
  CHECK(s.delay == 1.0);
  CHECK(s.incident);
  CHECK(s.qubit == 1);
  CHECK(std::abs((*s.f)(0.3) - coeff_e(1.0)(0.3)) < 1e-15);
}

TEST_CASE("reflections flip direction and accumulate r twice") {
  const auto cfg = ChainConfig::uniform(2, 10.0, 1.0, 1.0);
  DiagramState s;
  for (const UnitCell& c : std::vector<UnitCell>{StarterExcited{0, Direction::Right},
                                                 FreeProp{1.0}, Reflect{1}, FreeProp{1.0},
                                                 Reflect{0}, FreeProp{1.0}})
    s = apply_cell(cfg, s, c);
  CHECK(s.delay == doctest::Approx(3.0));
  CHECK(s.direction == Direction::Right);
  CHECK(s.qubit == 1);
  const auto expect = coeff_e(1.0) * coeff_r(1.0) * coeff_r(1.0);
  for (double d : {-1.0, 0.0, 2.0}) CHECK(std::abs((*s.f)(d) - expect(d)) < 1e-15);
}

TEST_CASE("geometry errors") {
  const auto cfg = ChainConfig::uniform(2, 10.0, 1.0, 1.0);
  DiagramState s = apply_cell(cfg, {}, StarterExcited{0, Direction::Right});
  auto code_of = [&](const DiagramState& st, const UnitCell& c) -> std::optional<ErrorCode> {
    try {
      apply_cell(cfg, st, c);
    } catch (const Error& e) {
      return e.code();
    }
    return std::nullopt;
  };
  CHECK(code_of(s, FreeProp{0.5}) == ErrorCode::Geometry);
  CHECK(code_of(s, Transmit{1}) == ErrorCode::Geometry);
  CHECK(code_of(s, StarterExcited{1, Direction::Left}) == ErrorCode::Geometry);
  CHECK(code_of(DiagramState{}, FreeProp{1.0}) == ErrorCode::Geometry);
  const auto left = apply_cell(cfg, {}, StarterExcited{0, Direction::Left});
  CHECK(code_of(left, FreeProp{1.0}) == ErrorCode::Geometry);

  const auto pulse = apply_cell(cfg, {}, StarterPulse{PulseSpec{1.0, 2.0, Direction::Right}});
  CHECK(code_of(pulse, FreeProp{1.0}) == ErrorCode::Geometry);
  CHECK_FALSE(code_of(pulse, FreeProp{2.0}).has_value());
}

TEST_CASE("qubit finisher on the canonical diagrams") {
  const double j0 = 1.0, omega = 5.0, sep = 0.7;
  const auto cfg = fermi::config(j0, omega, sep);

  const auto first = finish_excitation(
      cfg, make({StarterExcited{0, Direction::Right}, FreeProp{sep}, FinishQubit{1}}, sep));
  for (double t = sep + 0.01; t <= 5 * sep; t += 0.05) {
    const double tau = t - sep;
    const cplx expect = -j0 * tau * std::exp(-cplx{j0, omega} * tau);
    CHECK(std::abs(eval_series(first, t) - expect) < 1e-12);
  }

  const auto back = finish_excitation(
      cfg, make({StarterExcited{0, Direction::Right}, FreeProp{sep}, Reflect{1},
                 FreeProp{sep}, FinishQubit{0}},
                2 * sep));
  for (double tau : {0.2, 1.0, 3.0}) {
    const cplx expect = 0.5 * std::pow(tau * j0, 2) * std::exp(-cplx{j0, omega} * tau);
    CHECK(std::abs(eval_series(back, 2 * sep + tau) - expect) < 1e-13);
  }

  const auto self = finish_excitation(
      cfg, make({StarterExcited{0, Direction::Right}, FinishQubit{0}}, 0.0));
  for (double t : {0.1, 1.0, 4.0})
    CHECK(std::abs(eval_series(self, t) - std::exp(-cplx{j0, omega} * t)) < 1e-14);
  CHECK(eval_series(self, -0.1) == cplx{0.0, 0.0});
}

TEST_CASE("field finisher on the canonical diagrams") {
  const double j0 = 1.0, omega = 5.0, sep = 0.7, half = sep / 2;
  const auto cfg = fermi::config(j0, omega, sep);
  const auto inner = make({StarterExcited{0, Direction::Right}, FinishField{Direction::Right, 0}}, 0.0);
  const double x = 0.1, t = 1.2;
  const double tau = t - (x + half);
  const cplx expect = -kI * std::sqrt(j0) * std::exp(-cplx{j0, omega} * tau);
  CHECK(std::abs(eval_series(finish_field(cfg, inner, x), t) - expect) < 1e-14);

  const auto through = make({StarterExcited{0, Direction::Right}, FreeProp{sep}, Transmit{1},
                             FinishField{Direction::Right, 1}},
                            sep);
  const double xe = 2.0, te = 4.0;
  const double tau_e = te - sep - (xe - half);
  const cplx expect_e = kI * std::sqrt(j0) * (tau_e * j0 - 1.0) * std::exp(-cplx{j0, omega} * tau_e);
  CHECK(std::abs(eval_series(finish_field(cfg, through, xe), te) - expect_e) < 1e-13);

  try {
    finish_field(cfg, inner, 1.0);
    FAIL("expected a geometry error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Geometry);
  }
}

TEST_CASE("two-qubit delay spectra") {
  const double sep = 1.0;
  const auto cfg = fermi::config(1.0, 200.0, sep);
  FinisherSpec far;
  far.fields = false;
  far.qubit = 1;
  const auto d1 = enumerate_diagrams(cfg, ExcitedQubit{0}, far, 4 * sep);
  REQUIRE(d1.size() == 2);
  CHECK(d1[0].total_delay == doctest::Approx(sep));
  CHECK(d1[1].total_delay == doctest::Approx(3 * sep));

  FinisherSpec near = far;
  near.qubit = 0;
  const auto d0 = enumerate_diagrams(cfg, ExcitedQubit{0}, near, 4 * sep + 1e-9);
  REQUIRE(d0.size() == 3);
  for (size_t n = 0; n < d0.size(); ++n)
    CHECK(d0[n].total_delay == doctest::Approx(2.0 * n * sep));

  for (double t_f : {5.5, 11.0, 20.0}) {
    const auto all = enumerate_diagrams(cfg, ExcitedQubit{0}, far, t_f * sep);
    for (size_t n = 0; n < all.size(); ++n)
      CHECK(all[n].total_delay == doctest::Approx((2.0 * n + 1) * sep));
    CHECK(all.size() == static_cast<size_t>(std::ceil((t_f - 1.0) / 2.0)));
  }
}

TEST_CASE("branch statistics of a three-qubit chain excited in the middle") {
  const auto cfg = ChainConfig::uniform(3, 50.0, 1.0, 1.0);
  EnumerationStats stats;
  enumerate_diagrams(cfg, ExcitedQubit{1}, FinisherSpec{}, 1.5, kDefaultDiagramCap, &stats);
  REQUIRE(stats.branches.size() >= 2);
  CHECK(stats.branches[0] == 2);
  CHECK(stats.branches[1] == 4);
  REQUIRE(stats.exits.size() >= 2);
  CHECK(stats.exits[1] == 2);
}

TEST_CASE("diagram counts match an independent path count") {
  const double sep = 1.0;
  for (int start = 0; start < 3; ++start) {
    const auto cfg = ChainConfig::uniform(3, 50.0, 1.0, sep);
    for (int k = 1; k <= 12; ++k) {
      const double t_f = k * sep;
      FinisherSpec qubits_only;
      qubits_only.fields = false;
      const auto d = enumerate_diagrams(cfg, ExcitedQubit{start}, qubits_only, t_f);
      const size_t arrivals = count_arrivals(3, start, sep, t_f, 0.0);
      CHECK(d.size() == arrivals + 1);
      const auto all = enumerate_diagrams(cfg, ExcitedQubit{start}, FinisherSpec{}, t_f);
      // Two departures from the starter and two more per arrival.
      CHECK(all.size() == 1 + arrivals + 2 + 2 * arrivals);
    }
  }
  const auto cfg = ChainConfig::uniform(3, 50.0, 1.0, sep);
  const PulseSpec pulse{1.0, 0.5, Direction::Right};
  for (int k = 1; k <= 12; ++k) {
    const double t_f = k * sep;
    FinisherSpec qubits_only;
    qubits_only.fields = false;
    const auto d = enumerate_diagrams(cfg, pulse, qubits_only, t_f);
    CHECK(d.size() == 1 + count_arrivals(3, 0, sep, t_f, 0.5));
  }
}

TEST_CASE("enumeration is deterministic and sorted") {
  const auto cfg = ChainConfig::uniform(3, 50.0, 1.0, 0.8);
  const auto a = enumerate_diagrams(cfg, ExcitedQubit{0}, FinisherSpec{}, 6.0);
  const auto b = enumerate_diagrams(cfg, ExcitedQubit{0}, FinisherSpec{}, 6.0);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].total_delay == b[i].total_delay);
    CHECK(a[i].cells.size() == b[i].cells.size());
    if (i > 0) CHECK(a[i - 1].total_delay <= a[i].total_delay);
    CHECK(a[i].total_delay < 6.0);
    const auto fa = fold(cfg, a[i]);
    const auto fb = fold(cfg, b[i]);
    CHECK(fa.finished);
    CHECK(fa.delay == fb.delay);
    CHECK(fa.f->poles().size() == fb.f->poles().size());
    CHECK(fa.f->prefactor() == fb.f->prefactor());
    // Total delay equals the sum of free propagation lengths.
    double sum = 0.0;
    for (const auto& c : a[i].cells)
      if (const auto* fp = std::get_if<FreeProp>(&c)) sum += fp->length;
    CHECK(sum == doctest::Approx(a[i].total_delay));
  }
}

TEST_CASE("enumeration cap raises HorizonTooLarge") {
  const auto cfg = ChainConfig::uniform(3, 50.0, 1.0, 1.0);
  try {
    enumerate_diagrams(cfg, ExcitedQubit{0}, FinisherSpec{}, 30.0, 1000);
    FAIL("expected HorizonTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HorizonTooLarge);
  }
}

TEST_CASE("every diagram integrand keeps its poles below the real axis") {
  const auto cfg = ChainConfig::uniform(3, 50.0, 1.0, 1.0);
  for (const InitialCondition& init :
       {InitialCondition{ExcitedQubit{1}}, InitialCondition{PulseSpec{0.5, 1.0, Direction::Left}}}) {
    for (const auto& d : enumerate_diagrams(cfg, init, FinisherSpec{}, 6.0)) {
      const auto s = fold(cfg, d);
      for (const auto& p : s.f->poles()) CHECK(p.location.imag() < 0.0);
    }
  }
}
