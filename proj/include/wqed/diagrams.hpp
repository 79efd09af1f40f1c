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

// Unit cells, cascade folding and the depth-first path enumerator.
//
// A photon is either incident on a qubit (after a FreeProp) or leaving one
// (after a starter, Transmit or Reflect). Scattering cells need an incident
// photon; FreeProp and FinishField need a leaving one. A pulse starter
// leaves from its own front, recorded as source qubit -1.

#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "wqed/core.hpp"
#include "wqed/momentum.hpp"

namespace wqed {

inline constexpr int kPulseSource = -1;
inline constexpr std::size_t kDefaultDiagramCap = 1000000;

struct StarterExcited {
  int qubit = 0;
  Direction direction = Direction::Right;
};
struct StarterPulse {
  PulseSpec spec;
};
struct FreeProp {
  double length = 0.0;
};
struct Transmit {
  int qubit = 0;
};
struct Reflect {
  int qubit = 0;
};
struct FinishQubit {
  int qubit = 0;
};
struct FinishField {
  Direction branch = Direction::Right;
  int from_qubit = 0;
};

using UnitCell = std::variant<StarterExcited, StarterPulse, FreeProp, Transmit,
                              Reflect, FinishQubit, FinishField>;

struct DiagramState {
  std::optional<RationalFn> f;
  double delay = 0.0;
  double position = 0.0;
  Direction direction = Direction::Right;
  int qubit = kPulseSource;
  bool incident = false;
  /// Only the excited starter has been applied so far.
  bool fresh_emitter = false;
  bool finished = false;
};

struct Diagram {
  std::vector<UnitCell> cells;
  double total_delay = 0.0;
};

DiagramState apply_cell(const ChainConfig& cfg, const DiagramState& state,
                        const UnitCell& cell);

/// Left fold of apply_cell over every cell.
DiagramState fold(const ChainConfig& cfg, const Diagram& d);

/// Qubit amplitude of a diagram ending in FinishQubit.
TimeSeriesAmplitude finish_excitation(const ChainConfig& cfg, const Diagram& d);

/// Field amplitude at x of a diagram ending in FinishField; x must lie in
/// the segment the branch leaves into (end points included).
TimeSeriesAmplitude finish_field(const ChainConfig& cfg, const Diagram& d,
                                 double x);

/// Field terms referenced to the source position: evaluating at
/// t - s (x - source_position), s = +1 right / -1 left, gives the field at x.
struct FieldSeries {
  Direction branch = Direction::Right;
  int from_qubit = 0;
  double source_position = 0.0;
  TimeSeriesAmplitude series;
};
FieldSeries field_series(const ChainConfig& cfg, const Diagram& d);

struct FinisherSpec {
  bool qubits = true;
  /// Restrict FinishQubit cells to this qubit; -1 keeps all.
  int qubit = -1;
  bool fields = true;
};

struct EnumerationStats {
  /// Leaving photons and chain exits, indexed by the number of scattering
  /// cells already applied.
  std::vector<std::size_t> branches;
  std::vector<std::size_t> exits;
};

/// Every diagram with total delay < t_f, sorted by delay and then by cell
/// sequence. Throws HorizonTooLarge beyond `cap` diagrams.
std::vector<Diagram> enumerate_diagrams(const ChainConfig& cfg,
                                        const InitialCondition& init,
                                        const FinisherSpec& target, double t_f,
                                        std::size_t cap = kDefaultDiagramCap,
                                        EnumerationStats* stats = nullptr);

/// Strict weak order on cells used for deterministic sorting.
bool cell_less(const UnitCell& a, const UnitCell& b);

}  // namespace wqed
