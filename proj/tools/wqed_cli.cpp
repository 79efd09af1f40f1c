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

// wqed command-line front end. Talks to the engine only through wqed.h.
//
// Exit codes: 0 success, 1 failure (including a failed check), 2 usage or
// config error, 3 diagram enumeration cap exceeded.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wqed/wqed.h"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EngineError : std::runtime_error {
  EngineError(wqed_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  wqed_status status;
};

void ok(wqed_status s, const char* context) {
  if (s == WQED_OK) return;
  throw EngineError(s, std::string(context) + ": " + wqed_status_name(s) + ": " +
                           wqed_last_error());
}

struct ChainDeleter {
  void operator()(wqed_chain* c) const { wqed_chain_free(c); }
};
struct SolutionDeleter {
  void operator()(wqed_solution* s) const { wqed_solution_free(s); }
};
struct HistoryDeleter {
  void operator()(wqed_history* h) const { wqed_history_free(h); }
};
using ChainPtr = std::unique_ptr<wqed_chain, ChainDeleter>;
using SolutionPtr = std::unique_ptr<wqed_solution, SolutionDeleter>;
using HistoryPtr = std::unique_ptr<wqed_history, HistoryDeleter>;

// ---------------------------------------------------------------- config

struct RunConfig {
  int n = 0;
  double omega = 0.0;
  double j0 = 0.0;
  double separation = 0.0;
  wqed_initial initial{};
  double horizon = 0.0;
  int t_points = 0;
  int x_points = 101;
};

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw UsageError(where + " must be an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw UsageError("unknown key '" + key + "' in " + where);
}

double real_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw UsageError(where + "." + key + " is required");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw UsageError(where + "." + key + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw UsageError(where + "." + key + " must be finite");
  return d;
}

int int_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw UsageError(where + "." + key + " is required");
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw UsageError(where + "." + key + " must be an integer");
  return v.get<int>();
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(doc, {"chain", "initial", "horizon", "grid"}, "config");
  RunConfig c;

  if (!doc.contains("chain")) throw UsageError("config.chain is required");
  const auto& chain = doc.at("chain");
  only_keys(chain, {"n", "omega", "j0", "separation"}, "chain");
  c.n = int_field(chain, "n", "chain");
  c.omega = real_field(chain, "omega", "chain");
  c.j0 = real_field(chain, "j0", "chain");
  c.separation = chain.contains("separation") ? real_field(chain, "separation", "chain") : 0.0;

  if (!doc.contains("initial")) throw UsageError("config.initial is required");
  const auto& init = doc.at("initial");
  only_keys(init, {"kind", "qubit", "sigma", "x0", "direction"}, "initial");
  if (!init.contains("kind") || !init.at("kind").is_string())
    throw UsageError("initial.kind must be \"excited_qubit\" or \"pulse\"");
  const auto kind = init.at("kind").get<std::string>();
  if (kind == "excited_qubit") {
    for (const char* k : {"sigma", "x0", "direction"})
      if (init.contains(k)) throw UsageError(std::string("initial.") + k + " is pulse-only");
    c.initial.kind = WQED_EXCITED_QUBIT;
    c.initial.qubit = int_field(init, "qubit", "initial");
  } else if (kind == "pulse") {
    if (init.contains("qubit")) throw UsageError("initial.qubit is excited_qubit-only");
    c.initial.kind = WQED_PULSE;
    c.initial.sigma = real_field(init, "sigma", "initial");
    c.initial.x0 = real_field(init, "x0", "initial");
    c.initial.direction = WQED_RIGHT;
    if (init.contains("direction")) {
      const auto& d = init.at("direction");
      if (!d.is_string() || (d != "right" && d != "left"))
        throw UsageError("initial.direction must be \"right\" or \"left\"");
      c.initial.direction = d == "right" ? WQED_RIGHT : WQED_LEFT;
    }
  } else {
    throw UsageError("initial.kind must be \"excited_qubit\" or \"pulse\"");
  }

  c.horizon = real_field(doc, "horizon", "config");
  if (!doc.contains("grid")) throw UsageError("config.grid is required");
  const auto& grid = doc.at("grid");
  only_keys(grid, {"t_points", "x_points"}, "grid");
  c.t_points = int_field(grid, "t_points", "grid");
  if (grid.contains("x_points")) c.x_points = int_field(grid, "x_points", "grid");
  return c;
}

void check_config(const RunConfig& c) {
  if (!(c.horizon > 0.0)) throw UsageError("horizon must be > 0");
  if (c.t_points < 1) throw UsageError("grid.t_points must be >= 1");
  if (c.x_points < 1) throw UsageError("grid.x_points must be >= 1");
}

ChainPtr make_chain(const RunConfig& c) {
  wqed_chain* raw = nullptr;
  const wqed_status s = wqed_chain_new_uniform(c.n, c.omega, c.j0, c.separation, &raw);
  if (s != WQED_OK) throw UsageError(std::string("invalid chain: ") + wqed_last_error());
  return ChainPtr(raw);
}

size_t diagram_cap() {
  const char* env = std::getenv("WQED_DIAGRAM_CAP");
  if (env == nullptr || *env == '\0') return 0;
  size_t value = 0;
  const char* end = env + std::strlen(env);
  const auto [p, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || p != end || value == 0)
    throw UsageError("WQED_DIAGRAM_CAP must be a positive integer");
  return value;
}

SolutionPtr make_solution(const wqed_chain* chain, const wqed_initial& init, double horizon) {
  wqed_solution* raw = nullptr;
  ok(wqed_solution_new(chain, &init, horizon, diagram_cap(), &raw), "enumerating diagrams");
  return SolutionPtr(raw);
}

// Strictly inside the horizon so the last sample is covered.
double horizon_for(double t_max) { return t_max + 1e-9 * (1.0 + std::abs(t_max)); }

std::vector<double> time_grid(double horizon, int points) {
  std::vector<double> ts(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i)
    ts[static_cast<size_t>(i)] = points == 1 ? 0.0 : horizon * i / (points - 1);
  return ts;
}

// ---------------------------------------------------------------- output

std::string num(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

// Shortest round-trip form, for column labels.
std::string label_num(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<double> row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& out) const {
    for (size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
    out << '\n';
    for (const auto& r : rows_) {
      for (size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << num(r[i]);
      out << '\n';
    }
  }

  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write(out);
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

// Runs body(i) for i in [0, n) on up to `threads` workers; results land in
// caller-owned slots, so output order never depends on scheduling.
template <class F>
void parallel_for(size_t n, int threads, F body) {
  const size_t workers = std::max<size_t>(1, std::min<size_t>(static_cast<size_t>(threads), n));
  if (workers == 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------- simulate

struct Observable {
  enum Kind { Excitation, PsiR, PsiL } kind;
  int qubit = 0;
  double x = 0.0;
  std::string label;
};

double parse_real(const std::string& s, const std::string& token) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    throw UsageError("bad number in observable '" + token + "'");
  return v;
}

std::vector<Observable> parse_observables(const std::vector<std::string>& tokens,
                                          const RunConfig& c) {
  std::vector<Observable> out;
  auto field_at = [&](double x, const std::string& label_x) {
    out.push_back({Observable::PsiR, 0, x, "psi_r:" + label_x});
    out.push_back({Observable::PsiL, 0, x, "psi_l:" + label_x});
  };
  for (const auto& raw : tokens) {
    if (raw.empty()) continue;
    if (raw == "field") {
      const double span = (c.n - 1) * c.separation;
      const double lo = -c.horizon, hi = span + c.horizon;
      for (int i = 0; i < c.x_points; ++i) {
        const double x = c.x_points == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (c.x_points - 1);
        field_at(x, label_num(x));
      }
      continue;
    }
    const auto colon = raw.find(':');
    if (colon == std::string::npos) throw UsageError("unknown observable '" + raw + "'");
    const std::string name = raw.substr(0, colon), arg = raw.substr(colon + 1);
    if (name == "e") {
      int q = 0;
      const auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), q);
      if (ec != std::errc() || p != arg.data() + arg.size() || q < 0 || q >= c.n)
        throw UsageError("bad qubit in observable '" + raw + "'");
      out.push_back({Observable::Excitation, q, 0.0, raw});
    } else if (name == "psi_r") {
      out.push_back({Observable::PsiR, 0, parse_real(arg, raw), raw});
    } else if (name == "psi_l") {
      out.push_back({Observable::PsiL, 0, parse_real(arg, raw), raw});
    } else if (name == "field") {
      field_at(parse_real(arg, raw), arg);
    } else {
      throw UsageError("unknown observable '" + raw + "'");
    }
  }
  if (out.empty()) throw UsageError("observable list is empty");
  return out;
}

int cmd_simulate(RunConfig c, const std::vector<std::string>& observables, const std::string& out,
                 int threads) {
  check_config(c);
  const auto obs = parse_observables(observables, c);
  const auto chain = make_chain(c);
  const auto ts = time_grid(c.horizon, c.t_points);
  const auto sol = make_solution(chain.get(), c.initial, horizon_for(c.horizon));

  std::vector<std::string> header{"t"};
  for (const auto& o : obs)
    for (const char* part : {".re", ".im", ".abs2"}) header.push_back(o.label + part);
  std::vector<std::vector<double>> rows(ts.size());
  parallel_for(ts.size(), threads, [&](size_t i) {
    const double t = ts[i];
    auto& row = rows[i];
    row.push_back(t);
    for (const auto& o : obs) {
      wqed_complex v{}, r{}, l{};
      if (o.kind == Observable::Excitation) {
        ok(wqed_solution_excitation(sol.get(), o.qubit, t, &v), "evaluating excitation");
      } else {
        ok(wqed_solution_field(sol.get(), o.x, t, &r, &l), "evaluating field");
        v = o.kind == Observable::PsiR ? r : l;
      }
      row.insert(row.end(), {v.re, v.im, v.re * v.re + v.im * v.im});
    }
  });
  Table table(header);
  for (auto& r : rows) table.add_row(std::move(r));
  if (out.empty() || out == "-")
    table.write(std::cout);
  else
    table.save(out);
  return kExitOk;
}

// ---------------------------------------------------------------- fermi-demo

int cmd_fermi_demo(double sep, double omega, double j0, const std::string& dir) {
  if (!(sep == 5.0 || sep == 2.0 || sep == 0.3))
    throw UsageError("--L must be one of 5, 2, 0.3");
  if (!(omega > 0.0) || !(j0 > 0.0)) throw UsageError("--omega and --j0 must be > 0");
  std::filesystem::create_directories(dir);
  const double L = sep / j0;
  const double t_max = std::max(7.0 * L, 10.0 / j0);
  const double theta = omega * L;
  const std::string tag = label_num(sep);

  Table curve({"t", "e1.abs2", "markovian.abs2"});
  const int points = 4001;
  for (int i = 0; i < points; ++i) {
    const double t = t_max * i / (points - 1);
    const wqed_complex e = wqed_fermi_e1(t, j0, omega, L);
    const wqed_complex m = wqed_markovian_e1(t, 2.0 * j0, theta, omega);
    curve.add_row({t, e.re * e.re + e.im * e.im, m.re * m.re + m.im * m.im});
  }
  const std::string curve_path = (std::filesystem::path(dir) / ("e1_L" + tag + ".csv")).string();
  curve.save(curve_path);

  // Field snapshots between the two qubits.
  const double positions[] = {-L / 2, L / 2};
  wqed_chain* raw = nullptr;
  ok(wqed_chain_new_positions(positions, 2, omega, j0, &raw), "building chain");
  const ChainPtr chain(raw);
  wqed_initial init{};
  init.kind = WQED_EXCITED_QUBIT;
  init.qubit = 0;
  std::vector<double> snapshots;
  for (double k : {0.5, 1.5, 2.5, 3.5, 4.5}) snapshots.push_back(k * L);
  const auto sol = make_solution(chain.get(), init, horizon_for(snapshots.back()));
  std::vector<std::string> header{"x"};
  for (double t : snapshots)
    for (const char* part : {".psi_r.abs2", ".psi_l.abs2"}) header.push_back("t=" + label_num(t) + part);
  Table field(header);
  const int xs = 401;
  for (int i = 0; i < xs; ++i) {
    const double x = -L / 2 + L * (i + 0.5) / xs;
    std::vector<double> row{x};
    for (double t : snapshots) {
      wqed_complex r{}, l{};
      ok(wqed_solution_field(sol.get(), x, t, &r, &l), "evaluating field");
      row.push_back(r.re * r.re + r.im * r.im);
      row.push_back(l.re * l.re + l.im * l.im);
    }
    field.add_row(std::move(row));
  }
  const std::string field_path =
      (std::filesystem::path(dir) / ("field_L" + tag + ".csv")).string();
  field.save(field_path);
  std::cout << json{{"curve", curve_path}, {"field", field_path}, {"theta", theta}}.dump(2)
            << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- check

json check_causality(const RunConfig& c, const wqed_chain* chain) {
  json rows = json::array();
  bool pass = true;
  for (int q = 0; q < c.n; ++q) {
    if (c.initial.kind == WQED_EXCITED_QUBIT && q == c.initial.qubit) continue;
    double worst = 0.0;
    ok(wqed_causality_probe(chain, &c.initial, q, &worst), "causality probe");
    pass &= worst == 0.0;
    rows.push_back({{"qubit", q}, {"max_abs_before_arrival", worst}});
  }
  return {{"pass", pass}, {"details", rows}};
}

json pole_table(double j0, double omega, double sep) {
  size_t count = 0;
  ok(wqed_fabry_perot_poles(j0, omega, sep, nullptr, nullptr, 0, &count), "pole search");
  std::vector<wqed_complex> poles(count);
  ok(wqed_fabry_perot_poles(j0, omega, sep, nullptr, poles.data(), poles.size(), &count),
     "pole search");
  json out = json::array();
  for (const auto& p : poles) out.push_back({p.re, p.im});
  return out;
}

json check_no_uhp(const RunConfig& c) {
  json rows = json::array();
  bool pass = true;
  for (double sep : {0.1, 1.0, 5.0}) {
    for (int k = 0; k <= 4; ++k) {
      const double L = sep / c.j0;
      const double theta = k * std::numbers::pi / 4;
      const double omega = (theta + 2.0 * std::numbers::pi) / L;
      wqed_no_uhp_result r{};
      ok(wqed_check_no_uhp_fabry_perot(c.j0, omega, L, nullptr, 1e-9, &r), "no-uhp check");
      pass &= r.pass != 0;
      rows.push_back({{"L", L}, {"theta", theta}, {"omega", omega}, {"pass", r.pass != 0},
                      {"worst_im", r.worst_im}, {"uhp_zero_count", r.uhp_zero_count},
                      {"poles", pole_table(c.j0, omega, L)}});
    }
  }
  json report{{"sweep", rows}};
  if (c.n == 2) {
    wqed_no_uhp_result r{};
    ok(wqed_check_no_uhp_fabry_perot(c.j0, c.omega, c.separation, nullptr, 1e-9, &r),
       "no-uhp check");
    pass &= r.pass != 0;
    report["config"] = {{"pass", r.pass != 0}, {"worst_im", r.worst_im},
                        {"poles", pole_table(c.j0, c.omega, c.separation)}};
  }
  return {{"pass", pass}, {"details", report}};
}

// Largest step no bigger than `limit` that divides `length` evenly.
double dividing_step(double length, double limit) {
  return length / std::ceil(length / limit - 1e-9);
}

json check_oracle(const RunConfig& c, const wqed_chain* chain, std::optional<double> dt_flag) {
  const double gamma0 = 2.0 * c.j0;
  double dt = 0.0;
  if (dt_flag) {
    dt = *dt_flag;
  } else if (c.n > 1) {
    dt = dividing_step(c.separation, std::min(c.separation / 256, 0.05 / gamma0));
  } else if (c.initial.kind == WQED_PULSE) {
    dt = dividing_step(c.initial.x0, 1e-3 / c.j0);
  } else {
    dt = 1e-3 / c.j0;
  }
  if (c.n > 1 && c.initial.kind == WQED_PULSE && !dt_flag) {
    // Pulse arrival times must also sit on the mesh.
    const double ratio = c.initial.x0 / dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
      throw UsageError("pulse x0 is not a multiple of separation/256; pass --dt explicitly");
  }
  wqed_history* raw = nullptr;
  ok(wqed_history_new(chain, &c.initial, c.horizon, dt, &raw), "integrating oracle");
  const HistoryPtr history(raw);
  const auto sol = make_solution(chain, c.initial, horizon_for(c.horizon));
  double worst = 0.0;
  const auto ts = time_grid(c.horizon, c.t_points);
  for (double t : ts) {
    if (t <= 0.0) continue;
    for (int q = 0; q < c.n; ++q) {
      wqed_complex a{}, b{};
      ok(wqed_history_excitation(history.get(), q, t, &a), "oracle excitation");
      ok(wqed_solution_excitation(sol.get(), q, t, &b), "engine excitation");
      worst = std::max(worst, std::hypot(a.re - b.re, a.im - b.im));
    }
  }
  const bool pass = worst < 1e-5;
  return {{"pass", pass},
          {"details", {{"max_abs_error", worst}, {"dt", dt}, {"tolerance", 1e-5}}}};
}

json check_norm(const RunConfig& c, const wqed_chain* chain) {
  const auto sol = make_solution(chain, c.initial, horizon_for(c.horizon));
  double worst = 0.0;
  for (double t : time_grid(c.horizon, c.t_points)) {
    if (t <= 0.0) continue;
    double n = 0.0;
    ok(wqed_solution_norm(sol.get(), t, &n), "norm");
    worst = std::max(worst, std::abs(n - 1.0));
  }
  return {{"pass", worst <= 1e-6},
          {"details", {{"max_abs_deviation", worst}, {"tolerance", 1e-6}}}};
}

int cmd_check(const std::string& what, const RunConfig& c, std::optional<double> dt,
              const std::string& out) {
  check_config(c);
  const auto chain = make_chain(c);
  json report;
  if (what == "causality")
    report = check_causality(c, chain.get());
  else if (what == "no-uhp")
    report = check_no_uhp(c);
  else if (what == "oracle")
    report = check_oracle(c, chain.get(), dt);
  else if (what == "norm")
    report = check_norm(c, chain.get());
  else
    throw UsageError("--what must be causality, no-uhp, oracle or norm");
  report = json{{"check", what}, {"pass", report["pass"]}, {"details", report["details"]}};
  if (out.empty() || out == "-") {
    std::cout << report.dump(2) << '\n';
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + out + "'");
    f << report.dump(2) << '\n';
  }
  return report["pass"].get<bool>() ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wqed: single-excitation dynamics of qubit chains in a waveguide"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for grid evaluation")
      ->check(CLI::PositiveNumber);

  auto* sim = app.add_subcommand("simulate", "evaluate observables on a time grid");
  std::string sim_config, sim_out;
  std::vector<std::string> observables;
  std::optional<double> horizon_flag;
  std::optional<int> t_points_flag, x_points_flag;
  sim->add_option("config", sim_config, "JSON run config")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", sim_out, "CSV output path ('-' for stdout)");
  sim->add_option("--observables", observables,
                  "comma list of e:Q, psi_r:X, psi_l:X, field:X, field")
      ->delimiter(',')
      ->required();
  sim->add_option("--horizon", horizon_flag, "override config horizon");
  sim->add_option("--t-points", t_points_flag, "override grid.t_points");
  sim->add_option("--x-points", x_points_flag, "override grid.x_points");

  auto* demo = app.add_subcommand("fermi-demo", "two-qubit retardation curves and field snapshots");
  double demo_L = 0.0, demo_omega = 200.0, demo_j0 = 1.0;
  std::string demo_out;
  demo->add_option("--L", demo_L, "qubit separation in units of 1/J0 (5, 2 or 0.3)")->required();
  demo->add_option("--omega", demo_omega, "qubit frequency")->capture_default_str();
  demo->add_option("--j0", demo_j0, "coupling J0")->capture_default_str();
  demo->add_option("--out", demo_out, "output directory")->required();

  auto* chk = app.add_subcommand("check", "run a consistency check and print a JSON report");
  std::string what, chk_config, chk_out;
  std::optional<double> chk_dt;
  chk->add_option("--what", what, "causality | no-uhp | oracle | norm")
      ->required()
      ->check(CLI::IsMember({"causality", "no-uhp", "oracle", "norm"}));
  chk->add_option("config", chk_config, "JSON run config")->required()->check(CLI::ExistingFile);
  chk->add_option("--dt", chk_dt, "oracle step override");
  chk->add_option("--out", chk_out, "JSON report path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sim) {
      RunConfig c = load_config(sim_config);
      if (horizon_flag) c.horizon = *horizon_flag;
      if (t_points_flag) c.t_points = *t_points_flag;
      if (x_points_flag) c.x_points = *x_points_flag;
      return cmd_simulate(c, observables, sim_out, threads);
    }
    if (*demo) return cmd_fermi_demo(demo_L, demo_omega, demo_j0, demo_out);
    if (*chk) return cmd_check(what, load_config(chk_config), chk_dt, chk_out);
  } catch (const UsageError& e) {
    std::cerr << "wqed: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EngineError& e) {
    std::cerr << "wqed: " << e.what() << '\n';
    if (e.status == WQED_ERR_HORIZON_TOO_LARGE) return kExitCap;
    if (e.status == WQED_ERR_INVALID_ARGUMENT || e.status == WQED_ERR_GEOMETRY ||
        e.status == WQED_ERR_STEP_TOO_LARGE || e.status == WQED_ERR_MESH_MISMATCH)
      return kExitUsage;
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "wqed: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
