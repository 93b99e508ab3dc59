// Copyright 2026 The pdecho Authors
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

#include "pdecho/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdecho/csv.hpp"
#include "pdecho/entanglement.hpp"
#include "pdecho/errors.hpp"
#include "pdecho/model_io.hpp"
#include "pdecho/scenarios.hpp"
#include "pdecho/spectral.hpp"

namespace pdecho::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kCoherenceBound = 1.0 + 1e-9;

struct RunConfig {
  std::string model_path;
  std::string scenario;
  double tau_start = 0.0;
  double tau_stop = 1.0;
  std::size_t points = 2;
  std::string a;
  std::string b;
  std::vector<double> c0;
  double beta = 1.0;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::size_t n = 3;
  double lambda = 0.1;
  double eta = -1.0;
  double tau_star = 1.0;
  double tau0 = 1.0;
  bool no_v_commuting = false;
  bool gaussian = false;
  double max_inconclusive = 0.01;
  std::string out = ".";

  // Which grid flags were given explicitly.
  bool has_start = false;
  bool has_stop = false;
  bool has_points = false;
};

/// Files are rendered in memory and only written once every computation succeeded.
struct Outputs {
  std::vector<std::pair<std::string, std::string>> files;

  void add(std::string name, std::string content) {
    files.emplace_back(std::move(name), std::move(content));
  }
};

void write_outputs(const RunConfig& cfg, const Outputs& outputs, std::ostream& out) {
  const fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create output directory '" + cfg.out + "': " + ec.message());
  for (const auto& [name, content] : outputs.files) {
    const fs::path path = dir / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open '" + path.string() + "' for writing");
    f << content;
    if (!f) throw ValidationError("failed writing '" + path.string() + "'");
    out << "wrote " << path.string() << '\n';
  }
}

double parse_double(std::string_view s, std::string_view what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ValidationError("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  }
  return v;
}

/// "re,im" or "re".
Complex parse_complex(const std::string& s, std::string_view what) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {parse_double(s, what), 0.0};
  return {parse_double(std::string_view(s).substr(0, comma), what),
          parse_double(std::string_view(s).substr(comma + 1), what)};
}

std::optional<Amplitudes> amplitudes_from(const RunConfig& cfg) {
  if (cfg.a.empty() && cfg.b.empty()) return std::nullopt;
  if (cfg.a.empty() || cfg.b.empty()) throw ValidationError("--a and --b must be given together");
  return Amplitudes(parse_complex(cfg.a, "--a"), parse_complex(cfg.b, "--b"));
}

void require_one_source(const RunConfig& cfg) {
  if (cfg.model_path.empty() == cfg.scenario.empty()) {
    throw ValidationError("exactly one of --model and --scenario is required");
  }
}

std::vector<double> grid_from(const RunConfig& cfg, double start, double stop,
                              std::size_t points) {
  if (cfg.has_start) start = cfg.tau_start;
  if (cfg.has_stop) stop = cfg.tau_stop;
  if (cfg.has_points) points = cfg.points;
  if (points < 2) throw ValidationError("--points must be >= 2");
  if (!(start >= 0.0) || !(stop > start)) {
    throw ValidationError("tau grid needs 0 <= tau-start < tau-stop");
  }
  return uniform_grid(start, stop, points);
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

// ---------------------------------------------------------------------------
// scan

struct ScanSource {
  std::string label;
  PropagatorPair pair;
  EnvDensity r0;
  Amplitudes amplitudes;
  std::vector<double> grid;
};

ScanSource scan_source(const RunConfig& cfg) {
  require_one_source(cfg);
  if (!cfg.model_path.empty()) {
    ModelSpec spec = load_model_file(cfg.model_path);
    auto grid = grid_from(cfg, 0.0, 10.0, 201);
    return {cfg.model_path, PropagatorPair::generated(std::move(spec.model)), std::move(spec.r0),
            amplitudes_from(cfg).value_or(Amplitudes::equal()), std::move(grid)};
  }
  ScenarioOptions opts;
  if (cfg.c0.size() > 1) throw ValidationError("scan takes a single --c0");
  if (!cfg.c0.empty()) opts.c0 = cfg.c0.front();
  opts.tau0 = cfg.tau0;
  opts.n = cfg.n;
  opts.seed = cfg.seed;
  opts.lambda = cfg.lambda;
  opts.with_v_commuting = !cfg.no_v_commuting;
  Scenario s = make_scenario(cfg.scenario, opts);
  auto grid = grid_from(cfg, s.grid_start, s.grid_stop, s.grid_points);
  Amplitudes amp = amplitudes_from(cfg).value_or(s.amplitudes);
  return {s.name, std::move(s.pair), std::move(s.r0), amp, std::move(grid)};
}

json scan_summary(const ScanResult& scan, const std::string& label, const Amplitudes& amp,
                  const RunConfig& cfg) {
  json induced = json::array();
  for (std::size_t i : scan.summary.echo_induced) {
    induced.push_back({{"index", i}, {"tau", scan.records[i].tau}});
  }
  return {{"source", label},
          {"points", scan.records.size()},
          {"tau_start", scan.records.front().tau},
          {"tau_stop", scan.records.back().tau},
          {"a", complex_json(amp.a())},
          {"b", complex_json(amp.b())},
          {"tolerance", cfg.tol ? json(*cfg.tol) : json("auto")},
          {"echo_induced", induced},
          {"separable_pre", scan.summary.separable_pre},
          {"separable_echo", scan.summary.separable_echo},
          {"inconclusive", scan.summary.inconclusive}};
}

void check_coherence_bound(const ScanResult& scan) {
  for (const auto& r : scan.records) {
    if (std::abs(r.w_pre) > kCoherenceBound || std::abs(r.w_echo) > kCoherenceBound) {
      std::ostringstream os;
      os << "|W| exceeds 1 at tau = " << r.tau;
      throw NumericalError(os.str());
    }
  }
}

/// Returns kNumeric when the inconclusive fraction exceeds the limit (files are still written).
int finish_scan(const RunConfig& cfg, const ScanResult& scan, std::ostream& err) {
  const double fraction =
      static_cast<double>(scan.summary.inconclusive) / static_cast<double>(scan.records.size());
  if (fraction > cfg.max_inconclusive) {
    err << "error: " << scan.summary.inconclusive << " of " << scan.records.size()
        << " points are inconclusive (limit fraction " << cfg.max_inconclusive << ")\n";
    return kNumeric;
  }
  return kOk;
}

int run_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  ScanSource src = scan_source(cfg);
  const ScanResult scan = classify_scan(src.pair, src.amplitudes, src.r0, src.grid, cfg.tol);
  check_coherence_bound(scan);
  Outputs outputs;
  std::ostringstream csv_text;
  csv::write_scan(csv_text, scan);
  outputs.add("scan.csv", csv_text.str());
  outputs.add("scan_summary.json",
              scan_summary(scan, src.label, src.amplitudes, cfg).dump(2) + "\n");
  write_outputs(cfg, outputs, out);
  out << scan.summary.echo_induced.size() << " echo-induced point(s), "
      << scan.summary.inconclusive << " inconclusive\n";
  return finish_scan(cfg, scan, err);
}

// ---------------------------------------------------------------------------
// spectral / witness

struct SpectralSource {
  std::string label;
  Matrix h_env;
  Matrix v;  // unit coupling; lambda carried separately
  EnvDensity r0;
  double lambda;
  double eta;
};

SpectralModel named_spectral_model(const RunConfig& cfg) {
  if (cfg.scenario == "sigma_zx") return sigma_zx_model(cfg.beta);
  if (cfg.scenario == "static") return static_model(cfg.beta);
  if (cfg.scenario == "comb") return comb_model(cfg.n, cfg.tau_star, cfg.beta);
  if (cfg.scenario == "random") return random_spectral_model(cfg.n, cfg.seed, cfg.beta);
  throw ValidationError("unknown spectral scenario '" + cfg.scenario +
                        "' (expected sigma_zx, static, comb, random)");
}

SpectralSource spectral_source(const RunConfig& cfg) {
  require_one_source(cfg);
  if (!cfg.model_path.empty()) {
    ModelSpec spec = load_model_file(cfg.model_path);
    auto form = recover_biased_form(spec.model);
    if (!form) {
      throw HypothesisError(
          "the second-order expansion needs a biased coupling V0 = (eta + 1) V / 2, "
          "V1 = (eta - 1) V / 2; the model's V0 and V1 are not proportional");
    }
    return {cfg.model_path, spec.model.h_env(), form->v, std::move(spec.r0), 1.0, form->eta};
  }
  SpectralModel m = named_spectral_model(cfg);
  return {m.name, std::move(m.h_env), std::move(m.v), std::move(m.r0), cfg.lambda, cfg.eta};
}

json peaks_json(const BohrSpectrum& spectrum) {
  json peaks = json::array();
  for (const auto& p : spectrum.peaks) {
    peaks.push_back({{"omega", p.omega}, {"weight", p.weight}, {"response", p.response}});
  }
  return peaks;
}

int run_spectral(const RunConfig& cfg, std::ostream& out) {
  SpectralSource src = spectral_source(cfg);
  const auto grid = grid_from(cfg, 0.0, 2.0 * std::numbers::pi, 201);
  const bool stationary = linalg::commutes(src.r0.matrix(), src.h_env);

  std::optional<BohrSpectrum> spectrum;
  if (stationary) spectrum = bohr_spectrum(src.h_env, src.v, src.r0);
  std::vector<csv::SpectralRow> rows;
  for (double tau : grid) {
    double chi = 0.0;
    double phi = 0.0;
    if (spectrum) {
      chi = chi_echo(*spectrum, tau);
      phi = src.r0.kind() == EnvKind::kThermal ? phi_echo(*spectrum, tau, src.r0.beta())
                                               : phi_echo_stationary(*spectrum, tau);
    } else {
      chi = chi_time_domain(src.h_env, src.v, src.r0, tau);
      phi = phi_time_domain(src.h_env, src.v, src.r0, tau);
    }
    const auto so = second_order_W(src.lambda, src.eta, chi, phi);
    csv::SpectralRow row{tau, chi, phi, so.w_approx, std::nullopt};
    if (cfg.gaussian) row.w2_gaussian = gaussian_W(src.lambda, src.eta, chi, phi);
    rows.push_back(row);
  }

  json sidecar = {{"source", src.label},
                  {"lambda", src.lambda},
                  {"eta", src.eta},
                  {"stationary", stationary},
                  {"path", stationary ? "bohr-lines" : "time-domain"}};
  if (src.r0.kind() == EnvKind::kThermal) {
    sidecar["beta"] = std::isinf(src.r0.beta()) ? json("inf") : json(src.r0.beta());
  }
  sidecar["peaks"] = spectrum ? peaks_json(*spectrum) : json::array();

  Outputs outputs;
  std::ostringstream csv_text;
  csv::write_spectral(csv_text, rows, cfg.gaussian);
  outputs.add("spectral.csv", csv_text.str());
  outputs.add("spectral_peaks.json", sidecar.dump(2) + "\n");
  write_outputs(cfg, outputs, out);
  return kOk;
}

int run_witness(const RunConfig& cfg, std::ostream& out) {
  require_one_source(cfg);
  std::string label;
  std::optional<PureDephasingModel> model;
  std::optional<EnvDensity> r0;
  if (!cfg.model_path.empty()) {
    ModelSpec spec = load_model_file(cfg.model_path);
    label = cfg.model_path;
    model.emplace(std::move(spec.model));
    r0.emplace(std::move(spec.r0));
  } else {
    SpectralModel m = named_spectral_model(cfg);
    label = m.name;
    model.emplace(biased_model(m, cfg.lambda, -1.0));
    r0.emplace(std::move(m.r0));
  }
  const auto grid = grid_from(cfg, 0.0, 2.0 * std::numbers::pi, 201);
  const WitnessResult w = witness(*model, *r0, grid, cfg.tol.value_or(1e-10));

  // Direct criterion at the same instants, for the record.
  const PropagatorPair pair = PropagatorPair::generated(*model);
  std::size_t entangled = 0;
  for (double tau : grid) {
    if (!prepulse_separability(pair, *r0, tau).separable) ++entangled;
  }

  json verdict = {{"source", label},
                  {"verdict", w.certified ? "certified-entangling" : "not-certified"},
                  {"max_abs_phi", w.max_abs_phi},
                  {"threshold", w.threshold},
                  {"v1_r0_commutator_norm", w.v1_r0_commutator},
                  {"consistent", w.consistent},
                  {"prepulse_entangled_points", entangled},
                  {"tau", w.taus},
                  {"phi", w.phi}};
  Outputs outputs;
  outputs.add("witness.json", verdict.dump(2) + "\n");
  write_outputs(cfg, outputs, out);
  out << verdict["verdict"].get<std::string>() << '\n';
  if (!w.consistent) throw NumericalError("witness verdict contradicts [V1, R(0)] = 0");
  return kOk;
}

// ---------------------------------------------------------------------------
// reproduce

int run_fig1(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Scenario s = fig1_model(cfg.tau0);
  const auto grid = grid_from(cfg, s.grid_start, s.grid_stop, s.grid_points);
  const Amplitudes amp = amplitudes_from(cfg).value_or(s.amplitudes);
  const ScanResult scan = classify_scan(s.pair, amp, s.r0, grid, cfg.tol);
  check_coherence_bound(scan);

  const double period = 4.0 * cfg.tau0;
  double periodicity = 0.0;
  for (const auto& r : scan.records) {
    const EchoRecord shifted = classify_point(s.pair, amp, s.r0, r.tau + period, cfg.tol);
    periodicity = std::max({periodicity, std::abs(*shifted.entropy_pre - *r.entropy_pre),
                            std::abs(*shifted.entropy_echo - *r.entropy_echo)});
  }
  const EchoRecord at_ref = classify_point(s.pair, amp, s.r0, s.reference_time, cfg.tol);
  const auto levels =
      isolation_refinement(s.pair, amp, s.r0, grid.front(), grid.back(), 2, grid.size(), cfg.tol);

  json summary = scan_summary(scan, s.name, amp, cfg);
  summary["tau0"] = cfg.tau0;
  summary["E_pre_tau0"] = *at_ref.entropy_pre;
  summary["E_echo_tau0"] = *at_ref.entropy_echo;
  summary["period"] = period;
  summary["max_period_deviation"] = periodicity;
  json refinement = json::array();
  for (const auto& l : levels) {
    refinement.push_back({{"points", l.points},
                          {"step", l.step},
                          {"flagged", l.flagged},
                          {"fraction", l.fraction},
                          {"longest_run", l.longest_run}});
  }
  summary["refinement"] = refinement;

  Outputs outputs;
  std::ostringstream csv_text;
  csv::write_scan(csv_text, scan);
  outputs.add("fig1.csv", csv_text.str());
  outputs.add("fig1_summary.json", summary.dump(2) + "\n");
  write_outputs(cfg, outputs, out);
  out << "E_pre(tau0) = " << csv::format(*at_ref.entropy_pre)
      << ", E_echo(tau0) = " << csv::format(*at_ref.entropy_echo) << '\n';
  return finish_scan(cfg, scan, err);
}

json matrix_rows(const Matrix& m) { return matrix_to_json(m); }

int run_sec4b(const RunConfig& cfg, std::ostream& out) {
  const std::vector<double> c0s =
      cfg.c0.empty() ? std::vector<double>{0.0, 0.25, 0.5, 0.7, 1.0} : cfg.c0;
  std::ostringstream csv_text;
  csv_text << "c0,W_pre_re,W_pre_im,W_echo_re,W_echo_im,comm_pre,comm_echo,separable_pre,"
              "separable_echo\n";
  json entries = json::array();
  std::optional<BranchPair> ops;
  for (double c0 : c0s) {
    const Scenario s = sec4b_snapshot(c0);
    const double tau = s.reference_time;
    const BranchPair w = evaluate(s.pair, tau);
    if (!ops) ops = w;
    const Complex w_pre = coherence(w, s.r0);
    const Complex w_echo = coherence(echoed(w), s.r0);
    const auto pre = separability_verdict(prepulse_operator(w), s.r0.matrix(), cfg.tol);
    const auto post = separability_verdict(echo_operator(w), s.r0.matrix(), cfg.tol);
    csv_text << csv::format(c0) << ',' << csv::format(w_pre.real()) << ','
             << csv::format(w_pre.imag()) << ',' << csv::format(w_echo.real()) << ','
             << csv::format(w_echo.imag()) << ',' << csv::format(pre.commutator_norm) << ','
             << csv::format(post.commutator_norm) << ',' << (pre.separable ? 1 : 0) << ','
             << (post.separable ? 1 : 0) << '\n';
    entries.push_back({{"c0", c0},
                       {"W_pre", complex_json(w_pre)},
                       {"W_echo", complex_json(w_echo)},
                       {"comm_pre", pre.commutator_norm},
                       {"comm_echo", post.commutator_norm},
                       {"separable_pre", pre.separable},
                       {"separable_echo", post.separable}});
  }
  json doc = {{"tau", 1.0},
              {"w0", matrix_rows(ops->w0)},
              {"w1", matrix_rows(ops->w1)},
              {"prepulse_operator", matrix_rows(prepulse_operator(*ops))},
              {"echo_operator", matrix_rows(echo_operator(*ops))},
              {"cases", entries}};
  Outputs outputs;
  outputs.add("sec4b.csv", csv_text.str());
  outputs.add("sec4b.json", doc.dump(2) + "\n");
  write_outputs(cfg, outputs, out);
  return kOk;
}

// ---------------------------------------------------------------------------

void add_grid(CLI::App* app, RunConfig& cfg) {
  app->add_option("--tau-start", cfg.tau_start, "first tau")
      ->each([&cfg](const std::string&) { cfg.has_start = true; });
  app->add_option("--tau-stop", cfg.tau_stop, "last tau")
      ->each([&cfg](const std::string&) { cfg.has_stop = true; });
  app->add_option("--points", cfg.points, "grid points (>= 2)")
      ->each([&cfg](const std::string&) { cfg.has_points = true; });
}

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--out", cfg.out, "output directory")->capture_default_str();
  app->add_option("--tol", cfg.tol, "absolute tolerance override");
}

void add_source(CLI::App* app, RunConfig& cfg, const std::string& scenarios) {
  app->add_option("--model", cfg.model_path, "model JSON file");
  app->add_option("--scenario", cfg.scenario, "built-in scenario: " + scenarios);
  app->add_option("--seed", cfg.seed, "seed for random scenarios")->capture_default_str();
  app->add_option("--n", cfg.n, "environment dimension for generated scenarios")
      ->capture_default_str();
  app->add_option("--lambda", cfg.lambda, "coupling strength")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Pure-dephasing qubit-environment entanglement and spin-echo toolkit", "pdecho"};
  app.require_subcommand(1);

  CLI::App* scan = app.add_subcommand("scan", "classify separability before/after the echo");
  add_source(scan, cfg, "fig1, sec4b, commuting, random");
  add_grid(scan, cfg);
  add_common(scan, cfg);
  scan->add_option("--a", cfg.a, "qubit amplitude a as re,im");
  scan->add_option("--b", cfg.b, "qubit amplitude b as re,im");
  scan->add_option("--c0", cfg.c0, "sec4b population of |R0>")->expected(1);
  scan->add_option("--tau0", cfg.tau0, "fig1 time scale")->capture_default_str();
  scan->add_flag("--no-v-commuting", cfg.no_v_commuting,
                 "commuting scenario with [V0, V1] != 0");
  scan->add_option("--max-inconclusive", cfg.max_inconclusive,
                   "largest tolerated fraction of inconclusive points")
      ->capture_default_str();

  CLI::App* spectral = app.add_subcommand("spectral", "second-order attenuation and phase");
  add_source(spectral, cfg, "sigma_zx, static, comb, random");
  add_grid(spectral, cfg);
  add_common(spectral, cfg);
  spectral->add_option("--beta", cfg.beta, "inverse temperature")->capture_default_str();
  spectral->add_option("--eta", cfg.eta, "coupling bias")->capture_default_str();
  spectral->add_option("--tau-star", cfg.tau_star, "comb period")->capture_default_str();
  spectral->add_flag("--gaussian", cfg.gaussian, "add exponentiated (Gaussian) W columns");

  CLI::App* wit = app.add_subcommand("witness", "echo phase-shift entanglement witness");
  add_source(wit, cfg, "sigma_zx, static, comb, random");
  add_grid(wit, cfg);
  add_common(wit, cfg);
  wit->add_option("--beta", cfg.beta, "inverse temperature")->capture_default_str();
  wit->add_option("--tau-star", cfg.tau_star, "comb period")->capture_default_str();

  CLI::App* reproduce = app.add_subcommand("reproduce", "regenerate reference data sets");
  reproduce->require_subcommand(1);
  CLI::App* fig1 = reproduce->add_subcommand("fig1", "periodic two-level model scan");
  add_grid(fig1, cfg);
  add_common(fig1, cfg);
  fig1->add_option("--tau0", cfg.tau0, "time scale")->capture_default_str();
  fig1->add_option("--a", cfg.a, "qubit amplitude a as re,im");
  fig1->add_option("--b", cfg.b, "qubit amplitude b as re,im");
  fig1->add_option("--max-inconclusive", cfg.max_inconclusive,
                   "largest tolerated fraction of inconclusive points")
      ->capture_default_str();
  CLI::App* sec4b = reproduce->add_subcommand("sec4b", "two-level snapshot identities");
  add_common(sec4b, cfg);
  sec4b->add_option("--c0", cfg.c0, "population(s) of |R0>");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (scan->parsed()) return run_scan(cfg, out, err);
    if (spectral->parsed()) return run_spectral(cfg, out);
    if (wit->parsed()) return run_witness(cfg, out);
    if (fig1->parsed()) return run_fig1(cfg, out, err);
    if (sec4b->parsed()) return run_sec4b(cfg, out);
  } catch (const HypothesisError& e) {
    err << "hypothesis violated: " << e.what() << '\n';
    return kHypothesis;
  } catch (const ValidationError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kConfig;
  } catch (const QuadratureError& e) {
    err << "quadrature failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUnexpected;
  }
  return kConfig;
}

}  // namespace pdecho::cli
