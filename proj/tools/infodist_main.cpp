// Copyright 2026 The infodist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// infodist command-line front end.
//
//   infodist measures  --rho0 SPEC --rho1 SPEC [--pi0 P] [--out FILE]
//   infodist curve     --alpha A [--points N] [--mode analytic|numeric|both] [--out FILE]
//   infodist verify    [--suite NAME] [--seed S] [--out FILE] [--mutate closed-form]
//   infodist broadcast --demo commuting|block|no-broadcast-evidence|clone-check [--out FILE]
//   infodist replay    --manifest FILE [--out FILE]
//
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 internal
// invariant violation. Every output file gets a sidecar FILE.manifest.json.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "infodist.hpp"
#include "json.hpp"

namespace {

using infodist::CMatrix;
using infodist::cplx;
using infodist::DensityOperator;
using Json = nlohmann::ordered_json;

constexpr const char* kArtifactVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 12 significant digits; non-finite values become null.
Json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string csv_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

cplx parse_entry(const Json& e) {
  if (e.is_number()) return e.get<double>();
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw InputError("matrix entry must be a number or a [re, im] pair, got " + e.dump());
}

// A JSON matrix [[...], ...] or "pure:[re, im, re, im, ...]".
DensityOperator parse_state(const std::string& spec) {
  Json j;
  const bool pure = spec.rfind("pure:", 0) == 0;
  try {
    j = Json::parse(pure ? spec.substr(5) : spec);
  } catch (const Json::parse_error& e) {
    throw InputError("cannot parse state spec '" + spec + "': " + e.what());
  }
  if (pure) {
    if (!j.is_array() || j.empty() || j.size() % 2 != 0) {
      throw InputError("pure state spec needs an even, nonzero count of reals: " + spec);
    }
    infodist::CVector v;
    for (std::size_t i = 0; i < j.size(); i += 2) {
      if (!j[i].is_number() || !j[i + 1].is_number()) throw InputError("pure state entries must be numbers");
      v.emplace_back(j[i].get<double>(), j[i + 1].get<double>());
    }
    return DensityOperator(infodist::PureState::normalized(std::move(v)));
  }
  if (!j.is_array() || j.empty()) throw InputError("state matrix must be a nonempty array of rows");
  const std::size_t n = j.size();
  CMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) {
      throw InputError("state matrix must be square; row " + std::to_string(r) + " has the wrong length");
    }
    for (std::size_t c = 0; c < n; ++c) m(r, c) = parse_entry(j[r][c]);
  }
  return DensityOperator(m);
}

// Command outputs are fully determined by (command, parameters).
struct Output {
  std::string text;
  int exit_code = kExitOk;
  Json manifest_extra = Json::object();
};

Output run_measures(const Json& p) {
  const DensityOperator r0 = parse_state(p.at("rho0").get<std::string>());
  const DensityOperator r1 = parse_state(p.at("rho1").get<std::string>());
  const double pi0 = p.at("pi0").get<double>();
  const infodist::PriorPair pr(pi0, 1.0 - pi0);
  Json out;
  out["fidelity"] = num(infodist::fidelity(r0, r1));
  out["min_overlap"] = num(infodist::min_overlap(r0, r1));
  out["trace_distance"] = num(infodist::trace_distance(r0, r1));
  out["helstrom_error"] = num(infodist::helstrom(pr, r0, r1).error_probability);
  out["holevo_bound"] = num(infodist::holevo_bound(pr, r0, r1));
  out["entropy0"] = num(infodist::von_neumann_entropy(r0));
  out["entropy1"] = num(infodist::von_neumann_entropy(r1));
  return {out.dump(2) + "\n"};
}

infodist::OptimizerConfig optimizer_config(const Json& p) {
  infodist::OptimizerConfig cfg;
  cfg.restarts = p.at("restarts").get<int>();
  cfg.max_iterations = p.at("max_iterations").get<int>();
  cfg.seed = p.at("seed").get<std::uint64_t>();
  return cfg;
}

Output run_curve(const Json& p) {
  const double alpha = p.at("alpha").get<double>();
  if (!(alpha > 0.0 && alpha < 0.25 * std::numbers::pi)) {
    throw InputError("alpha must lie in (0, pi/4), got " + csv_num(alpha));
  }
  const int n = p.at("points").get<int>();
  if (n < 2) throw InputError("points must be >= 2");
  const std::string mode = p.at("mode").get<std::string>();
  const bool analytic = mode != "numeric";
  const bool numeric = mode != "analytic";
  const infodist::PurePair pair(alpha);
  if (!pair.nondegenerate()) throw InputError("alpha " + csv_num(alpha) + " gives a degenerate pair");
  const auto curve = infodist::analytic_curve(pair, n);

  // The numeric search needs a positive disturbance target, so the d = 0 row
  // has no numeric value.
  std::vector<double> targets;
  for (const auto& pt : curve.points)
    if (pt.d > 0.0) targets.push_back(pt.d);
  std::vector<infodist::NumericCurvePoint> found;
  if (numeric) found = infodist::numeric_curve_family(pair, targets, optimizer_config(p));

  std::string csv = "d,pe_analytic,pe_numeric,gap\n";
  double max_gap = 0.0;
  std::size_t k = 0;
  for (const auto& pt : curve.points) {
    std::string row = csv_num(pt.d) + ",";
    if (analytic) row += csv_num(pt.pe);
    row += ",";
    if (numeric && pt.d > 0.0) {
      const double pe = found[k++].pe;
      row += csv_num(pe);
      if (analytic) {
        max_gap = std::max(max_gap, std::abs(pe - pt.pe));
        row += "," + csv_num(pe - pt.pe);
      } else {
        row += ",";
      }
    } else {
      row += ",";
    }
    csv += row + "\n";
  }
  Output out{csv};
  if (numeric && analytic) out.manifest_extra["max_abs_gap"] = num(max_gap);
  return out;
}

Output run_verify(const Json& p) {
  infodist::verify::Options opt;
  opt.seed = p.at("seed").get<std::uint64_t>();
  const std::string mutate = p.at("mutate").get<std::string>();
  if (mutate == "closed-form") {
    opt.mutate_closed_form = true;
  } else if (!mutate.empty()) {
    throw InputError("unknown mutation '" + mutate + "' (expected closed-form)");
  }
  const std::string suite = p.at("suite").get<std::string>();
  const auto& names = infodist::verify::suite_names();
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
    throw InputError("unknown suite '" + suite + "'");
  }
  const auto checks = infodist::verify::run_suite(suite, opt);
  bool all_pass = true;
  Json list = Json::array();
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    std::fprintf(stderr, "%s %s worst=%.3e tolerance=%.3e samples=%d\n", c.pass ? "PASS" : "FAIL",
                 c.name.c_str(), c.worst, c.tolerance, c.samples);
    list.push_back({{"name", c.name},
                    {"tolerance", num(c.tolerance)},
                    {"worst", num(c.worst)},
                    {"samples", c.samples},
                    {"pass", c.pass}});
  }
  Json out;
  out["suite"] = suite;
  out["seed"] = opt.seed;
  out["passed"] = all_pass;
  out["checks"] = std::move(list);
  return {out.dump(2) + "\n", all_pass ? kExitOk : kExitVerifyFailed};
}

Json attempt_json(const infodist::BroadcastAttempt& a) {
  Json errs = Json::array();
  for (double e : a.marginal_errors) errs.push_back(num(e));
  return {{"marginal_errors", errs}, {"score", num(a.score)}, {"converged", a.converged}};
}

Output run_broadcast(const Json& p) {
  const std::string demo = p.at("demo").get<std::string>();
  const std::string s0 = p.at("rho0").get<std::string>();
  const std::string s1 = p.at("rho1").get<std::string>();
  auto states = [&](const char* d0, const char* d1) {
    return std::array<DensityOperator, 2>{parse_state(s0.empty() ? d0 : s0), parse_state(s1.empty() ? d1 : s1)};
  };
  Json out;
  out["demo"] = demo;
  if (demo == "commuting") {
    const auto r = states("[[0.9,0],[0,0.1]]", "[[0.1,0],[0,0.9]]");
    out["result"] = attempt_json(infodist::broadcast_commuting(r[0], r[1]));
  } else if (demo == "block") {
    const auto res = infodist::block_counterexample(infodist::default_block_pair(), infodist::PriorPair::equal());
    out["info_bits"] = num(res.info);
    out["disturbance"] = num(res.disturbance);
    out["commutator_norm"] = num(res.commutator_norm);
    out["is_example"] = res.is_example;
  } else if (demo == "no-broadcast-evidence") {
    const int env = p.at("env_dim").get<int>();
    if (env < 1 || env > 4) throw InputError("env-dim must be in 1..4");
    const auto designated = infodist::designated_noncommuting_pair();
    const std::array<DensityOperator, 2> r{s0.empty() ? designated[0] : parse_state(s0),
                                           s1.empty() ? designated[1] : parse_state(s1)};
    out["env_dim"] = env;
    out["result"] = attempt_json(infodist::search_broadcaster(r[0], r[1], env, optimizer_config(p)));
  } else if (demo == "clone-check") {
    const auto r = states("pure:[1,0,0,0]", "pure:[1,0,1,0]");
    const auto res = infodist::clone_check(r[0], r[1], optimizer_config(p));
    out["score"] = num(res.score);
    out["converged"] = res.converged;
  } else {
    throw InputError("unknown demo '" + demo + "'");
  }
  return {out.dump(2) + "\n"};
}

Output run_command(const std::string& command, const Json& params) {
  if (command == "measures") return run_measures(params);
  if (command == "curve") return run_curve(params);
  if (command == "verify") return run_verify(params);
  if (command == "broadcast") return run_broadcast(params);
  throw InputError("unknown command '" + command + "'");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw InputError("failed writing '" + path + "'");
}

int execute(const std::string& command, const Json& params, const std::string& out_path) {
  const Output out = run_command(command, params);
  if (out_path.empty()) {
    std::cout << out.text;
    return out.exit_code;
  }
  write_file(out_path, out.text);
  Json manifest;
  manifest["command"] = command;
  manifest["parameters"] = params;
  manifest["seed"] = params.value("seed", std::uint64_t{0});
  manifest["artifact_version"] = kArtifactVersion;
  manifest["timestamp"] = utc_timestamp();
  manifest["output"] = out_path;
  for (const auto& [k, v] : out.manifest_extra.items()) manifest[k] = v;
  write_file(out_path + ".manifest.json", manifest.dump(2) + "\n");
  return out.exit_code;
}

int replay(const std::string& manifest_path, const std::string& out_override) {
  std::ifstream f(manifest_path);
  if (!f) throw InputError("cannot read manifest '" + manifest_path + "'");
  Json m;
  try {
    m = Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw InputError("manifest '" + manifest_path + "' is not JSON: " + e.what());
  }
  if (!m.contains("command") || !m.contains("parameters")) {
    throw InputError("manifest lacks command or parameters");
  }
  const std::string out = out_override.empty() ? m.value("output", std::string()) : out_override;
  return execute(m["command"].get<std::string>(), m["parameters"], out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information gain versus disturbance for two-state quantum systems"};
  app.require_subcommand(1);

  std::string out;
  std::uint64_t seed = 0;
  int restarts = 32;
  int max_iterations = 4000;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "Output file (stdout if omitted)");
    sub->add_option("--seed", seed, "Random seed")->capture_default_str();
  };
  auto add_optimizer = [&](CLI::App* sub) {
    sub->add_option("--restarts", restarts, "Optimizer restarts")->capture_default_str();
    sub->add_option("--max-iterations", max_iterations, "Evaluations per local search")->capture_default_str();
  };

  std::string rho0, rho1;
  double pi0 = 0.5;
  auto* measures = app.add_subcommand("measures", "Distinguishability measures of two states");
  measures->add_option("--rho0", rho0, "State 0: JSON matrix or pure:[re,im,...]")->required();
  measures->add_option("--rho1", rho1, "State 1: JSON matrix or pure:[re,im,...]")->required();
  measures->add_option("--pi0", pi0, "Prior of state 0")->capture_default_str();
  add_common(measures);

  double alpha = 0.0;
  int points = 11;
  std::string mode = "analytic";
  auto* curve = app.add_subcommand("curve", "Optimal information/disturbance tradeoff curve as CSV");
  curve->add_option("--alpha", alpha, "Input-state angle in (0, pi/4)")->required();
  curve->add_option("--points", points, "Grid points on [0, d0]")->capture_default_str();
  curve->add_option("--mode", mode, "analytic, numeric or both")
      ->check(CLI::IsMember({"analytic", "numeric", "both"}))
      ->capture_default_str();
  add_common(curve);
  add_optimizer(curve);

  std::string suite = "all";
  std::string mutate;
  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  verify->add_option("--suite", suite, "Suite name or all")->capture_default_str();
  verify->add_option("--mutate", mutate, "Inject a fault (closed-form)");
  add_common(verify);

  std::string demo;
  int env_dim = 2;
  auto* broadcast = app.add_subcommand("broadcast", "Broadcasting demonstrations");
  broadcast->add_option("--demo", demo, "commuting, block, no-broadcast-evidence or clone-check")->required();
  broadcast->add_option("--env-dim", env_dim, "Environment dimension for the channel search")->capture_default_str();
  broadcast->add_option("--rho0", rho0, "Override state 0");
  broadcast->add_option("--rho1", rho1, "Override state 1");
  add_common(broadcast);
  add_optimizer(broadcast);

  std::string manifest;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay_cmd->add_option("--manifest", manifest, "Manifest file")->required();
  replay_cmd->add_option("--out", out, "Output file (defaults to the recorded one)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (replay_cmd->parsed()) return replay(manifest, out);
    Json params;
    std::string command;
    if (measures->parsed()) {
      command = "measures";
      params = {{"rho0", rho0}, {"rho1", rho1}, {"pi0", pi0}, {"seed", seed}};
    } else if (curve->parsed()) {
      command = "curve";
      params = {{"alpha", alpha}, {"points", points}, {"mode", mode}, {"seed", seed},
                {"restarts", restarts}, {"max_iterations", max_iterations}};
    } else if (verify->parsed()) {
      command = "verify";
      params = {{"suite", suite}, {"seed", seed}, {"mutate", mutate}};
    } else {
      command = "broadcast";
      params = {{"demo", demo}, {"rho0", rho0}, {"rho1", rho1}, {"env_dim", env_dim}, {"seed", seed},
                {"restarts", restarts}, {"max_iterations", max_iterations}};
    }
    return execute(command, params, out);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const infodist::InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const infodist::Error& e) {
    // Domain and dimension errors stem from the supplied input.
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}
