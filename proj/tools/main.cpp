// Experiment runner: validation suites and the Monte Carlo experiments, each
// emitting a deterministic CSV (same config + seed => byte-identical output).
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sigmal/errors.hpp"
#include "sigmal/experiments.hpp"

using namespace sigmal;
namespace ex = sigmal::experiments;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_csv(const std::string& out_dir, const std::string& name) {
  std::filesystem::create_directories(out_dir);
  const std::string path = out_dir + "/" + name;
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  std::cout << "writing " << path << "\n";
  return f;
}

int emit_checks(const std::vector<ex::CheckResult>& checks, const std::string& out_dir,
                const std::string& name) {
  auto f = open_csv(out_dir, name);
  f << "check_name,status,max_error\n";
  bool all_pass = true;
  for (const auto& c : checks) {
    f << c.name << "," << (c.pass ? "pass" : "fail") << "," << fmt(c.max_error) << "\n";
    std::cout << (c.pass ? "  pass  " : "  FAIL  ") << c.name << "  (max_error " << c.max_error
              << ")\n";
    all_pass = all_pass && c.pass;
  }
  return all_pass ? 0 : 1;
}

MCConfig mc_from(const ConfigFile& cf) {
  MCConfig mc;
  mc.n_paths = cf.paths;
  mc.n_steps = cf.steps;
  mc.T = cf.model.T;
  mc.N = cf.N;
  mc.seed = cf.seed;
  mc.antithetic = cf.antithetic;
  mc.n_threads = cf.threads;
  return mc;
}

std::vector<WeightTag> tags_from(const std::string& weight) {
  if (weight == "all")
    return {WeightTag::H1, WeightTag::H2, WeightTag::H3, WeightTag::H4, WeightTag::Universal};
  if (weight == "h1") return {WeightTag::H1};
  if (weight == "h2") return {WeightTag::H2};
  if (weight == "h3") return {WeightTag::H3};
  if (weight == "h4") return {WeightTag::H4};
  if (weight == "universal") return {WeightTag::Universal};
  throw ConfigError("unknown weight '" + weight + "' (h1..h4, universal, all)");
}

int run_convergence(const ConfigFile& cf, const std::string& out_dir, bool asian,
                    const std::string& csv_name) {
  for (const std::string& w : cf.model.warnings()) std::cout << "warning: " << w << "\n";
  MCConfig mc = mc_from(cf);
  const auto checkpoints = geometric_checkpoints(100, mc.n_paths, 20);
  ex::GreeksCase c;
  c.label = asian ? "asian" : "european";
  c.model = cf.model;
  c.asian = asian;
  c.strike = cf.strike;
  c.tags = tags_from(cf.weight);
  if (cf.localize > 0) c.localization = cf.localize;
  c.fd_eps = cf.epsilon;
  const auto out = ex::run_greeks_cases({c}, mc, checkpoints);
  auto f = open_csv(out_dir, csv_name);
  f << "n,estimator_tag,estimate,std_error\n";
  for (const auto& s : out.series) {
    for (const auto& pt : s.result.running)
      f << pt.n << "," << s.tag << "," << fmt(pt.estimate) << "," << fmt(pt.std_error) << "\n";
    std::cout << "  " << s.tag << ": " << s.result.estimate << " +- " << s.result.std_error
              << (s.result.unstable ? "  [unstable]" : "") << "\n";
  }
  for (const auto& [tag, why] : out.refused)
    std::cout << "  " << tag << ": refused (" << why << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signature Malliavin calculus experiment runner"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  std::optional<std::uint64_t> seed_override;
  std::optional<long> paths_override;
  std::optional<int> steps_override, level_override;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "config file (key-value text)");
    cmd->add_option("--out", out_dir, "output directory for CSV files");
    cmd->add_option("--seed", seed_override, "RNG seed override");
    cmd->add_option("--paths", paths_override, "path count override");
    cmd->add_option("--steps", steps_override, "steps per unit time override");
    cmd->add_option("--level", level_override, "signature truncation override");
  };

  auto* validate_algebra = app.add_subcommand(
      "validate-algebra", "pure algebraic identity suite (no Monte Carlo)");
  auto* validate_malliavin = app.add_subcommand(
      "validate-malliavin", "numeric Stratonovich / pierced / chaos checks");
  auto* esig = app.add_subcommand(
      "esig-check", "Monte Carlo expected signature vs the closed form");
  auto* ou = app.add_subcommand(
      "ou-check", "split-semigroup conditional expectation vs the adjoint operator");
  auto* greeks = app.add_subcommand(
      "greeks-convergence", "European delta convergence for all weights + finite differences");
  auto* asian = app.add_subcommand(
      "asian-convergence", "Asian delta convergence for all weights + finite differences");
  auto* instab = app.add_subcommand(
      "instability-histogram", "empirical distribution of the weight denominators");
  for (auto* cmd : {validate_algebra, validate_malliavin, esig, ou, greeks, asian, instab})
    add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    ConfigFile cf;
    if (!config_path.empty()) cf = ConfigFile::parse_file(config_path);
    if (seed_override) cf.seed = *seed_override;
    if (paths_override) cf.paths = *paths_override;
    if (steps_override) cf.steps = *steps_override;
    if (level_override) cf.N = *level_override;

    if (validate_algebra->parsed())
      return emit_checks(ex::algebra_checks(cf.seed), out_dir, "validate_algebra.csv");

    if (validate_malliavin->parsed())
      return emit_checks(ex::malliavin_checks(cf.seed), out_dir, "validate_malliavin.csv");

    if (esig->parsed()) {
      const auto rows = ex::expected_sig_check(mc_from(cf), 2);
      auto f = open_csv(out_dir, "esig_check.csv");
      f << "check_name,status,max_error\n";
      bool all = true;
      long fails = 0;
      for (const auto& r : rows) {
        f << "esig-" << r.word << "," << (r.pass ? "pass" : "fail") << ","
          << fmt(std::abs(r.mc - r.exact)) << "\n";
        all = all && r.pass;
        fails += r.pass ? 0 : 1;
      }
      std::cout << rows.size() << " coefficients, " << fails << " outside 3 standard errors\n";
      return all ? 0 : 1;
    }

    if (ou->parsed()) {
      MCConfig mc = mc_from(cf);
      const auto rows = ex::ou_check(mc, cf.inner, cf.seed + 1);
      auto f = open_csv(out_dir, "ou_check.csv");
      f << "check_name,status,max_error\n";
      bool all = true;
      for (const auto& r : rows) {
        f << "ou-" << r.name << "," << (r.pass ? "pass" : "fail") << ","
          << fmt(std::abs(r.pooled_diff)) << "\n";
        std::cout << (r.pass ? "  pass  " : "  FAIL  ") << r.name << "  pooled "
                  << r.pooled_diff << " +- " << r.pooled_se << ", coverage " << r.coverage
                  << "\n";
        all = all && r.pass;
      }
      return all ? 0 : 1;
    }

    if (greeks->parsed()) return run_convergence(cf, out_dir, false, "greeks_convergence.csv");
    if (asian->parsed()) return run_convergence(cf, out_dir, true, "asian_convergence.csv");

    if (instab->parsed()) {
      for (const std::string& w : cf.model.warnings()) std::cout << "warning: " << w << "\n";
      const auto samples = ex::instability_samples(cf.model, mc_from(cf));
      auto f = open_csv(out_dir, "instability_histogram.csv");
      f << "bin_left,bin_right,count,tag\n";
      for (const auto& [tag, vals] : samples) {
        long pos = 0, neg = 0;
        for (double v : vals) (v > 0 ? pos : neg) += 1;
        std::cout << "  " << tag << ": " << neg << " negative / " << pos
                  << " positive denominator samples\n";
        for (const auto& row : ex::histogram(vals, 60, tag))
          f << fmt(row.bin_left) << "," << fmt(row.bin_right) << "," << row.count << ","
            << row.tag << "\n";
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
