#ifndef SIGMAL_EXPERIMENTS_HPP
#define SIGMAL_EXPERIMENTS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sigmal/greeks.hpp"
#include "sigmal/malliavin.hpp"
#include "sigmal/model.hpp"
#include "sigmal/monte_carlo.hpp"

// Experiment drivers shared by the command-line runner and the acceptance
// suite, so a figure reproduced from the CLI and a criterion checked in the
// tests run the exact same code.
namespace sigmal::experiments {

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_error = 0.0;
};

// Pure algebraic identity suite: shuffle property on computed signatures,
// Chen identity, group inverse, switching-operator adjointness, diamond
// direct vs carre-du-champ (exhaustive to word length 4 over {0,1,2}),
// zero-mean of the Skorokhod / generator coefficients against the expected
// signature, semigroup law and generator limit, and the exact worked-example
// regressions. No Monte Carlo.
std::vector<CheckResult> algebra_checks(std::uint64_t seed);

// Numeric Malliavin checks: Stratonovich iterated-integral identity on smooth
// paths for orders 1 and 2 (with refinement), pierced-pair vs pathwise bump,
// Clark-Ocone closed form, chaos-kernel values and vanishing order.
std::vector<CheckResult> malliavin_checks(std::uint64_t seed);

struct EsigRow {
  std::string word;
  double mc = 0.0;
  double exact = 0.0;
  double std_error = 0.0;
  bool pass = false;
};
// Monte Carlo expected signature vs the closed form, every coefficient up to
// cfg.N for d-dimensional Brownian motion.
std::vector<EsigRow> expected_sig_check(const MCConfig& cfg, int d);

struct OuCheckRow {
  std::string name;
  double pooled_diff = 0.0;   // mean over outer paths of (inner MC - operator)
  double pooled_se = 0.0;
  double coverage = 0.0;      // fraction of paths with |diff| <= 3 inner SE
  bool pass = false;
};
// Operator vs conditional-expectation check for the split semigroup on
// several coefficient polys (the W^2/2 case plus seeded random ones).
std::vector<OuCheckRow> ou_check(const MCConfig& cfg, long n_inner, std::uint64_t poly_seed);

struct GreeksCase {
  std::string label;
  ModelSpec model;
  bool asian = false;
  double strike = 1.0;
  std::vector<WeightTag> tags;
  std::optional<double> localization;  // vanilla payoffs only
  double fd_eps = 0.01;
};

struct SeriesResult {
  std::string tag;  // "<label>/<payoff>/<weight>" or ".../fd"
  EstimatorResult result;
};

struct GreeksOutput {
  std::vector<SeriesResult> series;
  // weights that could not be built, with the reason (e.g. h3 at |rho| = 1)
  std::vector<std::pair<std::string, std::string>> refused;
};

// Runs every case against one shared set of Brownian paths (the signature
// does not depend on the model, so one sweep serves all cases). All weights
// are built at cfg.N.
GreeksOutput run_greeks_cases(const std::vector<GreeksCase>& cases, const MCConfig& cfg,
                              std::span<const long> checkpoints);

// Per-path <DG,h> samples for the four standard weights (stability
// diagnostics).
std::map<std::string, std::vector<double>> instability_samples(const ModelSpec& m,
                                                               const MCConfig& cfg);

struct HistogramRow {
  double bin_left, bin_right;
  long count;
  std::string tag;
};
std::vector<HistogramRow> histogram(const std::vector<double>& samples, int bins,
                                    const std::string& tag);

// |a - b| <= k * sqrt(se_a^2 + se_b^2)
bool consistent(const EstimatorResult& a, const EstimatorResult& b, double k = 3.0);

}  // namespace sigmal::experiments

#endif
