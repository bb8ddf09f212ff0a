#ifndef SIGMAL_MONTE_CARLO_HPP
#define SIGMAL_MONTE_CARLO_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "sigmal/operators.hpp"
#include "sigmal/path_signature.hpp"

namespace sigmal {

struct MCConfig {
  long n_paths = 1;
  int n_steps = 500;  // steps per unit time
  double T = 1.0;
  int N = 4;  // signature truncation level
  std::uint64_t seed = 0;
  bool antithetic = false;
  int n_threads = 0;  // 0 = hardware concurrency

  void validate() const;
  int total_steps() const;
};

struct RunningPoint {
  long n;
  double estimate;
  double std_error;
};

struct EstimatorResult {
  double estimate = 0.0;
  double std_error = 0.0;
  long n_used = 0;
  long n_excluded = 0;  // paths dropped by an exactly-zero denominator
  bool unstable = false;
  std::vector<RunningPoint> running;
};

// splitmix64 step; used to derive per-path seeds so results are independent
// of scheduling order and thread count.
std::uint64_t mix_seed(std::uint64_t state);
std::uint64_t path_seed(std::uint64_t base_seed, std::uint64_t index);

// Gaussian generator with an explicit Box-Muller transform on top of
// mt19937_64, so streams are reproducible and self-contained.
class NormalRng {
 public:
  explicit NormalRng(std::uint64_t seed) : engine_(seed) {}
  double operator()();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// d-dimensional standard Brownian path on the uniform grid of cfg, as path
// index `index`. With cfg.antithetic, paths 2k and 2k+1 share the seed of k
// and are mirror images.
SampledPath brownian_path(const MCConfig& cfg, int d, long index);

// Geometric checkpoint schedule: `points` counts from `lo` to n_max.
std::vector<long> geometric_checkpoints(long lo, long n_max, int points);

// Deterministic pairwise (tree) sum; fixed summation order regardless of how
// the values were produced.
double pairwise_sum(std::span<const double> values);

// Mean / standard error of the finite entries of `values`, plus running
// prefix estimates at the checkpoint counts. NaN entries count as excluded.
EstimatorResult summarize(std::span<const double> values,
                          std::span<const long> checkpoints = {});

// Evaluates `functional` on i.i.d. Brownian paths and aggregates. Exceptions
// from the functional are rethrown with the path index attached.
EstimatorResult mc_expect(const std::function<double(const SampledPath&)>& functional,
                          const MCConfig& cfg, int d,
                          std::span<const long> checkpoints = {});

// One pass over the paths filling a row of `width` doubles per path; used by
// the Greeks experiments where many estimators share one signature. `rows` is
// indexed [path * width + column], pre-sized by the caller. Runs on
// cfg.n_threads threads; rows are written by path index so the result does
// not depend on the thread count.
void mc_sweep(const std::function<void(long, const SampledPath&, std::span<double>)>& fill,
              const MCConfig& cfg, int d, int width, std::vector<double>& rows);

struct OuSplitSample {
  double inner_mean = 0.0;    // inner Monte Carlo over the independent split
  double inner_se = 0.0;
  double operator_value = 0.0;  // adjoint semigroup applied to the coefficients
};

// For each outer path W: the conditional expectation of <l, sig(B)> given W,
// where B mixes W with an independent Brownian motion at rates kappa and time
// theta, estimated by inner Monte Carlo; paired with the algebraic value
// <adjoint-semigroup(l), sig(W)>.
std::vector<OuSplitSample> ou_split_expectation(const TensorPoly& l, const KappaVector& kv,
                                                const MCConfig& cfg, long n_inner);

}  // namespace sigmal

#endif
