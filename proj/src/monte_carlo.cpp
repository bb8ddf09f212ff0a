#include "sigmal/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "sigmal/errors.hpp"

namespace sigmal {

void MCConfig::validate() const {
  if (n_paths < 1) throw std::invalid_argument("MCConfig: n_paths must be >= 1");
  if (n_steps < 2) throw std::invalid_argument("MCConfig: n_steps must be >= 2");
  if (!(T > 0)) throw std::invalid_argument("MCConfig: T must be > 0");
  if (N < 1) throw std::invalid_argument("MCConfig: N must be >= 1");
}

int MCConfig::total_steps() const {
  return std::max(2, static_cast<int>(std::lround(n_steps * T)));
}

std::uint64_t mix_seed(std::uint64_t state) {
  std::uint64_t z = state + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t path_seed(std::uint64_t base_seed, std::uint64_t index) {
  return mix_seed(mix_seed(base_seed) + index);
}

double NormalRng::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // polar Box-Muller
  double u, v, s;
  do {
    u = 2.0 * std::generate_canonical<double, 53>(engine_) - 1.0;
    v = 2.0 * std::generate_canonical<double, 53>(engine_) - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

SampledPath brownian_path(const MCConfig& cfg, int d, long index) {
  const long base = cfg.antithetic ? index / 2 : index;
  const double sign = (cfg.antithetic && (index % 2 == 1)) ? -1.0 : 1.0;
  NormalRng rng(path_seed(cfg.seed, static_cast<std::uint64_t>(base)));
  const int steps = cfg.total_steps();
  const double dt = cfg.T / steps;
  const double sdt = std::sqrt(dt);
  SampledPath p;
  p.m = d;
  p.times.resize(steps + 1);
  p.values.assign(static_cast<std::size_t>(steps + 1) * d, 0.0);
  for (int k = 1; k <= steps; ++k) {
    p.times[k] = k * dt;
    for (int j = 0; j < d; ++j)
      p.value(k, j) = p.value(k - 1, j) + sign * sdt * rng();
  }
  return p;
}

std::vector<long> geometric_checkpoints(long lo, long n_max, int points) {
  std::vector<long> out;
  if (n_max < 1 || points < 1) return out;
  lo = std::min(lo, n_max);
  for (int j = 0; j < points; ++j) {
    const double f = points == 1 ? 1.0 : static_cast<double>(j) / (points - 1);
    long n = static_cast<long>(std::lround(lo * std::pow(double(n_max) / lo, f)));
    n = std::clamp(n, 1L, n_max);
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 32) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

namespace {

// mean / SE over finite prefix entries
void prefix_stats(std::span<const double> values, long upto, double& mean, double& se,
                  long& used) {
  std::vector<double> finite;
  finite.reserve(upto);
  for (long i = 0; i < upto; ++i)
    if (std::isfinite(values[i])) finite.push_back(values[i]);
  used = static_cast<long>(finite.size());
  if (used == 0) {
    mean = std::numeric_limits<double>::quiet_NaN();
    se = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  mean = pairwise_sum(finite) / used;
  if (used == 1) {
    se = 0.0;
    return;
  }
  for (double& v : finite) {
    const double dev = v - mean;
    v = dev * dev;
  }
  const double var = pairwise_sum(finite) / (used - 1);
  se = std::sqrt(var / used);
}

}  // namespace

EstimatorResult summarize(std::span<const double> values, std::span<const long> checkpoints) {
  EstimatorResult res;
  const long n = static_cast<long>(values.size());
  prefix_stats(values, n, res.estimate, res.std_error, res.n_used);
  res.n_excluded = n - res.n_used;
  res.unstable = res.n_excluded * 1000 > n;  // more than 0.1% of paths dropped
  for (long c : checkpoints) {
    if (c > n) c = n;
    RunningPoint pt;
    long used;
    prefix_stats(values, c, pt.estimate, pt.std_error, used);
    pt.n = c;
    if (res.running.empty() || res.running.back().n != pt.n) res.running.push_back(pt);
  }
  return res;
}

void mc_sweep(const std::function<void(long, const SampledPath&, std::span<double>)>& fill,
              const MCConfig& cfg, int d, int width, std::vector<double>& rows) {
  cfg.validate();
  rows.assign(static_cast<std::size_t>(cfg.n_paths) * width, 0.0);
  long threads = cfg.n_threads > 0 ? cfg.n_threads
                                   : static_cast<long>(std::thread::hardware_concurrency());
  threads = std::max(1L, std::min<long>(threads, cfg.n_paths));

  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&](long lo, long hi) {
    try {
      for (long i = lo; i < hi; ++i) {
        const SampledPath p = brownian_path(cfg, d, i);
        try {
          fill(i, p, std::span<double>(rows.data() + i * width, width));
        } catch (const std::exception& e) {
          throw std::runtime_error("path " + std::to_string(i) + ": " + e.what());
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };

  if (threads == 1) {
    worker(0, cfg.n_paths);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (cfg.n_paths + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const long lo = t * chunk;
      const long hi = std::min<long>(lo + chunk, cfg.n_paths);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

EstimatorResult mc_expect(const std::function<double(const SampledPath&)>& functional,
                          const MCConfig& cfg, int d, std::span<const long> checkpoints) {
  std::vector<double> values;
  mc_sweep([&](long, const SampledPath& p, std::span<double> out) { out[0] = functional(p); },
           cfg, d, 1, values);
  return summarize(values, checkpoints);
}

std::vector<OuSplitSample> ou_split_expectation(const TensorPoly& l, const KappaVector& kv,
                                                const MCConfig& cfg, long n_inner) {
  cfg.validate();
  const int d = l.dim();
  if (l.degree() > cfg.N)
    throw DegreeExceedsTruncation("ou_split_expectation: poly degree exceeds cfg.N");
  const TensorPoly adj = ou_semigroup_adjoint(l, kv);
  const int steps = cfg.total_steps();
  const double dt = cfg.T / steps;
  const double sdt = std::sqrt(dt);
  std::vector<double> damp(d), mixa(d);
  for (int i = 0; i < d; ++i) {
    damp[i] = std::exp(-kv.kappa[i] * kv.theta);
    mixa[i] = std::sqrt(1.0 - damp[i] * damp[i]);
  }

  std::vector<OuSplitSample> out(cfg.n_paths);
  SignatureWorkspace ws;
  std::vector<double> delta(d + 1);
  std::vector<double> inner_vals(n_inner);
  for (long idx = 0; idx < cfg.n_paths; ++idx) {
    const SampledPath w = brownian_path(cfg, d, idx);
    OuSplitSample& s = out[idx];
    s.operator_value = pair(adj, signature_of_path(w, cfg.N, true));
    for (long j = 0; j < n_inner; ++j) {
      NormalRng perp(path_seed(path_seed(cfg.seed ^ 0x5bf03635ULL, idx), j));
      GroupTensor sig = GroupTensor::unit(d, cfg.N);
      for (int k = 1; k <= steps; ++k) {
        delta[0] = dt;
        for (int i = 0; i < d; ++i) {
          // increment of e^{-kappa theta} W + sqrt(1-e^{-2 kappa theta}) Wperp
          delta[i + 1] =
              damp[i] * (w.value(k, i) - w.value(k - 1, i)) + mixa[i] * sdt * perp();
        }
        join_segment(sig, delta.data(), ws);
      }
      inner_vals[j] = pair(l, sig);
    }
    EstimatorResult inner = summarize(inner_vals);
    s.inner_mean = inner.estimate;
    s.inner_se = inner.std_error;
  }
  return out;
}

}  // namespace sigmal
