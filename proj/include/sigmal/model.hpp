#ifndef SIGMAL_MODEL_HPP
#define SIGMAL_MODEL_HPP

#include <string>
#include <vector>

#include "sigmal/group_tensor.hpp"
#include "sigmal/tensor_poly.hpp"

namespace sigmal {

// Signature volatility model: dS/S = sigma_t dB with B = rho W^1 + rhobar W^2
// and sigma_t = <sigma_coeff, sig(What_t)>, alphabet {0,1,2}. The usual
// setting keeps sigma independent of W^2 (no letter 2 in sigma_coeff); the
// instability experiment deliberately breaks that, so violations surface as
// warnings rather than errors, as does the martingale condition on the top
// power of letter 1.
struct ModelSpec {
  TensorPoly sigma_coeff;
  double rho = 0.0;
  double S0 = 1.0;
  double T = 1.0;

  ModelSpec() : sigma_coeff(2) {}
  ModelSpec(TensorPoly sigma, double rho_, double S0_, double T_);

  double rho_bar() const;
  int sigma_degree() const { return sigma_coeff.degree(); }

  // Consistency warnings (letter-2 dependence, martingale guard). Empty means
  // a clean model.
  std::vector<std::string> warnings() const;
};

// F = <num, sig> / <den, sig>; evaluation is only defined where the
// denominator does not vanish, and reports it for diagnostics.
struct RationalFunctional {
  TensorPoly num;
  TensorPoly den;

  RationalFunctional(TensorPoly n, TensorPoly d);

  struct Value {
    double value;
    double denominator;
  };
  Value evaluate(const GroupTensor& sig) const;
};

// Flat key-value experiment/model configuration. Recognized keys: repeated
// `sigma <word> <coeff>` lines plus scalar keys (rho, S0, T, N, paths, steps,
// seed, payoff, strike, weight, localize, antithetic, threads, inner,
// out, epsilon). Unknown keys raise ConfigError.
struct ConfigFile {
  ModelSpec model;
  int N = 4;
  long paths = 10000;
  int steps = 500;
  std::uint64_t seed = 1;
  bool antithetic = false;
  int threads = 0;
  long inner = 2000;
  std::string payoff = "vanilla";
  double strike = 1.0;
  std::string weight = "all";
  double localize = 0.0;  // 0 disables localization
  double epsilon = 0.01;  // finite-difference bump

  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse(const std::string& text);
};

}  // namespace sigmal

#endif
