#ifndef SIGMAL_GREEKS_HPP
#define SIGMAL_GREEKS_HPP

#include <optional>
#include <string>
#include <vector>

#include "sigmal/model.hpp"
#include "sigmal/monte_carlo.hpp"

namespace sigmal {

// Coefficient of the log-price as a linear functional of the Brownian
// signature:
//   log S0 * e - 1/2 sigma^{sh 2} (x) 0
//   + rho (sigma (x) 1 - 1/2 sigma|1 (x) 0)
//   + rhobar (sigma (x) 2 - 1/2 sigma|2 (x) 0).
// The sigma|2 correction vanishes for the standard model (no letter 2 in
// sigma) and keeps the coefficient consistent with the Ito-Stratonovich
// conversion when the instability experiments put letter 2 into sigma.
TensorPoly log_price_coeff(const ModelSpec& m);

// European payoff coefficient: the log-price itself.
TensorPoly payoff_coeff_european(const ModelSpec& m);

// Running-average price coefficient (1/T) exp-shuffle(log-price) (x) 0,
// truncated at `level`. The shuffle exponential is an infinite series, so
// this is inherently a truncation.
TensorPoly payoff_coeff_asian(const ModelSpec& m, int level);

enum class SensitivityParam { Spot, Rho, SigmaWord };

// Coefficient of the parameter derivative of the log-price: d/dS0, d/drho, or
// d/dsigma^v for a word v over {0,1}.
TensorPoly sensitivity_coeff(const ModelSpec& m, SensitivityParam param,
                             const Word& sigma_word = Word());

// A sparse poly pre-resolved to flat offsets into the tensor storage of a
// fixed (d, level) layout; pairing becomes a short dot product in the Monte
// Carlo loop.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  CompiledPoly(const TensorPoly& p, int level);
  double eval(const GroupTensor& sig) const;
  int degree() const { return degree_; }

 private:
  std::vector<std::pair<std::size_t, double>> entries_;
  int degree_ = 0;
};

enum class WeightTag { H1, H2, H3, H4, Universal };

std::string weight_tag_name(WeightTag tag);

// Integration-by-parts weight pi with G = <lG, sig>, F = <lF1,.>/<lF2,.> and
// h the process with coefficient vector hvec (one poly per letter 1..d):
//   pi = <lF1><delta_h>/(<lF2> D) - <lF1 dia h>/(<lF2> D)
//        + <lF1><lF2 dia h>/(<lF2>^2 D) + <lF1><lG dia h dia h>/(<lF2> D^2),
// with D = <lG dia h> and delta_h = sum_i (Lambda_i - Psi^{ii}_0)(h_i).
// All ingredient polys are truncated at the construction level; exact() says
// whether that truncation lost anything.
class MalliavinWeight {
 public:
  MalliavinWeight(const TensorPoly& lG, const TensorPoly& lF1, const TensorPoly& lF2,
                  const std::vector<TensorPoly>& hvec, int level);

  struct PathValue {
    double weight;
    double dg_h;  // <DG, h>, the denominator whose sign drives stability
    double f_den;
  };
  // Throws ZeroDenominator when <lG dia h, sig> or <lF2, sig> is exactly 0.
  PathValue evaluate(const GroupTensor& sig) const;
  // <lG dia h, sig> alone (histogram diagnostics).
  double dg_h(const GroupTensor& sig) const { return dia_gh_c_.eval(sig); }

  int level() const { return level_; }
  int required_exact_level() const { return required_level_; }
  bool exact() const { return exact_; }
  void set_required_exact_level(int n);

  // Single-fraction form over the common denominator
  // lF2^{sh 2} sh (lG dia h)^{sh 2}; degrees can be large, intended for
  // low-degree models and cross-checks.
  RationalFunctional as_rational() const;

  const TensorPoly& delta_h() const { return delta_h_; }
  const TensorPoly& dia_gh() const { return dia_gh_; }
  const TensorPoly& dia_f1h() const { return dia_f1h_; }
  const TensorPoly& dia_f2h() const { return dia_f2h_; }
  const TensorPoly& dia_ghh() const { return dia_ghh_; }

 private:
  int level_;
  int required_level_;
  bool exact_;
  TensorPoly lF1_, lF2_, delta_h_, dia_gh_, dia_f1h_, dia_f2h_, dia_ghh_;
  CompiledPoly f1_c_, f2_c_, delta_h_c_, dia_gh_c_, dia_f1h_c_, dia_f2h_c_, dia_ghh_c_;
};

MalliavinWeight weight_universal(const TensorPoly& lG, const TensorPoly& lF1,
                                 const TensorPoly& lF2, const std::vector<TensorPoly>& hvec,
                                 int level);

// The four standard choices for the European delta (lF1 = e, lF2 = S0 e,
// lG = log-price): h1 = ((1), 0), h2 = (lX, 0), h3 = (0, (2)), h4 = (0, lX),
// plus Universal = ((1), (2)). Verifies the per-row exact order
// (2M+1, 6M+1, M+1, 2M+1 for M = deg sigma); h2 may run truncated down to
// 2M+1 since its exact order is rarely affordable. h3/h4 refuse |rho| = 1.
MalliavinWeight weight_table1(const ModelSpec& m, WeightTag tag, int level);

// The h-coefficient vector of a tag for a given model (used for the Asian
// weights, which always go through the generic formula).
std::vector<TensorPoly> table1_hvec(const ModelSpec& m, WeightTag tag);

// C1 split of the call payoff in price space: smooth + singular with the
// singular part supported on |s - K| <= width. The smooth part matches the
// payoff and its slope at both collar edges (piecewise quadratic inside).
struct CallLocalization {
  double strike;
  double width;
  double smooth(double s) const;
  double smooth_derivative(double s) const;
  double singular(double s) const;
};
CallLocalization localize_call(double strike, double width);

enum class PayoffKind { Vanilla, Digital, AsianVanilla, AsianDigital };

bool payoff_is_asian(PayoffKind k);
bool payoff_is_digital(PayoffKind k);
PayoffKind payoff_from_name(const std::string& name);

// Payoff value from the pairing argument (log-price for European payoffs,
// running average for Asian ones).
double payoff_value(PayoffKind kind, double arg, double strike);

// The payoff coefficient the pairing argument comes from.
TensorPoly payoff_coeff(const ModelSpec& m, PayoffKind kind, int level);

// Weight for the delta of the given payoff: European payoffs use the
// specialized table rows, Asian ones the generic formula with lF1 = lG.
MalliavinWeight make_delta_weight(const ModelSpec& m, PayoffKind kind, WeightTag tag,
                                  int level);

// Delta estimate E[f(G) pi] by Monte Carlo under the signature volatility
// model. Zero-denominator paths are excluded and counted; beyond 0.1% the
// result is flagged unstable. Localization (a collar width in price units)
// applies to the vanilla payoffs only: the smooth part is differentiated
// pathwise and only the singular remainder goes through the weight.
EstimatorResult delta_malliavin(const ModelSpec& m, PayoffKind payoff, double strike,
                                WeightTag choice, const MCConfig& cfg,
                                std::optional<double> localization = std::nullopt,
                                std::span<const long> checkpoints = {});

// Central finite difference in S0 with common random numbers.
EstimatorResult delta_finite_difference(const ModelSpec& m, PayoffKind payoff, double strike,
                                        const MCConfig& cfg, double eps,
                                        std::span<const long> checkpoints = {});

enum class BsKind { Vanilla, Digital };

// Black-Scholes deltas for the constant-volatility model: Phi(d1) for the
// vanilla call, phi(d2)/(S0 sigma sqrt(T)) for the digital.
double bs_delta(double S0, double K, double sigma0, double T, BsKind kind);

double norm_cdf(double x);
double norm_pdf(double x);

}  // namespace sigmal

#endif
