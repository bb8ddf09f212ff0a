#include "sigmal/greeks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sigmal/errors.hpp"

namespace sigmal {

TensorPoly log_price_coeff(const ModelSpec& m) {
  const TensorPoly& sigma = m.sigma_coeff;
  const double rho = m.rho, rhobar = m.rho_bar();
  TensorPoly out = TensorPoly::constant(2, std::log(m.S0));
  out += -0.5 * concat_letter(shuffle(sigma, sigma), 0);
  out += rho * (concat_letter(sigma, 1) - 0.5 * concat_letter(right_projection(sigma, 1), 0));
  out += rhobar * (concat_letter(sigma, 2) - 0.5 * concat_letter(right_projection(sigma, 2), 0));
  return out;
}

TensorPoly payoff_coeff_european(const ModelSpec& m) { return log_price_coeff(m); }

TensorPoly payoff_coeff_asian(const ModelSpec& m, int level) {
  if (level < 1) throw std::invalid_argument("payoff_coeff_asian: level must be >= 1");
  TensorPoly avg = concat_letter(shuffle_exp(log_price_coeff(m), level - 1), 0);
  avg *= 1.0 / m.T;
  return avg.truncated(level);
}

TensorPoly sensitivity_coeff(const ModelSpec& m, SensitivityParam param,
                             const Word& sigma_word) {
  const TensorPoly& sigma = m.sigma_coeff;
  switch (param) {
    case SensitivityParam::Spot:
      return TensorPoly::constant(2, 1.0 / m.S0);
    case SensitivityParam::Rho: {
      if (m.rho_bar() == 0.0)
        throw RhoAtBoundary("sensitivity_coeff: rho sensitivity undefined at |rho| = 1");
      TensorPoly out = concat_letter(sigma, 1);
      out -= 0.5 * concat_letter(right_projection(sigma, 1), 0);
      out -= (m.rho / m.rho_bar()) * concat_letter(sigma, 2);
      return out;
    }
    case SensitivityParam::SigmaWord: {
      if (sigma_word.count(2) > 0)
        throw std::invalid_argument("sensitivity_coeff: sigma words range over {0,1}");
      const TensorPoly v = TensorPoly::basis(2, sigma_word);
      TensorPoly out = -1.0 * concat_letter(shuffle(v, sigma), 0);
      out += m.rho * (concat_letter(v, 1) - 0.5 * concat_letter(right_projection(v, 1), 0));
      out += m.rho_bar() *
             (concat_letter(v, 2) - 0.5 * concat_letter(right_projection(v, 2), 0));
      return out;
    }
  }
  throw std::logic_error("sensitivity_coeff: unreachable");
}

CompiledPoly::CompiledPoly(const TensorPoly& p, int level) : degree_(p.degree()) {
  if (p.degree() > level)
    throw DegreeExceedsTruncation("CompiledPoly: poly degree " + std::to_string(p.degree()) +
                                  " exceeds level " + std::to_string(level));
  const int a = p.dim() + 1;
  std::vector<std::size_t> offsets(level + 1);
  std::size_t off = 0, sz = 1;
  for (int n = 0; n <= level; ++n) {
    offsets[n] = off;
    off += sz;
    sz *= a;
  }
  entries_.reserve(p.terms().size());
  for (const auto& [w, c] : p.terms())
    entries_.emplace_back(offsets[w.size()] + GroupTensor::word_index(w, a), c);
}

double CompiledPoly::eval(const GroupTensor& sig) const {
  const double* data = sig.raw().data();
  double acc = 0.0;
  for (const auto& [off, c] : entries_) acc += c * data[off];
  return acc;
}

std::string weight_tag_name(WeightTag tag) {
  switch (tag) {
    case WeightTag::H1: return "h1";
    case WeightTag::H2: return "h2";
    case WeightTag::H3: return "h3";
    case WeightTag::H4: return "h4";
    case WeightTag::Universal: return "universal";
  }
  return "?";
}

MalliavinWeight::MalliavinWeight(const TensorPoly& lG, const TensorPoly& lF1,
                                 const TensorPoly& lF2, const std::vector<TensorPoly>& hvec,
                                 int level)
    : level_(level), lF1_(lF1), lF2_(lF2), delta_h_(lG.dim()), dia_gh_(lG.dim()),
      dia_f1h_(lG.dim()), dia_f2h_(lG.dim()), dia_ghh_(lG.dim()) {
  const int d = lG.dim();
  if (static_cast<int>(hvec.size()) != d)
    throw DimensionMismatch("MalliavinWeight: need one h coefficient per letter 1..d");
  if (lF2.is_zero()) throw std::invalid_argument("MalliavinWeight: lF2 is the zero poly");

  int h_deg = 0;
  for (int i = 1; i <= d; ++i) {
    const TensorPoly& hi = hvec[i - 1];
    if (hi.is_zero()) continue;
    h_deg = std::max(h_deg, hi.degree());
    Word ii = Word::single(i).concat(Word::single(i));
    delta_h_ += lambda_op(hi, i) - psi(hi, SwitchSpec::replace(ii, Word::single(0)));
  }
  // hard floor: everything that enters the weight linearly must fit
  const int floor =
      std::max({lF1.degree(), lF2.degree(), delta_h_.degree(), h_deg});
  if (level < floor)
    throw TruncationTooLow("MalliavinWeight: truncation " + std::to_string(level) +
                           " below required level " + std::to_string(floor));

  dia_gh_ = diamond_vec(lG, hvec, level);
  dia_f1h_ = diamond_vec(lF1, hvec, level);
  dia_f2h_ = diamond_vec(lF2, hvec, level);
  dia_ghh_ = diamond_vec(dia_gh_, hvec, level);

  // worst-case degrees of the diamond ingredients before truncation
  const int shift = std::max(0, h_deg - 1);
  required_level_ = std::max({floor, lG.degree(), lG.degree() + shift,
                              lF1.degree() + shift, lF2.degree() + shift,
                              lG.degree() + 2 * shift});
  exact_ = level >= required_level_;

  lF1_ = lF1.truncated(level);
  lF2_ = lF2.truncated(level);
  f1_c_ = CompiledPoly(lF1_, level);
  f2_c_ = CompiledPoly(lF2_, level);
  delta_h_c_ = CompiledPoly(delta_h_, level);
  dia_gh_c_ = CompiledPoly(dia_gh_, level);
  dia_f1h_c_ = CompiledPoly(dia_f1h_, level);
  dia_f2h_c_ = CompiledPoly(dia_f2h_, level);
  dia_ghh_c_ = CompiledPoly(dia_ghh_, level);
}

void MalliavinWeight::set_required_exact_level(int n) {
  required_level_ = n;
  exact_ = level_ >= n;
}

MalliavinWeight::PathValue MalliavinWeight::evaluate(const GroupTensor& sig) const {
  const double D = dia_gh_c_.eval(sig);
  const double b = f2_c_.eval(sig);
  if (D == 0.0) throw ZeroDenominator("Malliavin weight: <DG,h> vanished");
  if (b == 0.0) throw ZeroDenominator("Malliavin weight: F denominator vanished");
  const double a = f1_c_.eval(sig);
  const double s = delta_h_c_.eval(sig);
  const double c1 = dia_f1h_c_.eval(sig);
  const double c2 = dia_f2h_c_.eval(sig);
  const double q = dia_ghh_c_.eval(sig);
  const double w = (a * s - c1) / (b * D) + a * c2 / (b * b * D) + a * q / (b * D * D);
  return {w, D, b};
}

RationalFunctional MalliavinWeight::as_rational() const {
  TensorPoly num = shuffle(shuffle(delta_h_, lF1_), shuffle(lF2_, dia_gh_));
  num -= shuffle(dia_f1h_, shuffle(lF2_, dia_gh_));
  num += shuffle(lF1_, shuffle(dia_f2h_, dia_gh_));
  num += shuffle(lF1_, shuffle(lF2_, dia_ghh_));
  TensorPoly den = shuffle(shuffle(lF2_, lF2_), shuffle(dia_gh_, dia_gh_));
  return RationalFunctional(std::move(num), std::move(den));
}

MalliavinWeight weight_universal(const TensorPoly& lG, const TensorPoly& lF1,
                                 const TensorPoly& lF2, const std::vector<TensorPoly>& hvec,
                                 int level) {
  return MalliavinWeight(lG, lF1, lF2, hvec, level);
}

std::vector<TensorPoly> table1_hvec(const ModelSpec& m, WeightTag tag) {
  const TensorPoly zero(2);
  const TensorPoly e1 = TensorPoly::basis(2, Word::single(1));
  const TensorPoly e2 = TensorPoly::basis(2, Word::single(2));
  switch (tag) {
    case WeightTag::H1: return {e1, zero};
    case WeightTag::H2: return {log_price_coeff(m), zero};
    case WeightTag::H3: return {zero, e2};
    case WeightTag::H4: return {zero, log_price_coeff(m)};
    case WeightTag::Universal: return {e1, e2};
  }
  throw std::logic_error("table1_hvec: unreachable");
}

MalliavinWeight weight_table1(const ModelSpec& m, WeightTag tag, int level) {
  if ((tag == WeightTag::H3 || tag == WeightTag::H4) && m.rho_bar() == 0.0)
    throw RhoAtBoundary("weight " + weight_tag_name(tag) + " diverges at |rho| = 1");
  const int M = m.sigma_degree();
  // exact orders per choice; h2's is rarely affordable, so it is the one row
  // allowed to run truncated (down to the common floor 2M+1).
  int required = 0, floor = 0;
  switch (tag) {
    case WeightTag::H1: required = floor = 2 * M + 1; break;
    case WeightTag::H2: required = 6 * M + 1; floor = 2 * M + 1; break;
    case WeightTag::H3: required = floor = M + 1; break;
    case WeightTag::H4: required = floor = 2 * M + 1; break;
    case WeightTag::Universal: required = floor = 2 * M + 1; break;
  }
  if (level < floor)
    throw TruncationTooLow("weight " + weight_tag_name(tag) + " needs truncation >= " +
                           std::to_string(floor) + " (exact at " + std::to_string(required) +
                           "), got " + std::to_string(level));
  const TensorPoly lG = log_price_coeff(m);
  const TensorPoly lF1 = TensorPoly::constant(2, 1.0);
  const TensorPoly lF2 = TensorPoly::constant(2, m.S0);
  MalliavinWeight w(lG, lF1, lF2, table1_hvec(m, tag), level);
  w.set_required_exact_level(required);
  return w;
}

CallLocalization localize_call(double strike, double width) {
  if (!(width > 0)) throw std::invalid_argument("localize_call: width must be > 0");
  return CallLocalization{strike, width};
}

double CallLocalization::smooth(double s) const {
  if (s <= strike - width) return 0.0;
  if (s >= strike + width) return s - strike;
  const double t = s - strike + width;
  return t * t / (4.0 * width);
}

double CallLocalization::smooth_derivative(double s) const {
  if (s <= strike - width) return 0.0;
  if (s >= strike + width) return 1.0;
  return (s - strike + width) / (2.0 * width);
}

double CallLocalization::singular(double s) const {
  return std::max(s - strike, 0.0) - smooth(s);
}

bool payoff_is_asian(PayoffKind k) {
  return k == PayoffKind::AsianVanilla || k == PayoffKind::AsianDigital;
}

bool payoff_is_digital(PayoffKind k) {
  return k == PayoffKind::Digital || k == PayoffKind::AsianDigital;
}

PayoffKind payoff_from_name(const std::string& name) {
  if (name == "vanilla") return PayoffKind::Vanilla;
  if (name == "digital") return PayoffKind::Digital;
  if (name == "asian_vanilla" || name == "asian-vanilla") return PayoffKind::AsianVanilla;
  if (name == "asian_digital" || name == "asian-digital") return PayoffKind::AsianDigital;
  throw ConfigError("unknown payoff '" + name + "'");
}

double payoff_value(PayoffKind kind, double arg, double strike) {
  switch (kind) {
    case PayoffKind::Vanilla: return std::max(std::exp(arg) - strike, 0.0);
    case PayoffKind::Digital: return std::exp(arg) >= strike ? 1.0 : 0.0;
    case PayoffKind::AsianVanilla: return std::max(arg - strike, 0.0);
    case PayoffKind::AsianDigital: return arg >= strike ? 1.0 : 0.0;
  }
  return 0.0;
}

TensorPoly payoff_coeff(const ModelSpec& m, PayoffKind kind, int level) {
  return payoff_is_asian(kind) ? payoff_coeff_asian(m, level) : payoff_coeff_european(m);
}

MalliavinWeight make_delta_weight(const ModelSpec& m, PayoffKind kind, WeightTag tag,
                                  int level) {
  if (!payoff_is_asian(kind)) return weight_table1(m, tag, level);
  // Asian weights always go through the generic formula with
  // lF1 = lG (the average price coefficient), lF2 = S0 e.
  if ((tag == WeightTag::H3 || tag == WeightTag::H4) && m.rho_bar() == 0.0)
    throw RhoAtBoundary("weight " + weight_tag_name(tag) + " diverges at |rho| = 1");
  const TensorPoly lG = payoff_coeff_asian(m, level);
  const TensorPoly lF2 = TensorPoly::constant(2, m.S0);
  return MalliavinWeight(lG, lG, lF2, table1_hvec(m, tag), level);
}

EstimatorResult delta_malliavin(const ModelSpec& m, PayoffKind payoff, double strike,
                                WeightTag choice, const MCConfig& cfg,
                                std::optional<double> localization,
                                std::span<const long> checkpoints) {
  cfg.validate();
  const MalliavinWeight weight = make_delta_weight(m, payoff, choice, cfg.N);
  const CompiledPoly lG(payoff_coeff(m, payoff, cfg.N), cfg.N);
  const bool localized = localization.has_value() && !payoff_is_digital(payoff);
  const CallLocalization loc =
      localized ? localize_call(strike, *localization) : CallLocalization{strike, 1.0};
  const bool asian = payoff_is_asian(payoff);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::vector<double> values;
  mc_sweep(
      [&](long, const SampledPath& p, std::span<double> out) {
        const GroupTensor sig = signature_of_path(p, cfg.N, true);
        const double arg = lG.eval(sig);
        double v;
        try {
          const auto pv = weight.evaluate(sig);
          if (localized) {
            const double s = asian ? arg : std::exp(arg);
            // pathwise part for the smooth piece, weight for the singular one
            v = loc.singular(s) * pv.weight + loc.smooth_derivative(s) * s / m.S0;
          } else {
            v = payoff_value(payoff, arg, strike) * pv.weight;
          }
          if (!std::isfinite(v)) v = nan;
        } catch (const ZeroDenominator&) {
          v = nan;
        }
        out[0] = v;
      },
      cfg, 2, 1, values);
  return summarize(values, checkpoints);
}

EstimatorResult delta_finite_difference(const ModelSpec& m, PayoffKind payoff, double strike,
                                        const MCConfig& cfg, double eps,
                                        std::span<const long> checkpoints) {
  cfg.validate();
  if (!(eps > 0)) throw std::invalid_argument("delta_finite_difference: eps must be > 0");
  const CompiledPoly lG(payoff_coeff(m, payoff, cfg.N), cfg.N);
  const bool asian = payoff_is_asian(payoff);
  const double up = 1.0 + eps, dn = 1.0 - eps;

  std::vector<double> values;
  mc_sweep(
      [&](long, const SampledPath& p, std::span<double> out) {
        const GroupTensor sig = signature_of_path(p, cfg.N, true);
        const double arg = lG.eval(sig);
        // bumping S0 shifts the log-price by log(1 +- eps) and scales the
        // running average by (1 +- eps); the paths are shared
        double plus, minus;
        if (asian) {
          plus = payoff_value(payoff, arg * up, strike);
          minus = payoff_value(payoff, arg * dn, strike);
        } else {
          plus = payoff_value(payoff, arg + std::log(up), strike);
          minus = payoff_value(payoff, arg + std::log(dn), strike);
        }
        out[0] = (plus - minus) / (2.0 * eps * m.S0);
      },
      cfg, 2, 1, values);
  return summarize(values, checkpoints);
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double norm_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
}

double bs_delta(double S0, double K, double sigma0, double T, BsKind kind) {
  if (!(sigma0 > 0) || !(T > 0))
    throw std::invalid_argument("bs_delta: need sigma0 > 0 and T > 0");
  const double vol = sigma0 * std::sqrt(T);
  const double d1 = (std::log(S0 / K) + 0.5 * sigma0 * sigma0 * T) / vol;
  if (kind == BsKind::Vanilla) return norm_cdf(d1);
  return norm_pdf(d1 - vol) / (S0 * vol);
}

}  // namespace sigmal
