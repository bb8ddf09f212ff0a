#include "sigmal/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sigmal/errors.hpp"

namespace sigmal {

ModelSpec::ModelSpec(TensorPoly sigma, double rho_, double S0_, double T_)
    : sigma_coeff(std::move(sigma)), rho(rho_), S0(S0_), T(T_) {
  if (sigma_coeff.dim() != 2)
    throw DimensionMismatch("ModelSpec: sigma must be a poly over the alphabet {0,1,2}");
  if (rho < -1.0 || rho > 1.0)
    throw std::invalid_argument("ModelSpec: rho must lie in [-1, 1]");
  if (!(S0 > 0)) throw std::invalid_argument("ModelSpec: S0 must be > 0");
  if (!(T > 0)) throw std::invalid_argument("ModelSpec: T must be > 0");
}

double ModelSpec::rho_bar() const { return std::sqrt(std::max(0.0, 1.0 - rho * rho)); }

std::vector<std::string> ModelSpec::warnings() const {
  std::vector<std::string> out;
  bool has_letter2 = false, has_letter1 = false, linear_in_w = true;
  for (const auto& [w, c] : sigma_coeff.terms()) {
    if (w.count(2) > 0) has_letter2 = true;
    if (w.count(1) > 0) has_letter1 = true;
    if (w.count(1) + w.count(2) > 1) linear_in_w = false;
  }
  if (has_letter2)
    out.push_back("sigma depends on W^2 (letter 2 present); the standard model keeps the "
                  "volatility independent of the spot noise");
  const int M = sigma_degree();
  if (has_letter1 && M > 0 && !linear_in_w) {
    Word top;  // letter 1 repeated M times
    for (int k = 0; k < M; ++k) top.push_back(1);
    const double top_coeff = sigma_coeff.coeff(top);
    if (M % 2 == 0 || !(rho * top_coeff < 0))
      out.push_back("martingale condition not verified: need odd sigma degree with "
                    "rho*sigma^{1...1} < 0 (or volatility linear in W)");
  }
  return out;
}

RationalFunctional::RationalFunctional(TensorPoly n, TensorPoly d)
    : num(std::move(n)), den(std::move(d)) {
  if (num.dim() != den.dim())
    throw DimensionMismatch("RationalFunctional: alphabet dimensions differ");
  if (den.is_zero())
    throw std::invalid_argument("RationalFunctional: denominator is the zero poly");
}

RationalFunctional::Value RationalFunctional::evaluate(const GroupTensor& sig) const {
  const double dv = pair(den, sig);
  if (dv == 0.0)
    throw ZeroDenominator("RationalFunctional: denominator vanished on this path");
  return {pair(num, sig) / dv, dv};
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

ConfigFile ConfigFile::parse(const std::string& text) {
  ConfigFile cfg;
  TensorPoly sigma(2);
  double rho = 0.0, S0 = 1.0, T = 1.0;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto want = [&](auto& slot) {
      if (!(ls >> slot))
        throw ConfigError("config line " + std::to_string(lineno) + ": bad value for '" + key +
                          "'");
    };
    if (key == "sigma") {
      std::string word;
      double c;
      if (!(ls >> word >> c))
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": expected `sigma <word> <coeff>`");
      sigma.add_term(Word::from_digits(word), c);
    } else if (key == "rho") {
      want(rho);
    } else if (key == "S0") {
      want(S0);
    } else if (key == "T") {
      want(T);
    } else if (key == "N") {
      want(cfg.N);
    } else if (key == "paths") {
      want(cfg.paths);
    } else if (key == "steps") {
      want(cfg.steps);
    } else if (key == "seed") {
      want(cfg.seed);
    } else if (key == "antithetic") {
      int v;
      want(v);
      cfg.antithetic = v != 0;
    } else if (key == "threads") {
      want(cfg.threads);
    } else if (key == "inner") {
      want(cfg.inner);
    } else if (key == "payoff") {
      want(cfg.payoff);
    } else if (key == "strike") {
      want(cfg.strike);
    } else if (key == "weight") {
      want(cfg.weight);
    } else if (key == "localize") {
      want(cfg.localize);
    } else if (key == "epsilon") {
      want(cfg.epsilon);
    } else {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  try {
    cfg.model = ModelSpec(std::move(sigma), rho, S0, T);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid model: ") + e.what());
  }
  return cfg;
}

}  // namespace sigmal
