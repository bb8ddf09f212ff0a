#include "sigmal/tensor_poly.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <vector>

#include "sigmal/errors.hpp"
#include "sigmal/group_tensor.hpp"

namespace sigmal {

namespace {

void require_same_dim(const TensorPoly& a, const TensorPoly& b, const char* op) {
  if (a.dim() != b.dim())
    throw DimensionMismatch(std::string(op) + ": alphabet dimensions differ (" +
                            std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

// All shuffles of two basis words, as word -> multiplicity. The recursion
//   (vi) sh (wj) = ((vi) sh w)j + (v sh (wj))i
// is expanded bottom-up over prefix lengths; multiplicities are binomial
// numbers, exactly representable in double far beyond any degree used here.
void shuffle_words(const Word& u, const Word& v, double coeff,
                   std::map<Word, double>& out, int max_level) {
  const int nu = u.size(), nv = v.size();
  if (nu + nv > max_level) return;
  if (nu == 0) {
    out[v] += coeff;
    return;
  }
  if (nv == 0) {
    out[u] += coeff;
    return;
  }
  // table[i][j] = all shuffles of u[0,i) with v[0,j)
  std::vector<std::vector<std::map<Word, double>>> table(
      nu + 1, std::vector<std::map<Word, double>>(nv + 1));
  table[0][0][Word()] = 1.0;
  for (int i = 0; i <= nu; ++i) {
    for (int j = 0; j <= nv; ++j) {
      if (i == 0 && j == 0) continue;
      auto& cell = table[i][j];
      if (i > 0) {
        for (const auto& [w, c] : table[i - 1][j]) {
          Word ext = w;
          ext.push_back(u.letter(i - 1));
          cell[ext] += c;
        }
      }
      if (j > 0) {
        for (const auto& [w, c] : table[i][j - 1]) {
          Word ext = w;
          ext.push_back(v.letter(j - 1));
          cell[ext] += c;
        }
      }
    }
  }
  for (const auto& [w, c] : table[nu][nv]) out[w] += coeff * c;
}

}  // namespace

TensorPoly TensorPoly::constant(int d, double c) {
  TensorPoly p(d);
  p.add_term(Word(), c);
  return p;
}

TensorPoly TensorPoly::basis(int d, const Word& w, double c) {
  TensorPoly p(d);
  p.add_term(w, c);
  return p;
}

double TensorPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? 0.0 : it->second;
}

void TensorPoly::add_term(const Word& w, double c) {
  if (c == 0.0) return;
  if (w.max_letter() > d_)
    throw DimensionMismatch("word " + w.to_digits() + " has letters beyond alphabet {0.." +
                            std::to_string(d_) + "}");
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& other) {
  require_same_dim(*this, other, "add");
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

TensorPoly& TensorPoly::operator-=(const TensorPoly& other) {
  require_same_dim(*this, other, "subtract");
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

TensorPoly& TensorPoly::operator*=(double c) {
  if (c == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

TensorPoly TensorPoly::truncated(int level) const {
  TensorPoly out(d_);
  for (const auto& [w, c] : terms_) {
    if (w.size() > level) break;  // graded order: all further words are longer
    out.terms_.emplace(w, c);
  }
  return out;
}

std::string TensorPoly::to_text() const {
  std::string out;
  char buf[64];
  for (const auto& [w, c] : terms_) {
    std::snprintf(buf, sizeof(buf), "%.17g", c);
    out += w.to_digits();
    out += ' ';
    out += buf;
    out += '\n';
  }
  return out;
}

TensorPoly TensorPoly::from_text(int d, const std::string& text) {
  TensorPoly p(d);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string word;
    double c;
    if (!(ls >> word >> c))
      throw ConfigError("bad poly line: '" + line + "' (expected `word coefficient`)");
    p.add_term(Word::from_digits(word), c);
  }
  return p;
}

std::string TensorPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  char buf[64];
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::snprintf(buf, sizeof(buf), "%g", first ? c : std::abs(c));
    if (!first) out += c < 0 ? " - " : " + ";
    out += buf;
    out += '*';
    out += w.to_digits();
    first = false;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const TensorPoly& p) {
  return os << p.to_string();
}

double pair(const TensorPoly& l, const GroupTensor& x) {
  if (l.dim() != x.dim())
    throw DimensionMismatch("pair: poly over {0.." + std::to_string(l.dim()) +
                            "} against tensor over {0.." + std::to_string(x.dim()) + "}");
  if (l.degree() > x.exact_level())
    throw DegreeExceedsTruncation("pair: poly degree " + std::to_string(l.degree()) +
                                  " exceeds tensor exact level " +
                                  std::to_string(x.exact_level()));
  double acc = 0.0;
  for (const auto& [w, c] : l.terms()) acc += c * x.coeff(w);
  return acc;
}

TensorPoly concat(const TensorPoly& l, const TensorPoly& p) {
  require_same_dim(l, p, "concat");
  TensorPoly out(l.dim());
  for (const auto& [u, cu] : l.terms())
    for (const auto& [v, cv] : p.terms()) out.add_term(u.concat(v), cu * cv);
  return out;
}

TensorPoly concat_letter(const TensorPoly& l, int letter) {
  TensorPoly out(l.dim());
  for (const auto& [u, cu] : l.terms()) {
    Word w = u;
    w.push_back(letter);
    out.add_term(w, cu);
  }
  return out;
}

TensorPoly shuffle(const TensorPoly& l, const TensorPoly& p) {
  require_same_dim(l, p, "shuffle");
  TensorPoly::TermMap acc;
  for (const auto& [u, cu] : l.terms())
    for (const auto& [v, cv] : p.terms())
      shuffle_words(u, v, cu * cv, acc, l.degree() + p.degree());
  TensorPoly out(l.dim());
  for (const auto& [w, c] : acc) out.add_term(w, c);
  return out;
}

TensorPoly shuffle_truncated(const TensorPoly& l, const TensorPoly& p, int level) {
  require_same_dim(l, p, "shuffle");
  TensorPoly::TermMap acc;
  for (const auto& [u, cu] : l.terms()) {
    if (u.size() > level) break;
    for (const auto& [v, cv] : p.terms()) {
      if (u.size() + v.size() > level) break;
      shuffle_words(u, v, cu * cv, acc, level);
    }
  }
  TensorPoly out(l.dim());
  for (const auto& [w, c] : acc) out.add_term(w, c);
  return out;
}

TensorPoly shuffle_exp(const TensorPoly& l, int level) {
  const double c0 = l.coeff(Word());
  TensorPoly reduced = l;
  reduced.add_term(Word(), -c0);
  TensorPoly out = TensorPoly::constant(l.dim(), 1.0);
  TensorPoly power = out;
  // The n-fold shuffle of a constant-free poly has minimal word length n, so
  // the series stops once n exceeds the truncation.
  for (int n = 1; n <= level && !power.is_zero(); ++n) {
    power = shuffle_truncated(power, reduced, level) * (1.0 / n);
    out += power;
  }
  out *= std::exp(c0);
  return out;
}

TensorPoly right_projection(const TensorPoly& l, int letter) {
  TensorPoly out(l.dim());
  for (const auto& [w, c] : l.terms()) {
    if (w.empty() || w.letter(w.size() - 1) != letter) continue;
    out.add_term(w.prefix(w.size() - 1), c);
  }
  return out;
}

GroupTensor to_group_tensor(const TensorPoly& l, int level) {
  GroupTensor x(l.dim(), level);
  for (const auto& [w, c] : l.terms()) {
    if (w.size() > level) break;
    x.add_coeff(w, c);
  }
  return x;
}

GroupTensor tensor_exp(const TensorPoly& l, int level) {
  if (l.coeff(Word()) != 0.0)
    throw NonzeroConstantTerm("tensor_exp: argument must have zero empty-word coefficient");
  GroupTensor base = to_group_tensor(l, level);
  GroupTensor out = GroupTensor::unit(l.dim(), level);
  GroupTensor power = GroupTensor::unit(l.dim(), level);
  // l has no constant term, so the n-th power vanishes below level n.
  for (int n = 1; n <= level; ++n) {
    power.chen_multiply(base);
    power *= 1.0 / n;
    out += power;
  }
  return out;
}

}  // namespace sigmal
