#ifndef SIGMAL_TENSOR_POLY_HPP
#define SIGMAL_TENSOR_POLY_HPP

#include <iosfwd>
#include <map>
#include <string>

#include "sigmal/word.hpp"

namespace sigmal {

class GroupTensor;

// A finitely supported linear functional on the tensor algebra over the
// alphabet {0,...,d}: a sparse word -> coefficient map. Exact zeros are
// dropped eagerly, so two polys are equal iff their term maps are identical;
// no tolerance is ever applied inside the algebra.
class TensorPoly {
 public:
  using TermMap = std::map<Word, double>;

  explicit TensorPoly(int d) : d_(d) {}

  static TensorPoly zero(int d) { return TensorPoly(d); }
  // c * empty word
  static TensorPoly constant(int d, double c);
  static TensorPoly basis(int d, const Word& w, double c = 1.0);

  int dim() const { return d_; }
  bool is_zero() const { return terms_.empty(); }
  // Max word length with nonzero coefficient; 0 for the zero poly.
  int degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }
  int term_count() const { return static_cast<int>(terms_.size()); }

  double coeff(const Word& w) const;
  // Accumulates c onto w, dropping the term if it cancels to exactly zero.
  void add_term(const Word& w, double c);

  const TermMap& terms() const { return terms_; }

  TensorPoly& operator+=(const TensorPoly& other);
  TensorPoly& operator-=(const TensorPoly& other);
  TensorPoly& operator*=(double c);
  friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
  friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) { return a -= b; }
  friend TensorPoly operator*(TensorPoly a, double c) { return a *= c; }
  friend TensorPoly operator*(double c, TensorPoly a) { return a *= c; }

  // Exact sparse equality (same alphabet, identical term maps).
  bool operator==(const TensorPoly& other) const {
    return d_ == other.d_ && terms_ == other.terms_;
  }
  bool operator!=(const TensorPoly& other) const { return !(*this == other); }

  // Drops all terms of length > level.
  TensorPoly truncated(int level) const;

  // Text form: one `word coefficient` line per term, empty word spelled "e".
  std::string to_text() const;
  static TensorPoly from_text(int d, const std::string& text);

  std::string to_string() const;  // human-readable, e.g. "2*11 - 1*0"

 private:
  int d_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const TensorPoly& p);

// <l, x> = sum_v l^v x^v. Throws DegreeExceedsTruncation if the poly has terms
// beyond the tensor's exact level, DimensionMismatch if alphabets differ.
double pair(const TensorPoly& l, const GroupTensor& x);

// Word concatenation product, extended bilinearly.
TensorPoly concat(const TensorPoly& l, const TensorPoly& p);
// l tensor (single letter i) -- common enough to deserve a shortcut.
TensorPoly concat_letter(const TensorPoly& l, int letter);

// Shuffle product, extended bilinearly from the recursive word shuffle.
TensorPoly shuffle(const TensorPoly& l, const TensorPoly& p);
// Shuffle with all output words of length > level discarded. Word pairs whose
// combined length already exceeds `level` are skipped before expansion, which
// is what keeps the high-degree weight constructions affordable.
TensorPoly shuffle_truncated(const TensorPoly& l, const TensorPoly& p, int level);

// exp-shuffle of l, truncated at `level`. Computed via
//   exp_sh(l) = e^{l^e} * sum_n (l - l^e * e)^{sh n} / n!
// which terminates because the n-fold shuffle of a constant-free poly has
// minimal word length n.
TensorPoly shuffle_exp(const TensorPoly& l, int level);

// Keeps words ending in `letter` and strips that final letter: l|i.
TensorPoly right_projection(const TensorPoly& l, int letter);

// sum_n l^{tensor n} / n! truncated at `level`; requires l^e = 0
// (NonzeroConstantTerm otherwise).
GroupTensor tensor_exp(const TensorPoly& l, int level);

// Dense embedding of a poly (used by tests and the exponential).
GroupTensor to_group_tensor(const TensorPoly& l, int level);

}  // namespace sigmal

#endif
