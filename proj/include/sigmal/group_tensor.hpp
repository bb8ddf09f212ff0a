#ifndef SIGMAL_GROUP_TENSOR_HPP
#define SIGMAL_GROUP_TENSOR_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "sigmal/word.hpp"

namespace sigmal {

// A truncated element of the extended tensor algebra over {0,...,d}: one dense
// coefficient array per level, level n holding the (d+1)^n coefficients of the
// length-n words in lexicographic order (the index of a word is its base-(d+1)
// value). Signatures, expected signatures and their products live here.
//
// `level()` is the storage truncation N. `exact_level()` tracks how far the
// stored coefficients are complete: operators that shorten words (such as the
// switching operator with longer sources than targets) can only fill the
// bottom levels from a truncated input, and record that loss here rather than
// returning silently wrong high levels.
class GroupTensor {
 public:
  GroupTensor(int d, int level);

  static GroupTensor unit(int d, int level);

  int dim() const { return d_; }
  int alphabet() const { return d_ + 1; }
  int level() const { return level_; }
  int exact_level() const { return exact_level_; }
  void set_exact_level(int n) { exact_level_ = n; }

  std::size_t level_size(int n) const { return sizes_[n]; }
  std::size_t total_size() const { return data_.size(); }

  double* level_data(int n) { return data_.data() + offsets_[n]; }
  const double* level_data(int n) const { return data_.data() + offsets_[n]; }

  double& at(int n, std::size_t idx) { return data_[offsets_[n] + idx]; }
  double at(int n, std::size_t idx) const { return data_[offsets_[n] + idx]; }

  // Word access; words longer than the truncation read as 0.
  double coeff(const Word& w) const;
  void set_coeff(const Word& w, double c);
  void add_coeff(const Word& w, double c);

  static std::size_t word_index(const Word& w, int alphabet);

  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  GroupTensor truncated(int level) const;

  GroupTensor& operator+=(const GroupTensor& other);
  GroupTensor& operator*=(double c);

  // this <- this (x) other, the truncated tensor (Chen) product, in place.
  // Level n of the product only reads levels <= n of the factors, so all
  // retained levels are exact when both inputs are.
  void chen_multiply(const GroupTensor& other);

 private:
  int d_;
  int level_;
  int exact_level_;
  std::vector<std::size_t> sizes_;    // sizes_[n] = (d+1)^n
  std::vector<std::size_t> offsets_;  // offsets_[n] = sum of sizes below n
  std::vector<double> data_;
};

GroupTensor chen_product(const GroupTensor& x, const GroupTensor& y);

// Group inverse: y with x (x) y = unit up to the truncation, computed level by
// level. Requires x^e = 1 (NotGroupLike otherwise).
GroupTensor group_inverse(const GroupTensor& x);

double max_abs_difference(const GroupTensor& x, const GroupTensor& y);

}  // namespace sigmal

#endif
