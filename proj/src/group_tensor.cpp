#include "sigmal/group_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sigmal/errors.hpp"

namespace sigmal {

GroupTensor::GroupTensor(int d, int level) : d_(d), level_(level), exact_level_(level) {
  if (d < 0 || level < 0) throw std::invalid_argument("GroupTensor: d and level must be >= 0");
  sizes_.resize(level + 1);
  offsets_.resize(level + 1);
  std::size_t sz = 1, off = 0;
  for (int n = 0; n <= level; ++n) {
    sizes_[n] = sz;
    offsets_[n] = off;
    off += sz;
    sz *= static_cast<std::size_t>(d + 1);
  }
  data_.assign(off, 0.0);
}

GroupTensor GroupTensor::unit(int d, int level) {
  GroupTensor x(d, level);
  x.data_[0] = 1.0;
  return x;
}

std::size_t GroupTensor::word_index(const Word& w, int alphabet) {
  std::size_t idx = 0;
  for (int i = 0; i < w.size(); ++i) idx = idx * alphabet + w.letter(i);
  return idx;
}

double GroupTensor::coeff(const Word& w) const {
  if (w.size() > level_) return 0.0;
  return data_[offsets_[w.size()] + word_index(w, d_ + 1)];
}

void GroupTensor::set_coeff(const Word& w, double c) {
  data_[offsets_[w.size()] + word_index(w, d_ + 1)] = c;
}

void GroupTensor::add_coeff(const Word& w, double c) {
  data_[offsets_[w.size()] + word_index(w, d_ + 1)] += c;
}

GroupTensor GroupTensor::truncated(int level) const {
  GroupTensor out(d_, level);
  const int keep = std::min(level, level_);
  std::copy(data_.begin(), data_.begin() + static_cast<long>(offsets_[keep] + sizes_[keep]),
            out.data_.begin());
  out.exact_level_ = std::min(level, exact_level_);
  return out;
}

GroupTensor& GroupTensor::operator+=(const GroupTensor& other) {
  if (d_ != other.d_) throw DimensionMismatch("tensor add: alphabet dimensions differ");
  if (level_ != other.level_) throw TruncationMismatch("tensor add: truncation levels differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  exact_level_ = std::min(exact_level_, other.exact_level_);
  return *this;
}

GroupTensor& GroupTensor::operator*=(double c) {
  for (double& v : data_) v *= c;
  return *this;
}

void GroupTensor::chen_multiply(const GroupTensor& other) {
  if (d_ != other.d_) throw DimensionMismatch("chen_product: alphabet dimensions differ");
  if (level_ != other.level_) throw TruncationMismatch("chen_product: truncation levels differ");
  const double y0 = other.data_[0];
  // Descending levels keep the lower levels of *this untouched until read.
  for (int n = level_; n >= 0; --n) {
    double* out = level_data(n);
    const std::size_t sz = sizes_[n];
    if (y0 != 1.0)
      for (std::size_t i = 0; i < sz; ++i) out[i] *= y0;
    for (int k = n - 1; k >= 0; --k) {
      const double* a = level_data(k);
      const double* b = other.level_data(n - k);
      const std::size_t bsz = other.sizes_[n - k];
      double* dest = out;
      for (std::size_t i = 0; i < sizes_[k]; ++i) {
        const double ai = a[i];
        if (ai != 0.0) {
          for (std::size_t j = 0; j < bsz; ++j) dest[j] += ai * b[j];
        }
        dest += bsz;
      }
    }
  }
  exact_level_ = std::min(exact_level_, other.exact_level_);
}

GroupTensor chen_product(const GroupTensor& x, const GroupTensor& y) {
  GroupTensor out = x;
  out.chen_multiply(y);
  return out;
}

GroupTensor group_inverse(const GroupTensor& x) {
  if (x.at(0, 0) != 1.0)
    throw NotGroupLike("group_inverse: level-0 entry is " + std::to_string(x.at(0, 0)) +
                       ", expected 1");
  const int N = x.level();
  GroupTensor y = GroupTensor::unit(x.dim(), N);
  // (x (x) y)_n = 0 for n >= 1 gives y_n = -sum_{k=1..n} x_k (x) y_{n-k}.
  for (int n = 1; n <= N; ++n) {
    double* out = y.level_data(n);
    for (int k = 1; k <= n; ++k) {
      const double* a = x.level_data(k);
      const double* b = y.level_data(n - k);
      const std::size_t bsz = y.level_size(n - k);
      double* dest = out;
      for (std::size_t i = 0; i < x.level_size(k); ++i) {
        const double ai = a[i];
        if (ai != 0.0)
          for (std::size_t j = 0; j < bsz; ++j) dest[j] -= ai * b[j];
        dest += bsz;
      }
    }
  }
  y.set_exact_level(x.exact_level());
  return y;
}

double max_abs_difference(const GroupTensor& x, const GroupTensor& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("max_abs_difference: dimensions differ");
  if (x.level() != y.level()) throw TruncationMismatch("max_abs_difference: levels differ");
  double m = 0.0;
  for (std::size_t i = 0; i < x.raw().size(); ++i)
    m = std::max(m, std::abs(x.raw()[i] - y.raw()[i]));
  return m;
}

}  // namespace sigmal
