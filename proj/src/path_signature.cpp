#include "sigmal/path_signature.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "sigmal/errors.hpp"
#include "sigmal/tensor_poly.hpp"

namespace sigmal {

SampledPath SampledPath::reversed() const {
  SampledPath out;
  out.m = m;
  const int n = samples();
  out.times.resize(n);
  out.values.resize(values.size());
  const double t0 = times.front(), t1 = times.back();
  for (int i = 0; i < n; ++i) {
    out.times[i] = t0 + (t1 - times[n - 1 - i]);
    for (int j = 0; j < m; ++j) out.value(i, j) = value(n - 1 - i, j);
  }
  return out;
}

SampledPath SampledPath::slice(int from, int to) const {
  SampledPath out;
  out.m = m;
  for (int i = from; i <= to; ++i) {
    out.times.push_back(times[i] - times[from]);
    for (int j = 0; j < m; ++j) out.values.push_back(value(i, j));
  }
  return out;
}

void SignatureWorkspace::prepare(int alphabet, int level) {
  if (alphabet == alphabet_ && level == level_) return;
  std::size_t total = 0, sz = 1;
  for (int n = 1; n <= level; ++n) {
    sz *= alphabet;
    total += sz;
  }
  powers.assign(total, 0.0);
  alphabet_ = alphabet;
  level_ = level;
}

void join_segment(GroupTensor& sig, const double* delta, SignatureWorkspace& ws) {
  const int N = sig.level();
  const int a = sig.alphabet();
  if (N == 0) return;
  ws.prepare(a, N);

  // powers[n-1 block] = delta^(x n) / n!
  double* pw = ws.powers.data();
  std::vector<const double*> pw_at(N + 1, nullptr);
  std::memcpy(pw, delta, sizeof(double) * a);
  pw_at[1] = pw;
  std::size_t prev_sz = a;
  for (int n = 2; n <= N; ++n) {
    const double* prev = pw_at[n - 1];
    double* cur = pw + (pw_at[n - 1] - ws.powers.data()) + prev_sz;
    const double inv = 1.0 / n;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < prev_sz; ++i) {
      const double pi = prev[i] * inv;
      for (int j = 0; j < a; ++j) cur[idx++] = pi * delta[j];
    }
    pw_at[n] = cur;
    prev_sz *= a;
  }

  // sig_n += sum_{m=1..n} sig_{n-m} (x) delta^(x m)/m!, descending so the
  // lower levels are still the pre-join values when read. The rsz==3 and
  // rsz==9 cases carry a large share of the work with inner loops too short
  // to vectorize, so they are unrolled by hand with the rhs held in registers.
  for (int n = N; n >= 1; --n) {
    double* __restrict out = sig.level_data(n);
    for (int m = 1; m < n; ++m) {
      const double* __restrict lhs = sig.level_data(n - m);
      const double* __restrict rhs = pw_at[m];
      const std::size_t rsz = sig.level_size(m);
      const std::size_t lsz = sig.level_size(n - m);
      double* __restrict dest = out;
      if (rsz == 3) {
        const double r0 = rhs[0], r1 = rhs[1], r2 = rhs[2];
        for (std::size_t i = 0; i < lsz; ++i) {
          const double c = lhs[i];
          dest[0] += c * r0;
          dest[1] += c * r1;
          dest[2] += c * r2;
          dest += 3;
        }
      } else if (rsz == 9) {
        const double r0 = rhs[0], r1 = rhs[1], r2 = rhs[2], r3 = rhs[3], r4 = rhs[4],
                     r5 = rhs[5], r6 = rhs[6], r7 = rhs[7], r8 = rhs[8];
        for (std::size_t i = 0; i < lsz; ++i) {
          const double c = lhs[i];
          dest[0] += c * r0;
          dest[1] += c * r1;
          dest[2] += c * r2;
          dest[3] += c * r3;
          dest[4] += c * r4;
          dest[5] += c * r5;
          dest[6] += c * r6;
          dest[7] += c * r7;
          dest[8] += c * r8;
          dest += 9;
        }
      } else {
        for (std::size_t i = 0; i < lsz; ++i) {
          const double c = lhs[i];
          for (std::size_t j = 0; j < rsz; ++j) dest[j] += c * rhs[j];
          dest += rsz;
        }
      }
    }
    // m = n term: level 0 of sig is 1 for signatures; use its actual value.
    const double c0 = sig.at(0, 0);
    const double* rhs = pw_at[n];
    for (std::size_t j = 0; j < sig.level_size(n); ++j) out[j] += c0 * rhs[j];
  }
}

GroupTensor signature_of_path(const SampledPath& p, int level, bool augment_time) {
  if (p.samples() < 2) throw TooFewSamples("signature_of_path: need at least 2 samples");
  for (int i = 1; i < p.samples(); ++i)
    if (!(p.times[i] > p.times[i - 1]))
      throw NonMonotoneTimes("signature_of_path: times must be strictly increasing (index " +
                             std::to_string(i) + ")");
  const int d = augment_time ? p.m : p.m - 1;
  GroupTensor sig = GroupTensor::unit(d, level);
  SignatureWorkspace ws;
  std::vector<double> delta(d + 1);
  for (int i = 1; i < p.samples(); ++i) {
    if (augment_time) {
      delta[0] = p.times[i] - p.times[i - 1];
      for (int j = 0; j < p.m; ++j) delta[j + 1] = p.value(i, j) - p.value(i - 1, j);
    } else {
      for (int j = 0; j < p.m; ++j) delta[j] = p.value(i, j) - p.value(i - 1, j);
    }
    join_segment(sig, delta.data(), ws);
  }
  return sig;
}

GroupTensor expected_brownian_sig(double t, int d, int level) {
  TensorPoly gen(d);
  gen.add_term(Word::single(0), t);
  for (int i = 1; i <= d; ++i) {
    Word ii = Word::single(i).concat(Word::single(i));
    gen.add_term(ii, t / 2.0);
  }
  return tensor_exp(gen, level);
}

GroupTensor interval_signature(const GroupTensor& x_full, const GroupTensor& x_prefix) {
  GroupTensor inv = group_inverse(x_prefix);
  inv.chen_multiply(x_full);
  return inv;
}

}  // namespace sigmal
