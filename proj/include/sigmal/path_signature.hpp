#ifndef SIGMAL_PATH_SIGNATURE_HPP
#define SIGMAL_PATH_SIGNATURE_HPP

#include <vector>

#include "sigmal/group_tensor.hpp"

namespace sigmal {

// A path sampled on a strictly increasing time grid; values are row-major,
// one m-dimensional sample per time. The signature of the piecewise-linear
// interpolant is exact at any truncation, so refining the sampling of a
// piecewise-linear path does not change it.
struct SampledPath {
  std::vector<double> times;
  std::vector<double> values;  // times.size() * m
  int m = 0;

  int samples() const { return static_cast<int>(times.size()); }
  double value(int i, int j) const { return values[static_cast<std::size_t>(i) * m + j]; }
  double& value(int i, int j) { return values[static_cast<std::size_t>(i) * m + j]; }

  SampledPath reversed() const;
  // Sub-path on sample indices [from, to], shifted to start at time 0.
  SampledPath slice(int from, int to) const;
};

// Scratch space for signature accumulation; reuse across paths to avoid
// reallocating the segment-power buffers in the Monte Carlo loop.
class SignatureWorkspace {
 public:
  // powers of a level-1 increment, levels 1..N concatenated
  std::vector<double> powers;
  void prepare(int alphabet, int level);

 private:
  int alphabet_ = -1, level_ = -1;
};

// sig <- sig (x) exp(delta) where delta is a level-1 increment over the
// tensor's alphabet (delta[0] is the letter-0 component). This is the inner
// loop of every Monte Carlo experiment.
void join_segment(GroupTensor& sig, const double* delta, SignatureWorkspace& ws);

// Truncated signature of the piecewise-linear interpolant of p. If
// augment_time, the time coordinate is prepended as letter 0 and the alphabet
// is {0..m}; otherwise letters index the path coordinates directly ({0..m-1}).
GroupTensor signature_of_path(const SampledPath& p, int level, bool augment_time = true);

// Fawcett's closed form for the expected signature of d-dimensional
// time-augmented Brownian motion at horizon t:
//   exp(t*(0) + (t/2) * sum_i (ii)).
GroupTensor expected_brownian_sig(double t, int d, int level);

// Signature over [s,t] from the signatures over [0,t] and [0,s]:
// inverse(prefix) (x) full.
GroupTensor interval_signature(const GroupTensor& x_full, const GroupTensor& x_prefix);

}  // namespace sigmal

#endif
