#include "sigmal/malliavin.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "sigmal/errors.hpp"
#include "sigmal/operators.hpp"

namespace sigmal {

PiercedChain::PiercedChain(GroupTensor prefix_, std::vector<int> insertions_,
                           std::vector<GroupTensor> gaps_)
    : prefix(std::move(prefix_)), insertions(std::move(insertions_)), gaps(std::move(gaps_)) {
  if (insertions.size() != gaps.size())
    throw std::invalid_argument("PiercedChain: need one gap tensor per insertion");
  for (const GroupTensor& g : gaps)
    if (g.dim() != prefix.dim() || g.level() != prefix.level())
      throw DimensionMismatch("PiercedChain: all tensors must share alphabet and level");
  for (int i : insertions)
    if (i < 1 || i > prefix.dim())
      throw std::invalid_argument("PiercedChain: insertion letters must be in 1..d");
}

namespace {

// Value of one word against the chain: sum over splittings
// v = w0 i1 w1 ... in wn of prefix^{w0} * prod_k gaps[k-1]^{wk}.
class ChainEvaluator {
 public:
  ChainEvaluator(const Word& v, const PiercedChain& chain) : v_(v), chain_(chain) {}

  double run(int seg, int pos) {
    auto key = std::make_pair(seg, pos);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const int n = static_cast<int>(chain_.insertions.size());
    const GroupTensor& tensor = seg == 0 ? chain_.prefix : chain_.gaps[seg - 1];
    double acc = 0.0;
    for (int q = pos; q <= v_.size(); ++q) {
      if (seg == n) {
        if (q == v_.size()) acc += tensor.coeff(v_.sub(pos, q - pos));
        continue;
      }
      if (q < v_.size() && v_.letter(q) == chain_.insertions[seg]) {
        const double c = tensor.coeff(v_.sub(pos, q - pos));
        if (c != 0.0) acc += c * run(seg + 1, q + 1);
      }
    }
    memo_.emplace(key, acc);
    return acc;
  }

 private:
  const Word& v_;
  const PiercedChain& chain_;
  std::map<std::pair<int, int>, double> memo_;
};

}  // namespace

double pierced_pair(const TensorPoly& l, const PiercedChain& chain) {
  if (l.dim() != chain.prefix.dim())
    throw DimensionMismatch("pierced_pair: alphabet dimensions differ");
  const int n = static_cast<int>(chain.insertions.size());
  // a word of length m splits into segments of total length m - n
  if (l.degree() - n > chain.prefix.exact_level())
    throw DegreeExceedsTruncation("pierced_pair: poly degree " + std::to_string(l.degree()) +
                                  " exceeds available chain levels");
  double acc = 0.0;
  for (const auto& [v, c] : l.terms()) {
    if (v.size() < n) continue;
    ChainEvaluator eval(v, chain);
    acc += c * eval.run(0, 0);
  }
  return acc;
}

double clark_ocone_integrand(const TensorPoly& l, const GroupTensor& sig_t, int letter,
                             double horizon) {
  if (horizon < 0) throw std::invalid_argument("clark_ocone_integrand: horizon must be >= 0");
  GroupTensor tail = expected_brownian_sig(horizon, sig_t.dim(), sig_t.level());
  return pierced_pair(l, PiercedChain(sig_t, {letter}, {std::move(tail)}));
}

double chaos_kernel(const TensorPoly& l, const std::vector<int>& letters,
                    const std::vector<double>& times, double T, bool trailing_factor) {
  const int n = static_cast<int>(letters.size());
  if (static_cast<int>(times.size()) != n)
    throw std::invalid_argument("chaos_kernel: need one time per letter");
  if (n == 0) return pair(l, expected_brownian_sig(T, l.dim(), l.degree()));
  for (int k = 0; k < n; ++k) {
    const double prev = k == 0 ? 0.0 : times[k - 1];
    if (times[k] < prev || times[k] > T)
      throw NonIncreasingTimes("chaos_kernel: times must be nondecreasing within [0, T]");
  }
  const int level = l.degree();
  const int d = l.dim();
  GroupTensor prefix = expected_brownian_sig(times[0], d, level);
  std::vector<GroupTensor> gaps;
  for (int k = 1; k < n; ++k)
    gaps.push_back(expected_brownian_sig(times[k] - times[k - 1], d, level));
  if (trailing_factor) {
    gaps.push_back(expected_brownian_sig(T - times[n - 1], d, level));
  } else {
    // literal variant that repeats the last inter-insertion gap
    const double last = n == 1 ? times[0] : times[n - 1] - times[n - 2];
    gaps.push_back(expected_brownian_sig(last, d, level));
  }
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  return pierced_pair(l, PiercedChain(std::move(prefix), letters, std::move(gaps))) / fact;
}

std::pair<double, double> verify_iterated_integral(const TensorPoly& l, const SampledPath& path,
                                                   const std::vector<int>& ins,
                                                   const std::vector<int>& outs, int level) {
  const int n = static_cast<int>(ins.size());
  if (static_cast<int>(outs.size()) != n)
    throw std::invalid_argument("verify_iterated_integral: |ins| != |outs|");
  if (n < 1 || n > 2)
    throw std::invalid_argument("verify_iterated_integral: supported orders are 1 and 2");

  const GroupTensor sig_full = signature_of_path(path, level, true);
  std::vector<Word> src, tgt;
  for (int k = 0; k < n; ++k) {
    src.push_back(Word::single(ins[k]));
    tgt.push_back(Word::single(outs[k]));
  }
  const double rhs = pair(psi(l, SwitchSpec(src, tgt)), sig_full);

  // prefix signatures at the grid points, then the midpoint states
  const int steps = path.samples() - 1;
  std::vector<GroupTensor> prefix;
  prefix.reserve(steps + 1);
  prefix.push_back(GroupTensor::unit(path.m, level));
  {
    SignatureWorkspace ws;
    std::vector<double> delta(path.m + 1);
    GroupTensor acc = GroupTensor::unit(path.m, level);
    for (int k = 1; k <= steps; ++k) {
      delta[0] = path.times[k] - path.times[k - 1];
      for (int j = 0; j < path.m; ++j) delta[j + 1] = path.value(k, j) - path.value(k - 1, j);
      join_segment(acc, delta.data(), ws);
      prefix.push_back(acc);
    }
  }
  std::vector<GroupTensor> mid;
  mid.reserve(steps);
  {
    SignatureWorkspace ws;
    std::vector<double> half(path.m + 1);
    for (int k = 0; k < steps; ++k) {
      GroupTensor m = prefix[k];
      half[0] = 0.5 * (path.times[k + 1] - path.times[k]);
      for (int j = 0; j < path.m; ++j)
        half[j + 1] = 0.5 * (path.value(k + 1, j) - path.value(k, j));
      join_segment(m, half.data(), ws);
      mid.push_back(std::move(m));
    }
  }
  auto increment = [&](int k, int coord) {
    if (coord == 0) return path.times[k + 1] - path.times[k];  // letter 0 is time
    return path.value(k + 1, coord - 1) - path.value(k, coord - 1);
  };

  double lhs = 0.0;
  if (n == 1) {
    for (int k = 0; k < steps; ++k) {
      GroupTensor tail = chen_product(group_inverse(mid[k]), sig_full);
      const double val = pierced_pair(l, PiercedChain(mid[k], {ins[0]}, {std::move(tail)}));
      lhs += val * increment(k, outs[0]);
    }
  } else {
    std::vector<GroupTensor> mid_inv;
    mid_inv.reserve(steps);
    for (int k = 0; k < steps; ++k) mid_inv.push_back(group_inverse(mid[k]));
    for (int k = 1; k < steps; ++k) {
      const GroupTensor tail = chen_product(mid_inv[k], sig_full);
      double inner = 0.0;
      for (int j = 0; j < k; ++j) {
        GroupTensor gap = chen_product(mid_inv[j], mid[k]);
        const double val =
            pierced_pair(l, PiercedChain(mid[j], {ins[0], ins[1]}, {std::move(gap), tail}));
        inner += val * increment(j, outs[0]);
      }
      lhs += inner * increment(k, outs[1]);
    }
  }
  return {lhs, rhs};
}

}  // namespace sigmal
