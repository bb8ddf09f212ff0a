#include "sigmal/operators.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "sigmal/errors.hpp"

namespace sigmal {

namespace {

// All suffix words reachable from position `pos` of v with `slot` source
// occurrences already consumed. Memoized on (pos, slot); occurrences are
// consumed in order and never overlap by construction.
class SwitchScanner {
 public:
  SwitchScanner(const Word& v, const SwitchSpec& spec) : v_(v), spec_(spec) {}

  const std::vector<Word>& run(int pos, int slot) {
    auto key = std::make_pair(pos, slot);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<Word> out;
    const int n = spec_.slots();
    if (pos == v_.size()) {
      if (slot == n) out.push_back(Word());
    } else {
      if (slot < n) {
        const Word& src = spec_.sources[slot];
        if (pos + src.size() <= v_.size() && v_.matches_at(src, pos)) {
          for (const Word& tail : run(pos + src.size(), slot + 1))
            out.push_back(spec_.targets[slot].concat(tail));
        }
      }
      // keep v[pos] in the current gap
      for (const Word& tail : run(pos + 1, slot))
        out.push_back(Word::single(v_.letter(pos)).concat(tail));
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  const Word& v_;
  const SwitchSpec& spec_;
  std::map<std::pair<int, int>, std::vector<Word>> memo_;
};

}  // namespace

SwitchSpec::SwitchSpec(std::vector<Word> src, std::vector<Word> tgt)
    : sources(std::move(src)), targets(std::move(tgt)) {
  if (sources.size() != targets.size() || sources.empty())
    throw std::invalid_argument("SwitchSpec: need equally many sources and targets (>= 1)");
  for (const Word& s : sources)
    if (s.empty()) throw std::invalid_argument("SwitchSpec: empty source word");
}

SwitchSpec SwitchSpec::replace(const Word& source, const Word& target) {
  return SwitchSpec({source}, {target});
}

SwitchSpec SwitchSpec::replace_letter(int source, int target) {
  return replace(Word::single(source), Word::single(target));
}

int SwitchSpec::length_shift() const {
  int shift = 0;
  for (std::size_t k = 0; k < sources.size(); ++k)
    shift += targets[k].size() - sources[k].size();
  return shift;
}

TensorPoly psi(const TensorPoly& l, const SwitchSpec& spec) {
  TensorPoly out(l.dim());
  for (const auto& [v, c] : l.terms()) {
    SwitchScanner scan(v, spec);
    for (const Word& w : scan.run(0, 0)) out.add_term(w, c);
  }
  return out;
}

GroupTensor psi_on_tensor(const GroupTensor& x, const SwitchSpec& spec) {
  GroupTensor out(x.dim(), x.level());
  const int a = x.alphabet();
  Word v;
  for (int n = 0; n <= x.exact_level(); ++n) {
    const double* data = x.level_data(n);
    const std::size_t sz = x.level_size(n);
    for (std::size_t idx = 0; idx < sz; ++idx) {
      if (data[idx] == 0.0) continue;
      Word w;
      std::size_t rem = idx;
      std::vector<int> letters(n);
      for (int p = n - 1; p >= 0; --p) {
        letters[p] = static_cast<int>(rem % a);
        rem /= a;
      }
      for (int p = 0; p < n; ++p) w.push_back(letters[p]);
      SwitchScanner scan(w, spec);
      for (const Word& t : scan.run(0, 0))
        if (t.size() <= x.level()) out.add_coeff(t, data[idx]);
    }
  }
  // Sources longer than targets shorten words, so the top levels of the
  // output would need input beyond the truncation.
  const int loss = std::max(0, -spec.length_shift());
  out.set_exact_level(std::max(0, x.exact_level() - loss));
  return out;
}

TensorPoly lambda_op(const TensorPoly& l, int letter) {
  TensorPoly out(l.dim());
  for (const auto& [w, c] : l.terms()) out.add_term(w, c * w.count(letter));
  return out;
}

TensorPoly j_op(const TensorPoly& l, int letter, double t) {
  TensorPoly out(l.dim());
  for (const auto& [w, c] : l.terms()) out.add_term(w, c * std::exp(-w.count(letter) * t));
  return out;
}

KappaVector::KappaVector(std::vector<double> k, double th) : kappa(std::move(k)), theta(th) {
  for (double ki : kappa)
    if (ki < 0) throw std::invalid_argument("KappaVector: rates must be nonnegative");
  if (theta < 0) throw std::invalid_argument("KappaVector: semigroup time must be nonnegative");
}

TensorPoly ou_semigroup_adjoint(const TensorPoly& l, const KappaVector& kv) {
  const int d = l.dim();
  if (static_cast<int>(kv.kappa.size()) != d)
    throw DimensionMismatch("ou_semigroup_adjoint: kappa has " +
                            std::to_string(kv.kappa.size()) + " rates for alphabet {0.." +
                            std::to_string(d) + "}");
  // exp(sum_i c_i Psi^{ii}_0), summed until the term vanishes; each
  // application shortens words, so at most degree(l) terms contribute.
  TensorPoly out = l;
  TensorPoly term = l;
  for (int n = 1; !term.is_zero(); ++n) {
    TensorPoly next(d);
    for (int i = 1; i <= d; ++i) {
      const double ci = (1.0 - std::exp(-2.0 * kv.kappa[i - 1] * kv.theta)) / 2.0;
      if (ci == 0.0) continue;
      Word ii = Word::single(i).concat(Word::single(i));
      next += ci * psi(term, SwitchSpec::replace(ii, Word::single(0)));
    }
    next *= 1.0 / n;
    out += next;
    term = std::move(next);
  }
  for (int i = 1; i <= d; ++i) out = j_op(out, i, kv.kappa[i - 1] * kv.theta);
  return out;
}

TensorPoly ou_generator_adjoint(const TensorPoly& l, const std::vector<double>& kappa) {
  const int d = l.dim();
  if (static_cast<int>(kappa.size()) != d)
    throw DimensionMismatch("ou_generator_adjoint: kappa size mismatch");
  TensorPoly out(d);
  for (int i = 1; i <= d; ++i) {
    if (kappa[i - 1] == 0.0) continue;
    Word ii = Word::single(i).concat(Word::single(i));
    TensorPoly gen = psi(l, SwitchSpec::replace(ii, Word::single(0)));
    gen -= lambda_op(l, i);
    out += kappa[i - 1] * gen;
  }
  return out;
}

TensorPoly skorokhod_coeff(const TensorPoly& l, int letter) {
  if (letter < 1 || letter > l.dim())
    throw std::invalid_argument("skorokhod_coeff: letter must be in 1..d");
  TensorPoly out = shuffle(l, TensorPoly::basis(l.dim(), Word::single(letter)));
  out -= psi(l, SwitchSpec::replace_letter(letter, 0));
  return out;
}

TensorPoly diamond_direct(const TensorPoly& l, const TensorPoly& lp, const Word& u1,
                          const Word& u2, int k) {
  if (l.dim() != lp.dim()) throw DimensionMismatch("diamond: alphabet dimensions differ");
  const int d = l.dim();
  TensorPoly out(d);
  for (const auto& [v, cv] : l.terms()) {
    for (int p1 = 0; p1 + u1.size() <= v.size(); ++p1) {
      if (!v.matches_at(u1, p1)) continue;
      const Word v1 = v.prefix(p1);
      const Word v2 = v.suffix(p1 + u1.size());
      for (const auto& [vp, cvp] : lp.terms()) {
        for (int p2 = 0; p2 + u2.size() <= vp.size(); ++p2) {
          if (!vp.matches_at(u2, p2)) continue;
          const Word v1p = vp.prefix(p2);
          const Word v2p = vp.suffix(p2 + u2.size());
          TensorPoly left = shuffle(TensorPoly::basis(d, v1), TensorPoly::basis(d, v1p));
          TensorPoly right = shuffle(TensorPoly::basis(d, v2), TensorPoly::basis(d, v2p));
          TensorPoly piece = concat(concat_letter(left, k), right);
          out += (cv * cvp) * piece;
        }
      }
    }
  }
  return out;
}

TensorPoly diamond_cdc(const TensorPoly& l, const TensorPoly& lp, int i, int k, int level) {
  if (l.dim() != lp.dim()) throw DimensionMismatch("diamond: alphabet dimensions differ");
  if (i < 1 || i > l.dim()) throw std::invalid_argument("diamond_cdc: letter must be in 1..d");
  const SwitchSpec spec =
      SwitchSpec::replace(Word::single(i).concat(Word::single(i)), Word::single(k));
  // Psi^{ii}_k shortens by one letter, so the first shuffle runs one level
  // beyond the requested truncation before the switch brings it back.
  TensorPoly out(l.dim());
  if (level < 0) {
    out = psi(shuffle(l, lp), spec);
    out -= shuffle(psi(l, spec), lp);
    out -= shuffle(l, psi(lp, spec));
  } else {
    out = psi(shuffle_truncated(l, lp, level + 1), spec);
    out -= shuffle_truncated(psi(l, spec), lp, level);
    out -= shuffle_truncated(l, psi(lp, spec), level);
    out = out.truncated(level);
  }
  out *= 0.5;
  return out;
}

TensorPoly diamond(const TensorPoly& l, const TensorPoly& lp, const Word& u1, const Word& u2,
                   int k) {
  if (u1.size() == 1 && u1 == u2 && u1.letter(0) >= 1) return diamond_cdc(l, lp, u1.letter(0), k);
  return diamond_direct(l, lp, u1, u2, k);
}

TensorPoly diamond_vec(const TensorPoly& l, const std::vector<TensorPoly>& h, int level) {
  if (static_cast<int>(h.size()) != l.dim())
    throw DimensionMismatch("diamond_vec: need one coefficient poly per letter 1..d");
  TensorPoly out(l.dim());
  for (int i = 1; i <= l.dim(); ++i) {
    if (h[i - 1].is_zero()) continue;
    out += diamond_cdc(l, h[i - 1], i, 0, level);
  }
  return out;
}

}  // namespace sigmal
