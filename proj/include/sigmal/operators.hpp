#ifndef SIGMAL_OPERATORS_HPP
#define SIGMAL_OPERATORS_HPP

#include <vector>

#include "sigmal/group_tensor.hpp"
#include "sigmal/tensor_poly.hpp"

namespace sigmal {

// The switching operator replaces consecutive, non-overlapping, in-order
// occurrences of the source words by the target words: a word v is expanded
// over all decompositions v = v0 s1 v1 s2 ... sn vn into
// v0 t1 v1 t2 ... tn vn. The same word-level routine serves the operator on
// functionals and (through adjointness, which swaps sources and targets) on
// tensors.
struct SwitchSpec {
  std::vector<Word> sources;
  std::vector<Word> targets;

  SwitchSpec(std::vector<Word> src, std::vector<Word> tgt);
  // single-slot spec
  static SwitchSpec replace(const Word& source, const Word& target);
  static SwitchSpec replace_letter(int source, int target);

  int slots() const { return static_cast<int>(sources.size()); }
  // total target length minus total source length
  int length_shift() const;
};

TensorPoly psi(const TensorPoly& l, const SwitchSpec& spec);

// Switching on a truncated tensor. Levels that would need input beyond the
// truncation (sources longer than targets shorten words) are dropped from the
// exact range of the output.
GroupTensor psi_on_tensor(const GroupTensor& x, const SwitchSpec& spec);

// Diagonal operators: Lambda_i scales each word by its count of `letter`,
// J_i^t by exp(-count * t).
TensorPoly lambda_op(const TensorPoly& l, int letter);
TensorPoly j_op(const TensorPoly& l, int letter, double t);

struct KappaVector {
  std::vector<double> kappa;  // one rate per non-time letter 1..d
  double theta = 0.0;

  KappaVector(std::vector<double> k, double th);
};

// Adjoint of the kappa-Ornstein-Uhlenbeck semigroup on coefficient polys:
//   (prod_i J_i^{kappa_i * theta}) exp(sum_i (1 - e^{-2 kappa_i theta})/2 *
//   Psi^{ii}_0). The operator exponential is a finite sum: every application
// of Psi^{ii}_0 shortens words by one letter.
TensorPoly ou_semigroup_adjoint(const TensorPoly& l, const KappaVector& kv);

// Adjoint of the generator: sum_i kappa_i (Psi^{ii}_0 - Lambda_i).
TensorPoly ou_generator_adjoint(const TensorPoly& l, const std::vector<double>& kappa);

// Coefficient of the Skorokhod integral of the F_t-process with coefficient l
// against dW^i: l sh (i) - Psi^i_0(l).
TensorPoly skorokhod_coeff(const TensorPoly& l, int letter);

// Direct definition of the diamond product: bilinear extension over all
// decompositions v = v1 u1 v2, v' = v1' u2 v2' of
// (v1 sh v1') (x) k (x) (v2 sh v2'). Combinatorially explosive; kept as the
// oracle the carre-du-champ form is tested against.
TensorPoly diamond_direct(const TensorPoly& l, const TensorPoly& lp, const Word& u1,
                          const Word& u2, int k);

// Carre-du-champ form of diamond for equal single-letter insertions:
//   1/2 (Psi^{ii}_k(l sh lp) - Psi^{ii}_k(l) sh lp - l sh Psi^{ii}_k(lp)).
// `level` truncates the shuffles (useful when only pairings against an N-
// truncated signature are needed); pass a negative level for the exact form.
TensorPoly diamond_cdc(const TensorPoly& l, const TensorPoly& lp, int i, int k,
                       int level = -1);

// Dispatching diamond: carre-du-champ when u1 == u2 is a single letter, the
// direct definition otherwise.
TensorPoly diamond(const TensorPoly& l, const TensorPoly& lp, const Word& u1, const Word& u2,
                   int k);

// d-slot extension: sum_i diamond_cdc(l, h[i], i, 0). h has one coefficient
// poly per non-time letter; zero polys are allowed.
TensorPoly diamond_vec(const TensorPoly& l, const std::vector<TensorPoly>& h, int level = -1);

}  // namespace sigmal

#endif
