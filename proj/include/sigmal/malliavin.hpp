#ifndef SIGMAL_MALLIAVIN_HPP
#define SIGMAL_MALLIAVIN_HPP

#include <utility>
#include <vector>

#include "sigmal/group_tensor.hpp"
#include "sigmal/path_signature.hpp"
#include "sigmal/tensor_poly.hpp"

namespace sigmal {

// A signature with letters inserted at interior times:
//   prefix (x) i_1 (x) gaps[0] (x) i_2 (x) gaps[1] (x) ... (x) i_n (x) gaps[n-1].
// This is the algebraic form of an n-fold iterated Malliavin derivative of the
// Brownian signature, with prefix = sig over [0,s_1] and gaps the interval
// signatures between insertion times (the last gap runs to the horizon).
struct PiercedChain {
  GroupTensor prefix;
  std::vector<int> insertions;  // letters in 1..d
  std::vector<GroupTensor> gaps;

  PiercedChain(GroupTensor prefix_, std::vector<int> insertions_,
               std::vector<GroupTensor> gaps_);
};

// <l, chain>, summing each word of l over all splittings across the chain's
// tensors with the inserted letters matched in order.
double pierced_pair(const TensorPoly& l, const PiercedChain& chain);

// Clark-Ocone integrand at the state sig_t: the pierced pair with the future
// replaced by the expected signature over the remaining horizon.
double clark_ocone_integrand(const TensorPoly& l, const GroupTensor& sig_t, int letter,
                             double horizon);

// Chaos-expansion kernel of order n at the ordered times:
//   (1/n!) <l, E_{s1} (x) i1 (x) E_{s2-s1} (x) ... (x) in (x) E_{T-sn}>.
// The trailing expected-signature factor over [s_n, T] follows from the
// independence of the interval signatures; `trailing_factor = false` instead
// repeats the last inter-insertion gap, for comparison.
double chaos_kernel(const TensorPoly& l, const std::vector<int>& letters,
                    const std::vector<double>& times, double T, bool trailing_factor = true);

// Both sides of the iterated-integral identity on a sampled path:
//   lhs: midpoint Riemann approximation over the simplex of the integral of
//        the pierced functional against the `outs` coordinates,
//   rhs: <Psi^{ins}_{outs}(l), sig(path)>.
// Supports n = |ins| in {1, 2}. The path is used time-augmented.
std::pair<double, double> verify_iterated_integral(const TensorPoly& l, const SampledPath& path,
                                                   const std::vector<int>& ins,
                                                   const std::vector<int>& outs, int level);

}  // namespace sigmal

#endif
