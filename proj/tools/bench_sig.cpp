// Timing harness for the signature hot path: reports per-path cost of the
// segment-join loop at the truncation levels the experiments use.
#include <chrono>
#include <cstdio>
#include <random>

#include "sigmal/path_signature.hpp"

using namespace sigmal;

int main(int argc, char** argv) {
  const int d = argc > 1 ? std::atoi(argv[1]) : 2;
  const int N = argc > 2 ? std::atoi(argv[2]) : 7;
  const int steps = argc > 3 ? std::atoi(argv[3]) : 500;
  const int paths = argc > 4 ? std::atoi(argv[4]) : 200;

  std::mt19937_64 rng(42);
  std::normal_distribution<double> norm(0.0, 1.0);
  const double dt = 1.0 / steps;
  const double sdt = std::sqrt(dt);

  SignatureWorkspace ws;
  std::vector<double> delta(d + 1);
  double checksum = 0.0;

  auto t0 = std::chrono::steady_clock::now();
  for (int p = 0; p < paths; ++p) {
    GroupTensor sig = GroupTensor::unit(d, N);
    for (int s = 0; s < steps; ++s) {
      delta[0] = dt;
      for (int j = 1; j <= d; ++j) delta[j] = sdt * norm(rng);
      join_segment(sig, delta.data(), ws);
    }
    checksum += sig.at(N, 0);
  }
  auto t1 = std::chrono::steady_clock::now();
  double secs = std::chrono::duration<double>(t1 - t0).count();

  // flop estimate: ~2 * sum_n (n+1) a^n per step
  double flops_per_step = 0.0, an = 1.0;
  for (int n = 0; n <= N; ++n) {
    flops_per_step += 2.0 * (n + 1) * an;
    an *= d + 1;
  }
  std::printf("d=%d N=%d steps=%d paths=%d  %.3f s  (%.1f us/path-step, ~%.2f GFLOP/s)  [%g]\n",
              d, N, steps, paths, secs, 1e6 * secs / paths / steps,
              flops_per_step * steps * paths / secs / 1e9, checksum);
  return 0;
}
