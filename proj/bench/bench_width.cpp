// Compares the serial reference path against the OpenMP path on the GUE
// width estimator and checks that the results are bitwise identical.
#include <chrono>
#include <cstdio>
#include <vector>

#include "kpos/linalg.hpp"
#include "kpos/parallel.hpp"
#include "kpos/randgen.hpp"
#include "kpos/rng.hpp"

using namespace kpos;

namespace {

std::vector<double> run(int p, int samples, std::uint64_t seed, ExecMode mode, double* secs) {
  std::vector<double> vals(samples);
  auto t0 = std::chrono::steady_clock::now();
  parallel_for(samples, [&](std::int64_t i) {
    CMat G = gue(p, derive_seed(seed, std::uint64_t(i)));
    vals[i] = std::abs(eig_hermitian(G).eigenvalues.cwiseAbs().maxCoeff());
  }, mode);
  *secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return vals;
}

}  // namespace

int main(int argc, char** argv) {
  int p = argc > 1 ? std::atoi(argv[1]) : 128;
  int samples = argc > 2 ? std::atoi(argv[2]) : 200;

  double ts = 0, tp = 0;
  std::vector<double> serial = run(p, samples, 1, ExecMode::Serial, &ts);
  std::vector<double> par = run(p, samples, 1, ExecMode::Parallel, &tp);

  bool identical = serial == par;
  double mean = 0;
  for (double v : serial) mean += v;
  mean /= samples;

  std::printf("p=%d samples=%d mean=%.6f\n", p, samples, mean);
  std::printf("serial   %.3fs\n", ts);
  std::printf("parallel %.3fs  (speedup %.2fx)\n", tp, ts / tp);
  std::printf("bitwise identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
