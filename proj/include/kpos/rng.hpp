#ifndef KPOS_RNG_HPP
#define KPOS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "kpos/linalg.hpp"

namespace kpos {

// splitmix64 step; used to derive independent per-sample seeds from a master
// seed so that sample sets with the same seed nest as prefixes.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// mt19937_64 with a hand-rolled Box-Muller normal, so that streams are
// reproducible bit-for-bit independent of the standard library's
// normal_distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {  // (0,1)
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  cxd cnormal() { return {normal(), normal()}; }

  CMat gaussian_matrix(int rows, int cols) {
    CMat G(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) G(i, j) = cnormal();
    return G;
  }

  CVec gaussian_vector(int dim) {
    CVec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cnormal();
    return v;
  }

  // QR of a complex Gaussian with phase-fixed diagonal: Haar on U(n).
  CMat haar_unitary(int n) {
    CMat G = gaussian_matrix(n, n);
    Eigen::HouseholderQR<CMat> qr(G);
    CMat Q = qr.householderQ();
    CMat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
      cxd d = R(i, i);
      double ad = std::abs(d);
      Q.col(i) *= (ad > 0 ? d / ad : cxd(1.0));
    }
    return Q;
  }

  // Haar-random isometry C^k -> C^n (columns orthonormal).
  CMat haar_isometry(int n, int k) { return haar_unitary(n).leftCols(k); }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace kpos

#endif
