#ifndef KPOS_BOUNDS_HPP
#define KPOS_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kpos/rational.hpp"

namespace kpos {

struct BoundsRow {
  int n = 0;
  int k = 0;
  Rational r_k_exact;
  Rational d_k_upper;
  std::optional<Rational> d_k_tomiyama_lower;  // absent when nk = 1
  double d_k_prob_lower = 0.0;
  double c_constant = 0.0;
};

// r_k(M_n) = (2n-k)/k for k <= n, and 1 for k >= n.
Rational r_k_exact(int n, int k);

// 1 + 2(n-k)/(n(nk-1)); requires nk > 1.
Rational tomiyama_cb_value(int n, int k);

BoundsRow d_k_bounds(int n, int k, double c = 0.01);

std::vector<BoundsRow> bounds_table(int n_min, int n_max, int k_min, int k_max,
                                    double c = 0.01);

std::string table_to_csv(const std::vector<BoundsRow>& rows);
nlohmann::json table_to_json(const std::vector<BoundsRow>& rows);

}  // namespace kpos

#endif
