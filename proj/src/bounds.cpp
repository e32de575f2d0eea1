#include "kpos/bounds.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kpos/json_io.hpp"

namespace kpos {

Rational r_k_exact(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("r_k_exact: n, k must be positive");
  if (k >= n) return Rational(1);
  return Rational(2LL * n - k, k);
}

Rational tomiyama_cb_value(int n, int k) {
  std::int64_t nk = std::int64_t(n) * k;
  if (nk <= 1) throw std::invalid_argument("tomiyama_cb_value: requires nk > 1");
  return Rational(1) + Rational(2LL * (n - k), std::int64_t(n) * (nk - 1));
}

BoundsRow d_k_bounds(int n, int k, double c) {
  if (k < 1 || k > n) throw std::invalid_argument("d_k_bounds: k must lie in [1, n]");
  if (c <= 0) throw std::invalid_argument("d_k_bounds: c must be positive");
  BoundsRow row;
  row.n = n;
  row.k = k;
  row.r_k_exact = r_k_exact(n, k);
  row.d_k_upper = (k == 1) ? Rational(n) : r_k_exact(n, k);  // d_1(M_n) = n exactly
  if (std::int64_t(n) * k > 1) row.d_k_tomiyama_lower = tomiyama_cb_value(n, k);
  row.d_k_prob_lower = c * std::sqrt(double(n) / k);
  row.c_constant = c;
  return row;
}

std::vector<BoundsRow> bounds_table(int n_min, int n_max, int k_min, int k_max, double c) {
  std::vector<BoundsRow> rows;
  for (int n = n_min; n <= n_max; ++n)
    for (int k = k_min; k <= std::min(k_max, n); ++k) rows.push_back(d_k_bounds(n, k, c));
  return rows;
}

std::string table_to_csv(const std::vector<BoundsRow>& rows) {
  std::ostringstream os;
  os << "n,k,r_k,d_k_upper,d_k_tomiyama,d_k_prob,c\n";
  os.precision(9);
  for (const auto& r : rows) {
    os << r.n << "," << r.k << "," << r.r_k_exact.str() << "," << r.d_k_upper.str() << ",";
    if (r.d_k_tomiyama_lower) os << r.d_k_tomiyama_lower->str();
    os << "," << r.d_k_prob_lower << "," << r.c_constant << "\n";
  }
  return os.str();
}

nlohmann::json table_to_json(const std::vector<BoundsRow>& rows) {
  nlohmann::json j;
  j["schema"] = kSchemaTag;
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json e;
    e["n"] = r.n;
    e["k"] = r.k;
    e["r_k"] = r.r_k_exact.str();
    e["r_k_value"] = r.r_k_exact.to_double();
    e["d_k_upper"] = r.d_k_upper.str();
    e["d_k_upper_value"] = r.d_k_upper.to_double();
    if (r.d_k_tomiyama_lower) {
      e["d_k_tomiyama"] = r.d_k_tomiyama_lower->str();
      e["d_k_tomiyama_value"] = r.d_k_tomiyama_lower->to_double();
    }
    e["d_k_prob"] = r.d_k_prob_lower;
    e["c"] = r.c_constant;
    arr.push_back(std::move(e));
  }
  j["rows"] = std::move(arr);
  return j;
}

}  // namespace kpos
