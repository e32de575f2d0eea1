#include "kpos/json_io.hpp"

#include <nlohmann/json.hpp>

namespace kpos {

nlohmann::json matrix_to_json(const CMat& M) {
  nlohmann::json j;
  j["rows"] = M.rows();
  j["cols"] = M.cols();
  auto data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index k = 0; k < M.cols(); ++k)
      data.push_back({M(i, k).real(), M(i, k).imag()});
  j["data"] = std::move(data);
  return j;
}

CMat matrix_from_json(const nlohmann::json& j) {
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (Eigen::Index(data.size()) != rows * cols)
    throw ShapeError("matrix_from_json: data length != rows*cols");
  CMat M(rows, cols);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k, ++idx)
      M(i, k) = cxd(data[idx].at(0).get<double>(), data[idx].at(1).get<double>());
  if (!all_finite(M)) throw ShapeError("matrix_from_json: non-finite entry");
  return M;
}

}  // namespace kpos
