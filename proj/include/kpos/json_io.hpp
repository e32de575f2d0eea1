#ifndef KPOS_JSON_IO_HPP
#define KPOS_JSON_IO_HPP

#include <nlohmann/json_fwd.hpp>

#include "kpos/linalg.hpp"

namespace kpos {

inline constexpr const char* kSchemaTag = "kpos/1";

// Repo-wide matrix format: {"rows": n, "cols": m, "data": [[re, im], ...]}
// row-major. Doubles round-trip bit-identically through read/write.
nlohmann::json matrix_to_json(const CMat& M);
CMat matrix_from_json(const nlohmann::json& j);

}  // namespace kpos

#endif
