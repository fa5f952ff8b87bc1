#pragma once

#include <string>

namespace seorank::testing {

inline std::string source_path(const std::string& rel) { return std::string(SEORANK_SOURCE_DIR) + "/" + rel; }

}  // namespace seorank::testing
